#pragma once

// Brute-force Weyl-group kernels over dense positions 0..n-1. The serial
// versions are the reference; the OpenMP versions split the permutation
// ranks across threads and must agree with them exactly.

#include "peckit/rational.hpp"
#include "peckit/weyl.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace peckit::kernels {

/// n! as a 64-bit count (n <= 20).
std::uint64_t factorial(std::size_t n);

/// Permutation of 0..n-1 with the given lexicographic rank.
std::vector<std::size_t> unrank_permutation(std::uint64_t rank, std::size_t n);

/// min over sign masks admissible for `type` and all permutations p of
/// sum_j lambda_j (sigma_j chi_{p(j)} - chi_j).
Rational min_energy_serial(std::span<const Rational> lambda, std::span<const Rational> chi,
                           RootSystemType type);
Rational min_energy_parallel(std::span<const Rational> lambda, std::span<const Rational> chi,
                             RootSystemType type);

/// Every energy value, in (permutation rank, sign mask) order.
std::vector<Rational> all_energies_serial(std::span<const Rational> lambda, std::span<const Rational> chi,
                                          RootSystemType type);
std::vector<Rational> all_energies_parallel(std::span<const Rational> lambda, std::span<const Rational> chi,
                                            RootSystemType type);

}  // namespace peckit::kernels
