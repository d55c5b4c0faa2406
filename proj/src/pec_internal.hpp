#pragma once

#include "peckit/pec.hpp"

#include <optional>

namespace peckit::detail {

/// Smallest s in both runs.
std::optional<std::uint64_t> first_in(const IndexRun& a, const IndexRun& b);

/// Some entry of block b with d < x, d > x, |d| < x, |d| > x.
std::optional<Label> entry_below(const Configuration& config, std::size_t b, const Rational& x);
std::optional<Label> entry_above(const Configuration& config, std::size_t b, const Rational& x);
std::optional<Label> entry_abs_below(const Configuration& config, std::size_t b, const Extended& x);
std::optional<Label> entry_abs_above(const Configuration& config, std::size_t b, const Rational& x);
Label first_entry(const Configuration& config, std::size_t b);

Extended block_abs_inf(const Block& block);
Extended block_abs_sup(const Block& block);

/// Restricts g (acting on truncation indices) to its support and relabels.
Witness localize(const Truncation& truncation, const SignedPermutation& g);

/// Negative-energy element found on growing truncations with the type's
/// closed-form minimizer.
std::optional<Witness> search_witness(const Configuration& config, RootSystemType type);

/// Threshold decomposition of a configuration already decided positive.
Decomposition decompose_positive(const Configuration& config);

}  // namespace peckit::detail
