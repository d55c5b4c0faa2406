#pragma once

// Seeded generators for finite pairs, cone members and non-members, and
// symbolic configurations. Same seed, same sequence.

#include "peckit/config.hpp"

#include <cstdint>
#include <random>

namespace peckit {

class Random {
 public:
  explicit Random(std::uint64_t seed) : engine_(seed) {}

  int uniform(int lo, int hi);
  bool chance(double p);
  /// p/q with |p| <= max_num and 1 <= q <= max_den.
  Rational rational(int max_num, int max_den);
  Rational nonzero_rational(int max_num, int max_den);
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

struct FinitePair {
  std::vector<Rational> lambda;
  std::vector<Rational> chi;
};

/// Small rationals with frequent repeats and zeros, so ties are exercised.
FinitePair random_finite_pair(Random& rng, std::size_t n);

/// Finite members of C_min for the cone of `type` (A, B-like, or D), built
/// from the monotone description of the cone.
Configuration random_cone_member(Random& rng, RootSystemType type, std::size_t n);
/// Finite configurations with a negative-energy element (checked by the
/// serial brute-force kernel). n is raised to at least 2.
Configuration random_cone_nonmember(Random& rng, RootSystemType type, std::size_t n);

struct SymbolicOptions {
  std::size_t max_blocks = 3;
  std::size_t max_finite = 3;
  std::size_t max_tails = 2;
  bool allow_divergent = true;
};

/// Random block data; tails are one-signed for signed types.
Configuration random_symbolic(Random& rng, RootSystemType type, const SymbolicOptions& options = {});

/// Random configuration with a positive verdict, biased towards decreasing
/// accumulation points (rejection sampling on decide_pec).
Configuration random_positive(Random& rng, RootSystemType type, const SymbolicOptions& options = {});

}  // namespace peckit
