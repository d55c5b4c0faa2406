#pragma once

// Named configurations shared by the test binaries.

#include "peckit/config.hpp"

#include "oracle.hpp"

namespace fixtures {

using peckit::Block;
using peckit::Configuration;
using peckit::Rational;
using peckit::RootSystemType;
using peckit::Tail;

inline Configuration crossing_a() {
  return Configuration(RootSystemType::A, {Block{0, {}, {Tail::constant(0)}}, Block{1, {}, {Tail::constant(1)}}});
}

inline Configuration geometric_equality_a() {
  return Configuration(RootSystemType::A, {Block{0, {}, {Tail::geometric(0, -1, Rational(1, 2))}},
                                           Block{1, {}, {Tail::geometric(0, 1, Rational(1, 2))}}});
}

inline Configuration threshold_a() {
  return Configuration(RootSystemType::A, {Block{0, {Rational(-5)}, {Tail::geometric(1, -1, Rational(1, 2))}},
                                           Block{1, {Rational(7)}, {Tail::constant(0)}}});
}

inline Configuration harmonic_b() {
  return Configuration(RootSystemType::B, {Block{1, {}, {Tail::harmonic(0, 1)}}});
}

inline Configuration geometric_b() {
  return Configuration(RootSystemType::B, {Block{1, {}, {Tail::geometric(0, 1, Rational(1, 2))}}});
}

inline oracle::Signs signs_of(RootSystemType type) {
  switch (type) {
    case RootSystemType::A: return oracle::Signs::kNone;
    case RootSystemType::D: return oracle::Signs::kEven;
    default: return oracle::Signs::kAll;
  }
}

/// Brute-force infimum of a finite configuration, straight from the oracle.
inline Rational oracle_infimum(const Configuration& config) {
  const peckit::Truncation t = peckit::truncate(config, 1);
  return oracle::minimum(t.lambda_values(), t.chi_values(), signs_of(config.type()));
}

}  // namespace fixtures
