#include "peckit/random_config.hpp"
#include "peckit/pec.hpp"

#include "fixtures.hpp"

#include <gtest/gtest.h>

using namespace peckit;

TEST(Random, Deterministic) {
  Random a(99), b(99);
  for (int i = 0; i < 20; ++i) {
    EXPECT_EQ(random_symbolic(a, RootSystemType::B), random_symbolic(b, RootSystemType::B));
  }
}

TEST(Random, RationalRanges) {
  Random rng(3);
  for (int i = 0; i < 500; ++i) {
    const Rational r = rng.rational(5, 4);
    EXPECT_LE(abs(r.get_num()), 5);
    EXPECT_LE(r.get_den(), 4);
    EXPECT_NE(rng.nonzero_rational(5, 4), 0);
    const int u = rng.uniform(-2, 3);
    EXPECT_GE(u, -2);
    EXPECT_LE(u, 3);
  }
}

TEST(Random, FinitePairSizes) {
  Random rng(4);
  for (std::size_t n = 1; n <= 6; ++n) {
    const FinitePair p = random_finite_pair(rng, n);
    EXPECT_EQ(p.lambda.size(), n);
    EXPECT_EQ(p.chi.size(), n);
  }
}

TEST(Random, SymbolicRespectsOptions) {
  Random rng(5);
  const SymbolicOptions opts{.max_blocks = 2, .max_finite = 1, .max_tails = 1, .allow_divergent = false};
  for (int i = 0; i < 200; ++i) {
    const Configuration c = random_symbolic(rng, i % 2 ? RootSystemType::A : RootSystemType::C, opts);
    EXPECT_LE(c.blocks().size(), 2u);
    for (const Block& b : c.blocks()) {
      EXPECT_LE(b.finite.size(), 1u);
      EXPECT_LE(b.tails.size(), 1u);
      for (const Tail& t : b.tails) EXPECT_NE(t.shape(), TailShape::kDivergent);
    }
  }
}

TEST(Random, GeneratorsHitTheirTargets) {
  Random rng(6);
  for (RootSystemType type : {RootSystemType::A, RootSystemType::B, RootSystemType::D}) {
    for (std::size_t n = 1; n <= 4; ++n) {
      EXPECT_EQ(fixtures::oracle_infimum(random_cone_member(rng, type, n)), 0);
      const Configuration bad = random_cone_nonmember(rng, type, n);
      EXPECT_LT(fixtures::oracle_infimum(bad), 0);
      EXPECT_GE(truncate(bad, 1).labels.size(), 2u);
    }
    for (int i = 0; i < 20; ++i) EXPECT_TRUE(decide_pec(random_positive(rng, type)).positive());
  }
}
