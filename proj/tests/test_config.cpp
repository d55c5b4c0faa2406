#include "peckit/config.hpp"
#include "peckit/random_config.hpp"

#include "oracle.hpp"

#include <gtest/gtest.h>

using namespace peckit;

namespace {

Configuration single(Block b, RootSystemType type = RootSystemType::A) { return Configuration(type, {std::move(b)}); }

}  // namespace

TEST(Configuration, Validation) {
  EXPECT_THROW(Configuration(RootSystemType::A, {}), DomainError);
  EXPECT_THROW(Configuration(RootSystemType::A, {Block{1, {Rational(0)}, {}}, Block{1, {Rational(2)}, {}}}),
               DomainError);
  // Signed types need one-signed tails.
  EXPECT_THROW(single(Block{1, {}, {Tail::harmonic(Rational(1, 2), -1)}}, RootSystemType::B), DomainError);
  EXPECT_NO_THROW(single(Block{1, {}, {Tail::harmonic(Rational(1, 2), -1)}}, RootSystemType::A));
}

TEST(Configuration, FromFiniteGroupsLevels) {
  const std::vector<Rational> l{1, 0, 1}, d{5, 6, 7};
  const Configuration c = Configuration::from_finite(RootSystemType::A, l, d);
  ASSERT_EQ(c.blocks().size(), 2u);
  EXPECT_EQ(c.block(0).finite, (std::vector<Rational>{5, 7}));
  EXPECT_EQ(c.levels(), (std::vector<Rational>{0, 1}));
  EXPECT_TRUE(c.is_finite());
}

TEST(Analyze, AccumulationPoints) {
  const LevelAnalysis a = analyze(single(Block{0, {}, {Tail::constant(3)}}));
  EXPECT_EQ(a.levels[0].accumulation, (std::vector<Rational>{3}));
  EXPECT_EQ(a.levels[0].r_min, Extended(3));
  EXPECT_EQ(a.levels[0].r_max, Extended(3));
  EXPECT_TRUE(a.levels[0].bounded_below());
  EXPECT_TRUE(a.levels[0].bounded_above());

  const LevelAnalysis b =
      analyze(single(Block{0, {}, {Tail::harmonic(0, -1), Tail::geometric(1, 1, Rational(1, 2))}}));
  EXPECT_EQ(b.levels[0].r_min, Extended(0));
  EXPECT_EQ(b.levels[0].r_max, Extended(1));

  const LevelAnalysis c = analyze(single(Block{0, {Rational(-4)}, {Tail::divergent(1)}}));
  EXPECT_FALSE(c.levels[0].bounded_above());
  EXPECT_EQ(c.levels[0].inf_d, Extended(-4));
  EXPECT_EQ(c.levels[0].r_min, Extended::pos_inf());
  EXPECT_EQ(c.levels[0].r_max, Extended::neg_inf());
}

TEST(Analyze, ClosureLevels) {
  const Configuration c(RootSystemType::A, {Block{2, {Rational(1)}, {}}, Block{0, {Rational(1)}, {}},
                                            Block{1, {}, {Tail::constant(0)}}, Block{Rational(3, 2), {Rational(0)}, {}}});
  const LevelAnalysis a = analyze(c);
  EXPECT_EQ(a.m_min, 0);
  EXPECT_EQ(a.m_max, 2);
  EXPECT_EQ(a.closure_levels, (std::vector<Rational>{0, 1, 2}));
}

TEST(Analyze, EssentialBoundedness) {
  EXPECT_TRUE(is_essentially_bounded(single(Block{0, {}, {Tail::harmonic(0, 1)}})));
  EXPECT_FALSE(is_essentially_bounded(
      Configuration(RootSystemType::A, {Block{0, {}, {Tail::divergent(-1)}}, Block{1, {Rational(0)}, {}}})));
  EXPECT_TRUE(is_essentially_bounded(
      Configuration(RootSystemType::A, {Block{0, {}, {Tail::divergent(1)}}, Block{1, {}, {Tail::divergent(-1)}}})));
  EXPECT_TRUE(is_essentially_bounded(single(Block{0, {}, {Tail::divergent(1), Tail::divergent(-1)}})));
}

TEST(Summability, GeometricSideIsExact) {
  const Configuration c = single(Block{0, {}, {Tail::geometric(0, 1, Rational(1, 2))}});
  SideSummary s = side_summability(c, 0, 0, Side::kAbove);
  EXPECT_TRUE(s.infinite);
  EXPECT_TRUE(s.summable);
  EXPECT_TRUE(s.sum.is_exact());
  EXPECT_EQ(s.sum.lo, 1);
  SideSummary below = side_summability(c, 0, 0, Side::kBelow);
  EXPECT_FALSE(below.infinite);
  EXPECT_EQ(below.sum.lo, 0);
}

TEST(Summability, HarmonicSideDiverges) {
  const Configuration c = single(Block{0, {}, {Tail::harmonic(0, 1)}});
  SideSummary s = side_summability(c, 0, 0, Side::kAbove);
  EXPECT_TRUE(s.infinite);
  EXPECT_FALSE(s.summable);
  // The partial sums really do exceed any fixed bound: H_{12367} > 10.
  EXPECT_GT(oracle::harmonic(12367), 10);
}

TEST(Summability, SeparatedSideIsFinite) {
  // Entries 1 + 1/s; above r = 3/2 only s = 1 qualifies.
  const Configuration c = single(Block{0, {Rational(5)}, {Tail::harmonic(1, 1)}});
  SideSummary s = side_summability(c, 0, Rational(3, 2), Side::kAbove);
  EXPECT_FALSE(s.infinite);
  EXPECT_TRUE(s.summable);
  EXPECT_EQ(s.sum.lo, Rational(7, 2) + Rational(1, 2));
  EXPECT_TRUE(s.sum.is_exact());
  EXPECT_THROW(side_summability(c, 7, 0, Side::kAbove), DomainError);
}

TEST(Summability, PowerSideIntervalContainsPartialSums) {
  const Configuration c = single(Block{0, {}, {Tail::power(1, -1, 2)}});
  SideSummary s = side_summability(c, 0, 1, Side::kBelow);
  ASSERT_TRUE(s.summable);
  EXPECT_LE(s.sum.width(), Rational(1, 1 << 20));
  Rational partial = 0;
  for (std::uint64_t k = 1; k <= 2000; ++k) partial += Rational(1, k * k);
  EXPECT_LT(partial, s.sum.hi);
  EXPECT_GT(partial + Rational(1, 2000), s.sum.lo);
}

TEST(Summability, RunDistanceSumLongRuns) {
  const Tail h = Tail::harmonic(0, 1);
  Interval exact = run_distance_sum(h, 1, 1000, 0);
  EXPECT_TRUE(exact.is_exact());
  EXPECT_EQ(exact.lo, oracle::harmonic(1000));
  Interval wide = run_distance_sum(h, 1, 100000, 0);
  // ln(100000) + gamma = 12.0901...
  EXPECT_LE(wide.lo, Rational(120902, 10000));
  EXPECT_GE(wide.hi, Rational(120901, 10000));
}

TEST(Truncate, Layout) {
  const Configuration c = single(Block{0, {Rational(5)}, {Tail::constant(2)}});
  const Truncation t = truncate(c, 1);
  EXPECT_EQ(t.lambda_values(), (std::vector<Rational>{0, 0}));
  EXPECT_EQ(t.chi_values(), (std::vector<Rational>{5, 2}));
  EXPECT_FALSE(t.labels[0].tail.has_value());
  EXPECT_EQ(*t.labels[1].tail, 0u);

  const Truncation h = truncate(single(Block{0, {}, {Tail::harmonic(1, -1)}}), 3);
  EXPECT_EQ(h.chi_values(), (std::vector<Rational>{0, Rational(1, 2), Rational(2, 3)}));
  EXPECT_THROW(truncate(c, 0), DomainError);
  EXPECT_EQ(*t.find(t.labels[1]), 2);
}

TEST(Truncate, Nested) {
  Random rng(8);
  for (int i = 0; i < 50; ++i) {
    const Configuration c = random_symbolic(rng, RootSystemType::A);
    const Truncation small = truncate(c, 2), large = truncate(c, 5);
    for (const Label& l : small.labels) {
      auto j = large.find(l);
      ASSERT_TRUE(j.has_value());
      EXPECT_EQ(large.chi.at(*j), value_of(c, l));
    }
  }
}

TEST(Shift, MovesEveryEntry) {
  const Configuration c(RootSystemType::A, {Block{0, {Rational(1)}, {Tail::harmonic(0, 1)}}});
  const Configuration s = shifted(c, 3);
  const Truncation a = truncate(c, 4), b = truncate(s, 4);
  for (Index j = 1; j <= 5; ++j) EXPECT_EQ(b.chi.at(j), a.chi.at(j) + 3);
}
