#include "peckit/random_config.hpp"
#include "peckit/weyl.hpp"

#include "oracle.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace peckit;

namespace {

FiniteVector vec(std::initializer_list<Rational> values) {
  std::vector<Rational> v(values);
  return FiniteVector::one_based(v);
}

SignedPermutation random_element(std::mt19937_64& rng, Index n) {
  std::vector<Index> image(static_cast<std::size_t>(n));
  for (Index j = 0; j < n; ++j) image[static_cast<std::size_t>(j)] = j + 1;
  std::shuffle(image.begin(), image.end(), rng);
  std::map<Index, Index> w;
  std::set<Index> flips;
  for (Index j = 1; j <= n; ++j) {
    w[j] = image[static_cast<std::size_t>(j - 1)];
    if (rng() % 2) flips.insert(j);
  }
  return SignedPermutation::from_parts(w, flips);
}

oracle::Signs signs_for(RootSystemType type) {
  switch (type) {
    case RootSystemType::A: return oracle::Signs::kNone;
    case RootSystemType::D: return oracle::Signs::kEven;
    default: return oracle::Signs::kAll;
  }
}

}  // namespace

TEST(SignedPermutation, IdentityLaws) {
  const SignedPermutation id;
  const SignedPermutation t = SignedPermutation::transposition(1, 2);
  EXPECT_EQ(compose(id, t), t);
  EXPECT_EQ(compose(t, id), t);
  EXPECT_EQ(inverse(id), id);
  EXPECT_EQ(inverse(t), t);
  EXPECT_TRUE(compose(t, t).is_identity());
}

TEST(SignedPermutation, ComposeActsRightToLeft) {
  const SignedPermutation g = SignedPermutation::transposition(1, 2);
  const SignedPermutation h = SignedPermutation::sign_flip({1});
  EXPECT_NE(compose(g, h), compose(h, g));
  // (g o h)(e_1) = g(-e_1) = -e_2
  EXPECT_EQ(compose(g, h).act_on_basis(1), std::make_pair(Index{2}, -1));
  const FiniteVector x = vec({1, 2, 3});
  EXPECT_EQ(compose(g, h).act(x), g.act(h.act(x)));
}

TEST(SignedPermutation, InverseOfSignedCycle) {
  const SignedPermutation g = SignedPermutation::from_parts({{1, 2}, {2, 3}, {3, 1}}, {1});
  EXPECT_TRUE(compose(g, inverse(g)).is_identity());
  EXPECT_TRUE(compose(inverse(g), g).is_identity());
  EXPECT_EQ(inverse(g).support(), g.support());
}

TEST(SignedPermutation, RandomGroupLaws) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 1000; ++i) {
    const SignedPermutation g = random_element(rng, 5), h = random_element(rng, 5), k = random_element(rng, 5);
    EXPECT_TRUE(compose(g, inverse(g)).is_identity());
    if (i % 10 == 0) EXPECT_EQ(compose(compose(g, h), k), compose(g, compose(h, k)));
  }
}

TEST(SignedPermutation, Admissibility) {
  EXPECT_TRUE(SignedPermutation::transposition(1, 2).admissible(RootSystemType::A));
  EXPECT_FALSE(SignedPermutation::sign_flip({1}).admissible(RootSystemType::A));
  EXPECT_TRUE(SignedPermutation::sign_flip({1}).admissible(RootSystemType::C));
  EXPECT_FALSE(SignedPermutation::sign_flip({1}).admissible(RootSystemType::D));
  EXPECT_TRUE(SignedPermutation::sign_flip({1, 2}).admissible(RootSystemType::D));
}

TEST(Energy, HandEvaluations) {
  EXPECT_EQ(energy(vec({2, 1}), vec({0, 5}), SignedPermutation()), 0);
  EXPECT_EQ(energy(vec({2, 1}), vec({0, 5}), SignedPermutation::transposition(1, 2)), 5);
  EXPECT_EQ(energy(vec({1}), vec({3}), SignedPermutation::sign_flip({1})), -6);
  EXPECT_THROW(energy(vec({1}), vec({3}), SignedPermutation::transposition(1, 2)), DomainError);
}

TEST(Energy, TranspositionProducts) {
  EXPECT_EQ(transposition_product_energy(vec({0, 1}), vec({0, 1}), {}), 0);
  const std::vector<std::pair<Index, Index>> one{{1, 2}};
  EXPECT_EQ(transposition_product_energy(vec({0, 1}), vec({0, 1}), one), -1);
  const std::vector<std::pair<Index, Index>> two{{1, 2}, {3, 4}};
  const FiniteVector l = vec({0, 1, 0, 1}), d = vec({0, 1, 0, 1});
  EXPECT_EQ(transposition_product_energy(l, d, two), -2);
  EXPECT_EQ(energy(l, d, SignedPermutation::transpositions(two)), -2);
  const std::vector<std::pair<Index, Index>> repeated{{1, 2}, {2, 3}};
  EXPECT_THROW(transposition_product_energy(l, d, repeated), DomainError);
}

TEST(Energy, TranspositionFormulaMatchesEnergy) {
  std::mt19937_64 rng(5);
  Random r(5);
  for (int i = 0; i < 300; ++i) {
    FinitePair p = random_finite_pair(r, 8);
    const FiniteVector l = FiniteVector::one_based(p.lambda), d = FiniteVector::one_based(p.chi);
    std::vector<Index> idx{1, 2, 3, 4, 5, 6, 7, 8};
    std::shuffle(idx.begin(), idx.end(), rng);
    const std::size_t k = rng() % 5;
    std::vector<std::pair<Index, Index>> pairs;
    for (std::size_t s = 0; s < k; ++s) pairs.emplace_back(idx[2 * s], idx[2 * s + 1]);
    EXPECT_EQ(transposition_product_energy(l, d, pairs), energy(l, d, SignedPermutation::transpositions(pairs)));
  }
}

TEST(Enumeration, Counts) {
  const std::vector<Index> none;
  auto only = enumerate_elements(none, RootSystemType::B);
  ASSERT_EQ(only.size(), 1u);
  EXPECT_TRUE(only[0].is_identity());
  const std::vector<Index> two{1, 2}, three{1, 2, 3}, four{1, 2, 3, 4};
  EXPECT_EQ(enumerate_elements(two, RootSystemType::B).size(), 8u);
  EXPECT_EQ(enumerate_elements(three, RootSystemType::D).size(), 24u);
  EXPECT_EQ(enumerate_elements(four, RootSystemType::A).size(), 24u);
  EXPECT_EQ(enumerate_elements(four, RootSystemType::BC).size(), 384u);
  std::set<std::string> distinct;
  for (const auto& g : enumerate_elements(four, RootSystemType::C)) distinct.insert(g.str());
  EXPECT_EQ(distinct.size(), 384u);
}

TEST(Enumeration, BoundIsEnforced) {
  EnumerationBounds tight;
  tight.type_bc = 3;
  const std::vector<Index> four{1, 2, 3, 4};
  EXPECT_THROW(enumerate_elements(four, RootSystemType::B, tight), EnumerationBoundError);
  EXPECT_NO_THROW(enumerate_elements(four, RootSystemType::A, tight));
}

TEST(FiniteInfimum, WorkedValues) {
  const std::vector<Index> two{1, 2};
  EXPECT_EQ(exact_finite_infimum(vec({3, 3}), vec({1, -4}), two, RootSystemType::A), 0);
  EXPECT_EQ(exact_finite_infimum(vec({1, 2}), vec({0, 1}), two, RootSystemType::A), -1);
  EXPECT_EQ(exact_finite_infimum(vec({1, 1}), vec({1, 1}), two, RootSystemType::D), -4);
  InfimumOptions closed;
  closed.d_closed_form = true;
  EXPECT_EQ(exact_finite_infimum(vec({1, 1}), vec({1, 1}), two, RootSystemType::D, closed), -4);
}

TEST(FiniteInfimum, ClosedFormsMatchIndependentEnumeration) {
  Random rng(99);
  InfimumOptions closed;
  closed.d_closed_form = true;
  for (RootSystemType type :
       {RootSystemType::A, RootSystemType::B, RootSystemType::C, RootSystemType::BC, RootSystemType::D}) {
    for (int i = 0; i < 120; ++i) {
      const std::size_t n = 1 + static_cast<std::size_t>(i % (type == RootSystemType::A ? 6 : 5));
      FinitePair p = random_finite_pair(rng, n);
      const FiniteVector l = FiniteVector::one_based(p.lambda), d = FiniteVector::one_based(p.chi);
      const std::vector<Index> support = l.indices();
      const Rational expected = oracle::minimum(p.lambda, p.chi, signs_for(type));
      EXPECT_EQ(exact_finite_infimum(l, d, support, type, closed), expected) << to_string(type);
      EXPECT_EQ(brute_force_infimum(l, d, support, type), expected);
      const SignedPermutation g = minimizing_element(l, d, support, type);
      EXPECT_TRUE(g.admissible(type));
      EXPECT_EQ(energy(l, d, g), expected);
    }
  }
}

TEST(FiniteInfimum, SubsetSupport) {
  // Only indices 1 and 3 may move.
  const FiniteVector l = vec({0, 5, 1}), d = vec({0, -9, 1});
  const std::vector<Index> support{1, 3};
  EXPECT_EQ(exact_finite_infimum(l, d, support, RootSystemType::A), -1);
}

TEST(FiniteInfimum, TypeAShiftInvariance) {
  Random rng(3);
  for (int i = 0; i < 100; ++i) {
    FinitePair p = random_finite_pair(rng, 5);
    const Rational c = rng.rational(7, 5);
    std::vector<Rational> shifted = p.chi;
    for (Rational& x : shifted) x += c;
    const FiniteVector l = FiniteVector::one_based(p.lambda);
    const std::vector<Index> support = l.indices();
    EXPECT_EQ(exact_finite_infimum(l, FiniteVector::one_based(p.chi), support, RootSystemType::A),
              exact_finite_infimum(l, FiniteVector::one_based(shifted), support, RootSystemType::A));
  }
}
