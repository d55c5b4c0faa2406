// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Brute-force values come from tests/oracle.hpp.

#include "peckit/estimator.hpp"
#include "peckit/pec.hpp"
#include "peckit/random_config.hpp"

#include "fixtures.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>

using namespace peckit;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool ok = true;
  std::string detail;
  std::vector<std::string> problems;

  void fail(const std::string& message) {
    ok = false;
    if (problems.size() < 5) problems.push_back(message);
  }
};

std::vector<Rational> one_based_values(const FiniteVector& v) {
  std::vector<Rational> out;
  for (const auto& [index, value] : v) out.push_back(value);
  return out;
}

std::vector<std::uint64_t> depth_range(std::uint64_t a, std::uint64_t b) {
  std::vector<std::uint64_t> v(b - a + 1);
  std::iota(v.begin(), v.end(), a);
  return v;
}

// lambda(g.chi - chi) evaluated from the configuration's raw values.
Rational witness_energy_direct(const Configuration& c, const Witness& w) {
  const std::size_t n = w.labels.size();
  Rational e = 0;
  for (Index k = 1; k <= n; ++k) {
    const Rational lambda = level_of(c, w.labels[k - 1]);
    const Rational d = value_of(c, w.labels[k - 1]);
    const Index target = w.element.perm(k);
    if (target < 1 || target > n) return 0;  // outside the witness labels: reject below
    const Rational moved = w.element.sign(k) * value_of(c, w.labels[target - 1]);
    e += lambda * (moved - d);
  }
  return e;
}

// 1. Closed forms against brute force.
Outcome oracle_equivalence() {
  Outcome o;
  const auto start = Clock::now();
  Random rng(1001);
  std::size_t cases = 0;
  const RootSystemType types[] = {RootSystemType::A, RootSystemType::B, RootSystemType::C, RootSystemType::BC,
                                  RootSystemType::D};
  for (RootSystemType type : types) {
    const std::size_t max_n = type == RootSystemType::A ? 6 : 5;
    for (int i = 0; i < 1000; ++i) {
      const FinitePair p = random_finite_pair(rng, 1 + i % max_n);
      const FiniteVector l = FiniteVector::one_based(p.lambda), c = FiniteVector::one_based(p.chi);
      const Rational closed = exact_finite_infimum(l, c, l.indices(), type, {.d_closed_form = true});
      const Rational brute = oracle::minimum(p.lambda, p.chi, fixtures::signs_of(type));
      ++cases;
      if (closed != brute) {
        o.fail(to_string(type) + " case " + std::to_string(i) + ": closed " + to_string(closed) + " vs brute " +
               to_string(brute));
      }
    }
  }
  const double t = seconds_since(start);
  if (t > 300) o.fail("took " + std::to_string(t) + " s");
  std::ostringstream s;
  s << cases << " cases over A/B/C/BC/D, " << t << " s";
  o.detail = s.str();
  return o;
}

// 2. Cone membership against brute-force minima, both directions.
Outcome minimality() {
  Outcome o;
  Random rng(1002);
  for (RootSystemType type : {RootSystemType::A, RootSystemType::B, RootSystemType::D}) {
    for (int i = 0; i < 200; ++i) {
      const Configuration c = random_cone_member(rng, type, 1 + i % 5);
      if (fixtures::oracle_infimum(c) != 0) o.fail(to_string(type) + " member with nonzero minimum");
      if (!in_cmin(c).member) o.fail(to_string(type) + " member rejected by the cone test");
    }
    for (int i = 0; i < 200; ++i) {
      const Configuration c = random_cone_nonmember(rng, type, 1 + i % 5);
      if (!(fixtures::oracle_infimum(c) < 0)) o.fail(to_string(type) + " non-member with zero minimum");
      const ConeVerdict v = in_cmin(c);
      if (v.member || !v.witness) {
        o.fail(to_string(type) + " non-member accepted");
        continue;
      }
      const Witness& w = *v.witness;
      bool inside = w.element.admissible(type);
      for (Index j : w.element.support()) inside = inside && j >= 1 && j <= w.labels.size();
      if (!inside || !(witness_energy_direct(c, w) < 0)) o.fail(to_string(type) + " witness energy not negative");
    }
  }
  o.detail = "200 members and 200 non-members per cone A/B/D";
  return o;
}

// 3. Every energy of a finite chi' is at least -2MC.
Outcome l1_bound() {
  Outcome o;
  Random rng(1003);
  std::size_t energies = 0;
  for (int i = 0; i < 200; ++i) {
    const FinitePair p = random_finite_pair(rng, 1 + i % 5);
    Rational C = 0, M = 0;
    for (const Rational& d : p.chi) C += abs(d);
    for (const Rational& l : p.lambda) M = std::max(M, Rational(abs(l)));
    for (RootSystemType t : {RootSystemType::A, RootSystemType::B, RootSystemType::D}) {
      for (const Rational& e : oracle::energies(p.lambda, p.chi, fixtures::signs_of(t))) {
        ++energies;
        if (e < -2 * M * C) o.fail("energy " + to_string(e) + " below -2MC = " + to_string(-2 * M * C));
      }
    }
  }
  o.detail = "200 perturbations, " + std::to_string(energies) + " energies";
  return o;
}

// 4. Divergence rates of the negative certificates.
Outcome negative_rates() {
  Outcome o;
  const auto start = Clock::now();
  const Configuration crossing = fixtures::crossing_a();
  TruncationEvaluator eval(crossing, 10000);
  const std::vector<std::uint64_t> depths = depth_range(1, 10000);
  const std::vector<Rational> values = eval.profile(depths);
  const double t = seconds_since(start);
  for (std::size_t i = 0; i < depths.size(); ++i) {
    if (values[i] != -static_cast<long>(depths[i])) {
      o.fail("crossing depth " + std::to_string(depths[i]) + " gives " + to_string(values[i]));
    }
  }
  if (t >= 1) o.fail("crossing profile took " + std::to_string(t) + " s");

  // Pre-registered prediction: first k with 2 H_k > 10.
  std::uint64_t predicted = 0;
  mpq_class h = 0;
  for (std::uint64_t k = 1; predicted == 0; ++k) {
    h += mpq_class(1, k);
    if (2 * h > 10) predicted = k;
  }
  const DivergenceCheck check = divergence_check(fixtures::harmonic_b(), -10, 1000);
  if (!check.crossing_depth || *check.crossing_depth != predicted) o.fail("harmonic B crossing depth mismatch");
  if (!check.predicted || check.predicted->depth != predicted) o.fail("harmonic B family prediction mismatch");
  if (!check.consistent) o.fail("harmonic B check inconsistent");
  std::ostringstream s;
  s << "crossing -k for k <= 10000 in " << t << " s; harmonic B crosses -10 at k = "
    << (check.crossing_depth ? std::to_string(*check.crossing_depth) : "none") << ", predicted " << predicted;
  o.detail = s.str();
  return o;
}

// 5. Positive certificates: recombination, cone membership, bound validity.
Outcome positive_soundness() {
  Outcome o;
  Random rng(1005);
  const RootSystemType types[] = {RootSystemType::A, RootSystemType::B, RootSystemType::C, RootSystemType::BC,
                                  RootSystemType::D};
  const std::vector<std::uint64_t> depths = depth_range(1, 1000);
  for (int i = 0; i < 100; ++i) {
    const RootSystemType type = types[i % 5];
    const Configuration c = random_positive(rng, type);
    const Decomposition d = decompose(c);
    const Truncation t = truncate(c, 100);
    for (std::size_t j = 0; j < t.labels.size(); ++j) {
      const Label& l = t.labels[j];
      if (value_of(d.chi_min, l) + d.chi_sum_at(c, l) != t.chi.at(j + 1)) {
        o.fail("case " + std::to_string(i) + ": recombination fails at " + l.str());
        break;
      }
    }
    if (!in_cmin(d.chi_min).member) o.fail("case " + std::to_string(i) + ": chi_min outside the cone");
    const Rational bound = -2 * d.M * d.C.hi;
    if (bound != d.bound) o.fail("case " + std::to_string(i) + ": bound is not -2MC");
    for (const ProfilePoint& p : infimum_profile(c, depths, {.d_closed_form = true})) {
      if (p.infimum < bound) {
        o.fail("case " + std::to_string(i) + ": depth " + std::to_string(p.depth) + " below -2MC");
        break;
      }
    }
  }
  o.detail = "100 positive configurations, recombination at depth 100, profiles to depth 1000";
  return o;
}

// 6. B, C, BC and D agree; D infima dominate B infima.
Outcome reduction_chain() {
  Outcome o;
  Random rng(1006);
  std::size_t truncations = 0;
  const SymbolicOptions small{.max_blocks = 2, .max_finite = 2, .max_tails = 2};
  for (int i = 0; i < 200; ++i) {
    const Configuration b = random_symbolic(rng, RootSystemType::B, small);
    const Verdict v = decide_pec(b).verdict;
    for (RootSystemType t : {RootSystemType::C, RootSystemType::BC, RootSystemType::D}) {
      if (decide_pec(b.with_type(t)).verdict != v) o.fail("case " + std::to_string(i) + ": verdict differs for " + to_string(t));
    }
    std::size_t previous = 0;
    for (std::uint64_t k = 1;; ++k) {
      const Truncation tr = truncate(b, k);
      if (tr.labels.size() > 6 || tr.labels.size() == previous) break;
      previous = tr.labels.size();
      const std::vector<Index> support = tr.support();
      const Rational inf_b = exact_finite_infimum(tr.lambda, tr.chi, support, RootSystemType::B);
      const Rational inf_d = exact_finite_infimum(tr.lambda, tr.chi, support, RootSystemType::D);
      ++truncations;
      if (inf_d < inf_b) o.fail("case " + std::to_string(i) + ": D infimum below B at depth " + std::to_string(k));
      if (tr.labels.size() <= 5 &&
          inf_d != oracle::minimum(one_based_values(tr.lambda), one_based_values(tr.chi), oracle::Signs::kEven)) {
        o.fail("case " + std::to_string(i) + ": D enumeration disagrees with the oracle");
      }
    }
  }
  o.detail = "200 block-data sets, " + std::to_string(truncations) + " truncations compared";
  return o;
}

// 7. chi(g.lambda - lambda) = lambda(g^-1.chi - chi) and equal infima.
Outcome duality() {
  Outcome o;
  Random rng(1007);
  std::size_t elements = 0;
  for (int i = 0; i < 200; ++i) {
    const RootSystemType type = i % 3 == 0 ? RootSystemType::A : i % 3 == 1 ? RootSystemType::B : RootSystemType::D;
    const FinitePair p = random_finite_pair(rng, 1 + i % 4);
    const DualityCheck d = duality_check(Configuration::from_finite(type, p.lambda, p.chi), 1);
    elements += d.elements;
    if (!d.holds) o.fail("case " + std::to_string(i) + ": identity fails");
    const auto signs = fixtures::signs_of(type);
    if (oracle::minimum(p.lambda, p.chi, signs) != oracle::minimum(p.chi, p.lambda, signs)) {
      o.fail("case " + std::to_string(i) + ": oracle infima differ");
    }
    if (d.lambda_side_min != oracle::minimum(p.lambda, p.chi, signs)) o.fail("case " + std::to_string(i) + ": infimum mismatch");
  }
  o.detail = "200 configurations, " + std::to_string(elements) + " elements";
  return o;
}

// 8. Adding a constant to every d changes nothing for type A.
Outcome shift_invariance() {
  Outcome o;
  Random rng(1008);
  const SymbolicOptions opts{.max_blocks = 3, .max_finite = 2, .max_tails = 2, .allow_divergent = false};
  for (int i = 0; i < 100; ++i) {
    const Configuration c = random_symbolic(rng, RootSystemType::A, opts);
    const Rational shift = rng.nonzero_rational(50, 9);
    const Configuration s = shifted(c, shift);
    if (decide_pec(c).verdict != decide_pec(s).verdict) o.fail("case " + std::to_string(i) + ": verdict changed");
    for (std::uint64_t k : {1, 2, 5, 40, 300}) {
      if (truncated_infimum(c, k) != truncated_infimum(s, k)) {
        o.fail("case " + std::to_string(i) + ": infimum changed at depth " + std::to_string(k));
      }
    }
    if (truncate(c, 1).labels.size() <= 6) {
      const Truncation a = truncate(c, 1), b = truncate(s, 1);
      if (oracle::minimum(a.lambda_values(), a.chi_values(), oracle::Signs::kNone) !=
          oracle::minimum(b.lambda_values(), b.chi_values(), oracle::Signs::kNone)) {
        o.fail("case " + std::to_string(i) + ": brute-force infimum changed");
      }
    }
  }
  o.detail = "100 shifted configurations";
  return o;
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"oracle equivalence", oracle_equivalence},
      {"minimality both ways", minimality},
      {"l1 bound", l1_bound},
      {"negative-certificate rates", negative_rates},
      {"positive-certificate soundness", positive_soundness},
      {"reduction chain", reduction_chain},
      {"duality", duality},
      {"type-A shift invariance", shift_invariance},
  };
  int failures = 0;
  int n = 0;
  for (const auto& [name, run] : criteria) {
    ++n;
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    std::cout << (o.ok ? "PASS" : "FAIL") << " criterion " << n << ": " << name << " (" << o.detail << ")"
              << std::endl;
    for (const std::string& p : o.problems) std::cout << "  " << p << std::endl;
    failures += !o.ok;
  }
  return failures == 0 ? 0 : 1;
}
