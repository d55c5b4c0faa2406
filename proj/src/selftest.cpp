#include "peckit/selftest.hpp"

#include "peckit/estimator.hpp"
#include "peckit/kernels.hpp"
#include "peckit/pec.hpp"
#include "peckit/random_config.hpp"

#include <cstdio>

namespace peckit {

namespace {

constexpr RootSystemType kTypes[] = {RootSystemType::A, RootSystemType::B, RootSystemType::C, RootSystemType::BC,
                                     RootSystemType::D};

class Digest {
 public:
  void add(const std::string& text) {
    for (unsigned char c : text) {
      hash_ ^= c;
      hash_ *= 1099511628211ULL;
    }
    hash_ ^= 0xff;
    hash_ *= 1099511628211ULL;
  }
  void add(const std::vector<Rational>& values) {
    for (const Rational& v : values) add(to_string(v));
  }
  std::string hex() const {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash_));
    return buf;
  }

 private:
  std::uint64_t hash_ = 1469598103934665603ULL;
};

void fail(SuiteResult& r, const std::string& message) {
  ++r.failures;
  if (r.messages.size() < 5) r.messages.push_back(message);
}

std::pair<std::vector<Rational>, std::vector<Rational>> flatten(const Configuration& c) {
  std::vector<Rational> l, d;
  for (const Block& b : c.blocks()) {
    for (const Rational& x : b.finite) {
      l.push_back(b.level);
      d.push_back(x);
    }
  }
  return {l, d};
}

SuiteResult oracle_suite(Random& rng, std::uint64_t cases) {
  SuiteResult r{"oracle equivalence", cases, 0, {}, {}};
  Digest digest;
  InfimumOptions closed{true, EnumerationBounds::from_environment()};
  for (std::uint64_t i = 0; i < cases; ++i) {
    const RootSystemType type = kTypes[i % 5];
    const std::size_t n = static_cast<std::size_t>(rng.uniform(1, type == RootSystemType::A ? 6 : 5));
    FinitePair p = random_finite_pair(rng, n);
    digest.add(p.lambda);
    digest.add(p.chi);
    const FiniteVector l = FiniteVector::one_based(p.lambda), d = FiniteVector::one_based(p.chi);
    const std::vector<Index> support = l.indices();
    const Rational fast = exact_finite_infimum(l, d, support, type, closed);
    const Rational serial = kernels::min_energy_serial(p.lambda, p.chi, type);
    const Rational parallel = kernels::min_energy_parallel(p.lambda, p.chi, type);
    if (fast != serial || parallel != serial) {
      fail(r, to_string(type) + " n=" + std::to_string(n) + ": closed form " + to_string(fast) + ", brute force " +
                  to_string(serial));
    }
  }
  r.digest = digest.hex();
  return r;
}

SuiteResult minimality_suite(Random& rng, std::uint64_t cases) {
  SuiteResult r{"cone minimality", 0, 0, {}, {}};
  Digest digest;
  for (RootSystemType type : {RootSystemType::A, RootSystemType::B, RootSystemType::D}) {
    for (std::uint64_t i = 0; i < cases; ++i) {
      const std::size_t n = static_cast<std::size_t>(rng.uniform(1, 5));
      const bool member = i % 2 == 0;
      Configuration c = member ? random_cone_member(rng, type, n) : random_cone_nonmember(rng, type, n);
      auto [l, d] = flatten(c);
      digest.add(l);
      digest.add(d);
      ++r.cases;
      const Rational min = kernels::min_energy_serial(l, d, type);
      const ConeVerdict v = in_cmin(c);
      if (v.member != member || (min == 0) != member) {
        fail(r, to_string(type) + (member ? " member" : " non-member") + " misclassified: min " + to_string(min));
        continue;
      }
      if (!member && (!v.witness || !(witness_energy(c, *v.witness) < 0) ||
                      !v.witness->element.admissible(type))) {
        fail(r, to_string(type) + " non-member without a negative admissible witness");
      }
    }
  }
  r.digest = digest.hex();
  return r;
}

SuiteResult duality_suite(Random& rng, std::uint64_t cases) {
  SuiteResult r{"duality", cases, 0, {}, {}};
  Digest digest;
  for (std::uint64_t i = 0; i < cases; ++i) {
    const RootSystemType type = kTypes[i % 5];
    FinitePair p = random_finite_pair(rng, static_cast<std::size_t>(rng.uniform(1, 4)));
    digest.add(p.lambda);
    digest.add(p.chi);
    Configuration c = Configuration::from_finite(type, p.lambda, p.chi);
    DualityCheck check = duality_check(c, 1);
    if (!check.holds) fail(r, to_string(type) + ": duality identity fails");
  }
  r.digest = digest.hex();
  return r;
}

SuiteResult l1_suite(Random& rng, std::uint64_t cases) {
  SuiteResult r{"l1 bound", cases, 0, {}, {}};
  Digest digest;
  for (std::uint64_t i = 0; i < cases; ++i) {
    const RootSystemType type = kTypes[i % 5];
    FinitePair p = random_finite_pair(rng, static_cast<std::size_t>(rng.uniform(1, 5)));
    digest.add(p.lambda);
    digest.add(p.chi);
    Rational M = 0, C = 0;
    for (const Rational& x : p.lambda) M = std::max(M, Rational(abs(x)));
    for (const Rational& x : p.chi) C += abs(x);
    const Rational bound = -2 * M * C;
    for (const Rational& e : kernels::all_energies_serial(p.lambda, p.chi, type)) {
      if (e < bound) {
        fail(r, to_string(type) + ": energy " + to_string(e) + " below -2MC = " + to_string(bound));
        break;
      }
    }
  }
  r.digest = digest.hex();
  return r;
}

}  // namespace

std::vector<SuiteResult> run_selftest(const SelftestOptions& options) {
  Random rng(options.seed);
  const std::uint64_t small = std::max<std::uint64_t>(10, options.cases / 5);
  std::vector<SuiteResult> out;
  out.push_back(oracle_suite(rng, options.cases));
  out.push_back(minimality_suite(rng, small));
  out.push_back(duality_suite(rng, small));
  out.push_back(l1_suite(rng, small));
  return out;
}

}  // namespace peckit
