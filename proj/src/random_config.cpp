#include "peckit/random_config.hpp"

#include "peckit/kernels.hpp"
#include "peckit/pec.hpp"

#include <algorithm>
#include <numeric>

namespace peckit {

int Random::uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }

bool Random::chance(double p) { return std::bernoulli_distribution(p)(engine_); }

Rational Random::rational(int max_num, int max_den) {
  Rational r(uniform(-max_num, max_num), uniform(1, max_den));
  r.canonicalize();
  return r;
}

Rational Random::nonzero_rational(int max_num, int max_den) {
  Rational r = 0;
  while (r == 0) r = rational(max_num, max_den);
  return r;
}

namespace {

// Value pool with repeats: draws from a handful of candidates.
std::vector<Rational> pool(Random& rng, std::size_t size, int max_num, int max_den) {
  std::vector<Rational> out;
  for (std::size_t i = 0; i < size; ++i) out.push_back(rng.rational(max_num, max_den));
  return out;
}

Rational pick(Random& rng, const std::vector<Rational>& values) {
  return values[static_cast<std::size_t>(rng.uniform(0, static_cast<int>(values.size()) - 1))];
}

void shuffle_together(Random& rng, std::vector<Rational>& a, std::vector<Rational>& b) {
  std::vector<std::size_t> idx(a.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::shuffle(idx.begin(), idx.end(), rng.engine());
  std::vector<Rational> a2, b2;
  for (std::size_t i : idx) {
    a2.push_back(a[i]);
    b2.push_back(b[i]);
  }
  a = std::move(a2);
  b = std::move(b2);
}

RootSystemType cone_type(RootSystemType type) {
  if (type == RootSystemType::A || type == RootSystemType::D) return type;
  return RootSystemType::B;
}

}  // namespace

FinitePair random_finite_pair(Random& rng, std::size_t n) {
  const std::vector<Rational> levels = pool(rng, static_cast<std::size_t>(rng.uniform(1, 4)), 4, 3);
  const std::vector<Rational> values = pool(rng, n + 2, 6, 4);
  FinitePair out;
  for (std::size_t i = 0; i < n; ++i) {
    out.lambda.push_back(rng.chance(0.6) ? pick(rng, levels) : rng.rational(4, 3));
    out.chi.push_back(rng.chance(0.6) ? pick(rng, values) : rng.rational(6, 4));
  }
  return out;
}

Configuration random_cone_member(Random& rng, RootSystemType type, std::size_t n) {
  const RootSystemType cone = cone_type(type);
  const std::vector<Rational> levels = pool(rng, static_cast<std::size_t>(rng.uniform(1, 3)), 4, 2);
  std::vector<Rational> lambda, chi;
  for (std::size_t i = 0; i < n; ++i) lambda.push_back(pick(rng, levels));
  for (std::size_t i = 0; i < n; ++i) chi.push_back(rng.rational(6, 3));
  if (cone == RootSystemType::A) {
    // Increasing lambda receives decreasing d.
    std::sort(lambda.begin(), lambda.end());
    std::sort(chi.begin(), chi.end(), std::greater<>());
  } else {
    // Increasing |lambda| receives increasing |d|, with sign(d) = -sign(lambda).
    std::sort(lambda.begin(), lambda.end(), [](const Rational& x, const Rational& y) { return abs(x) < abs(y); });
    for (Rational& d : chi) d = abs(d);
    std::sort(chi.begin(), chi.end());
    for (std::size_t i = 0; i < n; ++i) {
      const int s = sgn(lambda[i]);
      if (s > 0 || (s == 0 && rng.chance(0.5))) chi[i] = -chi[i];
    }
    // D also admits one violator of minimal |lambda| and minimal |d|.
    if (cone == RootSystemType::D && n > 0 && lambda[0] != 0 && chi[0] != 0 && rng.chance(0.5)) chi[0] = -chi[0];
  }
  shuffle_together(rng, lambda, chi);
  return Configuration::from_finite(type, lambda, chi);
}

Configuration random_cone_nonmember(Random& rng, RootSystemType type, std::size_t n) {
  // A single index has no negative-energy element for A and D.
  n = std::max<std::size_t>(n, 2);
  for (;;) {
    Configuration base = random_cone_member(rng, type, n);
    std::vector<Rational> lambda, chi;
    for (const Block& b : base.blocks()) {
      for (const Rational& d : b.finite) {
        lambda.push_back(b.level);
        chi.push_back(d);
      }
    }
    switch (rng.uniform(0, 2)) {
      case 0: {  // swap two d-values
        const auto i = static_cast<std::size_t>(rng.uniform(0, static_cast<int>(n) - 1));
        const auto j = static_cast<std::size_t>(rng.uniform(0, static_cast<int>(n) - 1));
        std::swap(chi[i], chi[j]);
        break;
      }
      case 1: {  // perturb one d-value
        const auto i = static_cast<std::size_t>(rng.uniform(0, static_cast<int>(n) - 1));
        chi[i] = rng.chance(0.5) ? Rational(-chi[i]) : Rational(chi[i] + rng.nonzero_rational(4, 2));
        break;
      }
      default: {
        FinitePair p = random_finite_pair(rng, n);
        lambda = std::move(p.lambda);
        chi = std::move(p.chi);
      }
    }
    if (kernels::min_energy_serial(lambda, chi, type) < 0) return Configuration::from_finite(type, lambda, chi);
  }
}

namespace {

Tail random_shape(Random& rng, const Rational& limit, const Rational& coefficient) {
  switch (rng.uniform(0, 3)) {
    case 0: return Tail::constant(limit);
    case 1: return Tail::harmonic(limit, coefficient);
    case 2: return Tail::power(limit, coefficient, rng.uniform(2, 3));
    default: {
      static const Rational ratios[] = {Rational(1, 2), Rational(1, 3), Rational(2, 3)};
      return Tail::geometric(limit, coefficient, ratios[rng.uniform(0, 2)]);
    }
  }
}

// Entries >= 0: limit r >= 0 and r + c * deviation(1) >= 0.
Tail nonnegative_tail(Random& rng, const Rational& r) {
  Rational c = rng.nonzero_rational(3, 2);
  if (r == 0) {
    c = abs(c);
  } else if (c < -r) {
    c = -r;
  }
  return random_shape(rng, r, c);
}

}  // namespace

Configuration random_symbolic(Random& rng, RootSystemType type, const SymbolicOptions& options) {
  const bool signed_type = has_sign_changes(type);
  const auto nblocks = static_cast<std::size_t>(rng.uniform(1, static_cast<int>(options.max_blocks)));
  std::vector<Rational> levels;
  while (levels.size() < nblocks) {
    Rational l = rng.rational(3, 2);
    if (std::find(levels.begin(), levels.end(), l) == levels.end()) levels.push_back(l);
  }
  std::vector<Block> blocks;
  for (const Rational& level : levels) {
    Block block{level, {}, {}};
    const int nf = rng.uniform(0, static_cast<int>(options.max_finite));
    for (int i = 0; i < nf; ++i) block.finite.push_back(rng.rational(5, 3));
    const int nt = rng.uniform(block.finite.empty() ? 1 : 0, static_cast<int>(options.max_tails));
    for (int i = 0; i < nt; ++i) {
      if (options.allow_divergent && rng.chance(0.1)) {
        Rational c = rng.nonzero_rational(2, 1);
        block.tails.push_back(Tail::divergent(c));
        continue;
      }
      if (signed_type) {
        Tail t = nonnegative_tail(rng, abs(rng.rational(3, 2)));
        block.tails.push_back(rng.chance(0.5) ? t.negated() : t);
      } else {
        block.tails.push_back(random_shape(rng, rng.rational(3, 2), rng.nonzero_rational(3, 2)));
      }
    }
    blocks.push_back(std::move(block));
  }
  return Configuration(type, std::move(blocks));
}

namespace {

// Decreasing accumulation points along increasing levels (type A), with
// occasional ties and unbounded extreme levels.
Configuration positive_candidate_a(Random& rng, const SymbolicOptions& options) {
  const auto nblocks = static_cast<std::size_t>(rng.uniform(1, static_cast<int>(options.max_blocks)));
  std::vector<Rational> levels;
  while (levels.size() < nblocks) {
    Rational l = rng.rational(3, 2);
    if (std::find(levels.begin(), levels.end(), l) == levels.end()) levels.push_back(l);
  }
  std::sort(levels.begin(), levels.end());
  Rational ceiling = rng.rational(4, 1) + 4;
  std::vector<Block> blocks;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    Block block{levels[i], {}, {}};
    const int nf = rng.uniform(0, static_cast<int>(options.max_finite));
    for (int k = 0; k < nf; ++k) block.finite.push_back(rng.rational(5, 3));
    const int nt = rng.uniform(block.finite.empty() ? 1 : 0, static_cast<int>(options.max_tails));
    Rational floor = ceiling;
    for (int k = 0; k < nt; ++k) {
      const bool top = i + 1 == levels.size();
      if (options.allow_divergent && (top || i == 0) && rng.chance(0.15)) {
        block.tails.push_back(Tail::divergent(top ? Rational(-1) : Rational(1)));
        continue;
      }
      Rational r = rng.chance(0.3) ? ceiling : Rational(ceiling - abs(rng.nonzero_rational(3, 2)));
      floor = std::min(floor, r);
      block.tails.push_back(random_shape(rng, r, rng.nonzero_rational(3, 2)));
    }
    ceiling = rng.chance(0.3) ? floor : Rational(floor - abs(rng.nonzero_rational(2, 2)));
    blocks.push_back(std::move(block));
  }
  return Configuration(RootSystemType::A, std::move(blocks));
}

// Increasing |d| accumulation with |lambda|, entries signed against lambda.
Configuration positive_candidate_signed(Random& rng, RootSystemType type, const SymbolicOptions& options) {
  const auto nblocks = static_cast<std::size_t>(rng.uniform(1, static_cast<int>(options.max_blocks)));
  std::vector<Rational> levels;
  while (levels.size() < nblocks) {
    Rational l = rng.rational(3, 2);
    if (std::find(levels.begin(), levels.end(), l) == levels.end()) levels.push_back(l);
  }
  std::sort(levels.begin(), levels.end(), [](const Rational& x, const Rational& y) { return abs(x) < abs(y); });
  Rational floor = abs(rng.rational(2, 2));
  std::vector<Block> blocks;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const Rational& level = levels[i];
    const int against = sgn(level) > 0 ? -1 : 1;
    Block block{level, {}, {}};
    const int nf = rng.uniform(0, static_cast<int>(options.max_finite));
    for (int k = 0; k < nf; ++k) block.finite.push_back(rng.rational(5, 3));
    const int nt = rng.uniform(block.finite.empty() ? 1 : 0, static_cast<int>(options.max_tails));
    Rational top = floor;
    for (int k = 0; k < nt; ++k) {
      if (options.allow_divergent && i + 1 == levels.size() && rng.chance(0.15)) {
        block.tails.push_back(Tail::divergent(Rational(against)));
        continue;
      }
      Rational r = rng.chance(0.3) ? floor : Rational(floor + abs(rng.nonzero_rational(3, 2)));
      top = std::max(top, r);
      Tail t = nonnegative_tail(rng, r);
      const bool with_lambda = rng.chance(0.1);
      block.tails.push_back((with_lambda ? -against : against) < 0 ? t.negated() : t);
    }
    floor = rng.chance(0.3) ? top : Rational(top + abs(rng.nonzero_rational(2, 2)));
    blocks.push_back(std::move(block));
  }
  return Configuration(type, std::move(blocks));
}

}  // namespace

Configuration random_positive(Random& rng, RootSystemType type, const SymbolicOptions& options) {
  for (;;) {
    Configuration c = type == RootSystemType::A ? positive_candidate_a(rng, options)
                                                : positive_candidate_signed(rng, type, options);
    if (decide_pec(c).positive()) return c;
  }
}

}  // namespace peckit
