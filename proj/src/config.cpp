#include "peckit/config.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace peckit {

namespace {

constexpr std::uint64_t kExactRun = 2048;

}  // namespace

Configuration::Configuration(RootSystemType type, std::vector<Block> blocks)
    : type_(type), blocks_(std::move(blocks)) {
  if (blocks_.empty()) throw DomainError("configuration has no blocks");
  std::map<Rational, std::size_t> seen;
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    const Block& block = blocks_[b];
    if (block.finite.empty() && block.tails.empty()) {
      throw DomainError("block " + std::to_string(b) + " has no entries");
    }
    if (!seen.emplace(block.level, b).second) {
      throw DomainError("duplicate level " + to_string(block.level) + " in blocks " +
                        std::to_string(seen[block.level]) + " and " + std::to_string(b));
    }
    if (has_sign_changes(type_)) {
      for (std::size_t t = 0; t < block.tails.size(); ++t) {
        if (!block.tails[t].one_signed()) {
          throw DomainError("block " + std::to_string(b) + " tail " + std::to_string(t) +
                            " changes sign, which type " + to_string(type_) + " does not accept");
        }
      }
    }
  }
}

Configuration Configuration::from_finite(RootSystemType type, std::span<const Rational> lambda,
                                         std::span<const Rational> chi) {
  if (lambda.size() != chi.size()) throw DomainError("lambda and chi differ in length");
  std::vector<Block> blocks;
  std::map<Rational, std::size_t> where;
  for (std::size_t j = 0; j < lambda.size(); ++j) {
    auto [it, fresh] = where.emplace(lambda[j], blocks.size());
    if (fresh) blocks.push_back(Block{lambda[j], {}, {}});
    blocks[it->second].finite.push_back(chi[j]);
  }
  return Configuration(type, std::move(blocks));
}

std::optional<std::size_t> Configuration::find_level(const Rational& level) const {
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    if (blocks_[b].level == level) return b;
  }
  return std::nullopt;
}

Configuration Configuration::with_type(RootSystemType type) const { return Configuration(type, blocks_); }

std::vector<Rational> Configuration::levels() const {
  std::vector<Rational> out;
  for (const Block& b : blocks_) out.push_back(b.level);
  std::sort(out.begin(), out.end());
  return out;
}

Rational Configuration::max_abs_level() const {
  Rational m = 0;
  for (const Block& b : blocks_) m = std::max(m, Rational(abs(b.level)));
  return m;
}

std::size_t Configuration::tail_count() const {
  std::size_t n = 0;
  for (const Block& b : blocks_) n += b.tails.size();
  return n;
}

std::string Label::str() const {
  std::ostringstream out;
  out << "b" << block;
  if (tail) {
    out << ".t" << *tail << "[s=" << position << "]";
  } else {
    out << ".f" << position;
  }
  return out.str();
}

Rational level_of(const Configuration& config, const Label& label) { return config.block(label.block).level; }

Rational value_of(const Configuration& config, const Label& label) {
  const Block& block = config.block(label.block);
  if (label.tail) return block.tails.at(*label.tail).entry(label.position);
  return block.finite.at(label.position);
}

std::uint64_t depth_of(const Label& label) { return label.tail ? label.position : 0; }

const LevelFacts& LevelAnalysis::at(const Rational& level) const {
  for (const LevelFacts& f : levels) {
    if (f.level == level) return f;
  }
  throw DomainError("level " + to_string(level) + " is not in the configuration");
}

LevelAnalysis analyze(const Configuration& config) {
  LevelAnalysis out;
  for (std::size_t b = 0; b < config.blocks().size(); ++b) {
    const Block& block = config.block(b);
    LevelFacts f;
    f.level = block.level;
    f.block = b;
    f.infinite = block.infinite();
    f.inf_d = Extended::pos_inf();
    f.sup_d = Extended::neg_inf();
    for (const Rational& d : block.finite) {
      f.inf_d = min(f.inf_d, Extended(d));
      f.sup_d = max(f.sup_d, Extended(d));
    }
    for (const Tail& tail : block.tails) {
      f.inf_d = min(f.inf_d, tail.infimum());
      f.sup_d = max(f.sup_d, tail.supremum());
      Extended lim = tail.limit();
      if (lim.is_finite()) f.accumulation.push_back(lim.value());
    }
    std::sort(f.accumulation.begin(), f.accumulation.end());
    f.accumulation.erase(std::unique(f.accumulation.begin(), f.accumulation.end()), f.accumulation.end());
    if (!f.accumulation.empty()) {
      f.r_min = f.accumulation.front();
      f.r_max = f.accumulation.back();
    }
    out.levels.push_back(std::move(f));
  }
  std::sort(out.levels.begin(), out.levels.end(),
            [](const LevelFacts& a, const LevelFacts& b) { return a.level < b.level; });
  out.m_min = out.levels.front().level;
  out.m_max = out.levels.back().level;
  for (const LevelFacts& f : out.levels) {
    if (f.infinite || f.level == out.m_min || f.level == out.m_max) out.closure_levels.push_back(f.level);
  }
  return out;
}

bool is_essentially_bounded(const Configuration& config) {
  const LevelAnalysis a = analyze(config);
  for (const LevelFacts& f : a.levels) {
    if (f.level != a.m_max && !f.bounded_below()) return false;
    if (f.level != a.m_min && !f.bounded_above()) return false;
  }
  return true;
}

std::string to_string(Side side) { return side == Side::kAbove ? "above" : "below"; }

namespace {

// Sum of g(s) = |entry(s) - r| over [first, last] by monotone chunk bounds:
// on each chunk the values lie between the endpoint values.
Interval chunk_bounds(const Tail& tail, std::uint64_t first, std::uint64_t last, const Rational& r) {
  Interval total = Interval::exact(0);
  std::uint64_t u = first;
  while (u <= last) {
    std::uint64_t step = std::max<std::uint64_t>(1, u / 64);
    std::uint64_t v = std::min(last, u + step - 1);
    Rational gu = abs(tail.entry(u) - r);
    Rational gv = abs(tail.entry(v) - r);
    Rational len(mpz_class(v - u + 1));
    total += Interval{len * std::min(gu, gv), len * std::max(gu, gv)};
    u = v + 1;
  }
  return total;
}

Interval exact_loop(const Tail& tail, std::uint64_t first, std::uint64_t last, const Rational& r) {
  Rational sum = 0;
  for (std::uint64_t s = first; s <= last; ++s) sum += abs(tail.entry(s) - r);
  return Interval::exact(sum);
}

Interval absolute(const Interval& x) {
  if (x.lo >= 0) return x;
  if (x.hi <= 0) return {-x.hi, -x.lo};
  return {0, std::max(Rational(-x.lo), x.hi)};
}

// Sum over [first, last] inside the regime, where entries follow one closed form.
Interval regime_run(const Tail& tail, const TailRegime& regime, std::uint64_t first, std::uint64_t last,
                    const Rational& r) {
  const Rational count(mpz_class(last - first + 1));
  switch (regime.kind) {
    case TailRegime::Kind::kConstant: return Interval::exact(count * abs(regime.offset - r));
    case TailRegime::Kind::kDivergent: {
      // sum_{s=first}^{last} (scale s - r)
      Rational s_sum = Rational(mpz_class(first) + mpz_class(last)) * count / 2;
      return Interval::exact(abs(regime.scale * s_sum - count * r));
    }
    case TailRegime::Kind::kDeviating: break;
  }
  if (tail.shape() == TailShape::kHarmonic) return chunk_bounds(tail, first, last, r);
  const Rational width = Rational(1, 1U << 20) / abs(regime.scale);
  Interval from = tail.deviation_tail_sum(first - 1, width);
  Interval to = tail.deviation_tail_sum(last, width);
  Interval dev{from.lo - to.hi, from.hi - to.lo};
  Rational base = count * (regime.offset - r);
  Interval signed_sum = regime.scale > 0 ? Interval{base + regime.scale * dev.lo, base + regime.scale * dev.hi}
                                         : Interval{base + regime.scale * dev.hi, base + regime.scale * dev.lo};
  return absolute(signed_sum);
}

}  // namespace

Interval run_distance_sum(const Tail& tail, std::uint64_t first, std::uint64_t last, const Rational& r) {
  if (first == 0) first = 1;
  if (last < first) return Interval::exact(0);
  if (last - first < kExactRun) return exact_loop(tail, first, last, r);
  const TailRegime regime = tail.regime();
  Interval total = Interval::exact(0);
  if (first <= regime.prefix) {
    std::uint64_t stop = std::min(last, regime.prefix);
    total += stop - first < kExactRun ? exact_loop(tail, first, stop, r) : chunk_bounds(tail, first, stop, r);
    first = stop + 1;
  }
  if (first <= last) {
    total += last - first < kExactRun ? exact_loop(tail, first, last, r) : regime_run(tail, regime, first, last, r);
  }
  return total;
}

SideSummary suffix_distance_sum(const Tail& tail, std::uint64_t after, const Rational& r) {
  SideSummary out;
  out.infinite = true;
  const TailRegime regime = tail.regime();
  const std::uint64_t k = std::max(after, regime.prefix);
  const bool settles = regime.kind == TailRegime::Kind::kConstant
                           ? regime.offset == r
                           : regime.kind == TailRegime::Kind::kDeviating && regime.offset == r && tail.summable_shape();
  if (!settles) {
    out.summable = false;
    return out;
  }
  out.sum = run_distance_sum(tail, after + 1, k, r);
  if (regime.kind == TailRegime::Kind::kDeviating) {
    const Rational width = Rational(1, 1U << 20) / abs(regime.scale);
    out.sum += tail.deviation_tail_sum(k, width).scaled(abs(regime.scale));
  }
  return out;
}

SideSummary tail_side_summary(const Tail& tail, const Rational& r, Side side) {
  const IndexRun run = side == Side::kAbove ? tail.above(r) : tail.below(r);
  if (run.suffix) return suffix_distance_sum(tail, run.count, r);
  SideSummary out;
  out.sum = run_distance_sum(tail, 1, run.count, r);
  return out;
}

SideSummary side_summability(const Configuration& config, const Rational& level, const Rational& r, Side side) {
  auto b = config.find_level(level);
  if (!b) throw DomainError("level " + to_string(level) + " is not in the configuration");
  const Block& block = config.block(*b);
  SideSummary out;
  for (const Rational& d : block.finite) {
    if (side == Side::kAbove ? d > r : d < r) out.sum += Interval::exact(abs(d - r));
  }
  for (const Tail& tail : block.tails) {
    SideSummary part = tail_side_summary(tail, r, side);
    out.infinite = out.infinite || part.infinite;
    out.summable = out.summable && part.summable;
    if (part.summable) out.sum += part.sum;
  }
  if (!out.summable) out.sum = Interval::exact(0);
  return out;
}

std::vector<Index> Truncation::support() const { return lambda.indices(); }

std::vector<Rational> Truncation::lambda_values() const {
  std::vector<Rational> out;
  out.reserve(labels.size());
  for (const auto& [index, value] : lambda) out.push_back(value);
  return out;
}

std::vector<Rational> Truncation::chi_values() const {
  std::vector<Rational> out;
  out.reserve(labels.size());
  for (const auto& [index, value] : chi) out.push_back(value);
  return out;
}

std::optional<Index> Truncation::find(const Label& label) const {
  auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) return std::nullopt;
  return static_cast<Index>(it - labels.begin()) + 1;
}

Configuration shifted(const Configuration& config, const Rational& c) {
  std::vector<Block> blocks = config.blocks();
  for (Block& block : blocks) {
    for (Rational& d : block.finite) d += c;
    for (Tail& tail : block.tails) tail = tail.shifted(c);
  }
  return Configuration(config.type(), std::move(blocks));
}

Truncation truncate(const Configuration& config, std::uint64_t depth) {
  if (depth == 0) throw DomainError("truncation depth must be >= 1");
  Truncation out;
  Index next = 1;
  auto push = [&](const Rational& level, Rational d, Label label) {
    out.lambda.set(next, level);
    out.chi.set(next, std::move(d));
    out.labels.push_back(label);
    ++next;
  };
  for (std::size_t b = 0; b < config.blocks().size(); ++b) {
    const Block& block = config.block(b);
    for (std::size_t p = 0; p < block.finite.size(); ++p) push(block.level, block.finite[p], Label{b, std::nullopt, p});
    for (std::size_t t = 0; t < block.tails.size(); ++t) {
      for (std::uint64_t s = 1; s <= depth; ++s) push(block.level, block.tails[t].entry(s), Label{b, t, s});
    }
  }
  return out;
}

}  // namespace peckit
