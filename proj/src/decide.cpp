#include "pec_internal.hpp"

#include <map>

namespace peckit {

using namespace detail;

namespace {

std::optional<std::size_t> tail_with_limit(const Block& block, const Extended& limit) {
  for (std::size_t t = 0; t < block.tails.size(); ++t) {
    if (block.tails[t].limit() == limit) return t;
  }
  return std::nullopt;
}

DivergenceFamily unbounded_family(const Configuration& config, const LevelAnalysis& a, std::size_t x, bool below) {
  const LevelFacts& f = a.levels[x];
  // The partner level lies on the side where the transposition gains.
  const LevelFacts& partner = below ? a.levels[x + 1] : a.levels[x - 1];
  DivergenceFamily fam;
  fam.kind = FamilyKind::kNotEssentiallyBounded;
  fam.levels = {f.level};
  fam.values = {below ? Extended::neg_inf() : Extended::pos_inf()};
  fam.detail = "D(J_" + to_string(f.level) + ") is unbounded " + (below ? "below" : "above") + " although " +
               to_string(f.level) + (below ? " != m_max" : " != m_min");
  fam.block = f.block;
  fam.tail = *tail_with_limit(config.block(f.block), fam.values[0]);
  fam.anchor = first_entry(config, partner.block);
  return fam;
}

std::optional<std::size_t> non_summable_tail(const Block& block, const Rational& r, Side side) {
  for (std::size_t t = 0; t < block.tails.size(); ++t) {
    if (!tail_side_summary(block.tails[t], r, side).summable) return t;
  }
  return std::nullopt;
}

// A harmonic partner on the same side as the driving tail is sampled at s^2
// so that its deviation c/s^2 is dominated by the driving c/s.
bool harmonic_approach(const Tail& partner, const Rational& r, Side side) {
  const IndexRun run = side == Side::kAbove ? partner.above(r) : partner.below(r);
  return run.suffix && partner.shape() == TailShape::kHarmonic;
}

}  // namespace

std::optional<DivergenceFamily> type_a_obstruction(const Configuration& config) {
  const LevelAnalysis a = analyze(config);
  if (a.levels.size() == 1) return std::nullopt;
  for (std::size_t x = 0; x < a.levels.size(); ++x) {
    const LevelFacts& f = a.levels[x];
    if (f.level != a.m_max && !f.bounded_below()) return unbounded_family(config, a, x, true);
    if (f.level != a.m_min && !f.bounded_above()) return unbounded_family(config, a, x, false);
  }
  const auto& closure = a.closure_levels;
  for (std::size_t x = 0; x < closure.size(); ++x) {
    for (std::size_t y = x + 1; y < closure.size(); ++y) {
      const LevelFacts& m = a.at(closure[x]);
      const LevelFacts& n = a.at(closure[y]);
      if (n.r_max > m.r_min) {
        DivergenceFamily fam;
        fam.kind = FamilyKind::kStrictCrossing;
        fam.levels = {m.level, n.level};
        fam.values = {m.r_min, n.r_max};
        fam.detail = "r_min(" + to_string(m.level) + ") = " + m.r_min.str() + " < r_max(" + to_string(n.level) +
                     ") = " + n.r_max.str();
        fam.block = m.block;
        fam.tail = *tail_with_limit(config.block(m.block), m.r_min);
        fam.partner_block = n.block;
        fam.partner_tail = *tail_with_limit(config.block(n.block), n.r_max);
        return fam;
      }
      if (!(n.r_max == m.r_min) || !m.r_min.is_finite()) continue;
      const Rational r = m.r_min.value();
      DivergenceFamily fam;
      fam.kind = FamilyKind::kNonSummableSide;
      fam.levels = {m.level, n.level};
      fam.values = {Extended(r)};
      if (auto t = non_summable_tail(config.block(m.block), r, Side::kBelow)) {
        fam.detail = "J_" + to_string(m.level) + "^{<" + to_string(r) + "} is not summable";
        fam.block = m.block;
        fam.tail = *t;
        fam.partner_block = n.block;
        fam.partner_tail = *tail_with_limit(config.block(n.block), Extended(r));
        fam.partner_squared = harmonic_approach(config.block(n.block).tails[fam.partner_tail], r, Side::kBelow);
        fam.driving_first = true;
        return fam;
      }
      if (auto t = non_summable_tail(config.block(n.block), r, Side::kAbove)) {
        fam.detail = "J_" + to_string(n.level) + "^{>" + to_string(r) + "} is not summable";
        fam.block = n.block;
        fam.tail = *t;
        fam.partner_block = m.block;
        fam.partner_tail = *tail_with_limit(config.block(m.block), Extended(r));
        fam.partner_squared = harmonic_approach(config.block(m.block).tails[fam.partner_tail], r, Side::kAbove);
        fam.driving_first = false;
        return fam;
      }
    }
  }
  return std::nullopt;
}

AbsTransform abs_transform_with_origin(const Configuration& config) {
  std::vector<Block> blocks;
  AbsTransform out;
  std::map<Rational, std::size_t> where;
  for (std::size_t b = 0; b < config.blocks().size(); ++b) {
    const Block& block = config.block(b);
    const Rational level = -abs(block.level);
    auto [it, fresh] = where.emplace(level, blocks.size());
    if (fresh) {
      blocks.push_back(Block{level, {}, {}});
      out.finite_origin.emplace_back();
      out.tail_origin.emplace_back();
    }
    const std::size_t nb = it->second;
    for (std::size_t p = 0; p < block.finite.size(); ++p) {
      blocks[nb].finite.push_back(abs(block.finite[p]));
      out.finite_origin[nb].push_back(Label{b, std::nullopt, p});
    }
    for (std::size_t t = 0; t < block.tails.size(); ++t) {
      const Tail& tail = block.tails[t];
      if (!tail.one_signed()) throw DomainError("abs_transform: tail " + tail.describe() + " changes sign");
      blocks[nb].tails.push_back(tail.infimum() >= Extended(0) ? tail : tail.negated());
      out.tail_origin[nb].emplace_back(b, t);
    }
  }
  out.config = Configuration(RootSystemType::A, std::move(blocks));
  return out;
}

Configuration abs_transform(const Configuration& config) { return abs_transform_with_origin(config).config; }

Label AbsTransform::to_original(const Label& label) const {
  if (label.tail) {
    auto [b, t] = tail_origin.at(label.block).at(*label.tail);
    return Label{b, t, label.position};
  }
  return finite_origin.at(label.block).at(label.position);
}

JplusSum jplus_weighted_sum(const Configuration& config) {
  JplusSum out;
  for (std::size_t b = 0; b < config.blocks().size(); ++b) {
    const Block& block = config.block(b);
    const int s = sgn(block.level);
    if (s == 0) continue;
    const Rational weight = abs(block.level);
    for (const Rational& d : block.finite) {
      if (sgn(d) == s) out.bound += Interval::exact(weight * abs(d));
    }
    for (std::size_t t = 0; t < block.tails.size(); ++t) {
      const Side side = s > 0 ? Side::kAbove : Side::kBelow;
      SideSummary part = tail_side_summary(block.tails[t], 0, side);
      if (!part.summable) {
        if (out.finite) {
          out.finite = false;
          out.block = b;
          out.tail = t;
          IndexRun run = s > 0 ? block.tails[t].above(0) : block.tails[t].below(0);
          out.start = run.count;
        }
        continue;
      }
      out.bound += part.sum.scaled(weight);
    }
  }
  if (!out.finite) out.bound = Interval::exact(0);
  return out;
}

PecDecision decide_pec(const Configuration& config) {
  PecDecision out;
  std::optional<DivergenceFamily> family;
  if (config.type() == RootSystemType::A) {
    family = type_a_obstruction(config);
  } else {
    family = type_a_obstruction(abs_transform(config));
    if (family) {
      family->via_abs_transform = true;
      family->detail = "absolute problem (-|lambda|, |chi|): " + family->detail;
    } else if (JplusSum jp = jplus_weighted_sum(config); !jp.finite) {
      DivergenceFamily f;
      f.kind = FamilyKind::kJplusInfinite;
      f.levels = {config.block(jp.block).level};
      f.block = jp.block;
      f.tail = jp.tail;
      f.start = jp.start;
      f.detail = "sum over J_+ of |lambda_j d_j| diverges on " + config.block(jp.block).tails[jp.tail].describe() +
                 " at level " + to_string(config.block(jp.block).level);
      family = f;
    }
  }
  if (family) {
    out.verdict = Verdict::kNegative;
    out.family = std::move(family);
    return out;
  }
  out.verdict = Verdict::kPositive;
  out.decomposition = decompose_positive(config);
  out.lower_bound = out.decomposition->bound;
  return out;
}

Decomposition decompose(const Configuration& config) {
  PecDecision d = decide_pec(config);
  if (!d.positive()) {
    throw RefusalError("decompose refused: the configuration is not positive energy (" + d.family->describe() + ")");
  }
  return std::move(*d.decomposition);
}

Rational lower_bound(const Configuration& config) {
  PecDecision d = decide_pec(config);
  if (!d.positive()) {
    throw RefusalError("lower_bound refused: the configuration is not positive energy (" + d.family->describe() +
                       ")");
  }
  return d.lower_bound;
}

std::string to_string(Verdict verdict) {
  return verdict == Verdict::kPositive ? "positive_energy" : "not_positive_energy";
}

}  // namespace peckit
