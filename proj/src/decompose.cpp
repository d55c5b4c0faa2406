#include "pec_internal.hpp"

#include <algorithm>

namespace peckit {

ThresholdPlan plan_thresholds(const LevelAnalysis& analysis) {
  ThresholdPlan plan;
  plan.levels = analysis.closure_levels;
  const std::size_t k = plan.levels.size() - 1;
  plan.a.assign(k + 2, Extended(0));
  plan.a[0] = Extended::pos_inf();
  plan.a[k + 1] = Extended::neg_inf();
  for (std::size_t t = 1; t <= k; ++t) {
    const Extended lo = analysis.at(plan.levels[t - 1]).r_min;
    const Extended hi = analysis.at(plan.levels[t]).r_max;
    if (lo.is_finite() && hi.is_finite()) {
      plan.a[t] = Extended(Rational((lo.value() + hi.value()) / 2));
    } else if (hi.is_finite()) {
      plan.a[t] = Extended(Rational(hi.value() + 1));
    } else if (lo.is_finite()) {
      plan.a[t] = Extended(Rational(lo.value() - 1));
    } else {
      plan.a[t] = Extended(0);
    }
  }
  return plan;
}

std::pair<Extended, Extended> ThresholdPlan::window(const Rational& level) const {
  for (std::size_t t = 0; t < levels.size(); ++t) {
    if (levels[t] == level) return {a[t + 1], a[t]};
    if (levels[t] > level) return {a[t], a[t]};
  }
  throw DomainError("level " + to_string(level) + " lies outside the threshold plan");
}

bool SumRecord::covers(const Label& label) const {
  if (label.block != first.block || label.tail != first.tail) return false;
  if (!label.tail) return label.position == first.position;
  return label.position >= first.position && (!last || label.position <= *last);
}

Rational Decomposition::chi_sum_at(const Configuration& original, const Label& label) const {
  for (const SumRecord& r : chi_sum) {
    if (r.covers(label)) return r.value(value_of(original, label));
  }
  return 0;
}

namespace detail {

namespace {

struct Range {
  std::uint64_t first = 1;
  std::optional<std::uint64_t> last;

  bool empty() const { return last && *last < first; }
};

Range to_range(const IndexRun& run) {
  if (run.suffix) return {run.count + 1, std::nullopt};
  return {1, run.count};
}

bool run_empty(const IndexRun& run) { return !run.suffix && run.count == 0; }

Interval range_sum(const Tail& tail, const Range& range, const Rational& r) {
  if (range.last) return run_distance_sum(tail, range.first, *range.last, r);
  SideSummary s = suffix_distance_sum(tail, range.first - 1, r);
  if (!s.summable) {
    throw DomainError("internal: correction on " + tail.describe() + " is not summable");
  }
  return s.sum;
}

Extended non_negative(const Extended& x) { return max(x, Extended(0)); }

class Builder {
 public:
  Builder(const Configuration& config, bool signed_type) : config_(config), signed_(signed_type) {}

  Decomposition& out() { return out_; }

  void run() {
    std::vector<Block> blocks;
    for (std::size_t b = 0; b < config_.blocks().size(); ++b) {
      const Block& block = config_.block(b);
      auto [lo, hi] = out_.plan.window(signed_ ? Rational(-abs(block.level)) : block.level);
      if (signed_) {
        lo = non_negative(lo);
        hi = non_negative(hi);
      }
      Block target{block.level, {}, {}};
      for (std::size_t p = 0; p < block.finite.size(); ++p) {
        target.finite.push_back(finite_entry(Label{b, std::nullopt, p}, block.level, block.finite[p], lo, hi));
      }
      for (std::size_t t = 0; t < block.tails.size(); ++t) {
        target.tails.push_back(tail_entry(b, t, block.level, block.tails[t], lo, hi));
      }
      blocks.push_back(std::move(target));
    }
    out_.chi_min = Configuration(config_.type(), std::move(blocks));
  }

 private:
  // chi_min = s * clamp(u, lo, hi) with u = |d| (signed types) or u = d.
  int target_sign(const Rational& level, int eps) const {
    if (!signed_) return 1;
    if (level != 0) return -sgn(level);
    return eps < 0 ? -1 : 1;
  }

  Rational finite_entry(const Label& label, const Rational& level, const Rational& d, const Extended& lo,
                        const Extended& hi) {
    const Rational u = signed_ ? Rational(abs(d)) : d;
    const Rational v = target_sign(level, sgn(d)) * clamp(u, lo, hi);
    if (v != d) {
      SumRecord rec;
      rec.first = label;
      rec.alpha = 0;
      rec.beta = d - v;
      rec.sum = Interval::exact(abs(rec.beta));
      rec.zone = "explicit";
      push(std::move(rec));
    }
    return v;
  }

  Tail tail_entry(std::size_t b, std::size_t t, const Rational& level, const Tail& tail, const Extended& lo,
                  const Extended& hi) {
    int eps = 1;
    if (signed_) {
      if (tail.infimum() < Extended(0)) {
        eps = -1;
      } else if (tail.supremum() == Extended(0)) {
        eps = 0;
      }
    }
    const Tail u = eps < 0 ? tail.negated() : tail;
    const int s = target_sign(level, eps);
    const int se = eps == 0 ? 1 : s * eps;

    const IndexRun high = hi.is_finite() ? u.above(hi.value()) : IndexRun::none();
    const IndexRun low = lo.is_finite() ? u.below(lo.value()) : IndexRun::none();
    if (!run_empty(high)) {
      add_zone(b, t, u, to_range(high), 1, Rational(-s * hi.value()), Rational(se * hi.value()), 1, "clipped above");
    }
    if (!run_empty(low)) {
      add_zone(b, t, u, to_range(low), 1, Rational(-s * lo.value()), Rational(se * lo.value()), 1, "clipped below");
    }
    if (se < 0) {
      // Unclipped entries of J_+ are flipped: chi_sum = 2 d there.
      Range mid;
      for (const IndexRun& z : {high, low}) {
        if (run_empty(z)) continue;
        if (z.suffix) {
          mid.last = mid.last ? std::min(*mid.last, z.count) : z.count;
        } else {
          mid.first = std::max(mid.first, z.count + 1);
        }
      }
      if (!mid.empty()) add_zone(b, t, u, mid, 2, 0, 0, 2, "sign flip");
    }
    Tail clipped = u.clipped(lo, hi);
    return s < 0 ? clipped.negated() : clipped;
  }

  void add_zone(std::size_t b, std::size_t t, const Tail& u, const Range& range, const Rational& alpha,
                const Rational& beta, const Rational& target, const Rational& factor, const char* zone) {
    SumRecord rec;
    rec.first = Label{b, t, range.first};
    rec.last = range.last;
    rec.alpha = alpha;
    rec.beta = beta;
    rec.sum = range_sum(u, range, target).scaled(factor);
    rec.zone = zone;
    push(std::move(rec));
  }

  void push(SumRecord rec) {
    out_.C += rec.sum;
    out_.chi_sum.push_back(std::move(rec));
  }

  const Configuration& config_;
  bool signed_;
  Decomposition out_;
};

}  // namespace

Decomposition decompose_positive(const Configuration& config) {
  const bool signed_type = has_sign_changes(config.type());
  const Configuration problem = signed_type ? abs_transform(config) : config;
  ThresholdPlan plan = plan_thresholds(analyze(problem));
  if (signed_type) {
    for (Extended& a : plan.a) {
      if (a.is_finite()) a = non_negative(a);
    }
  }

  Decomposition out;
  out.type = config.type();
  out.M = config.max_abs_level();
  out.plan_on_absolute = signed_type;
  if (in_cmin(config).member) {
    out.already_minimal = true;
    out.chi_min = config;
    out.plan = std::move(plan);
    out.C = Interval::exact(0);
    out.bound = 0;
    out.note = "chi already lies in the minimal-energy cone";
    return out;
  }
  Builder builder(config, signed_type);
  builder.out().plan = std::move(plan);
  builder.run();
  out = std::move(builder.out());
  out.type = config.type();
  out.M = config.max_abs_level();
  out.plan_on_absolute = signed_type;
  out.bound = -2 * out.M * out.C.hi;
  if (config.type() == RootSystemType::D) {
    out.note = "decomposed as type B; C_min(lambda, B_J) is contained in C_min(lambda, D_J)";
  }
  return out;
}

}  // namespace detail

}  // namespace peckit
