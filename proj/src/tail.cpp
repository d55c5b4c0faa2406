#include "peckit/tail.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace peckit {

namespace {

constexpr std::uint64_t kAll = std::numeric_limits<std::uint64_t>::max();
constexpr std::uint64_t kGeometricScanLimit = 50'000'000;

mpz_class floor_of(const Rational& x) {
  mpz_class out;
  mpz_fdiv_q(out.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return out;
}

mpz_class ceil_of(const Rational& x) {
  mpz_class out;
  mpz_cdiv_q(out.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return out;
}

std::uint64_t to_count(const mpz_class& value) {
  if (value <= 0) return 0;
  if (!value.fits_ulong_p()) return kAll - 1;
  return value.get_ui();
}

IndexRun prefix_of(std::uint64_t count) { return count == kAll ? IndexRun::all() : IndexRun{false, count}; }

IndexRun complement(IndexRun run) {
  if (run.suffix) return {false, run.count};
  return {true, run.count};
}

Rational power_of(const Rational& base, std::uint64_t exponent) {
  Rational result = 1;
  Rational b = base;
  while (exponent > 0) {
    if (exponent & 1U) result *= b;
    exponent >>= 1U;
    if (exponent > 0) b *= b;
  }
  return result;
}

}  // namespace

std::string to_string(TailShape shape) {
  switch (shape) {
    case TailShape::kConstant: return "constant";
    case TailShape::kHarmonic: return "harmonic";
    case TailShape::kPower: return "power";
    case TailShape::kGeometric: return "geometric";
    case TailShape::kDivergent: return "divergent";
  }
  return "?";
}

TailShape parse_tail_shape(std::string_view text) {
  if (text == "constant") return TailShape::kConstant;
  if (text == "harmonic") return TailShape::kHarmonic;
  if (text == "power") return TailShape::kPower;
  if (text == "geometric") return TailShape::kGeometric;
  if (text == "divergent") return TailShape::kDivergent;
  throw ParseError("unknown tail shape \"" + std::string(text) + "\"");
}

Tail Tail::constant(Rational limit) {
  Tail t;
  t.shape_ = TailShape::kConstant;
  t.limit_ = std::move(limit);
  return t;
}

Tail Tail::harmonic(Rational limit, Rational coefficient) {
  if (coefficient == 0) throw DomainError("tail coefficient must be nonzero");
  Tail t;
  t.shape_ = TailShape::kHarmonic;
  t.limit_ = std::move(limit);
  t.coefficient_ = std::move(coefficient);
  return t;
}

Tail Tail::power(Rational limit, Rational coefficient, int exponent) {
  if (coefficient == 0) throw DomainError("tail coefficient must be nonzero");
  if (exponent < 2) throw DomainError("power tail exponent must be >= 2");
  Tail t;
  t.shape_ = TailShape::kPower;
  t.limit_ = std::move(limit);
  t.coefficient_ = std::move(coefficient);
  t.exponent_ = exponent;
  return t;
}

Tail Tail::geometric(Rational limit, Rational coefficient, Rational ratio) {
  if (coefficient == 0) throw DomainError("tail coefficient must be nonzero");
  if (ratio <= 0 || ratio >= 1) throw DomainError("geometric ratio must lie in (0, 1)");
  Tail t;
  t.shape_ = TailShape::kGeometric;
  t.limit_ = std::move(limit);
  t.coefficient_ = std::move(coefficient);
  t.ratio_ = std::move(ratio);
  return t;
}

Tail Tail::divergent(Rational coefficient) {
  if (coefficient == 0) throw DomainError("tail coefficient must be nonzero");
  Tail t;
  t.shape_ = TailShape::kDivergent;
  t.coefficient_ = std::move(coefficient);
  return t;
}

Tail Tail::shifted(const Rational& c) const {
  if (shape_ == TailShape::kDivergent) throw DomainError("a divergent tail cannot be shifted by a constant");
  Tail t = *this;
  t.limit_ = *limit_ + c;
  if (clip_lower_.is_finite()) t.clip_lower_ = Extended(Rational(clip_lower_.value() + c));
  if (clip_upper_.is_finite()) t.clip_upper_ = Extended(Rational(clip_upper_.value() + c));
  return t;
}

Tail Tail::clipped(const Extended& lower, const Extended& upper) const {
  if (upper < lower) throw DomainError("clip window is empty");
  // Clipping is applied on top of the existing window, so disjoint windows
  // collapse onto the nearer end of the new one.
  Tail t = *this;
  if (upper < clip_lower_) {
    t.clip_lower_ = upper;
    t.clip_upper_ = upper;
  } else if (clip_upper_ < lower) {
    t.clip_lower_ = lower;
    t.clip_upper_ = lower;
  } else {
    t.clip_lower_ = max(clip_lower_, lower);
    t.clip_upper_ = min(clip_upper_, upper);
  }
  return t;
}

namespace {

Extended negate(const Extended& x) {
  if (x.is_pos_inf()) return Extended::neg_inf();
  if (x.is_neg_inf()) return Extended::pos_inf();
  return Extended(Rational(-x.value()));
}

}  // namespace

Tail Tail::negated() const {
  Tail t = *this;
  if (t.limit_) t.limit_ = -*t.limit_;
  if (shape_ != TailShape::kConstant) t.coefficient_ = -coefficient_;
  t.clip_lower_ = negate(clip_upper_);
  t.clip_upper_ = negate(clip_lower_);
  return t;
}

Rational Tail::deviation(std::uint64_t s) const {
  if (s == 0) throw DomainError("tail positions start at 1");
  switch (shape_) {
    case TailShape::kConstant: return 0;
    case TailShape::kHarmonic: return Rational(1, s);
    case TailShape::kPower: {
      mpz_class den;
      mpz_ui_pow_ui(den.get_mpz_t(), s, static_cast<unsigned long>(exponent_));
      return Rational(mpz_class(1), den);
    }
    case TailShape::kGeometric: return power_of(ratio_, s);
    case TailShape::kDivergent: return Rational(mpz_class(s));
  }
  return 0;
}

Rational Tail::raw_entry(std::uint64_t s) const {
  if (shape_ == TailShape::kConstant) return *limit_;
  if (shape_ == TailShape::kDivergent) return coefficient_ * deviation(s);
  return *limit_ + coefficient_ * deviation(s);
}

Rational Tail::entry(std::uint64_t s) const { return clamp(raw_entry(s), clip_lower_, clip_upper_); }

int Tail::raw_trend() const {
  switch (shape_) {
    case TailShape::kConstant: return 0;
    case TailShape::kDivergent: return sgn(coefficient_);
    default: return -sgn(coefficient_);
  }
}

std::uint64_t Tail::count_deviation_greater(const Rational& t, bool or_equal) const {
  // Deviations are positive and strictly decreasing to 0.
  if (t < 0 || (t == 0 && !or_equal)) return kAll;
  if (t == 0) return kAll;
  switch (shape_) {
    case TailShape::kHarmonic: {
      Rational inv = 1 / t;
      // 1/s > t  <=>  s < 1/t ;  1/s >= t  <=>  s <= 1/t
      return or_equal ? to_count(floor_of(inv)) : to_count(ceil_of(inv) - 1);
    }
    case TailShape::kPower: {
      // largest s with s^p * t < 1 (or <= 1)
      mpz_class lo = 0;
      mpz_class hi = ceil_of(1 / t) + 1;
      auto holds = [&](const mpz_class& s) {
        if (s == 0) return true;
        mpz_class sp;
        mpz_pow_ui(sp.get_mpz_t(), s.get_mpz_t(), static_cast<unsigned long>(exponent_));
        Rational value = Rational(sp) * t;
        return or_equal ? value <= 1 : value < 1;
      };
      while (hi - lo > 1) {
        mpz_class mid = (lo + hi) / 2;
        if (holds(mid)) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      return to_count(lo);
    }
    case TailShape::kGeometric: {
      Rational value = ratio_;
      std::uint64_t s = 0;
      while (or_equal ? value >= t : value > t) {
        ++s;
        if (s > kGeometricScanLimit) throw DomainError("geometric threshold search exceeded its scan limit");
        value *= ratio_;
      }
      return s;
    }
    default: break;
  }
  throw DomainError("count_deviation_greater on a tail without decaying deviation");
}

IndexRun Tail::raw_above(const Rational& bound, bool or_equal) const {
  switch (shape_) {
    case TailShape::kConstant: {
      bool holds = or_equal ? *limit_ >= bound : *limit_ > bound;
      return holds ? IndexRun::all() : IndexRun::none();
    }
    case TailShape::kDivergent: {
      Rational q = bound / coefficient_;
      if (coefficient_ > 0) {
        // s > q   (or s >= q)
        mpz_class start = or_equal ? mpz_class(ceil_of(q) - 1) : floor_of(q);
        if (start < 0) start = 0;
        return {true, to_count(start)};
      }
      // c < 0:  c s > b  <=>  s < q ;  c s >= b  <=>  s <= q
      return prefix_of(or_equal ? to_count(floor_of(q)) : to_count(ceil_of(q) - 1));
    }
    default: break;
  }
  const Rational gap = bound - *limit_;
  if (coefficient_ > 0) {
    // dev > gap / c  (or >=)
    return prefix_of(count_deviation_greater(gap / coefficient_, or_equal));
  }
  // c < 0:  L + c dev > b  <=>  dev < (L - b)/|c|
  Rational t = -gap / -coefficient_;
  std::uint64_t at_least = count_deviation_greater(t, !or_equal);
  if (at_least == kAll) return IndexRun::none();
  return {true, at_least};
}

IndexRun Tail::raw_below(const Rational& bound, bool or_equal) const {
  // {raw < b} is the complement of {raw >= b}.
  return complement(raw_above(bound, !or_equal));
}

IndexRun Tail::above(const Rational& bound) const {
  if (clip_lower_.is_finite() && clip_lower_.value() > bound) return IndexRun::all();
  if (clip_upper_.is_finite() && clip_upper_.value() <= bound) return IndexRun::none();
  return raw_above(bound, false);
}

IndexRun Tail::below(const Rational& bound) const {
  if (clip_upper_.is_finite() && clip_upper_.value() < bound) return IndexRun::all();
  if (clip_lower_.is_finite() && clip_lower_.value() >= bound) return IndexRun::none();
  return raw_below(bound, false);
}

TailRegime Tail::regime() const {
  TailRegime r;
  if (shape_ == TailShape::kConstant) {
    r.kind = TailRegime::Kind::kConstant;
    r.offset = clamp(*limit_, clip_lower_, clip_upper_);
    return r;
  }
  const Extended raw_lim = shape_ == TailShape::kDivergent
                               ? (coefficient_ > 0 ? Extended::pos_inf() : Extended::neg_inf())
                               : Extended(*limit_);
  const bool from_above = raw_trend() < 0;
  const bool pinned_upper =
      clip_upper_.is_finite() && (raw_lim > clip_upper_ || (raw_lim == clip_upper_ && from_above));
  const bool pinned_lower =
      clip_lower_.is_finite() && (raw_lim < clip_lower_ || (raw_lim == clip_lower_ && !from_above));
  if (pinned_upper || pinned_lower) {
    const Rational& bound = pinned_upper ? clip_upper_.value() : clip_lower_.value();
    IndexRun zone = pinned_upper ? raw_above(bound, true) : raw_below(bound, true);
    r.kind = TailRegime::Kind::kConstant;
    r.offset = bound;
    r.prefix = zone.suffix ? zone.count : 0;
    return r;
  }
  std::uint64_t prefix = 0;
  if (clip_lower_.is_finite()) {
    IndexRun zone = raw_above(clip_lower_.value(), true);
    if (zone.suffix) prefix = std::max(prefix, zone.count);
  }
  if (clip_upper_.is_finite()) {
    IndexRun zone = raw_below(clip_upper_.value(), true);
    if (zone.suffix) prefix = std::max(prefix, zone.count);
  }
  r.prefix = prefix;
  if (shape_ == TailShape::kDivergent) {
    r.kind = TailRegime::Kind::kDivergent;
    r.scale = coefficient_;
  } else {
    r.kind = TailRegime::Kind::kDeviating;
    r.offset = *limit_;
    r.scale = coefficient_;
  }
  return r;
}

Extended Tail::limit() const {
  Extended raw = shape_ == TailShape::kDivergent
                     ? (coefficient_ > 0 ? Extended::pos_inf() : Extended::neg_inf())
                     : Extended(*limit_);
  return clamp(raw, clip_lower_, clip_upper_);
}

bool Tail::summable_shape() const {
  return shape_ == TailShape::kConstant || shape_ == TailShape::kPower || shape_ == TailShape::kGeometric;
}

Extended Tail::infimum() const { return min(Extended(entry(1)), limit()); }
Extended Tail::supremum() const { return max(Extended(entry(1)), limit()); }

namespace {

Extended abs_of(const Extended& x) {
  if (!x.is_finite()) return Extended::pos_inf();
  return Extended(Rational(abs(x.value())));
}

}  // namespace

Extended Tail::abs_supremum() const { return max(abs_of(infimum()), abs_of(supremum())); }

std::vector<std::uint64_t> Tail::abs_infimum_candidates() const {
  std::vector<std::uint64_t> out{1};
  const TailRegime r = regime();
  if (r.kind == TailRegime::Kind::kConstant) out.push_back(r.prefix + 1);
  if (!one_signed()) {
    IndexRun positive = above(0);
    std::uint64_t boundary = positive.count;  // prefix or suffix, the sign change sits here
    for (std::uint64_t s : {boundary, boundary + 1, boundary + 2}) {
      if (s >= 1) out.push_back(s);
    }
    IndexRun negative = below(0);
    for (std::uint64_t s : {negative.count, negative.count + 1}) {
      if (s >= 1) out.push_back(s);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Extended Tail::abs_infimum() const {
  const Extended lo = infimum();
  const Extended hi = supremum();
  if (lo >= Extended(0)) return lo;
  if (hi <= Extended(0)) return abs_of(hi);
  Rational best = abs(entry(1));
  for (std::uint64_t s : abs_infimum_candidates()) best = std::min(best, Rational(abs(entry(s))));
  return Extended(best);
}

bool Tail::one_signed() const { return infimum() >= Extended(0) || supremum() <= Extended(0); }

Interval Tail::deviation_tail_sum(std::uint64_t after, const Rational& max_width) const {
  switch (shape_) {
    case TailShape::kConstant: return Interval::exact(0);
    case TailShape::kGeometric: return Interval::exact(power_of(ratio_, after + 1) / (1 - ratio_));
    case TailShape::kPower: break;
    default: throw DomainError("deviations of a " + to_string(shape_) + " tail are not summable");
  }
  // Convex decreasing f(x) = x^-p:
  //   f(N+1)/2 + int_{N+1}^inf f  <=  sum_{s>N} f(s)  <=  int_{N+1/2}^inf f.
  const int p = exponent_;
  auto integral_from = [p](const Rational& a) -> Rational {
    return 1 / (Rational(p - 1) * power_of(a, static_cast<std::uint64_t>(p - 1)));
  };
  auto remainder_after = [&](std::uint64_t n) {
    Rational n1(mpz_class(n + 1));
    Rational lower = integral_from(n1) + power_of(1 / n1, static_cast<std::uint64_t>(p)) / 2;
    Rational upper = integral_from(Rational(mpz_class(2 * n + 1), mpz_class(2)));
    return Interval{lower, upper};
  };
  std::uint64_t n = std::max<std::uint64_t>(after, 8);
  while (remainder_after(n).width() > max_width) n *= 2;
  Rational partial = 0;
  for (std::uint64_t s = after + 1; s <= n; ++s) partial += deviation(s);
  Interval rest = remainder_after(n);
  return {partial + rest.lo, partial + rest.hi};
}

std::string Tail::describe() const {
  std::ostringstream out;
  out << to_string(shape_) << "(";
  if (limit_) out << "limit=" << to_string(*limit_) << ", ";
  out << "c=" << to_string(coefficient_);
  if (shape_ == TailShape::kPower) out << ", p=" << exponent_;
  if (shape_ == TailShape::kGeometric) out << ", q=" << to_string(ratio_);
  if (is_clipped()) out << ", clip=[" << clip_lower_.str() << ", " << clip_upper_.str() << "]";
  out << ")";
  return out.str();
}

}  // namespace peckit
