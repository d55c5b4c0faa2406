#pragma once

// Symbolic infinite tails of d-values. The s-th entry (s >= 1) is
//     limit + coefficient * deviation(s),
// with deviation 1/s (harmonic), 1/s^p (power), q^s (geometric) or 0
// (constant); divergent tails have entries coefficient * s. An optional
// clip [lower, upper] is applied on top of the raw entry, which is how
// clamped copies (chi_min) keep the original skeleton.

#include "peckit/rational.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace peckit {

enum class TailShape { kConstant, kHarmonic, kPower, kGeometric, kDivergent };

std::string to_string(TailShape shape);
TailShape parse_tail_shape(std::string_view text);

/// {s >= 1 : predicate(s)} for a predicate that is monotone in s: either the
/// prefix {1..count} or the suffix {count+1, count+2, ...}.
struct IndexRun {
  bool suffix = false;
  std::uint64_t count = 0;

  static IndexRun none() { return {false, 0}; }
  static IndexRun all() { return {true, 0}; }
  bool infinite() const { return suffix; }
  bool contains(std::uint64_t s) const { return suffix ? s > count : s <= count; }
};

/// Entries for s > prefix follow a single closed form:
///   kConstant:  offset
///   kDeviating: offset + scale * deviation(s)
///   kDivergent: scale * s
struct TailRegime {
  enum class Kind { kConstant, kDeviating, kDivergent };
  Kind kind = Kind::kConstant;
  std::uint64_t prefix = 0;
  Rational offset{0};
  Rational scale{0};
};

class Tail {
 public:
  static Tail constant(Rational limit);
  static Tail harmonic(Rational limit, Rational coefficient);
  static Tail power(Rational limit, Rational coefficient, int exponent);
  static Tail geometric(Rational limit, Rational coefficient, Rational ratio);
  static Tail divergent(Rational coefficient);

  /// Clamps entries into [lower, upper] on top of the current clip.
  Tail clipped(const Extended& lower, const Extended& upper) const;
  /// Entries multiplied by -1.
  Tail negated() const;
  /// Entries plus c (clip window moved along); not defined for divergent tails.
  Tail shifted(const Rational& c) const;

  TailShape shape() const { return shape_; }
  /// Raw limit; absent for divergent tails.
  const std::optional<Rational>& raw_limit() const { return limit_; }
  const Rational& coefficient() const { return coefficient_; }
  int exponent() const { return exponent_; }
  const Rational& ratio() const { return ratio_; }
  const Extended& clip_lower() const { return clip_lower_; }
  const Extended& clip_upper() const { return clip_upper_; }
  bool is_clipped() const { return !clip_lower_.is_neg_inf() || !clip_upper_.is_pos_inf(); }

  /// deviation(s): 1/s, 1/s^p, q^s, 0 for constant, s for divergent.
  Rational deviation(std::uint64_t s) const;
  Rational raw_entry(std::uint64_t s) const;
  Rational entry(std::uint64_t s) const;

  /// +1 if entries increase with s, -1 if they decrease, 0 if constant (raw).
  int raw_trend() const;

  /// {s : entry(s) > bound} / {s : entry(s) < bound}, as prefix or suffix runs.
  IndexRun above(const Rational& bound) const;
  IndexRun below(const Rational& bound) const;

  TailRegime regime() const;
  /// Limit of the clipped entries (+-inf for unclipped divergent tails).
  Extended limit() const;
  bool divergent_after_clip() const { return !limit().is_finite(); }
  /// True when deviations are summable (power, geometric, constant).
  bool summable_shape() const;

  Extended infimum() const;
  Extended supremum() const;
  /// inf / sup of |entry(s)| over s >= 1.
  Extended abs_infimum() const;
  Extended abs_supremum() const;
  /// Up to three indices at which inf |entry| is attained if it is attained.
  std::vector<std::uint64_t> abs_infimum_candidates() const;

  /// True when no two entries have strictly opposite signs.
  bool one_signed() const;

  /// sum_{s > after} deviation(s): exact for geometric, an interval of width
  /// <= max_width for power shapes. Throws DomainError for harmonic/divergent.
  Interval deviation_tail_sum(std::uint64_t after, const Rational& max_width) const;

  std::string describe() const;

  friend bool operator==(const Tail&, const Tail&) = default;

 private:
  Tail() = default;

  // {s : deviation(s) > t} is always a prefix; same for >=.
  std::uint64_t count_deviation_greater(const Rational& t, bool or_equal) const;
  IndexRun raw_above(const Rational& bound, bool or_equal) const;
  IndexRun raw_below(const Rational& bound, bool or_equal) const;

  TailShape shape_ = TailShape::kConstant;
  std::optional<Rational> limit_;
  Rational coefficient_{1};
  int exponent_ = 0;
  Rational ratio_{0};
  Extended clip_lower_ = Extended::neg_inf();
  Extended clip_upper_ = Extended::pos_inf();
};

}  // namespace peckit
