#pragma once

#include <gmpxx.h>

#include <compare>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace peckit {

/// Exact rational number. Every computation in the library is exact; the
/// only floating-point values ever produced are decimal renderings for humans.
using Rational = mpq_class;

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses "p/q", "-p/q" or an integer string. Rejects zero denominators,
/// whitespace, decimal points and exponents.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" (or "p" when the denominator is 1).
std::string to_string(const Rational& value);

/// 12-significant-digit decimal rendering, never an input to computation.
std::string to_decimal(const Rational& value, int significant_digits = 12);

int sign(const Rational& value);
Rational abs_value(const Rational& value);

/// A rational extended by -inf and +inf.
class Extended {
 public:
  enum class Kind { kNegInf, kFinite, kPosInf };

  Extended() : kind_(Kind::kFinite), value_(0) {}
  Extended(Rational value) : kind_(Kind::kFinite), value_(std::move(value)) {}  // NOLINT
  Extended(int value) : kind_(Kind::kFinite), value_(value) {}                 // NOLINT

  static Extended pos_inf() { return Extended(Kind::kPosInf); }
  static Extended neg_inf() { return Extended(Kind::kNegInf); }

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::kFinite; }
  bool is_pos_inf() const { return kind_ == Kind::kPosInf; }
  bool is_neg_inf() const { return kind_ == Kind::kNegInf; }

  /// Finite value; throws DomainError on an infinity.
  const Rational& value() const;

  std::string str() const;
  std::string decimal() const;

  friend bool operator==(const Extended& a, const Extended& b);
  friend std::strong_ordering operator<=>(const Extended& a, const Extended& b);

 private:
  explicit Extended(Kind kind) : kind_(kind), value_(0) {}

  Kind kind_;
  Rational value_;
};

Extended min(const Extended& a, const Extended& b);
Extended max(const Extended& a, const Extended& b);

/// clamp(x, lo, hi) with lo <= hi; infinite bounds mean "no bound".
Rational clamp(const Rational& x, const Extended& lo, const Extended& hi);
Extended clamp(const Extended& x, const Extended& lo, const Extended& hi);

/// Closed rational interval [lo, hi]; exact when lo == hi.
struct Interval {
  Rational lo{0};
  Rational hi{0};

  static Interval exact(const Rational& v) { return {v, v}; }
  bool is_exact() const { return lo == hi; }
  bool contains(const Rational& v) const { return lo <= v && v <= hi; }
  Rational width() const { return hi - lo; }

  Interval& operator+=(const Interval& other) {
    lo += other.lo;
    hi += other.hi;
    return *this;
  }
  /// Scales by a non-negative factor.
  Interval scaled(const Rational& factor) const;
};

}  // namespace peckit
