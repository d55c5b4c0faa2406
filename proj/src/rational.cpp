#include "peckit/rational.hpp"

#include <gmp.h>

#include <algorithm>
#include <cctype>
#include <vector>

namespace peckit {

namespace {

bool is_integer_literal(std::string_view text) {
  if (text.empty()) return false;
  std::size_t start = (text.front() == '-' || text.front() == '+') ? 1 : 0;
  if (start == text.size()) return false;
  return std::all_of(text.begin() + static_cast<std::ptrdiff_t>(start), text.end(),
                     [](unsigned char c) { return std::isdigit(c) != 0; });
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  if (!is_integer_literal(num)) {
    throw ParseError("not an exact rational: \"" + std::string(text) + "\"");
  }
  std::string num_str(num.front() == '+' ? num.substr(1) : num);
  mpz_class numerator(num_str, 10);
  mpz_class denominator = 1;
  if (slash != std::string_view::npos) {
    std::string_view den = text.substr(slash + 1);
    if (!is_integer_literal(den) || den.front() == '-' || den.front() == '+') {
      throw ParseError("not an exact rational: \"" + std::string(text) + "\"");
    }
    denominator = mpz_class(std::string(den), 10);
    if (denominator == 0) {
      throw ParseError("zero denominator in \"" + std::string(text) + "\"");
    }
  }
  Rational value(numerator, denominator);
  value.canonicalize();
  return value;
}

std::string to_string(const Rational& value) { return value.get_str(10); }

std::string to_decimal(const Rational& value, int significant_digits) {
  if (value == 0) return "0";
  mpf_class f(value, 256);
  std::vector<char> buffer(128);
  int n = gmp_snprintf(buffer.data(), buffer.size(), "%.*Fg", significant_digits, f.get_mpf_t());
  if (n >= static_cast<int>(buffer.size())) {
    buffer.resize(static_cast<std::size_t>(n) + 1);
    gmp_snprintf(buffer.data(), buffer.size(), "%.*Fg", significant_digits, f.get_mpf_t());
  }
  return std::string(buffer.data());
}

int sign(const Rational& value) { return sgn(value); }

Rational abs_value(const Rational& value) { return abs(value); }

const Rational& Extended::value() const {
  if (kind_ != Kind::kFinite) throw DomainError("value() of an infinite extended rational");
  return value_;
}

std::string Extended::str() const {
  switch (kind_) {
    case Kind::kNegInf: return "-inf";
    case Kind::kPosInf: return "inf";
    case Kind::kFinite: break;
  }
  return to_string(value_);
}

std::string Extended::decimal() const {
  if (kind_ != Kind::kFinite) return str();
  return to_decimal(value_);
}

bool operator==(const Extended& a, const Extended& b) {
  if (a.kind_ != b.kind_) return false;
  return a.kind_ != Extended::Kind::kFinite || a.value_ == b.value_;
}

std::strong_ordering operator<=>(const Extended& a, const Extended& b) {
  if (a.kind_ != b.kind_) return a.kind_ <=> b.kind_;
  if (a.kind_ != Extended::Kind::kFinite) return std::strong_ordering::equal;
  int c = cmp(a.value_, b.value_);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Extended min(const Extended& a, const Extended& b) { return b < a ? b : a; }
Extended max(const Extended& a, const Extended& b) { return a < b ? b : a; }

Rational clamp(const Rational& x, const Extended& lo, const Extended& hi) {
  if (lo.is_finite() && x < lo.value()) return lo.value();
  if (hi.is_finite() && x > hi.value()) return hi.value();
  return x;
}

Extended clamp(const Extended& x, const Extended& lo, const Extended& hi) {
  if (x < lo) return lo;
  if (x > hi) return hi;
  return x;
}

Interval Interval::scaled(const Rational& factor) const {
  if (factor < 0) throw DomainError("Interval::scaled by a negative factor");
  return {lo * factor, hi * factor};
}

}  // namespace peckit
