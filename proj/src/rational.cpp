#include "lambdapm/rational.hpp"

#include <stdexcept>

namespace lpm {

Rational pow2(int k) {
  Integer p = 1;
  p <<= (k < 0 ? -k : k);
  return k < 0 ? Rational(Integer(1), p) : Rational(p);
}

std::optional<int> dyadic_exponent(const Rational& q) {
  if (q == 0) return 0;
  Integer d = denominator(q);
  int k = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++k;
  }
  if (d != 1) return std::nullopt;
  return k;
}

std::string to_string(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

Rational parse_rational(std::string_view text) {
  auto parse_int = [&](std::string_view s) {
    if (s.empty()) throw std::invalid_argument("empty number in '" + std::string(text) + "'");
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) throw std::invalid_argument("bad number '" + std::string(text) + "'");
    for (std::size_t j = i; j < s.size(); ++j)
      if (s[j] < '0' || s[j] > '9')
        throw std::invalid_argument("bad number '" + std::string(text) + "'");
    return Integer(std::string(s));
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  Integer num = parse_int(text.substr(0, slash));
  std::string_view den = text.substr(slash + 1);
  if (den.size() > 2 && den.substr(0, 2) == "2^") {
    Integer k = parse_int(den.substr(2));
    if (k < 0 || k > 100000) throw std::invalid_argument("bad exponent in '" + std::string(text) + "'");
    return Rational(num) * pow2(-static_cast<int>(k));
  }
  Integer d = parse_int(den);
  if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  return Rational(num, d);
}

DistanceValue DistanceValue::exact(Rational q) {
  DistanceValue v;
  v.kind_ = Kind::Exact;
  v.lo_ = q;
  v.hi_ = q;
  return v;
}

DistanceValue DistanceValue::infinite() {
  DistanceValue v;
  v.kind_ = Kind::Infinite;
  v.lo_ = 0;
  v.hi_.reset();
  return v;
}

DistanceValue DistanceValue::bracket(Rational lower, std::optional<Rational> upper) {
  if (upper && *upper < lower) throw std::invalid_argument("bracket with lower > upper");
  if (upper && *upper == lower) return exact(lower);
  DistanceValue v;
  v.kind_ = Kind::Bracket;
  v.lo_ = lower;
  v.hi_ = upper;
  return v;
}

const Rational& DistanceValue::value() const {
  if (kind_ != Kind::Exact) throw std::logic_error("distance is not exact: " + str());
  return lo_;
}

Rational DistanceValue::lower() const { return lo_; }

bool DistanceValue::upper_is_infinite() const { return !hi_.has_value(); }

Rational DistanceValue::upper() const {
  if (!hi_) throw std::logic_error("upper bound is infinite");
  return *hi_;
}

Rational DistanceValue::width() const {
  if (!hi_) throw std::logic_error("unbounded bracket");
  return *hi_ - lo_;
}

bool DistanceValue::within(const DistanceValue& outer) const {
  if (kind_ == Kind::Infinite) return outer.upper_is_infinite() && outer.kind_ != Kind::Exact;
  if (lo_ < outer.lo_) return false;
  if (outer.upper_is_infinite()) return true;
  if (upper_is_infinite()) return false;
  return *hi_ <= *outer.hi_;
}

bool DistanceValue::operator==(const DistanceValue& other) const {
  return kind_ == other.kind_ && lo_ == other.lo_ && hi_ == other.hi_;
}

std::string DistanceValue::str() const {
  switch (kind_) {
    case Kind::Exact:
      return to_string(lo_);
    case Kind::Infinite:
      return "inf";
    case Kind::Bracket:
      return "[" + to_string(lo_) + ", " + (hi_ ? to_string(*hi_) : std::string("inf")) + "]";
  }
  return {};
}

}  // namespace lpm
