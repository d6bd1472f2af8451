#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace lpm {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// 2^k for any integer k.
Rational pow2(int k);

// k >= 0 such that q = n / 2^k in lowest terms; nullopt if the denominator
// is not a power of two.
std::optional<int> dyadic_exponent(const Rational& q);

std::string to_string(const Rational& q);

// Accepts "n", "n/d" and "n/2^k".
Rational parse_rational(std::string_view text);

// A nonnegative distance: an exact rational, +infinity, or a bracket
// [lower, upper] where upper may be infinite.
class DistanceValue {
 public:
  enum class Kind { Exact, Infinite, Bracket };

  static DistanceValue exact(Rational q);
  static DistanceValue infinite();
  static DistanceValue bracket(Rational lower, std::optional<Rational> upper);

  Kind kind() const { return kind_; }
  bool is_exact() const { return kind_ == Kind::Exact; }
  bool is_infinite() const { return kind_ == Kind::Infinite; }
  bool is_bracket() const { return kind_ == Kind::Bracket; }

  // Exact value; throws std::logic_error otherwise.
  const Rational& value() const;
  Rational lower() const;
  bool upper_is_infinite() const;
  Rational upper() const;
  Rational width() const;

  // True when every value admitted by *this is admitted by outer.
  bool within(const DistanceValue& outer) const;

  bool operator==(const DistanceValue& other) const;
  std::string str() const;

 private:
  Kind kind_ = Kind::Exact;
  Rational lo_;
  std::optional<Rational> hi_;
};

}  // namespace lpm
