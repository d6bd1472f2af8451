#pragma once

#include <string>

#include "doctest.h"
#include "lambdapm/bohm.hpp"
#include "lambdapm/pmetric.hpp"
#include "lambdapm/rational.hpp"
#include "lambdapm/resource.hpp"
#include "lambdapm/term.hpp"

namespace lpm::test {

inline Rational q(long n, long d = 1) { return Rational(n, d); }
inline Term T(const std::string& s) { return parse(s); }
inline PartialTerm P(const std::string& s) { return parse_partial(s); }
inline ResourceTerm R(const std::string& s) { return parse_resource(s); }

// First violation of the axioms, or "" when there is none.
inline std::string first_violation(const FiniteSpace& space, AxiomMode mode) {
  auto v = check_axioms(space, mode, 1);
  if (v.empty()) return "";
  std::string out = v[0].axiom + " at";
  for (auto w : v[0].witnesses) out += " " + space.label(w);
  return out + ": " + to_string(v[0].lhs) + " vs " + to_string(v[0].rhs);
}

inline DistanceValue exact(long n, long d = 1) { return DistanceValue::exact(q(n, d)); }

}  // namespace lpm::test

namespace doctest {
template <>
struct StringMaker<lpm::DistanceValue> {
  static String convert(const lpm::DistanceValue& v) { return v.str().c_str(); }
};
template <>
struct StringMaker<lpm::Rational> {
  static String convert(const lpm::Rational& v) { return lpm::to_string(v).c_str(); }
};
}  // namespace doctest
