#pragma once

#include <string>
#include <string_view>

#include "lambdapm/rational.hpp"

namespace lpm {

struct RationalInterval {
  Rational lo;
  Rational hi;

  RationalInterval() = default;
  RationalInterval(Rational l, Rational h);

  bool contains(const RationalInterval& inner) const { return lo <= inner.lo && inner.hi <= hi; }
  Rational diameter() const { return hi - lo; }
  bool operator==(const RationalInterval& o) const { return lo == o.lo && hi == o.hi; }
};

// "lo,hi"
RationalInterval parse_interval(std::string_view text);
std::string to_string(const RationalInterval& i);

// diam(I ∪ J) = max(hi) − min(lo).
DistanceValue p_int(const RationalInterval& a, const RationalInterval& b);

// [lo − θ/2, hi + θ/2]
RationalInterval widen(const RationalInterval& i, const Rational& theta);

}  // namespace lpm
