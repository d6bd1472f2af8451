#include "lambdapm/intervals.hpp"

#include <algorithm>
#include <stdexcept>

namespace lpm {

RationalInterval::RationalInterval(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {
  if (hi < lo) throw std::invalid_argument("interval with lo > hi");
}

RationalInterval parse_interval(std::string_view text) {
  auto comma = text.find(',');
  if (comma == std::string_view::npos) throw std::invalid_argument("interval must be 'lo,hi'");
  return RationalInterval(parse_rational(text.substr(0, comma)), parse_rational(text.substr(comma + 1)));
}

std::string to_string(const RationalInterval& i) { return "[" + to_string(i.lo) + "," + to_string(i.hi) + "]"; }

DistanceValue p_int(const RationalInterval& a, const RationalInterval& b) {
  return DistanceValue::exact(std::max(a.hi, b.hi) - std::min(a.lo, b.lo));
}

RationalInterval widen(const RationalInterval& i, const Rational& theta) {
  return RationalInterval(i.lo - theta / 2, i.hi + theta / 2);
}

}  // namespace lpm
