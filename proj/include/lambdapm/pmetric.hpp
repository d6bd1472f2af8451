#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lambdapm/rational.hpp"

namespace lpm {

using Relation = std::vector<std::vector<bool>>;

// A finite carrier with an exact distance table.
class FiniteSpace {
 public:
  FiniteSpace() = default;
  FiniteSpace(std::vector<std::string> labels, std::vector<std::vector<Rational>> table);

  template <class T, class Dist, class Label>
  static FiniteSpace tabulate(const std::vector<T>& points, Dist dist, Label label) {
    std::size_t n = points.size();
    std::vector<std::string> labels;
    labels.reserve(n);
    for (const auto& p : points) labels.push_back(label(p));
    std::vector<std::vector<Rational>> t(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        t[i][j] = dist(points[i], points[j]);
        t[j][i] = t[i][j];
      }
    return FiniteSpace(std::move(labels), std::move(t));
  }

  std::size_t size() const { return labels_.size(); }
  const std::string& label(std::size_t i) const { return labels_[i]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return table_[i][j]; }

 private:
  std::vector<std::string> labels_;
  std::vector<std::vector<Rational>> table_;
};

enum class AxiomMode { PPM, PM, PUM };

AxiomMode parse_axiom_mode(const std::string& s);

struct AxiomViolation {
  std::string axiom;
  std::vector<std::size_t> witnesses;
  Rational lhs;
  Rational rhs;
};

// Exhaustive check of P1, P3, P4, plus P2 (PM, PUM) and P4U (PUM). At most
// max_reports violations are collected.
std::vector<AxiomViolation> check_axioms(const FiniteSpace& space, AxiomMode mode, std::size_t max_reports = 32);

// x ≤_p y iff p(x,y) ≤ p(x,x).
Relation induced_order(const FiniteSpace& space);

// d_p(x,y) = 2p(x,y) − p(x,x) − p(y,y).
std::vector<std::vector<Rational>> symmetrize(const FiniteSpace& space);

DistanceValue bound_to_one(const DistanceValue& v);

// p(candidate, center) < p(center, center) + radius.
bool in_ball(const FiniteSpace& space, std::size_t center, const Rational& radius, std::size_t candidate);

// Σ{θ_n | not b_n ≪ x or not b_n ≪ y}; below[n][x] tells whether b_n ≪ x.
struct WeightedBasisMetric {
  std::vector<Rational> weights;
  Relation below;

  Rational operator()(std::size_t x, std::size_t y) const;
};

bool is_ideal(const Relation& order, const std::vector<std::size_t>& set);

// The variant lifting:
//   max{ sup_{a∈A} inf_{a'≥a ∈A, b∈B} p(a',b), sup_{b∈B} inf_{b'≥b ∈B, a∈A} p(a,b') }
// with sup ∅ = 0 and inf ∅ = top. The order is the one induced by dist.
template <class T, class Dist>
Rational hausdorff_star(const std::vector<T>& A, const std::vector<T>& B, Dist&& dist, const Rational& top = 1) {
  auto side = [&](const std::vector<T>& X, const std::vector<T>& Y, bool flip) {
    Rational sup = 0;
    for (const auto& a : X) {
      Rational self = dist(a, a);
      Rational inf = top;
      for (const auto& a2 : X) {
        if (dist(a, a2) > self) continue;
        for (const auto& b : Y) {
          Rational d = flip ? dist(b, a2) : dist(a2, b);
          if (d < inf) inf = d;
        }
      }
      if (inf > sup) sup = inf;
    }
    return sup;
  };
  return std::max(side(A, B, false), side(B, A, true));
}

// max{ sup_a inf_b p(a,b), sup_b inf_a p(a,b) }, same conventions.
template <class T, class Dist>
Rational hausdorff_plain(const std::vector<T>& A, const std::vector<T>& B, Dist&& dist, const Rational& top = 1) {
  auto side = [&](const std::vector<T>& X, const std::vector<T>& Y) {
    Rational sup = 0;
    for (const auto& a : X) {
      Rational inf = top;
      for (const auto& b : Y) {
        Rational d = dist(a, b);
        if (d < inf) inf = d;
      }
      if (inf > sup) sup = inf;
    }
    return sup;
  };
  return std::max(side(A, B), side(B, A));
}

// The liftings over index subsets of a 1-bounded finite space.
DistanceValue hausdorff_star(const FiniteSpace& space, const std::vector<std::size_t>& A,
                             const std::vector<std::size_t>& B);
DistanceValue hausdorff_plain(const FiniteSpace& space, const std::vector<std::size_t>& A,
                              const std::vector<std::size_t>& B);

}  // namespace lpm
