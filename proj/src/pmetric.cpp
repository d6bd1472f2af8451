#include "lambdapm/pmetric.hpp"

namespace lpm {

FiniteSpace::FiniteSpace(std::vector<std::string> labels, std::vector<std::vector<Rational>> table)
    : labels_(std::move(labels)), table_(std::move(table)) {
  if (table_.size() != labels_.size()) throw std::invalid_argument("distance table size mismatch");
  for (const auto& row : table_)
    if (row.size() != labels_.size()) throw std::invalid_argument("distance table is not square");
}

AxiomMode parse_axiom_mode(const std::string& s) {
  if (s == "ppm" || s == "PPM") return AxiomMode::PPM;
  if (s == "pm" || s == "PM") return AxiomMode::PM;
  if (s == "pum" || s == "PUM") return AxiomMode::PUM;
  throw std::invalid_argument("unknown axiom mode '" + s + "'");
}

std::vector<AxiomViolation> check_axioms(const FiniteSpace& p, AxiomMode mode, std::size_t max_reports) {
  std::vector<AxiomViolation> out;
  auto report = [&](const char* ax, std::vector<std::size_t> w, const Rational& lhs, const Rational& rhs) {
    if (out.size() < max_reports) out.push_back({ax, std::move(w), lhs, rhs});
  };
  std::size_t n = p.size();
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (p(x, x) > p(x, y)) report("P1", {x, y}, p(x, x), p(x, y));
      if (p(x, y) != p(y, x)) report("P3", {x, y}, p(x, y), p(y, x));
      if (mode != AxiomMode::PPM && x != y && p(x, x) == p(x, y) && p(x, y) == p(y, y))
        report("P2", {x, y}, p(x, y), p(x, x));
      for (std::size_t z = 0; z < n; ++z) {
        Rational rhs = p(x, z) + p(z, y) - p(z, z);
        if (p(x, y) > rhs) report("P4", {x, y, z}, p(x, y), rhs);
        if (mode == AxiomMode::PUM) {
          const Rational& m = std::max(p(x, z), p(z, y));
          if (p(x, y) > m) report("P4U", {x, y, z}, p(x, y), m);
        }
      }
    }
  }
  return out;
}

Relation induced_order(const FiniteSpace& p) {
  std::size_t n = p.size();
  Relation r(n, std::vector<bool>(n));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) r[x][y] = p(x, y) <= p(x, x);
  return r;
}

std::vector<std::vector<Rational>> symmetrize(const FiniteSpace& p) {
  std::size_t n = p.size();
  std::vector<std::vector<Rational>> d(n, std::vector<Rational>(n));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) d[x][y] = 2 * p(x, y) - p(x, x) - p(y, y);
  return d;
}

DistanceValue bound_to_one(const DistanceValue& v) {
  auto f = [](const Rational& q) { return q / (1 + q); };
  switch (v.kind()) {
    case DistanceValue::Kind::Exact:
      return DistanceValue::exact(f(v.value()));
    case DistanceValue::Kind::Infinite:
      return DistanceValue::exact(1);
    case DistanceValue::Kind::Bracket:
      return DistanceValue::bracket(f(v.lower()), v.upper_is_infinite() ? Rational(1) : f(v.upper()));
  }
  return v;
}

bool in_ball(const FiniteSpace& p, std::size_t center, const Rational& radius, std::size_t candidate) {
  return p(candidate, center) < p(center, center) + radius;
}

Rational WeightedBasisMetric::operator()(std::size_t x, std::size_t y) const {
  Rational s = 0;
  for (std::size_t i = 0; i < weights.size(); ++i)
    if (!below[i][x] || !below[i][y]) s += weights[i];
  return s;
}

bool is_ideal(const Relation& order, const std::vector<std::size_t>& set) {
  if (set.empty()) return false;
  std::vector<bool> in(order.size());
  for (auto i : set) in[i] = true;
  for (auto y : set)
    for (std::size_t x = 0; x < order.size(); ++x)
      if (order[x][y] && !in[x]) return false;
  for (auto a : set)
    for (auto b : set) {
      bool bounded = false;
      for (auto c : set)
        if (order[a][c] && order[b][c]) {
          bounded = true;
          break;
        }
      if (!bounded) return false;
    }
  return true;
}

namespace {

void require_one_bounded(const FiniteSpace& p) {
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < p.size(); ++j)
      if (p(i, j) > 1) throw std::invalid_argument("space is not 1-bounded");
}

}  // namespace

DistanceValue hausdorff_star(const FiniteSpace& p, const std::vector<std::size_t>& A,
                             const std::vector<std::size_t>& B) {
  require_one_bounded(p);
  return DistanceValue::exact(hausdorff_star(A, B, [&](std::size_t i, std::size_t j) { return p(i, j); }));
}

DistanceValue hausdorff_plain(const FiniteSpace& p, const std::vector<std::size_t>& A,
                              const std::vector<std::size_t>& B) {
  require_one_bounded(p);
  return DistanceValue::exact(hausdorff_plain(A, B, [&](std::size_t i, std::size_t j) { return p(i, j); }));
}

}  // namespace lpm
