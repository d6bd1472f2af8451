#include "lambdapm/domains.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

namespace lpm {

std::size_t enumeration_cap() {
  if (const char* env = std::getenv("LAMBDA_PM_CAP")) {
    try {
      std::size_t pos = 0;
      unsigned long long v = std::stoull(env, &pos);
      if (pos == std::string(env).size() && v > 0) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
    throw std::invalid_argument(std::string("LAMBDA_PM_CAP must be a positive integer, got '") + env + "'");
  }
  return 100000;
}

std::optional<std::string> validate(const std::vector<std::string>& labels, const Relation& leq, std::size_t bottom) {
  std::size_t n = labels.size();
  if (n == 0) return "poset is empty";
  if (leq.size() != n) return "leq matrix has wrong size";
  for (const auto& row : leq)
    if (row.size() != n) return "leq matrix is not square";
  if (bottom >= n) return "bottom out of range";
  for (std::size_t a = 0; a < n; ++a) {
    if (!leq[a][a]) return "not reflexive at " + labels[a];
    if (!leq[bottom][a]) return "bottom is not below " + labels[a];
    for (std::size_t b = 0; b < n; ++b) {
      if (a != b && leq[a][b] && leq[b][a]) return "not antisymmetric at " + labels[a] + ", " + labels[b];
      for (std::size_t c = 0; c < n; ++c)
        if (leq[a][b] && leq[b][c] && !leq[a][c])
          return "not transitive at " + labels[a] + ", " + labels[b] + ", " + labels[c];
    }
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      std::vector<std::size_t> ub;
      for (std::size_t c = 0; c < n; ++c)
        if (leq[a][c] && leq[b][c]) ub.push_back(c);
      if (ub.empty()) continue;
      bool has_least = std::any_of(ub.begin(), ub.end(), [&](std::size_t u) {
        return std::all_of(ub.begin(), ub.end(), [&](std::size_t v) { return leq[u][v]; });
      });
      if (!has_least) return "bounded pair " + labels[a] + ", " + labels[b] + " has no least upper bound";
    }
  return std::nullopt;
}

FinitePoset::FinitePoset(std::vector<std::string> labels, Relation leq, std::size_t bottom)
    : size_(labels.size()), bottom_(bottom), labels_(std::move(labels)), leq_(std::move(leq)) {
  if (auto err = validate(labels_, leq_, bottom_)) throw std::invalid_argument("invalid poset: " + *err);
}

bool FinitePoset::leq(std::size_t a, std::size_t b) const {
  if (!maps_) return leq_[a][b];
  std::size_t stride = maps_->domain->size();
  const auto* fa = &maps_->flat[a * stride];
  const auto* fb = &maps_->flat[b * stride];
  for (std::size_t x = 0; x < stride; ++x)
    if (!maps_->codomain->leq(fa[x], fb[x])) return false;
  return true;
}

std::string FinitePoset::label(std::size_t i) const {
  if (!maps_) return labels_.at(i);
  std::string s = "[";
  std::size_t stride = maps_->domain->size();
  for (std::size_t x = 0; x < stride; ++x) {
    if (x) s += ",";
    s += maps_->codomain->label(maps_->flat[i * stride + x]);
  }
  return s + "]";
}

std::optional<std::size_t> FinitePoset::join(std::size_t a, std::size_t b) const {
  if (maps_) {
    const auto& y = *maps_->codomain;
    MapTable t(maps_->domain->size());
    for (std::size_t x = 0; x < t.size(); ++x) {
      auto j = y.join(apply(a, x), apply(b, x));
      if (!j) return std::nullopt;
      t[x] = *j;
    }
    return index_of(t);
  }
  std::optional<std::size_t> best;
  for (std::size_t c = 0; c < size_; ++c) {
    if (!leq(a, c) || !leq(b, c)) continue;
    if (!best || leq(c, *best)) best = c;
  }
  return best;
}

std::vector<std::size_t> FinitePoset::up_set(std::size_t x) const {
  std::vector<std::size_t> out;
  for (std::size_t y = 0; y < size_; ++y)
    if (leq(x, y)) out.push_back(y);
  return out;
}

const FinitePoset& FinitePoset::domain() const {
  if (!maps_) throw std::logic_error("not a function space");
  return *maps_->domain;
}

const FinitePoset& FinitePoset::codomain() const {
  if (!maps_) throw std::logic_error("not a function space");
  return *maps_->codomain;
}

std::size_t FinitePoset::apply(std::size_t f, std::size_t x) const {
  return maps_->flat[f * maps_->domain->size() + x];
}

MapTable FinitePoset::table(std::size_t f) const {
  std::size_t stride = domain().size();
  return MapTable(maps_->flat.begin() + f * stride, maps_->flat.begin() + (f + 1) * stride);
}

std::optional<std::size_t> FinitePoset::index_of(const MapTable& t) const {
  std::size_t stride = domain().size();
  if (t.size() != stride) return std::nullopt;
  std::size_t lo = 0, hi = size_;
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    const auto* m = &maps_->flat[mid * stride];
    int cmp = 0;
    for (std::size_t x = 0; x < stride && cmp == 0; ++x)
      if (m[x] != t[x]) cmp = m[x] < t[x] ? -1 : 1;
    if (cmp == 0) return mid;
    if (cmp < 0)
      lo = mid + 1;
    else
      hi = mid;
  }
  return std::nullopt;
}

FinitePoset chain(std::size_t n) {
  std::vector<std::string> labels;
  Relation leq(n, std::vector<bool>(n));
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back(std::to_string(i));
    for (std::size_t j = i; j < n; ++j) leq[i][j] = true;
  }
  return FinitePoset(std::move(labels), std::move(leq), 0);
}

FinitePoset sierpinski() { return FinitePoset({"bot", "top"}, {{true, true}, {false, true}}, 0); }

FinitePoset flat(std::size_t k) {
  std::vector<std::string> labels{"bot"};
  Relation leq(k + 1, std::vector<bool>(k + 1));
  for (std::size_t i = 0; i <= k; ++i) {
    leq[0][i] = leq[i][i] = true;
    if (i) labels.push_back(std::to_string(i - 1));
  }
  return FinitePoset(std::move(labels), std::move(leq), 0);
}

FinitePoset product(const FinitePoset& x, const FinitePoset& y) {
  std::size_t n = x.size() * y.size();
  std::vector<std::string> labels(n);
  Relation leq(n, std::vector<bool>(n));
  for (std::size_t a = 0; a < n; ++a) {
    labels[a] = "(" + x.label(a / y.size()) + "," + y.label(a % y.size()) + ")";
    for (std::size_t b = 0; b < n; ++b)
      leq[a][b] = x.leq(a / y.size(), b / y.size()) && y.leq(a % y.size(), b % y.size());
  }
  return FinitePoset(std::move(labels), std::move(leq), x.bottom() * y.size() + y.bottom());
}

bool way_below(const FinitePoset& p, std::size_t x, std::size_t y) { return p.leq(x, y); }

bool way_below_by_definition(const FinitePoset& p, std::size_t x, std::size_t y) {
  std::size_t n = p.size();
  if (n > 16) throw std::invalid_argument("directed-set enumeration is limited to 16 elements");
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::vector<std::size_t> d;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) d.push_back(i);
    bool directed = true;
    for (auto a : d)
      for (auto b : d)
        if (directed && std::none_of(d.begin(), d.end(), [&](std::size_t c) { return p.leq(a, c) && p.leq(b, c); }))
          directed = false;
    if (!directed) continue;
    std::optional<std::size_t> sup;
    for (std::size_t c = 0; c < n; ++c) {
      if (!std::all_of(d.begin(), d.end(), [&](std::size_t a) { return p.leq(a, c); })) continue;
      if (!sup || p.leq(c, *sup)) sup = c;
    }
    if (!sup || !p.leq(y, *sup)) continue;
    if (std::none_of(d.begin(), d.end(), [&](std::size_t a) { return p.leq(x, a); })) return false;
  }
  return true;
}

bool is_monotone(const FinitePoset& x, const FinitePoset& y, const MapTable& f) {
  if (f.size() != x.size()) return false;
  for (std::size_t a = 0; a < x.size(); ++a) {
    if (f[a] >= y.size()) return false;
    for (std::size_t b = 0; b < x.size(); ++b)
      if (x.leq(a, b) && !y.leq(f[a], f[b])) return false;
  }
  return true;
}

FinitePoset function_space(const FinitePoset& x, const FinitePoset& y, std::size_t cap) {
  std::size_t nx = x.size(), ny = y.size();
  std::vector<std::size_t> order(nx);
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::size_t> below(nx);
  for (std::size_t a = 0; a < nx; ++a)
    for (std::size_t b = 0; b < nx; ++b) below[a] += x.leq(b, a);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return below[a] < below[b]; });

  std::vector<std::uint32_t> flat;
  std::size_t count = 0;
  std::vector<std::uint32_t> cur(nx);
  auto rec = [&](auto&& self, std::size_t k) -> void {
    if (k == nx) {
      if (++count > cap)
        throw CapExceeded("function space of " + std::to_string(nx) + " -> " + std::to_string(ny) +
                          " elements exceeds the enumeration cap of " + std::to_string(cap) + " maps");
      flat.insert(flat.end(), cur.begin(), cur.end());
      return;
    }
    std::size_t a = order[k];
    for (std::size_t v = 0; v < ny; ++v) {
      bool ok = true;
      for (std::size_t i = 0; i < k && ok; ++i) {
        std::size_t b = order[i];
        if (x.leq(b, a) && !y.leq(cur[b], v)) ok = false;
        if (x.leq(a, b) && !y.leq(v, cur[b])) ok = false;
      }
      if (!ok) continue;
      cur[a] = static_cast<std::uint32_t>(v);
      self(self, k + 1);
    }
  };
  rec(rec, 0);

  std::vector<std::size_t> idx(count);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return std::lexicographical_compare(flat.begin() + a * nx, flat.begin() + (a + 1) * nx, flat.begin() + b * nx,
                                        flat.begin() + (b + 1) * nx);
  });
  auto maps = std::make_shared<FinitePoset::Maps>();
  maps->domain = std::make_shared<const FinitePoset>(x);
  maps->codomain = std::make_shared<const FinitePoset>(y);
  maps->flat.reserve(flat.size());
  for (auto i : idx) maps->flat.insert(maps->flat.end(), flat.begin() + i * nx, flat.begin() + (i + 1) * nx);

  FinitePoset fs;
  fs.size_ = count;
  fs.maps_ = std::move(maps);
  fs.bottom_ = *fs.index_of(MapTable(nx, y.bottom()));
  return fs;
}

MapTable step_function(const FinitePoset& x, const FinitePoset& y, std::size_t a, std::size_t b) {
  MapTable t(x.size());
  for (std::size_t v = 0; v < x.size(); ++v) t[v] = way_below(x, a, v) ? b : y.bottom();
  return t;
}

std::optional<MapTable> join_of_steps(const FinitePoset& x, const FinitePoset& y, const MapTable& f) {
  MapTable acc(x.size(), y.bottom());
  for (std::size_t a = 0; a < x.size(); ++a) {
    MapTable s = step_function(x, y, a, f[a]);
    for (std::size_t v = 0; v < x.size(); ++v) {
      auto j = y.join(acc[v], s[v]);
      if (!j) return std::nullopt;
      acc[v] = *j;
    }
  }
  return acc;
}

FiniteSpace sierpinski_space() { return FiniteSpace({"bot", "top"}, {{1, 1}, {1, 0}}); }

FiniteSpace weighted_basis_space(const FinitePoset& p, const std::vector<std::size_t>& basis,
                                 const std::vector<Rational>& weights) {
  if (basis.size() != weights.size()) throw std::invalid_argument("basis and weights differ in length");
  WeightedBasisMetric m;
  m.weights = weights;
  for (auto b : basis) {
    std::vector<bool> row(p.size());
    for (std::size_t x = 0; x < p.size(); ++x) row[x] = way_below(p, b, x);
    m.below.push_back(std::move(row));
  }
  std::vector<std::size_t> pts(p.size());
  std::iota(pts.begin(), pts.end(), 0);
  return FiniteSpace::tabulate(pts, m, [&](std::size_t i) { return p.label(i); });
}

FiniteSpace weighted_basis_space(const FinitePoset& p) {
  std::vector<std::size_t> basis(p.size());
  std::iota(basis.begin(), basis.end(), 0);
  std::vector<Rational> w;
  for (std::size_t i = 1; i <= p.size(); ++i) w.push_back(pow2(-static_cast<int>(i)));
  return weighted_basis_space(p, basis, w);
}

DistanceValue product_metric(const FiniteSpace& px, const FiniteSpace& py, std::pair<std::size_t, std::size_t> u,
                             std::pair<std::size_t, std::size_t> v) {
  return DistanceValue::exact((px(u.first, v.first) + py(u.second, v.second)) / 2);
}

FiniteSpace product_space(const FiniteSpace& px, const FiniteSpace& py) {
  std::size_t ny = py.size();
  std::vector<std::size_t> pts(px.size() * ny);
  std::iota(pts.begin(), pts.end(), 0);
  return FiniteSpace::tabulate(
      pts,
      [&](std::size_t a, std::size_t b) {
        return product_metric(px, py, {a / ny, a % ny}, {b / ny, b % ny}).value();
      },
      [&](std::size_t a) { return "(" + px.label(a / ny) + "," + py.label(a % ny) + ")"; });
}

Rational applicative_metric(const FiniteSpace& py, const std::vector<std::size_t>& basis, const Rational& theta,
                            const MapTable& f, const MapTable& g) {
  Rational s = 0;
  Rational w = theta;
  for (auto a : basis) {
    s += w * py(f.at(a), g.at(a));
    w *= theta;
  }
  return s;
}

FiniteSpace applicative_space(const FinitePoset& fs, const FiniteSpace& py, const Rational& theta) {
  std::vector<std::size_t> basis(fs.domain().size());
  std::iota(basis.begin(), basis.end(), 0);
  std::vector<MapTable> maps;
  for (std::size_t i = 0; i < fs.size(); ++i) maps.push_back(fs.table(i));
  std::vector<std::size_t> pts(fs.size());
  std::iota(pts.begin(), pts.end(), 0);
  return FiniteSpace::tabulate(
      pts, [&](std::size_t a, std::size_t b) { return applicative_metric(py, basis, theta, maps[a], maps[b]); },
      [&](std::size_t a) { return fs.label(a); });
}

std::size_t finite_access_bound(const Rational& theta, const Rational& epsilon) {
  if (theta <= 0 || theta > Rational(1, 2)) throw std::invalid_argument("theta must lie in (0, 1/2]");
  if (epsilon <= 0) throw std::invalid_argument("epsilon must be positive");
  // Σ_{i>N} θ^i = θ^{N+1} / (1 − θ)
  Rational tail = theta * theta / (1 - theta);
  std::size_t n = 1;
  while (tail >= epsilon / 2) {
    tail *= theta;
    ++n;
  }
  return n;
}

QuantificationReport quantification_decision(const FinitePoset& p, const FiniteSpace& metric) {
  if (metric.size() != p.size()) throw std::invalid_argument("metric and poset carriers differ in size");
  QuantificationReport r;
  std::size_t n = p.size();
  auto set_str = [&](const std::vector<bool>& s) {
    std::string out = "{";
    bool first = true;
    for (std::size_t i = 0; i < n; ++i)
      if (s[i]) {
        out += (first ? "" : ",") + p.label(i);
        first = false;
      }
    return out + "}";
  };
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t v = 0; v < n; ++v) {
      const Rational& level = metric(v, x);
      if (level < metric(x, x)) continue;
      std::vector<bool> ball(n);
      for (std::size_t y = 0; y < n; ++y) ball[y] = metric(y, x) <= level;
      for (std::size_t a = 0; a < n && r.balls_are_up_sets; ++a)
        for (std::size_t b = 0; b < n; ++b)
          if (ball[a] && !ball[b] && p.leq(a, b)) {
            r.balls_are_up_sets = false;
            r.witnesses.push_back("ball " + set_str(ball) + " around " + p.label(x) + " contains " + p.label(a) +
                                  " but not " + p.label(b));
            break;
          }
    }
  }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      if (!p.leq(x, y)) continue;
      for (std::size_t z = 0; z < n; ++z)
        if (metric(z, y) <= metric(y, y) && !p.leq(x, z)) {
          r.up_sets_are_open = false;
          r.witnesses.push_back("every ball around " + p.label(y) + " contains " + p.label(z) + ", outside the up-set of " +
                                p.label(x));
          break;
        }
    }
  return r;
}

FiniteSpace offset_control_space() {
  FinitePoset c = chain(3);
  FiniteSpace base = weighted_basis_space(c);
  std::vector<std::vector<Rational>> t(3, std::vector<Rational>(3));
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = 0; b < 3; ++b) t[a][b] = base(a, b) + (a == b ? Rational(0) : Rational(1, 4));
  return FiniteSpace({"0", "1", "2"}, std::move(t));
}

Tower::Tower(FinitePoset base, FiniteSpace base_metric, std::size_t depth, std::size_t cap) {
  if (base_metric.size() != base.size()) throw std::invalid_argument("base metric and base poset differ in size");
  levels_.push_back(std::make_shared<const FinitePoset>(std::move(base)));
  for (std::size_t n = 0; n < depth; ++n) {
    try {
      levels_.push_back(std::make_shared<const FinitePoset>(function_space(*levels_[n], *levels_[n], cap)));
    } catch (const CapExceeded& e) {
      throw CapExceeded("level " + std::to_string(n + 1) + ": " + e.what());
    }
  }
  auto lookup = [](const FinitePoset& space, const MapTable& t) {
    auto i = space.index_of(t);
    if (!i) throw std::logic_error("tower map produced a non-monotone table");
    return *i;
  };
  inj_.resize(depth);
  proj_.resize(depth);
  for (std::size_t n = 0; n < depth; ++n) {
    const FinitePoset& dn = *levels_[n];
    const FinitePoset& dn1 = *levels_[n + 1];
    inj_[n].resize(dn.size());
    proj_[n].resize(dn1.size());
    for (std::size_t x = 0; x < dn.size(); ++x) {
      MapTable t(dn.size());
      for (std::size_t g = 0; g < dn.size(); ++g)
        t[g] = n == 0 ? x : inj_[n - 1][dn.apply(x, proj_[n - 1][g])];
      inj_[n][x] = lookup(dn1, t);
    }
    for (std::size_t h = 0; h < dn1.size(); ++h) {
      if (n == 0) {
        proj_[n][h] = dn1.apply(h, dn.bottom());
        continue;
      }
      const FinitePoset& prev = *levels_[n - 1];
      MapTable t(prev.size());
      for (std::size_t x = 0; x < prev.size(); ++x) t[x] = proj_[n - 1][dn1.apply(h, inj_[n - 1][x])];
      proj_[n][h] = lookup(dn, t);
    }
  }
  tables_.resize(depth + 1);
  tables_[0].assign(levels_[0]->size(), std::vector<Rational>(levels_[0]->size()));
  for (std::size_t a = 0; a < levels_[0]->size(); ++a)
    for (std::size_t b = 0; b < levels_[0]->size(); ++b) tables_[0][a][b] = base_metric(a, b);
  for (std::size_t n = 1; n <= depth; ++n) {
    std::size_t sz = levels_[n]->size();
    if (sz > 512) continue;
    std::vector<std::vector<Rational>> t(sz, std::vector<Rational>(sz));
    for (std::size_t a = 0; a < sz; ++a)
      for (std::size_t b = a; b < sz; ++b) t[a][b] = t[b][a] = metric(n, a, b);
    tables_[n] = std::move(t);
  }
}

std::size_t Tower::inj(std::size_t m, std::size_t n, std::size_t x) const {
  for (std::size_t k = m; k < n; ++k) x = inj_.at(k)[x];
  return x;
}

std::size_t Tower::proj(std::size_t n, std::size_t m, std::size_t y) const {
  for (std::size_t k = n; k > m; --k) y = proj_.at(k - 1)[y];
  return y;
}

Rational Tower::metric(std::size_t n, std::size_t x, std::size_t y) const {
  if (!tables_.at(n).empty()) return tables_[n][x][y];
  const FinitePoset& d = *levels_[n];
  Rational s = 0;
  for (std::size_t i = 0; i < d.domain().size(); ++i)
    s += pow2(-static_cast<int>(i + 1)) * metric(n - 1, d.apply(x, i), d.apply(y, i));
  return s;
}

LawReport Tower::check_laws() const {
  LawReport r;
  auto fail = [&](std::string what) {
    if (r.failures.size() < 32) r.failures.push_back(std::move(what));
  };
  std::size_t k = depth();
  for (std::size_t n = 0; n < k; ++n) {
    const FinitePoset& dn = *levels_[n];
    const FinitePoset& dn1 = *levels_[n + 1];
    for (std::size_t x = 0; x < dn.size(); ++x) {
      ++r.checks;
      if (proj_[n][inj_[n][x]] != x) fail("j_" + std::to_string(n) + "(i_" + std::to_string(n) + "(" + dn.label(x) + ")) != id");
    }
    for (std::size_t y = 0; y < dn1.size(); ++y) {
      ++r.checks;
      if (!dn1.leq(inj_[n][proj_[n][y]], y)) fail("i_" + std::to_string(n) + " j_" + std::to_string(n) + " not below id at " + dn1.label(y));
    }
    if (dn.size() <= 2048)
      for (std::size_t x = 0; x < dn.size(); ++x)
        for (std::size_t y = 0; y < dn.size(); ++y) {
          if (!dn.leq(x, y)) continue;
          ++r.checks;
          if (!dn1.leq(inj_[n][x], inj_[n][y])) fail("i_" + std::to_string(n) + " not monotone at " + dn.label(x) + " <= " + dn.label(y));
        }
  }
  // Composite tables built by extending on the left, checked against the
  // right-extended form and the injection-projection laws.
  std::vector<std::vector<std::vector<std::size_t>>> ci(k + 1), cj(k + 1);
  for (std::size_t m = 0; m <= k; ++m) {
    ci[m].resize(k + 1);
    cj[m].resize(k + 1);
    ci[m][m].resize(levels_[m]->size());
    std::iota(ci[m][m].begin(), ci[m][m].end(), 0);
    for (std::size_t n = m + 1; n <= k; ++n) {
      ci[m][n].resize(levels_[m]->size());
      for (std::size_t x = 0; x < levels_[m]->size(); ++x) ci[m][n][x] = inj_[n - 1][ci[m][n - 1][x]];
    }
  }
  for (std::size_t n = 0; n <= k; ++n) {
    cj[n][n].resize(levels_[n]->size());
    std::iota(cj[n][n].begin(), cj[n][n].end(), 0);
    for (std::size_t m = n; m-- > 0;) {
      cj[n][m].resize(levels_[n]->size());
      for (std::size_t y = 0; y < levels_[n]->size(); ++y) cj[n][m][y] = proj_[m][cj[n][m + 1][y]];
    }
  }
  for (std::size_t m = 0; m < k; ++m)
    for (std::size_t n = m + 1; n <= k; ++n) {
      std::string tag = std::to_string(m) + "," + std::to_string(n);
      for (std::size_t x = 0; x < levels_[m]->size(); ++x) {
        r.checks += 2;
        if (ci[m][n][x] != ci[m + 1][n][inj_[m][x]]) fail("i_{" + tag + "} != i_{" + std::to_string(m + 1) + "," + std::to_string(n) + "} i_" + std::to_string(m));
        if (cj[n][m][ci[m][n][x]] != x) fail("j_{" + tag + "} i_{" + tag + "} != id");
      }
      for (std::size_t y = 0; y < levels_[n]->size(); ++y) {
        r.checks += 2;
        if (cj[n][m][y] != cj[m + 1][m][cj[n][m + 1][y]]) fail("j_{" + tag + "} != j_" + std::to_string(m) + " j_{" + std::to_string(n) + "," + std::to_string(m + 1) + "}");
        if (!levels_[n]->leq(ci[m][n][cj[n][m][y]], y)) fail("i_{" + tag + "} j_{" + tag + "} not below id");
      }
    }
  return r;
}

bool is_valid_profile(const Tower& t, const TowerProfile& a) {
  if (a.levels.size() != t.depth() + 1) return false;
  for (std::size_t n = 0; n <= t.depth(); ++n)
    if (a.levels[n] >= t.level(n).size()) return false;
  for (std::size_t n = 0; n < t.depth(); ++n)
    if (a.levels[n] != t.proj(n, a.levels[n + 1])) return false;
  return true;
}

TowerProfile profile_of(const Tower& t, std::size_t top) {
  TowerProfile p;
  p.levels.assign(t.depth() + 1, 0);
  p.levels[t.depth()] = top;
  for (std::size_t n = t.depth(); n-- > 0;) p.levels[n] = t.proj(n, p.levels[n + 1]);
  return p;
}

DistanceValue p_infinity_prefix(const Tower& t, const TowerProfile& a, const TowerProfile& b) {
  if (!is_valid_profile(t, a) || !is_valid_profile(t, b)) throw std::invalid_argument("invalid tower profile");
  Rational s = 0;
  for (std::size_t n = 1; n <= t.depth(); ++n)
    s += pow2(-static_cast<int>(n)) * t.metric(n, a.levels[n], b.levels[n]);
  return DistanceValue::bracket(s, s + pow2(-static_cast<int>(t.depth())));
}

bool finitary_premise(const Tower& t, const TowerProfile& a, const TowerProfile& b, std::size_t n_access,
                      const Rational& bound) {
  std::size_t top = std::min(n_access, t.depth());
  for (std::size_t i = 1; i <= top; ++i) {
    // Apply x_i and y_i to a_{k_{i-1}} ∈ D_{i-1}, then the results to a_{k_{i-2}}, ...
    auto rec = [&](auto&& self, std::size_t level, std::size_t x, std::size_t y) -> bool {
      if (level == 0) return t.metric(0, x, y) < bound;
      const FinitePoset& d = t.level(level);
      std::size_t args = std::min(n_access, d.domain().size());
      for (std::size_t k = 0; k < args; ++k)
        if (!self(self, level - 1, d.apply(x, k), d.apply(y, k))) return false;
      return true;
    };
    if (!rec(rec, i, a.levels[i], b.levels[i])) return false;
  }
  return true;
}

FinitePoset random_poset(std::mt19937_64& rng, std::size_t max_size) {
  if (max_size == 0) throw std::invalid_argument("max_size must be positive");
  std::uniform_int_distribution<std::size_t> size_dist(1, max_size);
  std::bernoulli_distribution edge(0.35);
  for (;;) {
    std::size_t n = size_dist(rng);
    Relation leq(n, std::vector<bool>(n));
    for (std::size_t i = 0; i < n; ++i) leq[0][i] = leq[i][i] = true;
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) leq[i][j] = edge(rng);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (leq[i][k] && leq[k][j]) leq[i][j] = true;
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back("e" + std::to_string(i));
    if (!validate(labels, leq, 0)) return FinitePoset(std::move(labels), std::move(leq), 0);
  }
}

}  // namespace lpm
