#include "lambdapm/taylor.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "lambdapm/pmetric.hpp"

namespace lpm {

bool box_relation(const ResourceTerm& t, const PartialTerm& a) {
  if (a.is_bottom()) return false;
  ResourceTerm cur = t;
  std::size_t m = 0;
  while (cur->kind == ResourceNode::Kind::Abs) {
    ++m;
    cur = cur->body;
  }
  if (m != a->binders.size()) return false;
  std::vector<const std::vector<ResourceTerm>*> bags;
  while (cur->kind == ResourceNode::Kind::App) {
    bags.push_back(&cur->bag);
    cur = cur->body;
  }
  if (cur->kind != ResourceNode::Kind::Var || !(cur->var == a->head)) return false;
  if (bags.size() != a->args.size()) return false;
  std::reverse(bags.begin(), bags.end());
  for (std::size_t i = 0; i < bags.size(); ++i)
    for (const auto& e : *bags[i])
      if (!box_relation(e, a->args[i])) return false;
  return true;
}

namespace {

// All multisets of size ≤ bound over pool, each sorted.
std::vector<std::vector<ResourceTerm>> multisets(const ResourceSet& pool, std::size_t bound) {
  std::vector<std::vector<ResourceTerm>> out;
  std::vector<ResourceTerm> cur;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    out.push_back(cur);
    if (cur.size() == bound) return;
    for (std::size_t i = start; i < pool.size(); ++i) {
      cur.push_back(pool[i]);
      self(self, i);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

ResourceSet expand_partial(const PartialTerm& a, std::size_t b, std::size_t h) {
  if (a.is_bottom() || h == 0) return {};
  std::vector<ResourceTerm> partial{rvar(a->head)};
  for (const auto& arg : a->args) {
    std::vector<std::vector<ResourceTerm>> bags =
        (arg.is_bottom() || h == 1) ? std::vector<std::vector<ResourceTerm>>{{}}
                                    : multisets(expand_partial(arg, b, h - 1), b);
    std::vector<ResourceTerm> next;
    next.reserve(partial.size() * bags.size());
    for (const auto& p : partial)
      for (const auto& bag : bags) next.push_back(rapp(p, bag));
    partial = std::move(next);
  }
  for (auto& t : partial)
    for (auto it = a->binders.rbegin(); it != a->binders.rend(); ++it) t = rlam(*it, t);
  return normalize_set(std::move(partial));
}

ResourceSet expand_raw(const Term& m, std::vector<std::string>& scope, std::size_t b, std::size_t h) {
  if (h == 0) return {};
  switch (m->kind) {
    case TermNode::Kind::Var:
      return {rvar(resolve(scope, m->name))};
    case TermNode::Kind::Abs: {
      scope.push_back(m->name);
      ResourceSet body = expand_raw(m->left, scope, b, h);
      scope.pop_back();
      for (auto& t : body) t = rlam(m->name, t);
      return body;
    }
    case TermNode::Kind::App: {
      ResourceSet fun = expand_raw(m->left, scope, b, h);
      if (fun.empty()) return {};
      auto bags = h == 1 ? std::vector<std::vector<ResourceTerm>>{{}} : multisets(expand_raw(m->right, scope, b, h - 1), b);
      ResourceSet out;
      out.reserve(fun.size() * bags.size());
      for (const auto& f : fun)
        for (const auto& bag : bags) out.push_back(rapp(f, bag));
      return normalize_set(std::move(out));
    }
    case TermNode::Kind::Bottom:
      return {};
    case TermNode::Kind::Hole:
      throw std::invalid_argument("cannot expand a context");
  }
  return {};
}

// For each level n ≥ 1, the keys of the level-n truncations of the
// elements of height ≥ n.
std::vector<std::unordered_set<std::string>> truncation_table(const ResourceSet& S) {
  std::vector<std::unordered_set<std::string>> table(1);
  for (const auto& s : S) {
    if (table.size() <= s->height) table.resize(s->height + 1);
    for (std::size_t n = 1; n <= s->height; ++n) table[n].insert((*truncate(s, n))->key);
  }
  return table;
}

// max_{b∈B} agreement(a, b), with B given by its truncation table.
std::size_t best_agreement(const ResourceTerm& a, const std::vector<std::unordered_set<std::string>>& tb) {
  std::size_t best = 0;
  std::size_t limit = std::min(a->height, tb.size() - 1);
  for (std::size_t n = 1; n <= limit; ++n) {
    if (!tb[n].count((*truncate(a, n))->key)) break;
    best = n;
  }
  return best;
}

// The terms obtained from t by emptying exactly one non-empty bag. ⪯ is the
// reflexive-transitive closure of this step.
std::vector<ResourceTerm> one_step_below(const ResourceTerm& t) {
  std::vector<ResourceTerm> out;
  switch (t->kind) {
    case ResourceNode::Kind::Var:
      break;
    case ResourceNode::Kind::Abs:
      for (auto& p : one_step_below(t->body)) out.push_back(rlam(t->binder, p));
      break;
    case ResourceNode::Kind::App:
      if (!t->bag.empty()) out.push_back(rapp(t->body, {}));
      for (auto& p : one_step_below(t->body)) out.push_back(rapp(p, t->bag));
      for (std::size_t i = 0; i < t->bag.size(); ++i) {
        if (i > 0 && t->bag[i]->key == t->bag[i - 1]->key) continue;
        for (auto& p : one_step_below(t->bag[i])) {
          auto bag = t->bag;
          bag[i] = p;
          out.push_back(rapp(t->body, std::move(bag)));
        }
      }
      break;
  }
  return out;
}

// max{g(a') | a ⪯ a' ∈ A} for every a, when A is closed under emptying bags
// (then the one-step relation inside A generates ⪯ on A); nullopt otherwise.
std::optional<std::vector<std::size_t>> extension_maxima(const ResourceSet& A, const std::vector<std::size_t>& g) {
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < A.size(); ++i) index.emplace(A[i]->key, i);
  std::vector<std::vector<std::size_t>> below(A.size());
  for (std::size_t i = 0; i < A.size(); ++i)
    for (const auto& p : one_step_below(A[i])) {
      auto it = index.find(p->key);
      if (it == index.end()) return std::nullopt;
      below[i].push_back(it->second);
    }
  std::vector<std::size_t> order(A.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return A[i]->size > A[j]->size; });
  std::vector<std::size_t> best = g;
  for (std::size_t i : order)
    for (std::size_t p : below[i]) best[p] = std::max(best[p], best[i]);
  return best;
}

// sup_{a∈A} inf_{a'≥a ∈A, b∈B} r(a', b)
Rational star_side(const ResourceSet& A, const ResourceSet& B, LiftOrder order) {
  if (A.empty()) return 0;
  if (B.empty()) return 1;
  auto tb = truncation_table(B);
  std::vector<std::size_t> g(A.size());
  for (std::size_t i = 0; i < A.size(); ++i) g[i] = best_agreement(A[i], tb);
  std::size_t worst = std::numeric_limits<std::size_t>::max();
  if (order == LiftOrder::Induced) {
    std::unordered_map<std::string, std::size_t> up;  // key of a'|_m (m = its height) ↦ max g(a')
    for (std::size_t i = 0; i < A.size(); ++i)
      for (std::size_t m = 1; m <= A[i]->height; ++m) {
        ResourceTerm t = *truncate(A[i], m);
        if (t->height != m) continue;
        auto [it, fresh] = up.emplace(t->key, g[i]);
        if (!fresh) it->second = std::max(it->second, g[i]);
      }
    for (const auto& a : A) worst = std::min(worst, up.at(a->key));
  } else if (auto best = extension_maxima(A, g)) {
    for (auto v : *best) worst = std::min(worst, v);
  } else {
    std::vector<std::size_t> by_g(A.size());
    std::iota(by_g.begin(), by_g.end(), 0);
    std::stable_sort(by_g.begin(), by_g.end(), [&](std::size_t i, std::size_t j) { return g[i] > g[j]; });
    for (const auto& a : A) {
      for (std::size_t j : by_g)
        if (resource_leq(a, A[j])) {
          worst = std::min(worst, g[j]);
          break;
        }
    }
  }
  return pow2(-static_cast<int>(worst));
}

Rational plain_side(const ResourceSet& A, const ResourceSet& B) {
  if (A.empty()) return 0;
  if (B.empty()) return 1;
  auto tb = truncation_table(B);
  std::size_t worst = std::numeric_limits<std::size_t>::max();
  for (const auto& a : A) worst = std::min(worst, best_agreement(a, tb));
  return pow2(-static_cast<int>(worst));
}

}  // namespace

TaylorFragment taylor_expand(const PartialTerm& a, std::size_t mult_bound, std::size_t height_bound) {
  static std::mutex mu;
  static std::unordered_map<std::string, ResourceSet> memo;
  // Expansions only depend on the first height(a) levels.
  std::size_t h = std::min(height_bound, height(a));
  std::string k = key(a) + "|" + std::to_string(mult_bound) + "|" + std::to_string(h);
  {
    std::lock_guard lock(mu);
    if (auto it = memo.find(k); it != memo.end()) return {mult_bound, height_bound, it->second};
  }
  ResourceSet s = expand_partial(a, mult_bound, h);
  std::lock_guard lock(mu);
  if (memo.size() > 4096) memo.clear();
  memo.emplace(k, s);
  return {mult_bound, height_bound, std::move(s)};
}

double raw_expansion_bound(const Term& m, std::size_t mult_bound) {
  switch (m->kind) {
    case TermNode::Kind::Abs:
      return raw_expansion_bound(m->left, mult_bound);
    case TermNode::Kind::App: {
      double n = raw_expansion_bound(m->right, mult_bound);
      double bags = 1;
      for (std::size_t k = 1; k <= mult_bound; ++k) bags = bags * (n + k) / k;
      return raw_expansion_bound(m->left, mult_bound) * bags;
    }
    default:
      return 1;
  }
}

TaylorFragment taylor_of_term(const Term& m, std::size_t mult_bound, std::size_t height_bound) {
  std::vector<std::string> scope;
  return {mult_bound, height_bound, expand_raw(m, scope, mult_bound, height_bound)};
}

std::size_t max_bag(const ResourceTerm& t) {
  switch (t->kind) {
    case ResourceNode::Kind::Var:
      return 0;
    case ResourceNode::Kind::Abs:
      return max_bag(t->body);
    case ResourceNode::Kind::App: {
      std::size_t m = std::max(t->bag.size(), max_bag(t->body));
      for (const auto& e : t->bag) m = std::max(m, max_bag(e));
      return m;
    }
  }
  return 0;
}

Rational hausdorff_star_r(const ResourceSet& A, const ResourceSet& B, LiftOrder order) {
  if (A.empty() && B.empty()) return 1;
  return std::max(star_side(A, B, order), star_side(B, A, order));
}

Rational hausdorff_plain_r(const ResourceSet& A, const ResourceSet& B) {
  return std::max(plain_side(A, B), plain_side(B, A));
}

Rational hausdorff_star_ideals(const ResourceSet& A, const ResourceSet& B, LiftOrder order) {
  if (A.empty() && B.empty()) return 1;
  auto below = [order](const ResourceTerm& s, const ResourceTerm& t) {
    if (order == LiftOrder::Extension) return resource_leq(s, t);
    return s->height <= t->height && (*truncate(t, s->height))->key == s->key;
  };
  auto ideals = [&](const ResourceSet& S) {
    std::vector<ResourceSet> out;
    for (const auto& t : S) {
      ResourceSet down;
      for (const auto& s : S)
        if (below(s, t)) down.push_back(s);
      out.push_back(std::move(down));
    }
    return out;
  };
  std::vector<ResourceSet> all = ideals(A);
  std::size_t na = all.size();
  for (auto& i : ideals(B)) all.push_back(std::move(i));
  std::size_t n = all.size();
  std::vector<std::vector<Rational>> d(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) d[i][j] = d[j][i] = hausdorff_star_r(all[i], all[j], order);
  std::vector<std::size_t> ia, ib;
  for (std::size_t i = 0; i < na; ++i) ia.push_back(i);
  for (std::size_t i = na; i < n; ++i) ib.push_back(i);
  return hausdorff_star(ia, ib, [&](std::size_t i, std::size_t j) { return d[i][j]; });
}

IsometryResult isometry_check(const PartialTerm& a, const PartialTerm& b, std::size_t mult_bound, LiftOrder order) {
  std::size_t h = 1 + std::max(height(a), height(b));
  auto lhs_at = [&](std::size_t mult) {
    return hausdorff_star_r(taylor_expand(a, mult, h).elements, taylor_expand(b, mult, h).elements, order);
  };
  IsometryResult r;
  Rational lhs = lhs_at(mult_bound);
  r.lhs = DistanceValue::exact(lhs);
  r.rhs = p_tree(a, b);
  r.equal = r.lhs == r.rhs;
  r.stable = lhs_at(mult_bound + 1) == lhs;
  return r;
}

CommutationResult commutation_check(const Term& m, std::size_t mult_bound, std::size_t height_bound,
                                    std::size_t fuel, std::size_t raw_bound_cap) {
  if (raw_bound_cap == 0) raw_bound_cap = 2 * mult_bound + 2;
  BohmTruncation bt = bohm_truncate(m, height_bound, fuel);
  if (!bt.exact)
    throw std::runtime_error("Böhm truncation of " + print(m) + " is tentative at " +
                             std::to_string(bt.tentative.size()) + " node(s)");
  CommutationResult r;
  r.rhs = taylor_expand(bt.tree, mult_bound, height_bound).elements;
  ResourceReducer reducer;
  for (std::size_t raw = mult_bound; raw <= raw_bound_cap; ++raw) {
    if (raw_expansion_bound(m, raw) > static_cast<double>(kRawExpansionLimit)) {
      if (raw == mult_bound)
        throw std::runtime_error("raw expansion of " + print(m) + " exceeds " +
                                 std::to_string(kRawExpansionLimit) + " elements");
      break;
    }
    r.raw_bound = raw;
    ResourceSet lhs;
    for (const auto& t : taylor_of_term(m, raw, std::numeric_limits<std::size_t>::max()).elements)
      for (const auto& s : reducer.normal_forms(t))
        if (s->height <= height_bound && max_bag(s) <= mult_bound) lhs.push_back(s);
    r.lhs = normalize_set(std::move(lhs));
    r.lhs_within_rhs = std::includes(r.rhs.begin(), r.rhs.end(), r.lhs.begin(), r.lhs.end(), ResourceKeyLess{});
    r.equal = r.lhs_within_rhs && r.lhs.size() == r.rhs.size();
    if (r.equal || !r.lhs_within_rhs) break;
  }
  return r;
}

namespace {

const char* const kFree[] = {"x", "y"};
const char* const kBinderHints[] = {"z", "w", "v", "u"};

class PartialEnumeration {
 public:
  PartialTerm at(std::size_t n) {
    if (n == 0) throw std::out_of_range("partial-term enumeration starts at 1");
    std::lock_guard lock(mu_);
    while (flat_.size() < n) {
      if (next_size_ > 32) throw std::runtime_error("partial-term enumeration exhausted");
      const auto& layer = of_size(next_size_++, 0);
      flat_.insert(flat_.end(), layer.begin(), layer.end());
    }
    return flat_[n - 1];
  }

 private:
  // Compositions of total into k positive parts, lexicographic.
  static std::vector<std::vector<std::size_t>> compositions(std::size_t total, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur;
    auto rec = [&](auto&& self, std::size_t left, std::size_t parts) -> void {
      if (parts == 0) {
        if (left == 0) out.push_back(cur);
        return;
      }
      for (std::size_t p = 1; p + (parts - 1) <= left; ++p) {
        cur.push_back(p);
        self(self, left - p, parts - 1);
        cur.pop_back();
      }
    };
    rec(rec, total, k);
    return out;
  }

  const std::vector<PartialTerm>& of_size(std::size_t s, std::size_t enclosing) {
    auto key = std::make_pair(s, enclosing);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    std::vector<PartialTerm> out;
    if (s == 1) out.push_back(PartialTerm::bottom());
    for (std::size_t m = 0; m + 1 <= s; ++m) {
      std::size_t rest = s - 1 - m;
      std::vector<std::string> binders;
      for (std::size_t j = 0; j < m; ++j) binders.push_back(kBinderHints[(enclosing + j) % 4]);
      std::vector<VarRef> heads;
      for (auto f : kFree) heads.push_back(VarRef{-1, f});
      for (std::size_t i = 0; i < enclosing + m; ++i) heads.push_back(VarRef{static_cast<int>(i), ""});
      for (const auto& h : heads) {
        for (std::size_t k = 0; k <= rest; ++k) {
          if ((k == 0) != (rest == 0)) continue;
          for (const auto& comp : compositions(rest, k)) {
            std::vector<std::vector<PartialTerm>> acc{{}};
            for (std::size_t part : comp) {
              const auto& opts = of_size(part, enclosing + m);
              std::vector<std::vector<PartialTerm>> next;
              for (const auto& p : acc)
                for (const auto& o : opts) {
                  auto v = p;
                  v.push_back(o);
                  next.push_back(std::move(v));
                }
              acc = std::move(next);
            }
            for (auto& args : acc) out.push_back(PartialTerm::node(binders, h, std::move(args)));
          }
        }
      }
    }
    return memo_[key] = std::move(out);
  }

  std::mutex mu_;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<PartialTerm>> memo_;
  std::vector<PartialTerm> flat_;
  std::size_t next_size_ = 1;
};

ResourceTerm full_element(const PartialTerm& a) {
  ResourceTerm t = rvar(a->head);
  for (const auto& arg : a->args) {
    std::vector<ResourceTerm> bag;
    if (!arg.is_bottom()) bag.push_back(full_element(arg));
    t = rapp(t, std::move(bag));
  }
  for (auto it = a->binders.rbegin(); it != a->binders.rend(); ++it) t = rlam(*it, t);
  return t;
}

bool has_argument(const PartialTerm& a) {
  for (const auto& arg : a->args)
    if (!arg.is_bottom()) return true;
  return false;
}

std::vector<ResourceTerm> taylor_prefix(const PartialTerm& a, std::size_t count) {
  std::vector<ResourceTerm> out{full_element(a)};
  if (!has_argument(a)) return out;
  std::unordered_set<std::string> seen{out[0]->key};
  for (std::size_t b = 1; out.size() < count; ++b)
    for (const auto& t : taylor_expand(a, b, height(a)).elements)
      if (seen.insert(t->key).second) out.push_back(t);
  return out;
}

}  // namespace

PartialTerm enumerate_partial(std::size_t n) {
  static PartialEnumeration e;
  return e.at(n);
}

std::optional<ResourceTerm> enumerate_taylor(const PartialTerm& a, std::size_t m) {
  if (m == 0) throw std::out_of_range("enumeration starts at 1");
  if (a.is_bottom()) return std::nullopt;
  auto prefix = taylor_prefix(a, m);
  return prefix[(m - 1) % prefix.size()];
}

std::pair<std::size_t, std::size_t> unpair(std::size_t n) {
  if (n == 0) throw std::out_of_range("pairing starts at 1");
  std::size_t d = 1;
  while (d * (d + 1) / 2 < n) ++d;
  std::size_t pos = n - (d - 1) * d / 2;
  return {pos, d + 1 - pos};
}

EnumerationIsometry enumeration_isometry(const PartialTerm& a, const PartialTerm& b, std::size_t prefix) {
  if (prefix == 0) throw std::invalid_argument("prefix must be at least 1");
  int k = static_cast<int>(prefix);
  EnumerationIsometry r;
  Rational pb = 0;
  Rational pp = 0;
  for (std::size_t n = 1; n <= prefix; ++n) {
    PartialTerm an = enumerate_partial(n);
    EnumerationRow row;
    row.n = n;
    row.partial = print(an);
    Rational wn = pow2(-static_cast<int>(n));
    if (!partial_leq(an, a) || !partial_leq(an, b)) row.p_b = wn;
    if (!an.is_bottom()) {
      auto ts = taylor_prefix(an, prefix);
      for (std::size_t m = 1; m <= prefix; ++m) {
        const ResourceTerm& t = ts[(m - 1) % ts.size()];
        if (!box_relation(t, a) || !box_relation(t, b)) row.p_p += wn * pow2(-static_cast<int>(m));
      }
    }
    pb += row.p_b;
    pp += row.p_p;
    r.rows.push_back(std::move(row));
  }
  Rational tail_b = pow2(-k);
  Rational tail_p = pow2(-k) + (1 - pow2(-k)) * pow2(-k);
  r.p_b = DistanceValue::bracket(pb, pb + tail_b);
  r.p_p = DistanceValue::bracket(pp, pp + tail_p);
  Rational mid_b = pb + tail_b / 2;
  Rational mid_p = pp + tail_p / 2;
  r.gap = mid_b > mid_p ? mid_b - mid_p : mid_p - mid_b;
  r.tail = 2 * pow2(-k);
  r.within = r.gap <= r.tail;
  return r;
}

}  // namespace lpm
