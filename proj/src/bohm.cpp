#include "lambdapm/bohm.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace lpm {

PartialTerm PartialTerm::node(std::vector<std::string> binders, VarRef head, std::vector<PartialTerm> args) {
  auto n = std::make_shared<PartialNode>();
  std::size_t h = 0;
  for (const auto& a : args)
    if (!a.is_bottom()) h = std::max(h, a->height);
  n->binders = std::move(binders);
  n->head = std::move(head);
  n->args = std::move(args);
  n->height = h + 1;
  PartialTerm out;
  out.node_ = std::move(n);
  return out;
}

bool PartialTerm::operator==(const PartialTerm& other) const {
  if (node_ == other.node_) return true;
  if (!node_ || !other.node_) return false;
  const PartialNode& a = *node_;
  const PartialNode& b = *other.node_;
  if (a.height != b.height || a.binders.size() != b.binders.size() || !(a.head == b.head) ||
      a.args.size() != b.args.size())
    return false;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (a.args[i] != b.args[i]) return false;
  return true;
}

namespace {

enum class RedexPolicy { Reject, ToBottom };

PartialTerm convert(const Term& t, std::vector<std::string>& scope, RedexPolicy policy) {
  Term cur = t;
  std::vector<std::string> binders;
  while (cur->kind == TermNode::Kind::Abs) {
    binders.push_back(cur->name);
    cur = cur->left;
  }
  std::vector<Term> args;
  while (cur->kind == TermNode::Kind::App) {
    args.push_back(cur->right);
    cur = cur->left;
  }
  std::reverse(args.begin(), args.end());
  switch (cur->kind) {
    case TermNode::Kind::Bottom:
      return PartialTerm::bottom();
    case TermNode::Kind::Hole:
      throw std::invalid_argument("context hole inside a partial term");
    case TermNode::Kind::Abs:
      if (policy == RedexPolicy::ToBottom) return PartialTerm::bottom();
      throw std::invalid_argument("partial term is not β-normal: " + print(t));
    default:
      break;
  }
  scope.insert(scope.end(), binders.begin(), binders.end());
  VarRef head = resolve(scope, cur->name);
  std::vector<PartialTerm> pargs;
  pargs.reserve(args.size());
  for (const auto& a : args) pargs.push_back(convert(a, scope, policy));
  scope.resize(scope.size() - binders.size());
  return PartialTerm::node(std::move(binders), std::move(head), std::move(pargs));
}

void free_names(const PartialTerm& a, std::set<std::string>& out) {
  if (a.is_bottom()) return;
  if (!a->head.bound()) out.insert(a->head.name);
  for (const auto& c : a->args) free_names(c, out);
}

Term to_term_in(const PartialTerm& a, std::vector<std::string>& scope, const std::set<std::string>& avoid) {
  if (a.is_bottom()) return bottom_term();
  std::vector<std::string> names;
  for (const auto& hint : a->binders) {
    std::string n = hint;
    while (avoid.count(n) || std::find(scope.begin(), scope.end(), n) != scope.end()) n += "'";
    scope.push_back(n);
    names.push_back(n);
  }
  const VarRef& h = a->head;
  std::string head = h.bound() ? scope[scope.size() - 1 - static_cast<std::size_t>(h.index)] : h.name;
  Term body = var(head);
  for (const auto& c : a->args) body = app(body, to_term_in(c, scope, avoid));
  scope.resize(scope.size() - names.size());
  for (auto it = names.rbegin(); it != names.rend(); ++it) body = lam(*it, body);
  return body;
}

void key_into(const PartialTerm& a, std::string& out) {
  if (a.is_bottom()) {
    out += '_';
    return;
  }
  out += std::to_string(a->binders.size());
  out += a->head.bound() ? "#" + std::to_string(a->head.index) : "$" + a->head.name;
  out += '(';
  for (const auto& c : a->args) {
    key_into(c, out);
    out += ',';
  }
  out += ')';
}

}  // namespace

PartialTerm parse_partial(std::string_view text) { return from_term(parse(text, {.allow_bottom = true})); }

PartialTerm from_term(const Term& t) {
  std::vector<std::string> scope;
  return convert(t, scope, RedexPolicy::Reject);
}

Term to_term(const PartialTerm& a) {
  std::set<std::string> avoid;
  free_names(a, avoid);
  std::vector<std::string> scope;
  return to_term_in(a, scope, avoid);
}

std::string print(const PartialTerm& a) { return print(to_term(a)); }

std::string key(const PartialTerm& a) {
  std::string out;
  key_into(a, out);
  return out;
}

std::size_t height(const PartialTerm& a) { return a.is_bottom() ? 0 : a->height; }

std::size_t node_count(const PartialTerm& a) {
  if (a.is_bottom()) return 0;
  std::size_t n = 1;
  for (const auto& c : a->args) n += node_count(c);
  return n;
}

PartialTerm truncate(const PartialTerm& a, std::size_t n) {
  if (a.is_bottom() || n == 0) return PartialTerm::bottom();
  if (a->height <= n) return a;
  std::vector<PartialTerm> args;
  args.reserve(a->args.size());
  for (const auto& c : a->args) args.push_back(truncate(c, n - 1));
  return PartialTerm::node(a->binders, a->head, std::move(args));
}

PartialTerm direct_approximant(const Term& t) {
  std::vector<std::string> scope;
  return convert(t, scope, RedexPolicy::ToBottom);
}

bool partial_leq(const PartialTerm& a, const PartialTerm& b) {
  if (a.is_bottom()) return true;
  if (b.is_bottom()) return false;
  if (a->binders.size() != b->binders.size() || !(a->head == b->head) || a->args.size() != b->args.size())
    return false;
  for (std::size_t i = 0; i < a->args.size(); ++i)
    if (!partial_leq(a->args[i], b->args[i])) return false;
  return true;
}

std::size_t tree_divergence(const PartialTerm& a, const PartialTerm& b) {
  std::size_t limit = std::min(height(a), height(b));
  std::size_t n = 0;
  while (n < limit && truncate(a, n + 1) == truncate(b, n + 1)) ++n;
  return n;
}

DistanceValue p_tree(const PartialTerm& a, const PartialTerm& b) {
  return DistanceValue::exact(pow2(-static_cast<int>(tree_divergence(a, b))));
}

namespace {

// A Böhm tree explored to a fixed depth. Node: head normal form found.
// Empty: certified unsolvable. Unknown: fuel ran out. Cut: below the depth.
struct ProbeTree {
  enum class Kind { Node, Empty, Unknown, Cut };
  Kind kind = Kind::Cut;
  std::vector<std::string> binders;
  VarRef head;
  std::vector<ProbeTree> children;
};

ProbeTree probe(const Term& t, std::vector<std::string>& scope, std::size_t level, std::size_t depth,
                std::size_t fuel) {
  ProbeTree out;
  if (level > depth) return out;
  Solvability s = solvability(t, fuel);
  if (s.divergent()) {
    out.kind = ProbeTree::Kind::Empty;
    return out;
  }
  if (s.unknown()) {
    out.kind = ProbeTree::Kind::Unknown;
    return out;
  }
  const HeadForm& h = *s.hnf;
  out.kind = ProbeTree::Kind::Node;
  out.binders = h.binders;
  scope.insert(scope.end(), h.binders.begin(), h.binders.end());
  out.head = resolve(scope, h.head);
  for (const auto& a : h.args) out.children.push_back(probe(a, scope, level + 1, depth, fuel));
  scope.resize(scope.size() - h.binders.size());
  return out;
}

PartialTerm to_partial(const ProbeTree& p, std::vector<std::size_t>& path,
                       std::vector<std::vector<std::size_t>>& tentative) {
  switch (p.kind) {
    case ProbeTree::Kind::Empty:
    case ProbeTree::Kind::Cut:
      return PartialTerm::bottom();
    case ProbeTree::Kind::Unknown:
      tentative.push_back(path);
      return PartialTerm::bottom();
    case ProbeTree::Kind::Node:
      break;
  }
  std::vector<PartialTerm> args;
  for (std::size_t i = 0; i < p.children.size(); ++i) {
    path.push_back(i);
    args.push_back(to_partial(p.children[i], path, tentative));
    path.pop_back();
  }
  return PartialTerm::node(p.binders, p.head, std::move(args));
}

enum class K3 { False, Unknown, True };

K3 k3_and(K3 a, K3 b) { return std::min(a, b); }

// Certain lower bound and (possibly infinite) upper bound on the height.
struct HeightRange {
  std::size_t lo = 0;
  bool bounded = true;
  std::size_t hi = 0;
};

HeightRange height_range(const ProbeTree& p) {
  switch (p.kind) {
    case ProbeTree::Kind::Empty:
      return {0, true, 0};
    case ProbeTree::Kind::Unknown:
    case ProbeTree::Kind::Cut:
      return {0, false, 0};
    case ProbeTree::Kind::Node:
      break;
  }
  HeightRange r{1, true, 1};
  for (const auto& c : p.children) {
    HeightRange cr = height_range(c);
    r.lo = std::max(r.lo, cr.lo + 1);
    if (!cr.bounded) r.bounded = false;
    r.hi = std::max(r.hi, cr.hi + 1);
  }
  return r;
}

K3 defined_at(const HeightRange& r, std::size_t k) {
  if (k <= r.lo) return K3::True;
  if (r.bounded && k > r.hi) return K3::False;
  return K3::Unknown;
}

K3 equal_upto(const ProbeTree& a, const ProbeTree& b, std::size_t k) {
  if (k == 0) return K3::True;
  using Kind = ProbeTree::Kind;
  if (a.kind == Kind::Unknown || a.kind == Kind::Cut || b.kind == Kind::Unknown || b.kind == Kind::Cut)
    return K3::Unknown;
  if (a.kind == Kind::Empty || b.kind == Kind::Empty) return a.kind == b.kind ? K3::True : K3::False;
  if (a.binders.size() != b.binders.size() || !(a.head == b.head) || a.children.size() != b.children.size())
    return K3::False;
  K3 acc = K3::True;
  for (std::size_t i = 0; i < a.children.size() && acc != K3::False; ++i)
    acc = k3_and(acc, equal_upto(a.children[i], b.children[i], k - 1));
  return acc;
}

}  // namespace

BohmTruncation bohm_truncate(const Term& t, std::size_t depth, std::size_t fuel) {
  std::vector<std::string> scope;
  ProbeTree p = probe(t, scope, 1, depth, fuel);
  BohmTruncation out;
  out.depth = depth;
  std::vector<std::size_t> path;
  out.tree = to_partial(p, path, out.tentative);
  out.exact = out.tentative.empty();
  return out;
}

DistanceValue p_bohm(const Term& m, const Term& n, std::size_t depth, std::size_t fuel) {
  std::vector<std::string> scope;
  ProbeTree a = probe(m, scope, 1, depth, fuel);
  ProbeTree b = probe(n, scope, 1, depth, fuel);
  HeightRange ra = height_range(a);
  HeightRange rb = height_range(b);
  std::size_t k_true = 0;
  std::size_t k_false = 0;
  for (std::size_t k = 1; k <= depth + 1; ++k) {
    K3 e = k3_and(k3_and(defined_at(ra, k), defined_at(rb, k)), equal_upto(a, b, k));
    if (e == K3::True) k_true = k;
    if (e == K3::False && k_false == 0) k_false = k;
  }
  Rational upper = pow2(-static_cast<int>(k_true));
  Rational lower = k_false ? pow2(-static_cast<int>(k_false - 1)) : Rational(0);
  return DistanceValue::bracket(lower, upper);
}

}  // namespace lpm
