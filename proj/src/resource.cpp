#include "lambdapm/resource.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

#include "lexer.hpp"

namespace lpm {

using detail::Tok;
using detail::Token;

ResourceTerm rvar(VarRef v) {
  auto n = std::make_shared<ResourceNode>();
  n->kind = ResourceNode::Kind::Var;
  n->key = v.bound() ? "#" + std::to_string(v.index) : "$" + v.name;
  n->var = std::move(v);
  return n;
}

ResourceTerm rlam(std::string binder, ResourceTerm body) {
  auto n = std::make_shared<ResourceNode>();
  n->kind = ResourceNode::Kind::Abs;
  n->binder = std::move(binder);
  n->key = "\\" + body->key;
  n->height = body->height;
  n->size = body->size + 1;
  n->body = std::move(body);
  return n;
}

ResourceTerm rapp(ResourceTerm fun, std::vector<ResourceTerm> bag) {
  auto n = std::make_shared<ResourceNode>();
  n->kind = ResourceNode::Kind::App;
  std::sort(bag.begin(), bag.end(), ResourceKeyLess{});
  std::size_t inner = 0;
  std::size_t sz = fun->size + 1;
  std::string key = "(" + fun->key + "<";
  for (std::size_t i = 0; i < bag.size(); ++i) {
    if (i) key += ',';
    key += bag[i]->key;
    inner = std::max(inner, bag[i]->height);
    sz += bag[i]->size;
  }
  key += ">)";
  n->key = std::move(key);
  n->height = std::max(fun->height, inner + 1);
  n->size = sz;
  n->body = std::move(fun);
  n->bag = std::move(bag);
  return n;
}

namespace {

class ResourceParser {
 public:
  explicit ResourceParser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  ResourceTerm parse_all() {
    ResourceTerm t = term();
    if (peek().kind != Tok::End) {
      if (peek().kind == Tok::Ident || peek().kind == Tok::LParen || peek().kind == Tok::Lambda)
        throw ParseError("juxtaposition is not resource syntax, use t<u>", peek().pos);
      throw ParseError("unexpected '" + peek().text + "'", peek().pos);
    }
    return t;
  }

 private:
  const Token& peek() const { return toks_[i_]; }

  void expect(Tok k, const char* what) {
    if (peek().kind != k) throw ParseError(std::string("expected ") + what, peek().pos);
    ++i_;
  }

  ResourceTerm term() {
    if (peek().kind == Tok::Lambda) {
      ++i_;
      std::vector<std::string> binders;
      while (peek().kind == Tok::Ident) binders.push_back(toks_[i_++].text);
      if (binders.empty()) throw ParseError("expected binder", peek().pos);
      expect(Tok::Dot, "'.'");
      scope_.insert(scope_.end(), binders.begin(), binders.end());
      ResourceTerm body = term();
      scope_.resize(scope_.size() - binders.size());
      for (auto it = binders.rbegin(); it != binders.rend(); ++it) body = rlam(*it, body);
      return body;
    }
    ResourceTerm t = atom();
    while (peek().kind == Tok::LAngle) {
      ++i_;
      std::vector<ResourceTerm> bag;
      if (peek().kind != Tok::RAngle) {
        bag.push_back(term());
        while (peek().kind == Tok::Comma) {
          ++i_;
          bag.push_back(term());
        }
      }
      expect(Tok::RAngle, "'>'");
      t = rapp(t, std::move(bag));
    }
    return t;
  }

  ResourceTerm atom() {
    const Token& t = peek();
    if (t.kind == Tok::Ident) {
      ++i_;
      return rvar(resolve(scope_, t.text));
    }
    if (t.kind == Tok::LParen) {
      ++i_;
      ResourceTerm inner = term();
      expect(Tok::RParen, "')'");
      return inner;
    }
    if (t.kind == Tok::End) throw ParseError("unexpected end of input", t.pos);
    throw ParseError("unexpected '" + t.text + "'", t.pos);
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
  std::vector<std::string> scope_;
};

void free_names(const ResourceTerm& t, std::set<std::string>& out) {
  switch (t->kind) {
    case ResourceNode::Kind::Var:
      if (!t->var.bound()) out.insert(t->var.name);
      break;
    case ResourceNode::Kind::Abs:
      free_names(t->body, out);
      break;
    case ResourceNode::Kind::App:
      free_names(t->body, out);
      for (const auto& e : t->bag) free_names(e, out);
      break;
  }
}

void print_into(const ResourceTerm& t, std::vector<std::string>& scope, const std::set<std::string>& avoid,
                std::string& out) {
  switch (t->kind) {
    case ResourceNode::Kind::Var:
      out += t->var.bound() ? scope[scope.size() - 1 - static_cast<std::size_t>(t->var.index)] : t->var.name;
      break;
    case ResourceNode::Kind::Abs: {
      std::string n = t->binder;
      while (avoid.count(n) || std::find(scope.begin(), scope.end(), n) != scope.end()) n += "'";
      out += '\\';
      out += n;
      out += '.';
      scope.push_back(n);
      print_into(t->body, scope, avoid, out);
      scope.pop_back();
      break;
    }
    case ResourceNode::Kind::App: {
      bool paren = t->body->kind == ResourceNode::Kind::Abs;
      if (paren) out += '(';
      print_into(t->body, scope, avoid, out);
      if (paren) out += ')';
      out += '<';
      for (std::size_t i = 0; i < t->bag.size(); ++i) {
        if (i) out += ',';
        print_into(t->bag[i], scope, avoid, out);
      }
      out += '>';
      break;
    }
  }
}

ResourceTerm shift(const ResourceTerm& t, int by, int cutoff) {
  switch (t->kind) {
    case ResourceNode::Kind::Var:
      if (t->var.bound() && t->var.index >= cutoff) return rvar(VarRef{t->var.index + by, t->var.name});
      return t;
    case ResourceNode::Kind::Abs:
      return rlam(t->binder, shift(t->body, by, cutoff + 1));
    case ResourceNode::Kind::App: {
      std::vector<ResourceTerm> bag;
      bag.reserve(t->bag.size());
      for (const auto& e : t->bag) bag.push_back(shift(e, by, cutoff));
      return rapp(shift(t->body, by, cutoff), std::move(bag));
    }
  }
  return t;
}

std::size_t occurrences(const ResourceTerm& t, int depth) {
  switch (t->kind) {
    case ResourceNode::Kind::Var:
      return t->var.index == depth ? 1 : 0;
    case ResourceNode::Kind::Abs:
      return occurrences(t->body, depth + 1);
    case ResourceNode::Kind::App: {
      std::size_t n = occurrences(t->body, depth);
      for (const auto& e : t->bag) n += occurrences(e, depth);
      return n;
    }
  }
  return 0;
}

ResourceTerm substitute_linear(const ResourceTerm& t, int depth, const std::vector<ResourceTerm>& us,
                               std::size_t& pos) {
  switch (t->kind) {
    case ResourceNode::Kind::Var: {
      if (!t->var.bound() || t->var.index < depth) return t;
      if (t->var.index == depth) return shift(us[pos++], depth, 0);
      return rvar(VarRef{t->var.index - 1, t->var.name});
    }
    case ResourceNode::Kind::Abs:
      return rlam(t->binder, substitute_linear(t->body, depth + 1, us, pos));
    case ResourceNode::Kind::App: {
      ResourceTerm f = substitute_linear(t->body, depth, us, pos);
      std::vector<ResourceTerm> bag;
      bag.reserve(t->bag.size());
      for (const auto& e : t->bag) bag.push_back(substitute_linear(e, depth, us, pos));
      return rapp(f, std::move(bag));
    }
  }
  return t;
}

// All results of contracting (λx.body)<bag>.
ResourceSet contract(const ResourceTerm& abs, const std::vector<ResourceTerm>& bag) {
  ResourceSet out;
  if (occurrences(abs->body, 0) != bag.size()) return out;
  std::vector<ResourceTerm> perm = bag;
  std::sort(perm.begin(), perm.end(), ResourceKeyLess{});
  do {
    std::size_t pos = 0;
    out.push_back(substitute_linear(abs->body, 0, perm, pos));
  } while (std::next_permutation(perm.begin(), perm.end(), ResourceKeyLess{}));
  return normalize_set(std::move(out));
}

// Every multiset {s₁…sₖ} with sᵢ drawn from choices[i].
std::vector<std::vector<ResourceTerm>> bag_products(const std::vector<const ResourceSet*>& choices) {
  std::vector<std::vector<ResourceTerm>> acc{{}};
  for (const ResourceSet* c : choices) {
    std::vector<std::vector<ResourceTerm>> next;
    next.reserve(acc.size() * c->size());
    for (const auto& partial : acc)
      for (const auto& s : *c) {
        auto v = partial;
        v.push_back(s);
        next.push_back(std::move(v));
      }
    acc = std::move(next);
    if (acc.empty()) break;
  }
  std::set<std::string> seen;
  std::vector<std::vector<ResourceTerm>> out;
  for (auto& v : acc) {
    std::sort(v.begin(), v.end(), ResourceKeyLess{});
    std::string k;
    for (const auto& e : v) k += e->key + ",";
    if (seen.insert(k).second) out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

ResourceTerm parse_resource(std::string_view text) { return ResourceParser(detail::tokenize(text)).parse_all(); }

std::string print(const ResourceTerm& t) {
  std::set<std::string> avoid;
  free_names(t, avoid);
  std::vector<std::string> scope;
  std::string out;
  print_into(t, scope, avoid, out);
  return out;
}

bool is_normal(const ResourceTerm& t) {
  ResourceTerm cur = t;
  while (cur->kind == ResourceNode::Kind::Abs) cur = cur->body;
  while (cur->kind == ResourceNode::Kind::App) {
    for (const auto& e : cur->bag)
      if (!is_normal(e)) return false;
    cur = cur->body;
  }
  return cur->kind == ResourceNode::Kind::Var;
}

std::size_t height(const ResourceTerm& t) { return t->height; }

std::optional<ResourceTerm> truncate(const ResourceTerm& t, std::size_t n) {
  if (n == 0) return std::nullopt;
  if (t->height <= n) return t;
  switch (t->kind) {
    case ResourceNode::Kind::Var:
      return t;
    case ResourceNode::Kind::Abs:
      return rlam(t->binder, *truncate(t->body, n));
    case ResourceNode::Kind::App: {
      std::vector<ResourceTerm> bag;
      if (n > 1) {
        bag.reserve(t->bag.size());
        for (const auto& e : t->bag) bag.push_back(*truncate(e, n - 1));
      }
      return rapp(*truncate(t->body, n), std::move(bag));
    }
  }
  return t;
}

std::size_t r_agreement(const ResourceTerm& t, const ResourceTerm& u) {
  std::size_t limit = std::min(t->height, u->height);
  std::size_t n = 0;
  while (n < limit && (*truncate(t, n + 1))->key == (*truncate(u, n + 1))->key) ++n;
  return n;
}

DistanceValue r_metric(const ResourceTerm& t, const ResourceTerm& u) {
  return DistanceValue::exact(pow2(-static_cast<int>(r_agreement(t, u))));
}

bool resource_leq(const ResourceTerm& t, const ResourceTerm& u) {
  if (t->kind != u->kind) return false;
  switch (t->kind) {
    case ResourceNode::Kind::Var:
      return t->var == u->var;
    case ResourceNode::Kind::Abs:
      return resource_leq(t->body, u->body);
    case ResourceNode::Kind::App: {
      if (!resource_leq(t->body, u->body)) return false;
      if (t->bag.empty()) return true;
      if (t->bag.size() != u->bag.size()) return false;
      std::vector<std::size_t> perm(u->bag.size());
      std::iota(perm.begin(), perm.end(), 0);
      do {
        bool ok = true;
        for (std::size_t i = 0; i < perm.size() && ok; ++i) ok = resource_leq(t->bag[i], u->bag[perm[i]]);
        if (ok) return true;
      } while (std::next_permutation(perm.begin(), perm.end()));
      return false;
    }
  }
  return false;
}

ResourceSet normalize_set(ResourceSet s) {
  std::sort(s.begin(), s.end(), ResourceKeyLess{});
  s.erase(std::unique(s.begin(), s.end(), [](const ResourceTerm& a, const ResourceTerm& b) { return a->key == b->key; }),
          s.end());
  return s;
}

const ResourceSet& ResourceReducer::normal_forms(const ResourceTerm& t) {
  auto it = memo_.find(t->key);
  if (it != memo_.end()) return it->second;
  ResourceSet out;
  switch (t->kind) {
    case ResourceNode::Kind::Var:
      out.push_back(t);
      break;
    case ResourceNode::Kind::Abs: {
      ResourceSet body = normal_forms(t->body);
      for (const auto& b : body) out.push_back(rlam(t->binder, b));
      break;
    }
    case ResourceNode::Kind::App: {
      std::vector<const std::vector<ResourceTerm>*> bags;
      ResourceTerm head = t;
      while (head->kind == ResourceNode::Kind::App) {
        bags.push_back(&head->bag);
        head = head->body;
      }
      std::reverse(bags.begin(), bags.end());
      if (head->kind == ResourceNode::Kind::Abs) {
        for (const auto& s : contract(head, *bags[0])) {
          ResourceTerm rest = s;
          for (std::size_t i = 1; i < bags.size(); ++i) rest = rapp(rest, *bags[i]);
          ResourceSet sub = normal_forms(rest);
          out.insert(out.end(), sub.begin(), sub.end());
        }
        break;
      }
      std::vector<std::vector<std::vector<ResourceTerm>>> bag_choices;
      bool empty = false;
      for (const auto* bag : bags) {
        std::vector<ResourceSet> element_nfs;
        for (const auto& e : *bag) {
          element_nfs.push_back(normal_forms(e));
          if (element_nfs.back().empty()) empty = true;
        }
        if (empty) break;
        std::vector<const ResourceSet*> ptrs;
        for (const auto& s : element_nfs) ptrs.push_back(&s);
        bag_choices.push_back(bag_products(ptrs));
      }
      if (empty) break;
      std::vector<ResourceTerm> partial{head};
      for (const auto& choices : bag_choices) {
        std::vector<ResourceTerm> next;
        for (const auto& p : partial)
          for (const auto& c : choices) next.push_back(rapp(p, c));
        partial = std::move(next);
      }
      out = std::move(partial);
      break;
    }
  }
  return memo_[t->key] = normalize_set(std::move(out));
}

ResourceSet resource_reduce(const ResourceTerm& t) {
  ResourceReducer r;
  return r.normal_forms(t);
}

namespace {

std::size_t count_in(const ResourceTerm& t) {
  switch (t->kind) {
    case ResourceNode::Kind::Var:
      return 0;
    case ResourceNode::Kind::Abs:
      return count_in(t->body);
    case ResourceNode::Kind::App: {
      std::size_t n = t->body->kind == ResourceNode::Kind::Abs ? 1 : 0;
      n += count_in(t->body);
      for (const auto& e : t->bag) n += count_in(e);
      return n;
    }
  }
  return 0;
}

// Successors of t when the k-th redex (preorder) is contracted, or nullopt
// if that redex lies outside t; k is decremented past the redexes seen.
std::optional<ResourceSet> contract_in(const ResourceTerm& t, std::size_t& k) {
  switch (t->kind) {
    case ResourceNode::Kind::Var:
      return std::nullopt;
    case ResourceNode::Kind::Abs: {
      auto sub = contract_in(t->body, k);
      if (!sub) return std::nullopt;
      ResourceSet out;
      for (const auto& s : *sub) out.push_back(rlam(t->binder, s));
      return normalize_set(std::move(out));
    }
    case ResourceNode::Kind::App: {
      if (t->body->kind == ResourceNode::Kind::Abs) {
        if (k == 0) return contract(t->body, t->bag);
        --k;
      }
      if (auto sub = contract_in(t->body, k)) {
        ResourceSet out;
        for (const auto& s : *sub) out.push_back(rapp(s, t->bag));
        return normalize_set(std::move(out));
      }
      for (std::size_t i = 0; i < t->bag.size(); ++i) {
        if (auto sub = contract_in(t->bag[i], k)) {
          ResourceSet out;
          for (const auto& s : *sub) {
            auto bag = t->bag;
            bag[i] = s;
            out.push_back(rapp(t->body, std::move(bag)));
          }
          return normalize_set(std::move(out));
        }
      }
      return std::nullopt;
    }
  }
  return std::nullopt;
}

}  // namespace

std::size_t count_redexes(const ResourceTerm& t) { return count_in(t); }

ResourceSet contract_redex(const ResourceTerm& t, std::size_t k) {
  auto r = contract_in(t, k);
  if (!r) throw std::out_of_range("no such redex");
  return *r;
}

}  // namespace lpm
