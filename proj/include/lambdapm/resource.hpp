#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "lambdapm/rational.hpp"
#include "lambdapm/term.hpp"

namespace lpm {

struct ResourceNode;
using ResourceTerm = std::shared_ptr<const ResourceNode>;

// Resource term in nameless form. Bags are kept sorted by key, so two
// terms are equal (up to α and bag order) iff their keys are equal.
struct ResourceNode {
  enum class Kind { Var, Abs, App };
  Kind kind;
  VarRef var;                      // Var
  std::string binder;              // Abs: name hint
  ResourceTerm body;               // Abs: body; App: function
  std::vector<ResourceTerm> bag;   // App
  std::string key;
  std::size_t height = 1;
  std::size_t size = 1;
};

ResourceTerm rvar(VarRef v);
ResourceTerm rlam(std::string binder, ResourceTerm body);
ResourceTerm rapp(ResourceTerm fun, std::vector<ResourceTerm> bag);

struct ResourceKeyLess {
  bool operator()(const ResourceTerm& a, const ResourceTerm& b) const { return a->key < b->key; }
};

inline bool same(const ResourceTerm& a, const ResourceTerm& b) { return a == b || a->key == b->key; }

// Syntax: x | \x.t | t<t1, ..., tn> | t<>.
ResourceTerm parse_resource(std::string_view text);
std::string print(const ResourceTerm& t);

// λx₁…λxₙ.x b₁…bₘ with every bag element normal.
bool is_normal(const ResourceTerm& t);

// h(x b₁…bₘ) = 1 + max height of bag elements (1 when all bags are empty);
// λ does not count.
std::size_t height(const ResourceTerm& t);

// t|_n; nullopt stands for the height-0 mark on which all terms agree.
std::optional<ResourceTerm> truncate(const ResourceTerm& t, std::size_t n);

// Largest n ≤ min(h(t), h(u)) with t|_n = u|_n.
std::size_t r_agreement(const ResourceTerm& t, const ResourceTerm& u);
DistanceValue r_metric(const ResourceTerm& t, const ResourceTerm& u);

// The bag-extension order: contextual closure of ∅ ⪯ ⟨t₁,…,tₙ⟩. Non-empty
// bags must match elementwise under some bijection.
bool resource_leq(const ResourceTerm& t, const ResourceTerm& u);

// Sorted (by key), duplicate-free.
using ResourceSet = std::vector<ResourceTerm>;
ResourceSet normalize_set(ResourceSet s);

// Full linear reduction. A redex (λx.t)<u₁…uₙ> yields every
// t[u_σ(1)/x₁, …, u_σ(n)/xₙ], or nothing when x does not occur exactly n
// times. Results are memoized per reducer.
class ResourceReducer {
 public:
  const ResourceSet& normal_forms(const ResourceTerm& t);

 private:
  std::unordered_map<std::string, ResourceSet> memo_;
};

ResourceSet resource_reduce(const ResourceTerm& t);

// Redexes (λx.t)<…> counted in preorder.
std::size_t count_redexes(const ResourceTerm& t);

// Contracts the k-th redex only, yielding the one-step successor set.
ResourceSet contract_redex(const ResourceTerm& t, std::size_t k);

}  // namespace lpm
