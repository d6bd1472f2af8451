#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "lambdapm/bohm.hpp"
#include "lambdapm/rational.hpp"
#include "lambdapm/resource.hpp"
#include "lambdapm/term.hpp"

namespace lpm {

// t ⊲ A: x ⊲ x, λx.t ⊲ λx.A, x[t¹]…[tⁿ] ⊲ x M₁…Mₙ when every element of
// bag i is ⊲ Mᵢ. Nothing is ⊲ ⊥.
bool box_relation(const ResourceTerm& t, const PartialTerm& a);

struct TaylorFragment {
  std::size_t mult_bound = 0;
  std::size_t height_bound = 0;
  ResourceSet elements;
};

// { t | t ⊲ a, every bag of size ≤ mult_bound, h(t) ≤ height_bound }
TaylorFragment taylor_expand(const PartialTerm& a, std::size_t mult_bound, std::size_t height_bound);

// Bounded expansion of an arbitrary λ-term (redexes kept): T(x) = {x},
// T(λx.M) = λx.T(M), T(M N) = { t<u₁…uₖ> | t ∈ T(M), k ≤ b, uᵢ ∈ T(N) }.
TaylorFragment taylor_of_term(const Term& m, std::size_t mult_bound, std::size_t height_bound);

// Upper bound on |T(m)| at bag bound mult_bound before deduplication:
// |T(M N)| ≤ |T(M)|·C(|T(N)| + b, b).
double raw_expansion_bound(const Term& m, std::size_t mult_bound);

// Largest bag size occurring anywhere in t.
std::size_t max_bag(const ResourceTerm& t);

// The upward moves a' ≥ a inside a set when lifting r: the bag-extension
// order ⪯, or the order induced by r (a'|_{h(a)} = a).
enum class LiftOrder { Extension, Induced };

// H*_r on finite sets of normal resource terms, computed through truncation
// tables; agrees with the generic lifting under the same order. Both sets
// empty gives 1, the infimum of self-distances over ∅.
Rational hausdorff_star_r(const ResourceSet& A, const ResourceSet& B, LiftOrder order = LiftOrder::Extension);
Rational hausdorff_plain_r(const ResourceSet& A, const ResourceSet& B);

// H*_{H*_r} over the principal ideals {↓t | t ∈ A} and {↓u | u ∈ B}, each
// ideal taken inside its own set.
Rational hausdorff_star_ideals(const ResourceSet& A, const ResourceSet& B, LiftOrder order = LiftOrder::Extension);

struct IsometryResult {
  DistanceValue lhs;
  DistanceValue rhs;
  bool equal = false;
  bool stable = false;
};

// lhs = H*_r on the fragments (height bound 1 + max height), rhs = p_tree;
// stable when lhs is unchanged at mult_bound + 1.
IsometryResult isometry_check(const PartialTerm& a, const PartialTerm& b, std::size_t mult_bound,
                              LiftOrder order = LiftOrder::Extension);

inline constexpr std::size_t kRawExpansionLimit = 200000;

struct CommutationResult {
  ResourceSet lhs;  // normal forms of the raw expansion, filtered to the bounds
  ResourceSet rhs;  // expansion of the Böhm truncation, same bounds
  bool equal = false;
  bool lhs_within_rhs = true;  // at every raw bound tried
  std::size_t raw_bound = 0;   // bag bound of the raw expansion at the end
};

// Raw bags may need more elements than mult_bound to produce normal forms
// whose bags respect it, so the raw bound climbs from mult_bound to
// raw_bound_cap until both sides agree or the raw expansion would exceed
// kRawExpansionLimit elements. Throws std::runtime_error when the Böhm
// truncation is tentative or the first raw expansion is already too large.
CommutationResult commutation_check(const Term& m, std::size_t mult_bound, std::size_t height_bound,
                                    std::size_t fuel, std::size_t raw_bound_cap = 0);

// A_n for n ≥ 1: partial terms over the free variables {x, y}, by size
// (⊥ and a leaf count 1; a node counts 1 + binders + its arguments), then by
// binder count, head, arity and arguments. A_1 = ⊥.
PartialTerm enumerate_partial(std::size_t n);

// t_{A,m} for m ≥ 1: first the element with every non-⊥ bag a singleton,
// then the rest of T(A) by multiplicity bound and key. A finite T(A) is
// repeated cyclically. nullopt for A = ⊥.
std::optional<ResourceTerm> enumerate_taylor(const PartialTerm& a, std::size_t m);

// Cantor pairing on positive integers: 1 ↦ (1,1), 2 ↦ (1,2), 3 ↦ (2,1), …
std::pair<std::size_t, std::size_t> unpair(std::size_t n);

struct EnumerationRow {
  std::size_t n = 0;
  std::string partial;
  Rational p_b;  // 2^-n if A_n ≰ a or A_n ≰ b, else 0
  Rational p_p;  // Σ_{m ≤ K} 2^-(n+m) over t_{n,m} ∉ T(a) ∩ T(b)
};

struct EnumerationIsometry {
  DistanceValue p_p;
  DistanceValue p_b;
  Rational gap;  // distance between the bracket midpoints
  Rational tail;  // 2^-K + 2^-K
  bool within = false;
  std::vector<EnumerationRow> rows;
};

EnumerationIsometry enumeration_isometry(const PartialTerm& a, const PartialTerm& b, std::size_t prefix);

}  // namespace lpm
