#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lambdapm/pmetric.hpp"
#include "lambdapm/rational.hpp"

namespace lpm {

class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// LAMBDA_PM_CAP, or 100000 when unset.
std::size_t enumeration_cap();

using MapTable = std::vector<std::size_t>;

// A finite poset with a least element. Either explicit (a leq matrix,
// validated on construction) or a space of monotone maps X → Y ordered
// pointwise, whose maps are stored as tables in lexicographic order.
class FinitePoset {
 public:
  FinitePoset() = default;
  FinitePoset(std::vector<std::string> labels, Relation leq, std::size_t bottom);

  std::size_t size() const { return size_; }
  std::size_t bottom() const { return bottom_; }
  bool leq(std::size_t a, std::size_t b) const;
  std::string label(std::size_t i) const;

  std::optional<std::size_t> join(std::size_t a, std::size_t b) const;
  std::vector<std::size_t> up_set(std::size_t x) const;

  bool is_function_space() const { return static_cast<bool>(maps_); }
  const FinitePoset& domain() const;
  const FinitePoset& codomain() const;
  // Value of map f at x (function spaces only).
  std::size_t apply(std::size_t f, std::size_t x) const;
  MapTable table(std::size_t f) const;
  std::optional<std::size_t> index_of(const MapTable& t) const;

 private:
  friend FinitePoset function_space(const FinitePoset&, const FinitePoset&, std::size_t);

  struct Maps {
    std::shared_ptr<const FinitePoset> domain;
    std::shared_ptr<const FinitePoset> codomain;
    std::vector<std::uint32_t> flat;  // stride = domain size
  };

  std::size_t size_ = 0;
  std::size_t bottom_ = 0;
  std::vector<std::string> labels_;
  Relation leq_;
  std::shared_ptr<const Maps> maps_;
};

FinitePoset chain(std::size_t n);
FinitePoset sierpinski();  // 0 = ⊥ < 1 = ⊤
FinitePoset flat(std::size_t k);  // ⊥ below k incomparable points
FinitePoset product(const FinitePoset& x, const FinitePoset& y);  // (a,b) at index a·|y| + b

// Checks the order axioms, leastness of the bottom and bounded completeness;
// returns a description of the first failure.
std::optional<std::string> validate(const std::vector<std::string>& labels, const Relation& leq, std::size_t bottom);

// On a finite poset every element is compact, so x ≪ y iff x ≤ y.
bool way_below(const FinitePoset& p, std::size_t x, std::size_t y);
// The directed-set definition, by enumerating all directed subsets (≤ 16 elements).
bool way_below_by_definition(const FinitePoset& p, std::size_t x, std::size_t y);

bool is_monotone(const FinitePoset& x, const FinitePoset& y, const MapTable& f);

// All monotone maps, pointwise ordered; bottom is the constant-⊥ map.
// Throws CapExceeded once more than cap maps have been enumerated.
FinitePoset function_space(const FinitePoset& x, const FinitePoset& y, std::size_t cap = enumeration_cap());

// (↟a ↘ b)(x) = b if a ≪ x, ⊥ otherwise.
MapTable step_function(const FinitePoset& x, const FinitePoset& y, std::size_t a, std::size_t b);

// Pointwise join of the steps ↟a ↘ f(a) over all a; nullopt if some join is missing.
std::optional<MapTable> join_of_steps(const FinitePoset& x, const FinitePoset& y, const MapTable& f);

FiniteSpace sierpinski_space();  // s(⊥,⊥) = s(⊥,⊤) = 1, s(⊤,⊤) = 0

// Σ{θ_n | b_n ≰ x or b_n ≰ y} with ≪ = ≤.
FiniteSpace weighted_basis_space(const FinitePoset& p, const std::vector<std::size_t>& basis,
                                 const std::vector<Rational>& weights);
// Basis = every element in index order, θ_i = 2^-i.
FiniteSpace weighted_basis_space(const FinitePoset& p);

// ½(p_X + p_Y)
DistanceValue product_metric(const FiniteSpace& px, const FiniteSpace& py, std::pair<std::size_t, std::size_t> u,
                             std::pair<std::size_t, std::size_t> v);
FiniteSpace product_space(const FiniteSpace& px, const FiniteSpace& py);

// Σ_{n ≥ 1} θⁿ p_Y(f(a_n), g(a_n)) over the given enumeration of the basis.
Rational applicative_metric(const FiniteSpace& py, const std::vector<std::size_t>& basis, const Rational& theta,
                            const MapTable& f, const MapTable& g);
// The applicative metric on a function space, basis = domain in index order.
FiniteSpace applicative_space(const FinitePoset& fs, const FiniteSpace& py, const Rational& theta);

// Smallest N ≥ 1 with Σ_{i>N} θ^i < ε/2.
std::size_t finite_access_bound(const Rational& theta, const Rational& epsilon);

struct QuantificationReport {
  bool balls_are_up_sets = true;    // (a)
  bool up_sets_are_open = true;     // (b)
  std::vector<std::string> witnesses;
  bool passed() const { return balls_are_up_sets && up_sets_are_open; }
};

// Compares the ball topology of the metric with the up-set topology.
QuantificationReport quantification_decision(const FinitePoset& p, const FiniteSpace& metric);

// Weighted-basis metric on the chain 0 < 1 < 2 with 1/4 added to every
// off-diagonal distance: still a partial metric, but its balls are not
// up-sets.
FiniteSpace offset_control_space();

struct LawReport {
  std::size_t checks = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

// D_0 = base, D_{n+1} = [D_n → D_n], with i_0(x) = λy.x, j_0(f) = f(⊥),
// i_{n+1}(f) = i_n ∘ f ∘ j_n, j_{n+1}(g) = j_n ∘ g ∘ i_n. The metrics are
// p_0 = base metric and p_{n+1}(x,y) = Σ_i 2^-i p_n(x(a_i), y(a_i)), the a_i
// being D_n in index order; they are tabulated on small levels and
// evaluated on demand elsewhere.
class Tower {
 public:
  Tower(FinitePoset base, FiniteSpace base_metric, std::size_t depth, std::size_t cap = enumeration_cap());

  std::size_t depth() const { return levels_.size() - 1; }
  const FinitePoset& level(std::size_t n) const { return *levels_.at(n); }
  std::size_t inj(std::size_t n, std::size_t x) const { return inj_.at(n)[x]; }
  std::size_t proj(std::size_t n, std::size_t y) const { return proj_.at(n)[y]; }

  // i_{mn} = i_{n-1} ∘ … ∘ i_m and j_{nm} = j_m ∘ … ∘ j_{n-1}.
  std::size_t inj(std::size_t m, std::size_t n, std::size_t x) const;
  std::size_t proj(std::size_t n, std::size_t m, std::size_t y) const;

  Rational metric(std::size_t n, std::size_t x, std::size_t y) const;

  // Injection-projection laws, composite laws (both association orders)
  // and monotonicity of every i_n, exhaustively.
  LawReport check_laws() const;

 private:
  std::vector<std::shared_ptr<const FinitePoset>> levels_;
  std::vector<std::vector<std::size_t>> inj_;
  std::vector<std::vector<std::size_t>> proj_;
  std::vector<std::vector<std::vector<Rational>>> tables_;
};

struct TowerProfile {
  std::vector<std::size_t> levels;  // x_0 … x_K
};

bool is_valid_profile(const Tower& t, const TowerProfile& a);
// The profile determined by a top-level element.
TowerProfile profile_of(const Tower& t, std::size_t top);

// Bracket(S, S + 2^-K) with S = Σ_{n=1..K} 2^-n p_n(x_n, y_n). Throws
// std::invalid_argument on an invalid profile.
DistanceValue p_infinity_prefix(const Tower& t, const TowerProfile& a, const TowerProfile& b);

// Whether p_0(x_i a_{k_{i-1}} … a_{k_0}, y_i a_{k_{i-1}} … a_{k_0}) < bound for
// all 1 ≤ i ≤ min(N, K) and all indices k_j ≤ N (1-based within D_j).
bool finitary_premise(const Tower& t, const TowerProfile& a, const TowerProfile& b, std::size_t n_access,
                      const Rational& bound);

// A random bounded-complete poset with 1 … max_size elements.
FinitePoset random_poset(std::mt19937_64& rng, std::size_t max_size);

}  // namespace lpm
