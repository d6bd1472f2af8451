#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "lambdapm/rational.hpp"
#include "lambdapm/term.hpp"

namespace lpm {

struct PartialNode;

// A β-normal term with ⊥ leaves, read as a finite labelled tree. The empty
// handle is ⊥ (the empty tree). Every other node is λx₁…λxₘ.y A₁…Aₙ, so
// λx.⊥ and ⊥ M cannot be formed. Binder names are hints; equality compares
// binder counts, head references and arities.
class PartialTerm {
 public:
  PartialTerm() = default;
  static PartialTerm bottom() { return {}; }
  static PartialTerm node(std::vector<std::string> binders, VarRef head, std::vector<PartialTerm> args);

  bool is_bottom() const { return !node_; }
  const PartialNode& operator*() const { return *node_; }
  const PartialNode* operator->() const { return node_.get(); }

  bool operator==(const PartialTerm& other) const;
  bool operator!=(const PartialTerm& other) const { return !(*this == other); }

 private:
  std::shared_ptr<const PartialNode> node_;
};

struct PartialNode {
  std::vector<std::string> binders;
  VarRef head;
  std::vector<PartialTerm> args;
  std::size_t height = 1;
};

// Parses partial-term syntax (`_|_` allowed). ⊥-absorption is applied;
// head redexes are rejected.
PartialTerm parse_partial(std::string_view text);
PartialTerm from_term(const Term& t);
Term to_term(const PartialTerm& a);
std::string print(const PartialTerm& a);
std::string key(const PartialTerm& a);

std::size_t height(const PartialTerm& a);
std::size_t node_count(const PartialTerm& a);

// α_n: all paths cut at length n, labels (and arities) kept. α_0 = ⊥.
PartialTerm truncate(const PartialTerm& a, std::size_t n);

PartialTerm direct_approximant(const Term& t);

// The approximant order: contextual closure of ⊥ ⪯ A.
bool partial_leq(const PartialTerm& a, const PartialTerm& b);

// div(α, β) for finite trees: the largest n ≤ min(|α|, |β|) with α_n = β_n.
std::size_t tree_divergence(const PartialTerm& a, const PartialTerm& b);
DistanceValue p_tree(const PartialTerm& a, const PartialTerm& b);

struct BohmTruncation {
  PartialTerm tree;
  std::size_t depth = 0;
  bool exact = true;
  // Paths (argument indices from the root) of nodes whose solvability was
  // Unknown within fuel; they appear as ⊥ in tree.
  std::vector<std::vector<std::size_t>> tentative;
};

BohmTruncation bohm_truncate(const Term& t, std::size_t depth, std::size_t fuel);

DistanceValue p_bohm(const Term& m, const Term& n, std::size_t depth, std::size_t fuel);

}  // namespace lpm
