#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace lpm {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg + " at position " + std::to_string(pos)), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

struct TermNode;
using Term = std::shared_ptr<const TermNode>;

// Named-variable syntax tree. Bottom and Hole only appear in partial-term
// and context syntax; plain λ-terms never contain them.
struct TermNode {
  enum class Kind { Var, Abs, App, Bottom, Hole };
  Kind kind;
  std::string name;  // variable name, or binder of an abstraction
  Term left;         // body of Abs, function of App
  Term right;        // argument of App
};

Term var(std::string name);
Term lam(std::string binder, Term body);
Term app(Term fun, Term arg);
Term app(Term fun, const std::vector<Term>& args);
Term bottom_term();
Term hole();

struct ParseOptions {
  bool allow_bottom = false;
  bool allow_hole = false;
  bool strict = false;  // reject free variables
};

Term parse(std::string_view text, ParseOptions opts = {});
std::string print(const Term& t);

std::set<std::string> free_vars(const Term& t);
std::size_t size(const Term& t);
bool contains_hole(const Term& t);

// De Bruijn rendering: equal strings iff α-equivalent.
std::string canonical_key(const Term& t);
bool alpha_equal(const Term& a, const Term& b);

// t[s/x], renaming binders of t that would capture free variables of s.
Term substitute(const Term& t, const std::string& x, const Term& s);

// Literal replacement of the hole; binders of c may capture variables of t.
Term plug(const Term& context, const Term& t);

// λx₁…λxₘ.x M₁…Mₙ
struct HeadForm {
  std::vector<std::string> binders;
  std::string head;
  std::vector<Term> args;
};

std::optional<HeadForm> head_form(const Term& t);

// Variable occurrence in the nameless representations (partial terms,
// resource terms): a de Bruijn index counting enclosing binders, or a free
// name when index < 0. For bound variables the name is only a hint.
struct VarRef {
  int index = -1;
  std::string name;

  bool bound() const { return index >= 0; }
  bool operator==(const VarRef& o) const {
    return index == o.index && (index >= 0 || name == o.name);
  }
};

// Resolves a name against binders in scope (innermost last).
VarRef resolve(const std::vector<std::string>& scope, const std::string& name);

Term from_head_form(const HeadForm& h);

// Contracts the head redex, or returns the head normal form.
std::variant<Term, HeadForm> head_reduce_step(const Term& t);

struct Solvability {
  enum class Status { Solvable, Divergent, Unknown };
  Status status = Status::Unknown;
  // Solvable: head steps taken. Unknown: fuel spent. Divergent: steps until
  // the repetition was observed.
  std::size_t steps = 0;
  // Divergent only: the trace index where the repeated term first occurred
  // and the cycle length, with the repeated term as witness.
  std::size_t cycle_start = 0;
  std::size_t cycle_length = 0;
  Term witness;
  std::optional<HeadForm> hnf;

  bool solvable() const { return status == Status::Solvable; }
  bool divergent() const { return status == Status::Divergent; }
  bool unknown() const { return status == Status::Unknown; }
};

std::string to_string(Solvability::Status s);

Solvability solvability(const Term& t, std::size_t fuel);

// Full β-normalization in normal order; fuel bounds the total number of
// β-steps. nullopt when fuel runs out.
std::optional<Term> normalize(const Term& t, std::size_t fuel);

}  // namespace lpm
