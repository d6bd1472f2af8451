#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "lambdapm/rational.hpp"
#include "lambdapm/term.hpp"

namespace lpm {

// The n-th context of the fixed enumeration of
//   C ::= [-] | λv.C | C T | T C
// ordered by size (hole, variable: 1; λ: 1 + body; application: sum of
// parts), then hole < λ < C T < T C, then by the components' indices.
// The binder of a context λ at nesting depth d is x, y, z for d mod 3 = 0,
// 1, 2. T ranges over λ-terms on the alphabet {x, y, z}, enumerated by size,
// then variable < abstraction < application.
Term enumerate_context(std::size_t n);

// The n-th term of the T enumeration above.
Term enumerate_term(std::size_t n);

// lower = Σ{2^-i | i ≤ K, C_i[M] or C_i[N] certified divergent}
// upper = lower + Σ{2^-i | i ≤ K, undecided} + 2^-K
DistanceValue p_ctx_bracket(const Term& m, const Term& n, std::size_t prefix, std::size_t fuel);

enum class Verdict { Yes, No, Unknown };
std::string to_string(Verdict v);

// Decides N ∈ B_ε(M) from the contexts C_i with 2^-i ≥ ε/2, whose
// complement has weight below ε. Yes when even the undecided mass cannot
// reach ε; No when certified failures alone reach ε.
Verdict in_ctx_ball(const Term& m, const Term& candidate, const Rational& epsilon, std::size_t fuel);

struct GenericityReport {
  std::size_t checked = 0;     // contexts with C_i[Ω'] solvable
  std::size_t violations = 0;  // of which C_i[N] certified divergent
  std::size_t undecided = 0;   // of which C_i[N] unknown within fuel
  std::vector<std::size_t> violating_indices;
};

// For i ≤ last: whenever C_i[unsolvable] is solvable, C_i[n] must be too.
GenericityReport genericity_semitest(const Term& unsolvable, const Term& n, std::size_t last, std::size_t fuel);

}  // namespace lpm
