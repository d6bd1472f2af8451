#pragma once

#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "lambdapm/bohm.hpp"
#include "lambdapm/intervals.hpp"
#include "lambdapm/resource.hpp"
#include "lambdapm/term.hpp"

// Seeded corpus generators shared by the test suites, the acceptance
// harness and `verify`.
namespace lpm::corpus {

using Rng = std::mt19937_64;

// A λ-term of depth ≤ max_depth over binders x, y, z, w and the given free names.
Term random_term(Rng& rng, std::size_t max_depth, const std::vector<std::string>& free = {"x", "y"});

// A partial term of height ≤ max_height: heads x, y or a bound variable,
// at most max_arity arguments, ⊥ arguments with probability 1/4.
PartialTerm random_partial(Rng& rng, std::size_t max_height, std::size_t max_arity = 2);

// A normal resource term of height ≤ max_height with bags of size ≤ max_bag.
ResourceTerm random_normal_resource(Rng& rng, std::size_t max_height, std::size_t max_bag = 2);

RationalInterval random_interval(Rng& rng, int range = 8);

// ⊥ and every tree of at most three nodes labelled x (arity 0 or 1),
// y (arity 2) or λz.z (arity 1), plus a few height-4 chains.
std::vector<PartialTerm> small_partial_terms();

// The height-4 members of small_partial_terms().
bool is_chain(const PartialTerm& a);

// Hand-picked λ-terms whose Böhm trees are certified to depth 4 within
// fuel 500, mixing normal forms, redexes, erased divergence and the
// unsolvable Ω.
std::vector<Term> bohm_terms();

// count distinct (by α) random terms whose Böhm truncation to depth
// height is exact within fuel and whose raw Taylor fragment at bag bound
// 2·mult + 2 stays below size_limit elements.
std::vector<Term> normalizing_terms(Rng& rng, std::size_t count, std::size_t height, std::size_t fuel,
                                    std::size_t mult, std::size_t size_limit = 4000);

}  // namespace lpm::corpus
