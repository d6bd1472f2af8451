#include "lambdapm/contextual.hpp"
#include "lambdapm/corpus.hpp"
#include "support.hpp"

using namespace lpm;
using namespace lpm::test;

namespace {

const char* const kOmega = "(\\x.x x) (\\x.x x)";

}  // namespace

TEST_SUITE("contextual") {
  TEST_CASE("the first contexts") {
    ParseOptions ctx{.allow_hole = true};
    CHECK(alpha_equal(enumerate_context(0), parse("[-]", ctx)));
    CHECK(alpha_equal(enumerate_context(1), parse("\\x.[-]", ctx)));
    CHECK(alpha_equal(enumerate_context(2), parse("[-] x", ctx)));
    CHECK(print(enumerate_term(0)) == "x");
    CHECK(print(enumerate_term(3)) == "\\x.x");
  }

  TEST_CASE("the enumeration is injective and every context has one hole") {
    std::set<std::string> seen;
    for (std::size_t i = 0; i < 400; ++i) {
      Term c = enumerate_context(i);
      CHECK(contains_hole(c));
      CHECK(seen.insert(print(c)).second);
    }
  }

  TEST_CASE("the lower bound counts exactly the certified divergent contexts") {
    Term id = T("\\x.x");
    std::size_t k = 60, fuel = 50;
    Rational lower = 0;
    for (std::size_t i = 0; i <= k; ++i)
      if (solvability(plug(enumerate_context(i), id), fuel).divergent()) lower += pow2(-static_cast<int>(i));
    auto b = p_ctx_bracket(id, id, k, fuel);
    CHECK(b.lower() == lower);
    CHECK(b.upper() - b.lower() >= pow2(-static_cast<int>(k)));
  }

  TEST_CASE("brackets shrink with prefix and fuel") {
    auto terms = corpus::bohm_terms();
    for (std::size_t i = 0; i < terms.size(); i += 3)
      for (std::size_t j = i; j < terms.size(); j += 4) {
        auto small = p_ctx_bracket(terms[i], terms[j], 20, 20);
        auto wide = p_ctx_bracket(terms[i], terms[j], 40, 20);
        auto fueled = p_ctx_bracket(terms[i], terms[j], 40, 60);
        CHECK(wide.within(small));
        CHECK(fueled.within(wide));
      }
  }

  TEST_CASE("symmetry") {
    auto terms = corpus::bohm_terms();
    for (std::size_t i = 0; i < terms.size(); i += 2)
      for (std::size_t j = 0; j < terms.size(); j += 5)
        CHECK(p_ctx_bracket(terms[i], terms[j], 25, 30) == p_ctx_bracket(terms[j], terms[i], 25, 30));
  }

  TEST_CASE("genericity of the unsolvable term") {
    Term omega = T(kOmega);
    auto self = p_ctx_bracket(omega, omega, 30, 40);
    for (const auto& n : corpus::bohm_terms()) {
      auto b = p_ctx_bracket(omega, n, 30, 40);
      CHECK(b.lower() >= self.lower());
      CHECK(b.lower() <= self.upper());
      auto g = genericity_semitest(omega, n, 200, 40);
      CHECK(g.violations == 0);
    }
  }

  TEST_CASE("ball membership") {
    Term id = T("\\x.x");
    for (Rational eps : {q(1), q(1, 4), q(1, 64)}) {
      CHECK(in_ctx_ball(id, id, eps, 50) == Verdict::Yes);
      CHECK(in_ctx_ball(id, T("\\x.\\y.x y"), eps, 50) == Verdict::Yes);
    }
    CHECK(in_ctx_ball(id, T(kOmega), 1, 50) == Verdict::No);
    CHECK_THROWS_AS(in_ctx_ball(id, id, 0, 50), std::invalid_argument);
  }
}
