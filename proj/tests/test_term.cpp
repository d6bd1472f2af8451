#include <random>

#include "lambdapm/corpus.hpp"
#include "support.hpp"

using namespace lpm;
using namespace lpm::test;

TEST_SUITE("term") {
  TEST_CASE("parsing and printing") {
    CHECK(print(T("\\x. x")) == "\\x.x");
    CHECK(print(T("λx.λy.x y")) == "\\x.\\y.x y");
    CHECK(print(T("(\\x.x x) (\\x.x x)")) == "(\\x.x x) (\\x.x x)");
    CHECK(print(T("x (y z)")) == "x (y z)");
    CHECK(print(T("(x y) z")) == "x y z");
    CHECK(print(T("\\x y.x")) == "\\x.\\y.x");
    CHECK(free_vars(T("\\x.x y")) == std::set<std::string>{"y"});
    CHECK(size(T("\\x.x y")) == 3);
  }

  TEST_CASE("parse errors carry a position") {
    try {
      parse("(\\x. x");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.position() == 6);
    }
    CHECK_THROWS_AS(parse("x _|_"), ParseError);
    CHECK_NOTHROW(parse("x _|_", {.allow_bottom = true}));
    CHECK_THROWS_AS(parse("\\x.y", {.strict = true}), ParseError);
    CHECK_THROWS_AS(parse(""), ParseError);
    CHECK_THROWS_AS(parse("\\.x"), ParseError);
  }

  TEST_CASE("α-equivalence") {
    CHECK(alpha_equal(T("\\x.x"), T("\\y.y")));
    CHECK(!alpha_equal(T("\\x.\\y.x"), T("\\x.\\y.y")));
    CHECK(!alpha_equal(T("x"), T("y")));
    CHECK(canonical_key(T("\\a.\\b.a b c")) == canonical_key(T("\\u.\\v.u v c")));
  }

  TEST_CASE("substitution avoids capture") {
    Term r = substitute(T("\\y.x"), "x", T("y"));
    CHECK(alpha_equal(r, T("\\z.y")));
    CHECK(alpha_equal(substitute(T("\\x.x"), "x", T("y")), T("\\x.x")));
    CHECK(alpha_equal(substitute(T("x (\\z.x z)"), "x", T("z")), T("z (\\w.z w)")));
  }

  TEST_CASE("plugging may capture") {
    Term c = parse("\\x.[-] x", {.allow_hole = true});
    CHECK(alpha_equal(plug(c, T("x")), T("\\y.y y")));
  }

  TEST_CASE("head reduction") {
    auto s = head_reduce_step(T("(\\x.x) (\\y.y)"));
    REQUIRE(std::holds_alternative<Term>(s));
    CHECK(alpha_equal(std::get<Term>(s), T("\\y.y")));

    auto h = head_reduce_step(T("\\x.x ((\\y.y) z)"));
    REQUIRE(std::holds_alternative<HeadForm>(h));
    CHECK(std::get<HeadForm>(h).head == "x");
    CHECK(std::get<HeadForm>(h).args.size() == 1);

    auto o = head_reduce_step(T("(\\x.x x) (\\x.x x)"));
    REQUIRE(std::holds_alternative<Term>(o));
    CHECK(alpha_equal(std::get<Term>(o), T("(\\x.x x) (\\x.x x)")));
  }

  TEST_CASE("solvability") {
    auto id = solvability(T("\\x.x"), 10);
    CHECK(id.status == Solvability::Status::Solvable);
    CHECK(id.steps == 0);

    auto omega = solvability(T("(\\x.x x) (\\x.x x)"), 10);
    CHECK(omega.status == Solvability::Status::Divergent);
    CHECK(omega.cycle_length == 1);

    auto grow = solvability(T("(\\x.x x x) (\\x.x x x)"), 5);
    CHECK(grow.status == Solvability::Status::Unknown);
    CHECK(grow.steps == 5);

    auto k = solvability(T("(\\x.\\y.x) z ((\\x.x x) (\\x.x x))"), 10);
    CHECK(k.solvable());
    CHECK(k.steps == 2);
  }

  TEST_CASE("the growing term never reaches head normal form") {
    Term t = T("(\\x.x x x) (\\x.x x x)");
    std::size_t last = size(t);
    for (int i = 0; i < 5; ++i) {
      auto s = head_reduce_step(t);
      REQUIRE(std::holds_alternative<Term>(s));
      t = std::get<Term>(s);
      CHECK(size(t) > last);
      last = size(t);
    }
  }

  TEST_CASE("printing round-trips up to α") {
    corpus::Rng rng(7);
    for (int i = 0; i < 300; ++i) {
      Term t = corpus::random_term(rng, 5);
      CHECK(alpha_equal(parse(print(t)), t));
    }
  }

  TEST_CASE("a head step preserves the normal form") {
    corpus::Rng rng(11);
    int tested = 0;
    for (int i = 0; i < 400; ++i) {
      Term t = corpus::random_term(rng, 5);
      auto nf = normalize(t, 200);
      if (!nf) continue;
      auto s = head_reduce_step(t);
      if (!std::holds_alternative<Term>(s)) continue;
      auto nf2 = normalize(std::get<Term>(s), 200);
      REQUIRE(nf2);
      CHECK(alpha_equal(*nf, *nf2));
      ++tested;
    }
    CHECK(tested > 20);
  }

  TEST_CASE("solvability verdicts are stable under more fuel") {
    corpus::Rng rng(5);
    for (int i = 0; i < 300; ++i) {
      Term t = corpus::random_term(rng, 5);
      auto a = solvability(t, 20);
      auto b = solvability(t, 200);
      if (!a.unknown()) CHECK(a.status == b.status);
      if (a.solvable()) CHECK(a.steps == b.steps);
    }
  }
}
