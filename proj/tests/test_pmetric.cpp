#include <random>

#include "lambdapm/corpus.hpp"
#include "lambdapm/domains.hpp"
#include "lambdapm/pmetric.hpp"
#include "support.hpp"

using namespace lpm;
using namespace lpm::test;

namespace {

FiniteSpace table_space(std::vector<std::vector<Rational>> t) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < t.size(); ++i) labels.push_back("e" + std::to_string(i));
  return FiniteSpace(labels, std::move(t));
}

}  // namespace

TEST_SUITE("pmetric") {
  TEST_CASE("rational helpers") {
    CHECK(pow2(-3) == q(1, 8));
    CHECK(pow2(2) == 4);
    CHECK(dyadic_exponent(q(3, 16)) == 4);
    CHECK(!dyadic_exponent(q(1, 3)));
    CHECK(parse_rational("1/2^3") == q(1, 8));
    CHECK(parse_rational("-5/10") == q(-1, 2));
    CHECK(to_string(q(6, 8)) == "3/4");
  }

  TEST_CASE("distance values") {
    auto b = DistanceValue::bracket(q(1, 4), q(1, 2));
    CHECK(b.is_bracket());
    CHECK(b.width() == q(1, 4));
    CHECK(!exact(3, 4).within(b));
    CHECK(exact(3, 8).within(b));
    CHECK(DistanceValue::bracket(q(1, 2), q(1, 2)).is_exact());
    CHECK(DistanceValue::bracket(0, std::nullopt).upper_is_infinite());
    CHECK_THROWS_AS(DistanceValue::bracket(1, q(1, 2)), std::invalid_argument);
    CHECK_THROWS_AS(b.value(), std::logic_error);
  }

  TEST_CASE("axiom checks on small tables") {
    CHECK(check_axioms(sierpinski_space(), AxiomMode::PM).empty());
    CHECK(check_axioms(sierpinski_space(), AxiomMode::PUM).empty());

    auto zero = table_space({{0, 0}, {0, 0}});
    auto v = check_axioms(zero, AxiomMode::PM);
    REQUIRE(!v.empty());
    CHECK(v[0].axiom == "P2");
    CHECK(first_violation(zero, AxiomMode::PPM) == "");

    auto small = table_space({{q(1, 2), q(1, 4)}, {q(1, 4), 1}});
    auto w = check_axioms(small, AxiomMode::PM);
    REQUIRE(!w.empty());
    bool small_self = false;
    for (const auto& x : w) small_self |= x.axiom == "P1";
    CHECK(small_self);

    auto skew = table_space({{0, 1}, {q(1, 2), 0}});
    auto k = check_axioms(skew, AxiomMode::PM);
    REQUIRE(!k.empty());
    CHECK(k[0].axiom == "P3");

    auto flat_ultra = table_space({{0, 1, 2}, {1, 0, 1}, {2, 1, 0}});
    bool ultra = false;
    for (const auto& u : check_axioms(flat_ultra, AxiomMode::PUM)) ultra |= u.axiom == "P4U";
    CHECK(ultra);
    CHECK(first_violation(flat_ultra, AxiomMode::PM) == "");

    auto tri = table_space({{0, 1, 3}, {1, 0, 1}, {3, 1, 0}});
    auto t = check_axioms(tri, AxiomMode::PM);
    REQUIRE(!t.empty());
    CHECK(t[0].axiom == "P4");
    CHECK(t[0].lhs == 3);
    CHECK(t[0].rhs == 2);
  }

  TEST_CASE("induced order and symmetrization") {
    auto s = sierpinski_space();
    Relation o = induced_order(s);
    CHECK(o[0][0]);
    CHECK(o[0][1]);
    CHECK(!o[1][0]);
    CHECK(o[1][1]);
    auto d = symmetrize(s);
    CHECK(d[0][1] == 1);
    CHECK(d[0][0] == 0);
  }

  TEST_CASE("bounding to one") {
    CHECK(bound_to_one(exact(3)) == exact(3, 4));
    CHECK(bound_to_one(exact(0)) == exact(0));
    CHECK(bound_to_one(DistanceValue::infinite()) == exact(1));
  }

  TEST_CASE("balls") {
    auto s = sierpinski_space();
    CHECK(in_ball(s, 1, q(1, 2), 1));
    CHECK(!in_ball(s, 1, q(1, 2), 0));
    CHECK(in_ball(s, 0, q(1, 2), 1));
  }

  TEST_CASE("weighted basis metric on Sierpinski space") {
    WeightedBasisMetric m{{q(1, 2), q(1, 4)}, {{true, true}, {false, true}}};
    CHECK(m(0, 0) == q(1, 4));
    CHECK(m(1, 1) == 0);
    CHECK(m(0, 1) == q(1, 4));
  }

  TEST_CASE("liftings on a finite space") {
    auto s = sierpinski_space();
    CHECK(hausdorff_star(s, {}, {1}) == exact(1));
    CHECK(hausdorff_star(s, {0, 1}, {0, 1}) == exact(0));
    CHECK(hausdorff_star(s, {0}, {0}) == exact(1));
    CHECK(hausdorff_plain(s, {1}, {1}) == exact(0));
    CHECK(hausdorff_plain(s, {0, 1}, {1}) == exact(1));
    CHECK(hausdorff_plain(s, {}, {}) == exact(0));
  }

  TEST_CASE("ideals") {
    Relation chain3 = {{true, true, true}, {false, true, true}, {false, false, true}};
    CHECK(is_ideal(chain3, {0, 1}));
    CHECK(!is_ideal(chain3, {1}));
    CHECK(!is_ideal(chain3, {}));
    Relation anti = {{true, false}, {false, true}};
    CHECK(!is_ideal(anti, {0, 1}));
  }

  TEST_CASE("both liftings obey their laws on arbitrary subsets") {
    auto terms = corpus::small_partial_terms();
    terms.resize(24);
    auto space = FiniteSpace::tabulate(terms, [](const auto& a, const auto& b) { return p_tree(a, b).value(); },
                                       [](const auto& a) { return print(a); });
    std::mt19937_64 rng(17);
    std::bernoulli_distribution coin(0.2);
    std::vector<std::vector<std::size_t>> subsets;
    while (subsets.size() < 24) {
      std::vector<std::size_t> s;
      for (std::size_t i = 0; i < terms.size(); ++i)
        if (coin(rng)) s.push_back(i);
      if (!s.empty()) subsets.push_back(s);
    }
    auto lifted = FiniteSpace::tabulate(
        subsets, [&](const auto& a, const auto& b) { return hausdorff_plain(space, a, b).value(); },
        [](const auto&) { return std::string("S"); });
    for (const auto& v : check_axioms(lifted, AxiomMode::PPM)) CHECK_MESSAGE(false, v.axiom);

    for (const auto& a : subsets)
      for (const auto& b : subsets) {
        Rational ab = hausdorff_star(space, a, b).value();
        CHECK(hausdorff_star(space, a, a).value() <= ab);
        CHECK(ab == hausdorff_star(space, b, a).value());
        for (const auto& c : subsets) {
          Rational inf = 1;
          for (auto i : c) inf = std::min(inf, space(i, i));
          CHECK(ab <= hausdorff_star(space, a, c).value() + hausdorff_star(space, c, b).value() - inf);
        }
      }
  }

  TEST_CASE("the variant lifting is a partial metric on ideals ordered by inclusion") {
    auto terms = corpus::small_partial_terms();
    auto space = FiniteSpace::tabulate(terms, [](const auto& a, const auto& b) { return p_tree(a, b).value(); },
                                       [](const auto& a) { return print(a); });
    Relation order = induced_order(space);
    std::vector<std::vector<std::size_t>> ideals;
    for (std::size_t t = 0; t < terms.size(); ++t) {
      std::vector<std::size_t> down;
      for (std::size_t s = 0; s < terms.size(); ++s)
        if (order[s][t]) down.push_back(s);
      REQUIRE(is_ideal(order, down));
      ideals.push_back(down);
    }
    auto lifted = FiniteSpace::tabulate(
        ideals, [&](const auto& a, const auto& b) { return hausdorff_star(space, a, b).value(); },
        [](const auto&) { return std::string("I"); });
    CHECK(first_violation(lifted, AxiomMode::PM) == "");
    Relation lifted_order = induced_order(lifted);
    for (std::size_t i = 0; i < ideals.size(); ++i)
      for (std::size_t j = 0; j < ideals.size(); ++j) {
        bool inclusion = std::includes(ideals[j].begin(), ideals[j].end(), ideals[i].begin(), ideals[i].end());
        CHECK(lifted_order[i][j] == inclusion);
      }
  }
}
