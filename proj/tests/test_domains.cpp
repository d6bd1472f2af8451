#include <random>

#include "lambdapm/domains.hpp"
#include "support.hpp"

using namespace lpm;
using namespace lpm::test;

namespace {

// Every table Y^X, kept when order-preserving.
std::size_t count_monotone(const FinitePoset& x, const FinitePoset& y) {
  std::size_t n = x.size(), count = 0;
  MapTable f(n, 0);
  for (;;) {
    bool ok = true;
    for (std::size_t a = 0; a < n && ok; ++a)
      for (std::size_t b = 0; b < n && ok; ++b)
        if (x.leq(a, b) && !y.leq(f[a], f[b])) ok = false;
    count += ok;
    std::size_t i = 0;
    while (i < n && ++f[i] == y.size()) f[i++] = 0;
    if (i == n) return count;
  }
}

FinitePoset point() { return FinitePoset({"*"}, {{true}}, 0); }

}  // namespace

TEST_SUITE("domains") {
  TEST_CASE("small posets") {
    auto c = chain(3);
    CHECK(c.leq(0, 2));
    CHECK(!c.leq(2, 1));
    auto f = flat(2);
    CHECK(f.size() == 3);
    CHECK(!f.join(1, 2));
    CHECK(f.join(0, 2) == 2);
    auto p = product(sierpinski(), chain(3));
    CHECK(p.size() == 6);
    CHECK(p.leq(0 * 3 + 2, 1 * 3 + 2));
    CHECK(!p.leq(1 * 3 + 0, 0 * 3 + 2));
    CHECK(sierpinski().up_set(0) == std::vector<std::size_t>{0, 1});
  }

  TEST_CASE("validation") {
    CHECK(!validate({"a", "b"}, {{true, true}, {false, true}}, 0));
    CHECK(validate({"a", "b"}, {{true, true}, {true, true}}, 0));
    CHECK(validate({"a", "b"}, {{true, false}, {false, true}}, 0));
    CHECK(validate({"a", "b"}, {{true, true}, {false, true}}, 1));
    // ⊥ < a, b < c, d: a and b have two minimal upper bounds.
    Relation bowtie(5, std::vector<bool>(5, false));
    for (std::size_t i = 0; i < 5; ++i) bowtie[0][i] = bowtie[i][i] = true;
    for (std::size_t lo : {1, 2})
      for (std::size_t hi : {3, 4}) bowtie[lo][hi] = true;
    CHECK(validate({"bot", "a", "b", "c", "d"}, bowtie, 0));
    CHECK_THROWS_AS(FinitePoset({"bot", "a", "b", "c", "d"}, bowtie, 0), std::invalid_argument);
  }

  TEST_CASE("way-below") {
    CHECK(way_below(chain(2), 0, 1));
    auto f = flat(2);
    for (std::size_t x = 0; x < 3; ++x) CHECK(way_below(f, x, x));
    CHECK(!way_below(f, 1, 2));
    std::mt19937_64 rng(53);
    for (int round = 0; round < 30; ++round) {
      auto p = random_poset(rng, 6);
      for (std::size_t x = 0; x < p.size(); ++x)
        for (std::size_t y = 0; y < p.size(); ++y) CHECK(way_below(p, x, y) == way_below_by_definition(p, x, y));
    }
  }

  TEST_CASE("function space sizes") {
    CHECK(function_space(sierpinski(), sierpinski()).size() == 3);
    CHECK(function_space(chain(3), chain(3)).size() == 10);
    CHECK(count_monotone(chain(3), chain(3)) == 10);
    CHECK(function_space(flat(2), point()).size() == 1);
    CHECK(function_space(flat(2), flat(2)).size() == 11);
    CHECK_THROWS_AS(function_space(chain(3), chain(3), 5), CapExceeded);
    std::mt19937_64 rng(59);
    for (int round = 0; round < 25; ++round) {
      auto x = random_poset(rng, 4);
      auto y = random_poset(rng, 4);
      auto fs = function_space(x, y);
      CHECK(fs.size() == count_monotone(x, y));
      CHECK(fs.table(fs.bottom()) == MapTable(x.size(), y.bottom()));
      for (std::size_t f = 0; f < fs.size(); ++f) {
        CHECK(fs.index_of(fs.table(f)) == f);
        for (std::size_t g = 0; g < fs.size(); ++g) {
          bool pointwise = true;
          for (std::size_t a = 0; a < x.size(); ++a) pointwise &= y.leq(fs.apply(f, a), fs.apply(g, a));
          CHECK(fs.leq(f, g) == pointwise);
        }
      }
    }
  }

  TEST_CASE("step functions generate every map") {
    auto s = sierpinski();
    CHECK(step_function(s, s, 1, 1) == MapTable{0, 1});
    CHECK(step_function(chain(3), s, 0, 1) == MapTable{1, 1, 1});
    std::mt19937_64 rng(61);
    for (int round = 0; round < 25; ++round) {
      auto x = random_poset(rng, 4);
      auto y = random_poset(rng, 4);
      auto fs = function_space(x, y);
      for (std::size_t f = 0; f < fs.size(); ++f) CHECK(join_of_steps(x, y, fs.table(f)) == fs.table(f));
    }
  }

  TEST_CASE("product metric") {
    auto s = sierpinski_space();
    CHECK(product_metric(s, s, {0, 0}, {0, 0}) == exact(1));
    CHECK(product_metric(s, s, {1, 1}, {1, 1}) == exact(0));
    CHECK(product_metric(s, s, {0, 1}, {1, 1}) == exact(1, 2));
    auto ps = product_space(s, weighted_basis_space(chain(3)));
    CHECK(first_violation(ps, AxiomMode::PM) == "");
    auto order = induced_order(ps);
    auto prod = product(sierpinski(), chain(3));
    for (std::size_t i = 0; i < ps.size(); ++i)
      for (std::size_t j = 0; j < ps.size(); ++j) CHECK(order[i][j] == prod.leq(i, j));
  }

  TEST_CASE("weighted basis metric") {
    auto w = weighted_basis_space(sierpinski());
    CHECK(w(0, 0) == q(1, 4));
    CHECK(w(1, 1) == 0);
    CHECK(w(0, 1) == q(1, 4));
    std::mt19937_64 rng(67);
    for (int round = 0; round < 40; ++round) {
      auto p = random_poset(rng, 7);
      auto m = weighted_basis_space(p);
      CHECK(first_violation(m, AxiomMode::PM) == "");
      auto order = induced_order(m);
      for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = 0; j < p.size(); ++j) CHECK(order[i][j] == p.leq(i, j));
      CHECK(quantification_decision(p, m).passed());
    }
  }

  TEST_CASE("applicative metric") {
    auto s = sierpinski();
    auto fs = function_space(s, s);
    auto py = weighted_basis_space(s);
    auto id = *fs.index_of({0, 1});
    auto bot = *fs.index_of({0, 0});
    CHECK(applicative_metric(py, {0, 1}, q(1, 2), fs.table(id), fs.table(id)) == q(1, 8));
    CHECK(applicative_metric(py, {0, 1}, q(1, 2), fs.table(bot), fs.table(bot)) == q(3, 16));
    for (const auto& [x, y] : {std::pair{sierpinski(), sierpinski()}, std::pair{chain(3), chain(3)},
                               std::pair{flat(2), sierpinski()}}) {
      auto space = function_space(x, y);
      auto m = applicative_space(space, weighted_basis_space(y), q(1, 2));
      CHECK(first_violation(m, AxiomMode::PM) == "");
      auto order = induced_order(m);
      for (std::size_t f = 0; f < space.size(); ++f)
        for (std::size_t g = 0; g < space.size(); ++g) {
          CHECK(order[f][g] == space.leq(f, g));
          if (space.leq(f, g)) CHECK(m(f, g) == m(f, f));
        }
      CHECK(quantification_decision(space, m).passed());
    }
  }

  TEST_CASE("finite access bound") {
    CHECK(finite_access_bound(q(1, 2), q(1, 8)) == 5);
    CHECK(finite_access_bound(q(1, 2), 1) == 2);
    for (int k = 0; k <= 8; ++k) {
      Rational eps = pow2(-k);
      std::size_t n = finite_access_bound(q(1, 2), eps);
      CHECK(pow2(-static_cast<int>(n)) < eps / 2);
      if (n > 1) CHECK(pow2(-static_cast<int>(n - 1)) >= eps / 2);
    }
  }

  TEST_CASE("quantification decision") {
    CHECK(quantification_decision(sierpinski(), sierpinski_space()).passed());
    auto control = quantification_decision(chain(3), offset_control_space());
    CHECK(!control.balls_are_up_sets);
    CHECK(!control.witnesses.empty());
    CHECK(check_axioms(offset_control_space(), AxiomMode::PM).empty());
  }

  TEST_CASE("Sierpinski tower") {
    Tower t(sierpinski(), sierpinski_space(), 2);
    CHECK(t.level(0).size() == 2);
    CHECK(t.level(1).size() == 3);
    CHECK(t.level(2).size() == 10);
    for (std::size_t x = 0; x < 2; ++x) CHECK(t.proj(0, t.inj(0, x)) == x);
    CHECK(t.inj(0, 0) == t.level(1).bottom());
    CHECK(t.level(1).table(t.inj(0, 1)) == MapTable{1, 1});
    auto laws = t.check_laws();
    CHECK(laws.ok());
    CHECK(laws.checks > 50);
  }

  TEST_CASE("tower profiles") {
    Tower t(sierpinski(), sierpinski_space(), 2);
    TowerProfile bot{{0, t.level(1).bottom(), t.level(2).bottom()}};
    CHECK(is_valid_profile(t, bot));
    Rational self = q(1, 2) * t.metric(1, bot.levels[1], bot.levels[1]) +
                    q(1, 4) * t.metric(2, bot.levels[2], bot.levels[2]);
    CHECK(p_infinity_prefix(t, bot, bot) == DistanceValue::bracket(self, self + q(1, 4)));
    CHECK(t.metric(1, t.inj(0, 0), t.inj(0, 0)) == q(1, 2) * 1 + q(1, 4) * 1);

    std::size_t top2 = t.inj(0, 2, 1);
    auto top = profile_of(t, top2);
    CHECK(top.levels[0] == 1);
    CHECK(top.levels[1] == t.inj(0, 1));
    CHECK(p_infinity_prefix(t, top, bot).lower() > 0);
    CHECK(p_infinity_prefix(t, top, top).lower() < p_infinity_prefix(t, bot, bot).lower());

    TowerProfile broken{{1, t.level(1).bottom(), t.level(2).bottom()}};
    CHECK(!is_valid_profile(t, broken));
    CHECK_THROWS_AS(p_infinity_prefix(t, broken, bot), std::invalid_argument);
  }

  TEST_CASE("tower metrics are partial metrics ordered pointwise") {
    Tower t(sierpinski(), sierpinski_space(), 2);
    for (std::size_t n = 1; n <= 2; ++n) {
      const auto& d = t.level(n);
      std::vector<std::size_t> idx(d.size());
      for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
      auto m = FiniteSpace::tabulate(idx, [&](std::size_t a, std::size_t b) { return t.metric(n, a, b); },
                                     [&](std::size_t a) { return d.label(a); });
      CHECK(first_violation(m, AxiomMode::PM) == "");
      auto order = induced_order(m);
      for (std::size_t a = 0; a < d.size(); ++a)
        for (std::size_t b = 0; b < d.size(); ++b) CHECK(order[a][b] == d.leq(a, b));
    }
  }
}
