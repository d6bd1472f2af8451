#include <set>

#include "lambdapm/corpus.hpp"
#include "lambdapm/pmetric.hpp"
#include "lambdapm/taylor.hpp"
#include "support.hpp"

using namespace lpm;
using namespace lpm::test;

namespace {

std::set<std::string> keys(const ResourceSet& s) {
  std::set<std::string> out;
  for (const auto& t : s) out.insert(t->key);
  return out;
}

std::set<std::string> keys(std::initializer_list<const char*> terms) {
  std::set<std::string> out;
  for (const char* t : terms) out.insert(R(t)->key);
  return out;
}

Integer binomial(Integer n, std::size_t k) {
  Integer r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - i + 1) / i;
  return r;
}

// |{t ⊲ a | bags ≤ b, h(t) ≤ h}|, counting multisets of each argument's expansion.
Integer fragment_size(const PartialTerm& a, std::size_t b, std::size_t h) {
  if (a.is_bottom() || h == 0) return 0;
  Integer total = 1;
  for (const auto& arg : a->args) {
    Integer n = fragment_size(arg, b, h - 1);
    Integer bags = 0;
    for (std::size_t k = 0; k <= b; ++k) bags += binomial(n + k - 1, k);
    total *= bags;
  }
  return total;
}

Rational lifted_side(const ResourceSet& X, const ResourceSet& Y, LiftOrder order) {
  Rational sup = 0;
  for (const auto& a : X) {
    Rational inf = 1;
    for (const auto& a2 : X) {
      bool above = order == LiftOrder::Extension ? resource_leq(a, a2)
                                                 : r_metric(a, a2).value() <= r_metric(a, a).value();
      if (!above) continue;
      for (const auto& b : Y) inf = std::min(inf, r_metric(a2, b).value());
    }
    sup = std::max(sup, inf);
  }
  return sup;
}

Rational brute_star(const ResourceSet& A, const ResourceSet& B, LiftOrder order) {
  if (A.empty() && B.empty()) return 1;
  return std::max(lifted_side(A, B, order), lifted_side(B, A, order));
}

ResourceSet random_subset(corpus::Rng& rng, const ResourceSet& pool, double p) {
  std::bernoulli_distribution coin(p);
  ResourceSet out;
  for (const auto& t : pool)
    if (coin(rng)) out.push_back(t);
  return out;
}

}  // namespace

TEST_SUITE("taylor") {
  TEST_CASE("box relation") {
    CHECK(box_relation(R("x"), P("x")));
    CHECK(box_relation(R("\\x.\\y.y<x, x>"), P("\\x.\\y.y x")));
    CHECK(box_relation(R("\\x.\\y.y<>"), P("\\x.\\y.y x")));
    CHECK(!box_relation(R("x"), P("_|_")));
    CHECK(!box_relation(R("x<y>"), P("x _|_")));
    CHECK(box_relation(R("x<>"), P("x _|_")));
    CHECK(!box_relation(R("x<y>"), P("x z")));
    CHECK(!box_relation(R("x"), P("x y")));
  }

  TEST_CASE("expansion examples") {
    CHECK(taylor_expand(P("_|_"), 3, 3).elements.empty());
    CHECK(keys(taylor_expand(P("\\x.x"), 4, 4).elements) == keys({"\\x.x"}));
    CHECK(keys(taylor_expand(P("\\x.\\y.y x"), 2, 2).elements) ==
          keys({"\\x.\\y.y<>", "\\x.\\y.y<x>", "\\x.\\y.y<x, x>"}));
    CHECK(keys(taylor_expand(P("\\x.\\y.y x"), 2, 1).elements) == keys({"\\x.\\y.y<>"}));
    CHECK(keys(taylor_of_term(T("(\\x.x) (\\y.y)"), 2, 5).elements) ==
          keys({"(\\x.x)<>", "(\\x.x)<\\y.y>", "(\\x.x)<\\y.y, \\y.y>"}));
    CHECK(keys(taylor_of_term(T("y"), 3, 3).elements) == keys({"y"}));
    CHECK(max_bag(R("x<y, y<z, z, z>>")) == 3);
  }

  TEST_CASE("expansion sizes match the multiset count") {
    for (const auto& a : corpus::small_partial_terms())
      for (std::size_t b = 1; b <= 3; ++b)
        for (std::size_t h : {1, 2, 5}) {
          auto f = taylor_expand(a, b, h).elements;
          CHECK(Integer(f.size()) == fragment_size(a, b, h));
          for (const auto& t : f) {
            CHECK(box_relation(t, a));
            CHECK(max_bag(t) <= b);
            CHECK(height(t) <= std::min(h, height(a)));
          }
        }
  }

  TEST_CASE("expansion of a normal term agrees with its approximant") {
    corpus::Rng rng(43);
    int tested = 0;
    for (int i = 0; i < 200 && tested < 40; ++i) {
      Term t = corpus::random_term(rng, 4);
      if (!direct_approximant(t).is_bottom() && normalize(t, 0)) {
        auto a = direct_approximant(t);
        CHECK(keys(taylor_of_term(t, 2, 4).elements) == keys(taylor_expand(a, 2, 4).elements));
        ++tested;
      }
    }
    CHECK(tested > 10);
  }

  TEST_CASE("the fast lifting agrees with the direct definition") {
    corpus::Rng rng(47);
    auto terms = corpus::small_partial_terms();
    for (int round = 0; round < 60; ++round) {
      std::uniform_int_distribution<std::size_t> pick(0, terms.size() - 1);
      auto pool = normalize_set([&] {
        auto x = taylor_expand(terms[pick(rng)], 2, 4).elements;
        auto y = taylor_expand(terms[pick(rng)], 2, 4).elements;
        x.insert(x.end(), y.begin(), y.end());
        return x;
      }());
      auto A = random_subset(rng, pool, 0.5);
      auto B = random_subset(rng, pool, 0.5);
      for (auto order : {LiftOrder::Extension, LiftOrder::Induced})
        CHECK(hausdorff_star_r(A, B, order) == brute_star(A, B, order));
      CHECK(hausdorff_plain_r(A, B) == hausdorff_plain(A, B, [](const auto& a, const auto& b) {
              return r_metric(a, b).value();
            }));
    }
  }

  TEST_CASE("the plain lifting gives 1/2 on fragments of an infinite tree") {
    auto tree = bohm_truncate(T("(\\f.(\\x.f (x x)) (\\x.f (x x))) (\\f.\\x.x f)"), 5, 500).tree;
    for (std::size_t b = 1; b <= 3; ++b)
      for (std::size_t h = 2; h <= 6 - b; ++h) {
        auto f = taylor_expand(tree, b, h).elements;
        CHECK(hausdorff_plain_r(f, f) == q(1, 2));
        CHECK(hausdorff_star_r(f, f) == pow2(-static_cast<int>(h)));
      }
  }

  TEST_CASE("isometry examples") {
    auto bot = isometry_check(P("_|_"), P("\\x.x"), 2);
    CHECK(bot.lhs == exact(1));
    CHECK(bot.rhs == exact(1));
    auto self = isometry_check(P("y (x x) x"), P("y (x x) x"), 2);
    CHECK(self.lhs == exact(1, 8));
    CHECK(self.equal);
    auto half = isometry_check(P("\\x.x _|_"), P("\\x.x (\\y.y)"), 2);
    CHECK(half.lhs == exact(1, 2));
    CHECK(half.equal);
    CHECK(half.stable);
    CHECK(isometry_check(P("_|_"), P("_|_"), 1).equal);
  }

  TEST_CASE("the literal induced order breaks the isometry on a self-pair") {
    auto a = P("y (x (x x)) x");
    CHECK(isometry_check(a, a, 2, LiftOrder::Extension).lhs == exact(1, 16));
    CHECK(isometry_check(a, a, 2, LiftOrder::Induced).lhs == exact(1, 4));
  }

  TEST_CASE("ideal lifting agrees with the set lifting on fragments") {
    auto terms = corpus::small_partial_terms();
    for (std::size_t i = 0; i < terms.size(); i += 9)
      for (std::size_t j = i; j < terms.size(); j += 13) {
        if (corpus::is_chain(terms[i]) || corpus::is_chain(terms[j])) continue;
        auto A = taylor_expand(terms[i], 2, 4).elements;
        auto B = taylor_expand(terms[j], 2, 4).elements;
        if (A.empty() || B.empty()) continue;
        CHECK(hausdorff_star_ideals(A, B) == hausdorff_star_r(A, B));
      }
  }

  TEST_CASE("commutation examples") {
    auto id = commutation_check(T("(\\x.x) (\\y.y)"), 2, 3, 100);
    CHECK(id.equal);
    CHECK(keys(id.lhs) == keys({"\\y.y"}));
    auto lam = commutation_check(T("\\x.x"), 2, 3, 100);
    CHECK(lam.equal);
    CHECK(keys(lam.rhs) == keys({"\\x.x"}));
    auto omega = commutation_check(T("(\\x.x x) (\\x.x x)"), 2, 3, 100);
    CHECK(omega.equal);
    CHECK(omega.lhs.empty());
    CHECK_THROWS_AS(commutation_check(T("\\x.x ((\\x.x x x) (\\x.x x x))"), 1, 3, 20), std::runtime_error);
  }

  TEST_CASE("pairing and enumerations") {
    CHECK(unpair(1) == std::pair<std::size_t, std::size_t>{1, 1});
    CHECK(unpair(2) == std::pair<std::size_t, std::size_t>{1, 2});
    CHECK(unpair(3) == std::pair<std::size_t, std::size_t>{2, 1});
    CHECK(unpair(4) == std::pair<std::size_t, std::size_t>{1, 3});
    std::set<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t n = 1; n <= 55; ++n) pairs.insert(unpair(n));
    CHECK(pairs.size() == 55);

    CHECK(enumerate_partial(1).is_bottom());
    std::set<std::string> seen;
    for (std::size_t n = 1; n <= 300; ++n) CHECK(seen.insert(key(enumerate_partial(n))).second);

    CHECK(!enumerate_taylor(P("_|_"), 1));
    CHECK(same(*enumerate_taylor(P("\\x.x"), 5), R("\\x.x")));
    CHECK(same(*enumerate_taylor(P("x y"), 1), R("x<y>")));
    CHECK(same(*enumerate_taylor(P("x _|_"), 1), R("x<>")));
    auto a = P("\\z.z (x (x y))");
    std::set<std::string> first;
    for (std::size_t m = 1; m <= 20; ++m) {
      auto t = enumerate_taylor(a, m);
      REQUIRE(t);
      CHECK(box_relation(*t, a));
      first.insert((*t)->key);
    }
    CHECK(first.size() == 20);
  }

  TEST_CASE("the Böhm-side prefix counts the partial terms outside the ideal") {
    auto a = P("\\z.z x");
    std::size_t k = 40;
    Rational expected = 0;
    for (std::size_t n = 1; n <= k; ++n)
      if (!partial_leq(enumerate_partial(n), a)) expected += pow2(-static_cast<int>(n));
    auto r = enumeration_isometry(a, a, k);
    CHECK(r.p_b.lower() == expected);
    CHECK(r.p_b.upper() == expected + pow2(-static_cast<int>(k)));
    CHECK(r.p_p.lower() <= r.p_b.upper());
  }
}
