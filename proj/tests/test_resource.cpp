#include <set>

#include "lambdapm/corpus.hpp"
#include "lambdapm/pmetric.hpp"
#include "lambdapm/resource.hpp"
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

// Normal terms applied to bags of normal terms, nested once inside a bag.
ResourceTerm random_redex_term(corpus::Rng& rng) {
  std::uniform_int_distribution<int> n(0, 2);
  auto normals = [&] {
    std::vector<ResourceTerm> bag;
    for (int k = n(rng); k > 0; --k) bag.push_back(corpus::random_normal_resource(rng, 2, 1));
    return bag;
  };
  // λx.x⟨…⟩ or λx.x⟨x⟩ applied to a bag.
  auto applied = [&] {
    ResourceTerm x = rvar({0, "x"});
    ResourceTerm body = n(rng) == 0 ? rapp(x, {x}) : rapp(x, normals());
    return rapp(rlam("x", body), normals());
  };
  ResourceTerm z = rvar({0, "z"});
  return rapp(rlam("z", rapp(z, {z})), {applied(), applied()});
}

}  // namespace

TEST_SUITE("resource") {
  TEST_CASE("syntax") {
    CHECK(print(R("\\x.x<>")) == "\\x.x<>");
    CHECK(same(R("y<z<>, w<>>"), R("y<w<>, z<>>")));
    CHECK(same(R("\\a.a<a>"), R("\\b.b<b>")));
    CHECK(!same(R("x<>"), R("x")));
    CHECK_THROWS_AS(R("x<y"), ParseError);
  }

  TEST_CASE("linear reduction") {
    CHECK(keys(resource_reduce(R("(\\x.x<x>)<y, z>"))) == keys({"y<z>", "z<y>"}));
    CHECK(resource_reduce(R("(\\x.x<x>)<y>")).empty());
    CHECK(keys(resource_reduce(R("\\y.y<>"))) == keys({"\\y.y<>"}));
    CHECK(keys(resource_reduce(R("(\\x.y)<>"))) == keys({"y"}));
    CHECK(resource_reduce(R("(\\x.y)<z>")).empty());
    CHECK(keys(resource_reduce(R("(\\x.x)<\\y.y>"))) == keys({"\\y.y"}));
    CHECK(keys(resource_reduce(R("(\\f.f<z, z>)<\\x.x<x>>"))) == keys({"z<z>"}));
    CHECK(keys(resource_reduce(R("(\\f.f<f>)<\\x.x, \\y.y>"))) == keys({"\\x.x"}));
    CHECK(count_redexes(R("(\\x.x)<(\\y.y)<z>>")) == 2);
  }

  TEST_CASE("substitution renames binders") {
    CHECK(keys(resource_reduce(R("(\\x.\\y.x<y>)<y>"))) == keys({"\\w.y<w>"}));
  }

  TEST_CASE("heights") {
    CHECK(height(R("\\x.x<>")) == 1);
    CHECK(height(R("\\x.\\y.y<x>")) == 2);
    CHECK(height(R("y<z<>, w<>>")) == 2);
    CHECK(height(R("y<z<x<>>>")) == 3);
  }

  TEST_CASE("truncations") {
    auto t = R("\\x.\\y.y<x<>>");
    auto one = truncate(t, 1);
    REQUIRE(one);
    CHECK(same(*one, R("\\x.\\y.y<>")));
    CHECK(!truncate(t, 0));
    CHECK(same(*truncate(t, 2), t));
    CHECK(same(*truncate(R("y<z<x<>>> <w>"), 2), R("y<z<>> <w>")));
  }

  TEST_CASE("resource metric examples") {
    CHECK(r_metric(R("\\x.x<>"), R("\\x.x<>")) == exact(1, 2));
    CHECK(r_metric(R("\\x.x<>"), R("\\y.z<>")) == exact(1));
    CHECK(r_metric(R("\\x.\\y.y<x>"), R("\\x.\\y.y<>")) == exact(1, 2));
    CHECK(r_agreement(R("y<z<x<>>>"), R("y<z<y<>>>")) == 2);
  }

  TEST_CASE("bag-extension order") {
    CHECK(resource_leq(R("x<>"), R("x<y>")));
    CHECK(resource_leq(R("x<y<>>"), R("x<y<z>>")));
    CHECK(resource_leq(R("x<y<>, z>"), R("x<z, y<w>>")));
    CHECK(!resource_leq(R("x<y>"), R("x<y, y>")));
    CHECK(!resource_leq(R("x<y>"), R("x<>")));
    CHECK(!resource_leq(R("x<y>"), R("x<z>")));
  }

  TEST_CASE("height, self-distance and truncation laws") {
    corpus::Rng rng(31);
    for (int i = 0; i < 300; ++i) {
      auto t = corpus::random_normal_resource(rng, 4);
      REQUIRE(is_normal(t));
      CHECK(r_metric(t, t) == DistanceValue::exact(pow2(-static_cast<int>(height(t)))));
      for (std::size_t n = 1; n <= 5; ++n) {
        auto c = truncate(t, n);
        REQUIRE(c);
        CHECK(height(*c) == std::min(n, height(t)));
        if (height(t) <= n) CHECK(same(*c, t));
        CHECK(resource_leq(*c, t));
      }
    }
  }

  TEST_CASE("the resource metric is a partial ultrametric") {
    corpus::Rng rng(37);
    ResourceSet terms;
    while (terms.size() < 40) {
      terms.push_back(corpus::random_normal_resource(rng, 3));
      terms = normalize_set(terms);
    }
    auto space = FiniteSpace::tabulate(terms, [](const auto& a, const auto& b) { return r_metric(a, b).value(); },
                                       [](const auto& a) { return print(a); });
    CHECK(first_violation(space, AxiomMode::PUM) == "");
    Relation o = induced_order(space);
    for (std::size_t i = 0; i < terms.size(); ++i)
      for (std::size_t j = 0; j < terms.size(); ++j) {
        auto cut = truncate(terms[j], height(terms[i]));
        CHECK(o[i][j] == same(*cut, terms[i]));
        if (o[i][j]) CHECK(resource_leq(terms[i], terms[j]));
      }
  }

  TEST_CASE("the induced order is strictly smaller than bag extension") {
    auto t = R("y<> <x>");
    auto u = R("y<x> <x>");
    CHECK(resource_leq(t, u));
    CHECK(r_metric(t, u).value() > r_metric(t, t).value());
  }

  TEST_CASE("reduction is confluent and decreases size") {
    corpus::Rng rng(41);
    int nonempty = 0;
    for (int i = 0; i < 200; ++i) {
      auto t = random_redex_term(rng);
      auto all = keys(resource_reduce(t));
      nonempty += !all.empty();
      for (const auto& n : resource_reduce(t)) CHECK(is_normal(n));
      for (std::size_t k = 0; k < count_redexes(t); ++k) {
        std::set<std::string> via;
        for (const auto& s : contract_redex(t, k)) {
          CHECK(s->size < t->size);
          for (const auto& n : resource_reduce(s)) via.insert(n->key);
        }
        CHECK(via == all);
      }
    }
    CHECK(nonempty > 3);
  }
}
