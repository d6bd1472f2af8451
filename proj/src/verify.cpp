#include "lambdapm/verify.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

#include "lambdapm/bohm.hpp"
#include "lambdapm/contextual.hpp"
#include "lambdapm/corpus.hpp"
#include "lambdapm/domains.hpp"
#include "lambdapm/intervals.hpp"
#include "lambdapm/pmetric.hpp"
#include "lambdapm/resource.hpp"
#include "lambdapm/taylor.hpp"

namespace lpm::verify {

namespace {

struct Outcome {
  bool pass = true;
  std::size_t failures = 0;
  std::string issues;  // the first few failures
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    pass = false;
    if (failures++ < 3) issues += (issues.empty() ? "" : "; ") + what;
  }
};

template <class T, class Dist, class Label>
FiniteSpace tab(const std::vector<T>& pts, Dist d, Label l) {
  return FiniteSpace::tabulate(pts, d, l);
}

std::string first_violation(const FiniteSpace& s, AxiomMode mode) {
  auto v = check_axioms(s, mode, 1);
  if (v.empty()) return "";
  std::string out = v[0].axiom;
  for (auto w : v[0].witnesses) out += " " + s.label(w);
  return out;
}

FiniteSpace tree_space() {
  return tab(corpus::small_partial_terms(), [](const auto& a, const auto& b) { return p_tree(a, b).value(); },
             [](const auto& a) { return print(a); });
}

std::vector<std::vector<RationalInterval>> interval_families(std::uint64_t seed) {
  corpus::Rng rng(seed + 101);
  std::vector<std::vector<RationalInterval>> out;
  for (int f = 0; f < 20; ++f) {
    std::vector<RationalInterval> fam;
    while (fam.size() < 12) {
      auto i = corpus::random_interval(rng);
      if (std::find(fam.begin(), fam.end(), i) == fam.end()) fam.push_back(i);
    }
    out.push_back(fam);
  }
  return out;
}

std::vector<FinitePoset> random_posets(std::uint64_t seed) {
  std::mt19937_64 rng(seed + 103);
  std::vector<FinitePoset> out;
  for (int i = 0; i < 100; ++i) out.push_back(random_poset(rng, 7));
  return out;
}

struct IdealFamily {
  ResourceSet pool;
  std::vector<ResourceSet> ideals;
  FiniteSpace space;
};

// Principal ideals, for the order induced by r, of a pool of fragment elements.
IdealFamily resource_ideals() {
  IdealFamily f;
  for (const char* a : {"\\z.z (x x)", "y (x x) x", "x (y _|_ x)", "y (\\z.z x) _|_"}) {
    auto e = taylor_expand(parse_partial(a), 2, 3).elements;
    f.pool.insert(f.pool.end(), e.begin(), e.end());
  }
  f.pool = normalize_set(f.pool);
  for (const auto& t : f.pool) {
    ResourceSet down;
    for (const auto& s : f.pool)
      if (r_metric(s, t).value() <= r_metric(s, s).value()) down.push_back(s);
    f.ideals.push_back(down);
  }
  auto r = [](const ResourceTerm& a, const ResourceTerm& b) { return r_metric(a, b).value(); };
  f.space = tab(f.ideals, [&](const auto& a, const auto& b) { return hausdorff_star(a, b, r); },
                [](const auto& a) { return print(a.back()); });
  return f;
}

std::vector<std::pair<FinitePoset, FinitePoset>> applicative_cases() {
  return {{sierpinski(), sierpinski()}, {chain(3), chain(3)}};
}

void criterion1(Outcome& o, std::uint64_t seed) {
  std::size_t spaces = 0;
  auto check = [&](const FiniteSpace& s, AxiomMode mode, const std::string& name) {
    ++spaces;
    auto v = first_violation(s, mode);
    o.require(v.empty(), name + ": " + v);
  };
  check(tree_space(), AxiomMode::PUM, "p_tree");
  for (const auto& fam : interval_families(seed))
    check(tab(fam, [](const auto& a, const auto& b) { return p_int(a, b).value(); },
              [](const auto& a) { return to_string(a); }),
          AxiomMode::PM, "p_int");
  corpus::Rng rng(seed + 107);
  ResourceSet rterms;
  while (rterms.size() < 60) {
    rterms.push_back(corpus::random_normal_resource(rng, 3));
    rterms = normalize_set(rterms);
  }
  check(tab(rterms, [](const auto& a, const auto& b) { return r_metric(a, b).value(); },
            [](const auto& a) { return print(a); }),
        AxiomMode::PUM, "r");
  check(sierpinski_space(), AxiomMode::PM, "s");
  for (const auto& p : random_posets(seed)) check(weighted_basis_space(p), AxiomMode::PM, "weighted basis");
  for (const auto& [x, y] : applicative_cases())
    check(applicative_space(function_space(x, y), weighted_basis_space(y), Rational(1, 2)), AxiomMode::PM,
          "applicative");
  auto ideals = resource_ideals();
  check(ideals.space, AxiomMode::PM, "H* on ideals");
  o.detail << spaces << " spaces, " << ideals.ideals.size() << " resource ideals";
}

void criterion2(Outcome& o, std::uint64_t seed) {
  auto terms = corpus::small_partial_terms();
  auto tree = tree_space();
  Relation induced = induced_order(tree);
  std::size_t mismatches = 0;
  std::string example;
  for (std::size_t i = 0; i < terms.size(); ++i)
    for (std::size_t j = 0; j < terms.size(); ++j)
      if (induced[i][j] != partial_leq(terms[i], terms[j])) {
        if (mismatches++ == 0)
          example = print(terms[i]) + " vs " + print(terms[j]) + ": approximant order " +
                    (partial_leq(terms[i], terms[j]) ? "yes" : "no") + ", induced " + (induced[i][j] ? "yes" : "no");
      }
  o.require(mismatches == 0, "p_tree: " + std::to_string(mismatches) + " pairs where the induced order differs from the approximant order, e.g. " + example);

  std::size_t checked = 0;
  for (const auto& fam : interval_families(seed)) {
    auto s = tab(fam, [](const auto& a, const auto& b) { return p_int(a, b).value(); },
                 [](const auto& a) { return to_string(a); });
    Relation r = induced_order(s);
    for (std::size_t i = 0; i < fam.size(); ++i)
      for (std::size_t j = 0; j < fam.size(); ++j, ++checked)
        o.require(r[i][j] == fam[i].contains(fam[j]), "p_int: " + to_string(fam[i]) + " vs " + to_string(fam[j]));
  }
  for (const auto& [x, y] : applicative_cases()) {
    auto fs = function_space(x, y);
    Relation r = induced_order(applicative_space(fs, weighted_basis_space(y), Rational(1, 2)));
    for (std::size_t f = 0; f < fs.size(); ++f)
      for (std::size_t g = 0; g < fs.size(); ++g, ++checked)
        o.require(r[f][g] == fs.leq(f, g), "applicative: " + fs.label(f) + " vs " + fs.label(g));
  }
  auto ideals = resource_ideals();
  Relation r = induced_order(ideals.space);
  for (std::size_t i = 0; i < ideals.ideals.size(); ++i)
    for (std::size_t j = 0; j < ideals.ideals.size(); ++j, ++checked) {
      const auto& a = ideals.ideals[i];
      const auto& b = ideals.ideals[j];
      bool inclusion = std::includes(b.begin(), b.end(), a.begin(), a.end(), ResourceKeyLess{});
      o.require(r[i][j] == inclusion, "H* on ideals: " + ideals.space.label(i) + " vs " + ideals.space.label(j));
    }
  o.detail << checked + terms.size() * terms.size() << " order pairs";
}

void criterion3(Outcome& o, std::uint64_t seed) {
  corpus::Rng rng(seed + 109);
  std::size_t n = 0;
  for (int i = 0; i < 200; ++i, ++n) {
    auto t = corpus::random_normal_resource(rng, 4);
    o.require(r_metric(t, t) == DistanceValue::exact(pow2(-static_cast<int>(height(t)))), "r(t,t) at " + print(t));
  }
  for (const auto& a : corpus::small_partial_terms()) {
    ++n;
    o.require(p_tree(a, a) == DistanceValue::exact(pow2(-static_cast<int>(height(a)))), "p_tree(a,a) at " + print(a));
    o.require(p_tree(PartialTerm::bottom(), a) == DistanceValue::exact(1), "p_tree(⊥,a) at " + print(a));
  }
  auto two = resource_reduce(parse_resource("(\\x.x<x>)<y, z>"));
  auto expected = normalize_set({parse_resource("y<z>"), parse_resource("z<y>")});
  o.require(two.size() == 2 && same(two[0], expected[0]) && same(two[1], expected[1]), "(λx.x⟨x⟩)⟨y,z⟩");
  o.require(resource_reduce(parse_resource("(\\x.x<x>)<y>")).empty(), "(λx.x⟨x⟩)⟨y⟩");

  auto infinite = bohm_truncate(parse("(\\f.(\\x.f (x x)) (\\x.f (x x))) (\\f.\\x.x f)"), 5, 500).tree;
  for (std::size_t b = 1; b <= 2; ++b)
    for (std::size_t h = 2; h <= 4; ++h) {
      ++n;
      auto f = taylor_expand(infinite, b, h).elements;
      o.require(hausdorff_plain_r(f, f) == Rational(1, 2), "H_r(T,T) at b=" + std::to_string(b));
    }
  for (const auto& a : corpus::small_partial_terms()) {
    if (a.is_bottom() || corpus::is_chain(a)) continue;
    ++n;
    o.require(hausdorff_star_r({}, taylor_expand(a, 2, 4).elements) == 1, "H*(∅,B) at " + print(a));
  }
  o.require(hausdorff_star(sierpinski_space(), {}, {1}) == DistanceValue::exact(1), "H*(∅,{⊤})");
  o.detail << n << " identities";
}

void criterion4(Outcome& o, std::uint64_t) {
  auto c = corpus::small_partial_terms();
  std::size_t checks = 0, unequal = 0, unstable = 0, skipped = 0;
  std::string example;
  for (std::size_t b = 1; b <= 3; ++b)
    for (std::size_t i = 0; i < c.size(); ++i)
      for (std::size_t j = i; j < c.size(); ++j) {
        if (b == 3 && (corpus::is_chain(c[i]) || corpus::is_chain(c[j]))) {
          ++skipped;
          continue;
        }
        auto r = isometry_check(c[i], c[j], b);
        ++checks;
        if (!r.equal && unequal++ == 0)
          example = print(c[i]) + " | " + print(c[j]) + ": " + r.lhs.str() + " vs " + r.rhs.str();
        unstable += !r.stable;
      }
  o.require(unequal == 0, std::to_string(unequal) + " unequal, e.g. " + example);
  o.require(unstable == 0, std::to_string(unstable) + " unstable");
  o.detail << checks << " checks over " << c.size() << " terms, b = 1..3";
  if (skipped) o.detail << " (" << skipped << " pairs with a height-4 chain skipped at b = 3)";
}

void criterion5(Outcome& o, std::uint64_t seed) {
  auto c = corpus::small_partial_terms();
  corpus::Rng rng(seed + 113);
  std::uniform_int_distribution<std::size_t> pick(0, c.size() - 1);
  std::size_t within = 0;
  Rational worst = 0;
  std::string example;
  for (int k = 0; k < 50; ++k) {
    const auto& a = c[pick(rng)];
    const auto& b = c[pick(rng)];
    auto r = enumeration_isometry(a, b, 12);
    within += r.within;
    if (r.gap > worst) {
      worst = r.gap;
      example = print(a) + " | " + print(b) + ": pP " + r.p_p.str() + ", pB " + r.p_b.str();
    }
  }
  o.require(within == 50, std::to_string(50 - within) + "/50 pairs exceed the tail 2^-11; worst gap " +
                              to_string(worst) + " at " + example);
  o.detail << within << "/50 within tolerance";
}

void criterion6(Outcome& o, std::uint64_t seed) {
  corpus::Rng rng(seed + 1);
  auto terms = corpus::normalizing_terms(rng, 30, 4, 500, 2);
  std::size_t equal = 0;
  for (const auto& t : terms) {
    auto r = commutation_check(t, 2, 4, 500);
    equal += r.equal;
    o.require(r.equal, print(t) + " differs (|lhs| " + std::to_string(r.lhs.size()) + ", |rhs| " +
                           std::to_string(r.rhs.size()) + ")");
  }
  o.detail << equal << "/" << terms.size() << " terms";
}

void criterion7(Outcome& o, std::uint64_t seed) {
  std::size_t passed = 0;
  auto posets = random_posets(seed);
  for (const auto& p : posets) {
    bool ok = quantification_decision(p, weighted_basis_space(p)).passed();
    passed += ok;
    o.require(ok, "weighted basis on a random poset");
  }
  for (const auto& [x, y] : applicative_cases()) {
    auto fs = function_space(x, y);
    o.require(quantification_decision(fs, applicative_space(fs, weighted_basis_space(y), Rational(1, 2))).passed(),
              "applicative");
  }
  o.require(quantification_decision(sierpinski(), sierpinski_space()).passed(), "Sierpinski");
  auto control = quantification_decision(chain(3), offset_control_space());
  o.require(!control.balls_are_up_sets, "negative control passed check (a)");
  o.detail << passed << "/" << posets.size() << " posets; control fails (a)";
}

void criterion8(Outcome& o, std::uint64_t seed) {
  Tower s(sierpinski(), sierpinski_space(), 2);
  auto ls = s.check_laws();
  o.require(ls.ok(), "Sierpinski laws: " + (ls.ok() ? "" : ls.failures[0]));
  Tower f(flat(2), weighted_basis_space(flat(2)), 2, 1000000);
  auto lf = f.check_laws();
  o.require(lf.ok(), "flat-2 laws: " + (lf.ok() ? "" : lf.failures[0]));

  // Profiles from a depth-2 tower over the 3-chain with its weighted basis
  // metric, drawn from the elements meeting the premise against themselves.
  Tower deep(chain(3), weighted_basis_space(chain(3)), 2, 1000000);
  std::mt19937_64 rng(seed + 127);
  std::vector<std::vector<std::size_t>> close(5);
  for (std::size_t x = 0; x < deep.level(2).size(); ++x) {
    auto a = profile_of(deep, x);
    for (int n = 1; n <= 4; ++n)
      if (finitary_premise(deep, a, a, finite_access_bound(Rational(1, 2), pow2(-n)), pow2(-(n + 1))))
        close[n].push_back(x);
  }
  std::size_t premises = 0, scott_fail = 0;
  for (int k = 0; k < 500; ++k) {
    int n = 1 + k % 4;
    const auto& pool = close[n];
    if (pool.empty()) continue;
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    auto a = profile_of(deep, pool[pick(rng)]);
    auto b = profile_of(deep, pool[pick(rng)]);
    if (!finitary_premise(deep, a, b, finite_access_bound(Rational(1, 2), pow2(-n)), pow2(-(n + 1)))) continue;
    ++premises;
    if (!(p_infinity_prefix(deep, a, b).lower() < pow2(-n))) ++scott_fail;
  }
  o.require(scott_fail == 0, std::to_string(scott_fail) + " finitary-Scott counterexamples");

  std::size_t access_premises = 0, access_fail = 0;
  std::uniform_int_distribution<int> eps_exp(1, 6);
  std::size_t pairs = 0;
  while (pairs < 1000) {
    auto x = random_poset(rng, 7);
    auto y = random_poset(rng, 5);
    FinitePoset fs;
    try {
      fs = function_space(x, y, 20000);
    } catch (const CapExceeded&) {
      continue;
    }
    auto py = weighted_basis_space(y);
    std::vector<std::size_t> basis(x.size());
    for (std::size_t i = 0; i < basis.size(); ++i) basis[i] = i;
    std::uniform_int_distribution<std::size_t> pick(0, fs.size() - 1);
    for (int k = 0; k < 20 && pairs < 1000; ++k, ++pairs) {
      std::size_t g = pick(rng);
      std::size_t h = k % 2 ? g : pick(rng);
      int n = eps_exp(rng);
      std::size_t access = finite_access_bound(Rational(1, 2), pow2(-n));
      bool premise = true;
      for (std::size_t i = 0; i < std::min(access, basis.size()); ++i)
        premise &= py(fs.apply(g, i), fs.apply(h, i)) < pow2(-(n + 1));
      if (!premise) continue;
      ++access_premises;
      if (!(applicative_metric(py, basis, Rational(1, 2), fs.table(g), fs.table(h)) < pow2(-n))) ++access_fail;
    }
  }
  o.require(access_fail == 0, std::to_string(access_fail) + " finite-access counterexamples");
  o.detail << "laws " << ls.checks + lf.checks << " checks (|D2| = " << s.level(2).size() << ", "
           << f.level(2).size() << "); finitary Scott premise held on " << premises << "/500 profile pairs ("
           << close[1].size() << ", " << close[2].size() << ", " << close[3].size() << ", " << close[4].size()
           << " admissible tops for n = 1..4); finite access premise held on " << access_premises << "/1000";
}

void criterion9(Outcome& o, std::uint64_t seed) {
  Term omega = parse("(\\x.x x) (\\x.x x)");
  auto terms = corpus::bohm_terms();
  corpus::Rng rng(seed + 131);
  for (int i = 0; i < 30; ++i) terms.push_back(corpus::random_term(rng, 5));
  std::size_t violations = 0, checked = 0, undecided = 0;
  for (const auto& n : terms) {
    auto d = p_bohm(omega, n, 4, 500);
    o.require(d == DistanceValue::exact(1), "p_bohm(Ω, " + print(n) + ") = " + d.str());
    auto g = genericity_semitest(omega, n, 64, 500);
    violations += g.violations;
    checked += g.checked;
    undecided += g.undecided;
  }
  o.require(violations == 0, std::to_string(violations) + " genericity violations");
  o.detail << terms.size() << " terms; " << checked << " solvable contexts checked, " << undecided
           << " undecided";
}

void criterion10(Outcome& o, std::uint64_t seed) {
  corpus::Rng rng(seed + 137);
  std::size_t brackets = 0;
  auto monotone = [&](const DistanceValue& coarse, const DistanceValue& fine, const std::string& what) {
    o.require(fine.within(coarse), what + " widened: " + coarse.str() + " -> " + fine.str());
    if (coarse.is_exact()) o.require(fine == coarse, what + " moved an exact value");
    ++brackets;
  };
  for (int i = 0; i < 100; ++i) {
    Term m = corpus::random_term(rng, 5);
    Term n = corpus::random_term(rng, 5);
    std::string pair = print(m) + " | " + print(n);
    auto b = p_bohm(m, n, 3, 40);
    monotone(b, p_bohm(m, n, 6, 40), "p_bohm depth at " + pair);
    monotone(b, p_bohm(m, n, 3, 80), "p_bohm fuel at " + pair);
    auto c = p_ctx_bracket(m, n, 12, 30);
    monotone(c, p_ctx_bracket(m, n, 24, 30), "p_ctx prefix at " + pair);
    monotone(c, p_ctx_bracket(m, n, 12, 60), "p_ctx fuel at " + pair);
  }
  o.detail << brackets << " bracket refinements";
}

using Criterion = void (*)(Outcome&, std::uint64_t);

const std::vector<std::pair<std::string, Criterion>>& registry() {
  static const std::vector<std::pair<std::string, Criterion>> r = {
      {"pmetric-axioms", criterion1}, {"order-capture", criterion2}, {"identities", criterion3},
      {"isometry", criterion4},       {"enumeration-isometry", criterion5}, {"commutation", criterion6},
      {"quantification", criterion7}, {"towers", criterion8},            {"genericity", criterion9},
      {"brackets", criterion10}};
  return r;
}

}  // namespace

std::vector<std::string> suite_names() {
  std::vector<std::string> out;
  for (const auto& [name, fn] : registry()) out.push_back(name);
  return out;
}

SuiteResult run_suite(const std::string& name, std::uint64_t seed) {
  for (const auto& [n, fn] : registry()) {
    if (n != name) continue;
    Outcome o;
    auto start = std::chrono::steady_clock::now();
    try {
      fn(o, seed);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    SuiteResult r;
    r.name = name;
    r.pass = o.pass;
    r.summary = o.detail.str();
    r.issues = o.issues;
    r.failures = o.failures;
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
  }
  throw std::invalid_argument("unknown suite '" + name + "'");
}

}  // namespace lpm::verify
