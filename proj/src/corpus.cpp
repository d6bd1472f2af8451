#include "lambdapm/corpus.hpp"

#include <algorithm>
#include <set>

#include "lambdapm/taylor.hpp"

namespace lpm::corpus {

namespace {

const char* const kBinders[] = {"x", "y", "z", "w"};

Term term_rec(Rng& rng, std::size_t depth, std::vector<std::string>& scope, const std::vector<std::string>& free) {
  std::uniform_int_distribution<int> kind(0, 9);
  int k = depth == 0 ? 0 : kind(rng);
  if (k < 3) {
    std::vector<std::string> names = free;
    names.insert(names.end(), scope.begin(), scope.end());
    if (names.empty()) names.push_back("x");
    std::uniform_int_distribution<std::size_t> pick(0, names.size() - 1);
    return var(names[pick(rng)]);
  }
  if (k < 6) {
    std::uniform_int_distribution<std::size_t> pick(0, 3);
    std::string b = kBinders[pick(rng)];
    scope.push_back(b);
    Term body = term_rec(rng, depth - 1, scope, free);
    scope.pop_back();
    return lam(b, body);
  }
  Term f = term_rec(rng, depth - 1, scope, free);
  Term a = term_rec(rng, depth - 1, scope, free);
  return app(f, a);
}

PartialTerm partial_rec(Rng& rng, std::size_t height, std::size_t enclosing, std::size_t max_arity) {
  std::uniform_int_distribution<std::size_t> binders(0, enclosing == 0 ? 1 : 0);
  std::size_t m = binders(rng);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < m; ++i) names.push_back(kBinders[(enclosing + i + 2) % 4]);
  std::size_t scope = enclosing + m;
  std::uniform_int_distribution<std::size_t> head(0, 1 + scope);
  std::size_t h = head(rng);
  VarRef ref = h < 2 ? VarRef{-1, h == 0 ? "x" : "y"} : VarRef{static_cast<int>(h - 2), ""};
  std::uniform_int_distribution<std::size_t> arity(0, height > 1 ? max_arity : 0);
  std::bernoulli_distribution bottom(0.25);
  std::vector<PartialTerm> args;
  for (std::size_t n = arity(rng); n > 0; --n)
    args.push_back(bottom(rng) ? PartialTerm::bottom() : partial_rec(rng, height - 1, scope, max_arity));
  return PartialTerm::node(names, ref, std::move(args));
}

ResourceTerm resource_rec(Rng& rng, std::size_t height, std::size_t enclosing, std::size_t max_bag) {
  std::uniform_int_distribution<std::size_t> binders(0, enclosing == 0 ? 1 : 0);
  std::size_t m = binders(rng);
  std::size_t scope = enclosing + m;
  std::uniform_int_distribution<std::size_t> head(0, 1 + scope);
  std::size_t h = head(rng);
  ResourceTerm t = rvar(h < 2 ? VarRef{-1, h == 0 ? "x" : "y"} : VarRef{static_cast<int>(h - 2), ""});
  std::uniform_int_distribution<std::size_t> nbags(0, 2);
  std::uniform_int_distribution<std::size_t> bag_size(0, height > 1 ? max_bag : 0);
  for (std::size_t b = nbags(rng); b > 0; --b) {
    std::vector<ResourceTerm> bag;
    for (std::size_t k = bag_size(rng); k > 0; --k) bag.push_back(resource_rec(rng, height - 1, scope, max_bag));
    t = rapp(t, std::move(bag));
  }
  for (std::size_t i = m; i > 0; --i) t = rlam(kBinders[(enclosing + i + 1) % 4], t);
  return t;
}

}  // namespace

Term random_term(Rng& rng, std::size_t max_depth, const std::vector<std::string>& free) {
  std::vector<std::string> scope;
  return term_rec(rng, max_depth, scope, free);
}

PartialTerm random_partial(Rng& rng, std::size_t max_height, std::size_t max_arity) {
  if (max_height == 0) return PartialTerm::bottom();
  return partial_rec(rng, max_height, 0, max_arity);
}

ResourceTerm random_normal_resource(Rng& rng, std::size_t max_height, std::size_t max_bag) {
  return resource_rec(rng, std::max<std::size_t>(max_height, 1), 0, max_bag);
}

RationalInterval random_interval(Rng& rng, int range) {
  std::uniform_int_distribution<int> d(-range, range);
  int a = d(rng), b = d(rng);
  if (a > b) std::swap(a, b);
  return {Rational(a, 2), Rational(b, 2)};
}

std::vector<PartialTerm> small_partial_terms() {
  // Root labels; trees are built by node count.
  struct Label {
    std::vector<std::string> binders;
    VarRef head;
    std::size_t arity;
  };
  const std::vector<Label> labels = {
      {{}, {-1, "x"}, 0}, {{}, {-1, "x"}, 1}, {{}, {-1, "y"}, 2}, {{"z"}, {0, ""}, 1}};
  std::vector<std::vector<PartialTerm>> by_nodes(4);  // exactly k nodes
  by_nodes[0].push_back(PartialTerm::bottom());
  for (std::size_t k = 1; k <= 3; ++k)
    for (const auto& l : labels) {
      // Distribute k − 1 nodes over the arguments.
      auto rec = [&](auto&& self, std::size_t i, std::size_t left, std::vector<PartialTerm>& args) -> void {
        if (i == l.arity) {
          if (left == 0) by_nodes[k].push_back(PartialTerm::node(l.binders, l.head, args));
          return;
        }
        for (std::size_t n = 0; n <= left; ++n)
          for (const auto& a : by_nodes[n]) {
            args.push_back(a);
            self(self, i + 1, left - n, args);
            args.pop_back();
          }
      };
      std::vector<PartialTerm> args;
      rec(rec, 0, k - 1, args);
    }
  std::vector<PartialTerm> out;
  for (const auto& layer : by_nodes) out.insert(out.end(), layer.begin(), layer.end());
  for (const char* s : {"x (x (x x))", "x (x (x _|_))", "\\z.z (x (x x))", "y (x (x x)) x", "y (x (x _|_)) (\\z.z x)"})
    if (std::find(out.begin(), out.end(), parse_partial(s)) == out.end()) out.push_back(parse_partial(s));
  return out;
}

bool is_chain(const PartialTerm& a) { return height(a) >= 4; }

std::vector<Term> bohm_terms() {
  std::vector<Term> out;
  for (const char* s : {
           "\\x.x",
           "x",
           "\\x.\\y.x y",
           "(\\x.x) (\\y.y)",
           "(\\x.\\y.x) z ((\\x.x x) (\\x.x x))",
           "\\x.x ((\\y.y) z)",
           "\\f.f (f x)",
           "(\\x.x x) (\\y.y)",
           "y ((\\x.x) z) (\\w.w)",
           "(\\f.\\x.f (f x)) (\\y.y)",
           "(\\x.x x) (\\x.x x)",
           "\\x.x ((\\x.x x) (\\x.x x))",
           "y (\\z.z) ((\\x.x x) (\\x.x x))",
           "(\\f.(\\x.f (x x)) (\\x.f (x x))) (\\f.\\x.x f)",
           "\\x.\\y.y x",
           "(\\x.\\y.y x) z",
       })
    out.push_back(parse(s));
  return out;
}

std::vector<Term> normalizing_terms(Rng& rng, std::size_t count, std::size_t height, std::size_t fuel,
                                    std::size_t mult, std::size_t size_limit) {
  std::vector<Term> out;
  std::set<std::string> seen;
  for (std::size_t attempts = 0; out.size() < count; ++attempts) {
    if (attempts > 200000) throw std::runtime_error("could not generate enough normalizing terms");
    Term t = random_term(rng, 4, {"x", "y"});
    if (size(t) < 3 || !seen.insert(canonical_key(t)).second) continue;
    if (!normalize(t, fuel)) continue;
    if (!bohm_truncate(t, height, fuel).exact) continue;
    if (raw_expansion_bound(t, 2 * mult + 2) > static_cast<double>(size_limit)) continue;
    out.push_back(t);
  }
  return out;
}

}  // namespace lpm::corpus
