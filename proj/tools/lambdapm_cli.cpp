#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lambdapm/bohm.hpp"
#include "lambdapm/contextual.hpp"
#include "lambdapm/corpus.hpp"
#include "lambdapm/domains.hpp"
#include "lambdapm/intervals.hpp"
#include "lambdapm/pmetric.hpp"
#include "lambdapm/resource.hpp"
#include "lambdapm/taylor.hpp"
#include "lambdapm/verify.hpp"

using json = nlohmann::ordered_json;
using namespace lpm;

namespace {

// Signals exit status 2.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json integer_json(const Integer& n) {
  if (n >= std::numeric_limits<std::int64_t>::min() && n <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(n);
  return n.str();
}

json rational_json(const Rational& q) {
  json j;
  j["num"] = integer_json(numerator(q));
  if (auto k = dyadic_exponent(q))
    j["den_pow2"] = *k;
  else
    j["den"] = integer_json(denominator(q));
  return j;
}

json value_json(const DistanceValue& v) {
  json j;
  if (v.is_infinite()) {
    j["kind"] = "infinite";
  } else if (v.is_exact()) {
    j["kind"] = "exact";
    j.update(rational_json(v.value()));
  } else {
    j["kind"] = "bracket";
    j["lower"] = rational_json(v.lower());
    j["upper"] = v.upper_is_infinite() ? json(nullptr) : rational_json(v.upper());
  }
  return j;
}

json strings(const ResourceSet& s) {
  std::vector<std::string> out;
  for (const auto& t : s) out.push_back(print(t));
  std::sort(out.begin(), out.end());
  return out;
}

json path_json(const std::vector<std::vector<std::size_t>>& paths) {
  json j = json::array();
  for (const auto& p : paths) j.push_back(p);
  return j;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// A builtin name (sierpinski, chainN, flatN) or a JSON file
// {elements: [...], leq: [[...]], bottom: index or element}.
FinitePoset load_poset(const std::string& source) {
  std::smatch m;
  if (source == "sierpinski") return sierpinski();
  if (std::regex_match(source, m, std::regex("chain([0-9]+)"))) return chain(std::stoul(m[1]));
  if (std::regex_match(source, m, std::regex("flat([0-9]+)"))) return flat(std::stoul(m[1]));
  json j;
  try {
    j = json::parse(read_file(source));
  } catch (const json::exception& e) {
    throw InputError(source + ": " + e.what());
  }
  if (!j.is_object() || !j.contains("elements") || !j.contains("leq") || !j.contains("bottom"))
    throw InputError(source + ": expected {elements, leq, bottom}");
  std::vector<std::string> labels;
  for (const auto& e : j["elements"]) labels.push_back(e.is_string() ? e.get<std::string>() : e.dump());
  std::size_t n = labels.size();
  const auto& rows = j["leq"];
  if (!rows.is_array() || rows.size() != n) throw InputError(source + ": leq must be an n×n matrix");
  Relation leq(n, std::vector<bool>(n));
  for (std::size_t a = 0; a < n; ++a) {
    if (!rows[a].is_array() || rows[a].size() != n) throw InputError(source + ": leq must be an n×n matrix");
    for (std::size_t b = 0; b < n; ++b) {
      const auto& c = rows[a][b];
      if (c.is_boolean())
        leq[a][b] = c.get<bool>();
      else if (c.is_number_integer() && (c == 0 || c == 1))
        leq[a][b] = c == 1;
      else
        throw InputError(source + ": leq entries must be booleans or 0/1");
    }
  }
  std::size_t bottom = 0;
  const auto& b = j["bottom"];
  if (b.is_number_unsigned()) {
    bottom = b.get<std::size_t>();
  } else {
    std::string label = b.is_string() ? b.get<std::string>() : b.dump();
    auto it = std::find(labels.begin(), labels.end(), label);
    if (it == labels.end()) throw InputError(source + ": bottom is not an element");
    bottom = static_cast<std::size_t>(it - labels.begin());
  }
  if (bottom >= n) throw InputError(source + ": bottom out of range");
  if (auto err = validate(labels, leq, bottom)) throw InputError(source + ": " + *err);
  return FinitePoset(std::move(labels), std::move(leq), bottom);
}

MapTable parse_map(const std::string& text, const FinitePoset& x, const FinitePoset& y) {
  MapTable t;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    std::size_t v = 0;
    try {
      v = std::stoul(item);
    } catch (const std::exception&) {
      throw InputError("map entries must be element indices: '" + text + "'");
    }
    if (v >= y.size()) throw InputError("map value out of range: " + item);
    t.push_back(v);
  }
  if (t.size() != x.size()) throw InputError("map needs " + std::to_string(x.size()) + " entries");
  if (!is_monotone(x, y, t)) throw InputError("map is not monotone: '" + text + "'");
  return t;
}

Rational parse_theta(const std::string& s) {
  Rational theta = parse_rational(s);
  if (theta <= 0 || theta > Rational(1, 2)) throw InputError("theta must lie in (0, 1/2]");
  return theta;
}

FiniteSpace base_metric(const std::string& name, const FinitePoset& p) {
  return name == "sierpinski" ? sierpinski_space() : weighted_basis_space(p);
}

json axiom_report(const FiniteSpace& space, AxiomMode mode) {
  json out = json::array();
  for (const auto& v : check_axioms(space, mode)) {
    json w = json::array();
    for (auto i : v.witnesses) w.push_back(space.label(i));
    out.push_back({{"axiom", v.axiom}, {"witnesses", w}, {"lhs", rational_json(v.lhs)}, {"rhs", rational_json(v.rhs)}});
  }
  return out;
}

FiniteSpace named_space(const std::string& name, const std::string& poset, const std::string& theta,
                        std::uint64_t seed) {
  if (name == "ptree")
    return FiniteSpace::tabulate(corpus::small_partial_terms(), [](const auto& a, const auto& b) { return p_tree(a, b).value(); },
                                 [](const auto& a) { return print(a); });
  if (name == "sierpinski") return sierpinski_space();
  if (name == "intervals") {
    corpus::Rng rng(seed);
    std::vector<RationalInterval> fam;
    while (fam.size() < 12) {
      auto i = corpus::random_interval(rng);
      if (std::find(fam.begin(), fam.end(), i) == fam.end()) fam.push_back(i);
    }
    return FiniteSpace::tabulate(fam, [](const auto& a, const auto& b) { return p_int(a, b).value(); },
                                 [](const auto& a) { return to_string(a); });
  }
  if (name == "resource") {
    corpus::Rng rng(seed);
    std::vector<ResourceTerm> ts;
    while (ts.size() < 40) {
      auto t = corpus::random_normal_resource(rng, 3);
      if (std::none_of(ts.begin(), ts.end(), [&](const auto& u) { return same(t, u); })) ts.push_back(t);
    }
    return FiniteSpace::tabulate(ts, [](const auto& a, const auto& b) { return r_metric(a, b).value(); },
                                 [](const auto& a) { return print(a); });
  }
  if (name == "weighted-basis") return weighted_basis_space(load_poset(poset));
  if (name == "applicative") {
    auto p = load_poset(poset);
    return applicative_space(function_space(p, p), weighted_basis_space(p), parse_theta(theta));
  }
  if (name == "offset-control") return offset_control_space();
  throw InputError("unknown space '" + name +
                   "' (ptree, sierpinski, intervals, resource, weighted-basis, applicative, offset-control)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Partial metrics on λ-terms, resource terms and finite domains"};
  app.require_subcommand(1);
  std::string output;
  app.add_option("-o,--output", output, "Write the JSON report to this file");

  std::string term, m, n, a, b, center, cand, eps = "1/2", suite = "all", poset = "sierpinski", base, metric = "basis",
                                              space, mode = "pm", theta = "1/2", domain, codomain, f, g,
                                              order = "extension";
  std::size_t depth = 4, fuel = 1000, prefix = 12, mult = 2, height_bound = 4, raw_cap = 0, x = 0, y = 0;
  std::uint64_t seed = 0;
  bool partial = false, resource = false, rows = false;

  auto fuel_opt = [&](CLI::App* s) { s->add_option("--fuel", fuel, "Head-reduction fuel")->check(CLI::PositiveNumber); };
  auto term_opt = [&](CLI::App* s) { s->add_option("--term", term, "Input term")->required(); };

  auto* parse_cmd = app.add_subcommand("parse", "Parse and print a term");
  term_opt(parse_cmd);
  parse_cmd->add_flag("--partial", partial, "Partial-term syntax");
  parse_cmd->add_flag("--resource", resource, "Resource-term syntax");

  auto* reduce_cmd = app.add_subcommand("reduce", "β-normalize in normal order");
  term_opt(reduce_cmd);
  fuel_opt(reduce_cmd);

  auto* solvable_cmd = app.add_subcommand("solvable", "Head-reduce to decide solvability");
  term_opt(solvable_cmd);
  fuel_opt(solvable_cmd);

  auto* approx_cmd = app.add_subcommand("approximant", "Direct approximant");
  term_opt(approx_cmd);

  auto* bohm_cmd = app.add_subcommand("bohm", "Böhm tree truncated at a depth");
  term_opt(bohm_cmd);
  bohm_cmd->add_option("--depth", depth)->check(CLI::PositiveNumber);
  fuel_opt(bohm_cmd);

  auto* ptree_cmd = app.add_subcommand("ptree", "Tree partial metric on partial terms");
  ptree_cmd->add_option("--a", a)->required();
  ptree_cmd->add_option("--b", b)->required();

  auto* pbohm_cmd = app.add_subcommand("pbohm", "Böhm partial metric");
  pbohm_cmd->add_option("--m", m)->required();
  pbohm_cmd->add_option("--n", n)->required();
  pbohm_cmd->add_option("--depth", depth)->check(CLI::PositiveNumber);
  fuel_opt(pbohm_cmd);

  auto* pint_cmd = app.add_subcommand("pint", "Interval partial metric");
  pint_cmd->add_option("--a", a, "lo,hi")->required();
  pint_cmd->add_option("--b", b, "lo,hi")->required();

  auto* pctx_cmd = app.add_subcommand("pctx", "Contextual distance bracket");
  pctx_cmd->add_option("--m", m)->required();
  pctx_cmd->add_option("--n", n)->required();
  pctx_cmd->add_option("--prefix", prefix)->check(CLI::PositiveNumber);
  fuel_opt(pctx_cmd);

  auto* ball_cmd = app.add_subcommand("ctx-ball", "Contextual ball membership");
  ball_cmd->add_option("--center", center)->required();
  ball_cmd->add_option("--cand", cand)->required();
  ball_cmd->add_option("--eps", eps, "Radius, e.g. 1/2^3");
  fuel_opt(ball_cmd);

  auto* rreduce_cmd = app.add_subcommand("rreduce", "Resource reduction to the normal-form set");
  term_opt(rreduce_cmd);

  auto* rmetric_cmd = app.add_subcommand("rmetric", "Partial metric on normal resource terms");
  rmetric_cmd->add_option("--a", a)->required();
  rmetric_cmd->add_option("--b", b)->required();

  auto* taylor_cmd = app.add_subcommand("taylor", "Bounded Taylor expansion");
  term_opt(taylor_cmd);
  taylor_cmd->add_option("--mult", mult)->check(CLI::PositiveNumber);
  taylor_cmd->add_option("--height", height_bound)->check(CLI::PositiveNumber);

  auto* iso_cmd = app.add_subcommand("isometry", "Compare H*_r on Taylor fragments with p_tree");
  iso_cmd->add_option("--a", a)->required();
  iso_cmd->add_option("--b", b)->required();
  iso_cmd->add_option("--mult", mult)->check(CLI::PositiveNumber);
  iso_cmd->add_option("--order", order)->check(CLI::IsMember({"extension", "induced"}));

  auto* commute_cmd = app.add_subcommand("commute", "Taylor expansion against Böhm truncation");
  term_opt(commute_cmd);
  commute_cmd->add_option("--mult", mult)->check(CLI::PositiveNumber);
  commute_cmd->add_option("--height", height_bound)->check(CLI::PositiveNumber);
  commute_cmd->add_option("--raw-cap", raw_cap, "Largest raw bag bound to try");
  fuel_opt(commute_cmd);

  auto* enum_cmd = app.add_subcommand("enum-isometry", "Enumeration-based isometry prefix");
  enum_cmd->add_option("--a", a)->required();
  enum_cmd->add_option("--b", b)->required();
  enum_cmd->add_option("--prefix", prefix)->check(CLI::PositiveNumber);
  enum_cmd->add_flag("--rows", rows, "Include per-index rows");

  auto* tower_cmd = app.add_subcommand("tower", "Build the finite tower D_0 … D_K");
  tower_cmd->add_option("--base", base, "Poset file or sierpinski|chainN|flatN")->required();
  tower_cmd->add_option("--depth", depth)->check(CLI::PositiveNumber);

  auto* pexp_cmd = app.add_subcommand("pexp", "Applicative metric on monotone maps");
  pexp_cmd->add_option("--domain", domain)->required();
  pexp_cmd->add_option("--codomain", codomain)->required();
  pexp_cmd->add_option("--f", f, "Comma-separated codomain indices")->required();
  pexp_cmd->add_option("--g", g, "Comma-separated codomain indices")->required();
  pexp_cmd->add_option("--theta", theta);

  auto* pinf_cmd = app.add_subcommand("pinf", "Prefix bracket of p_∞ between two top-level elements");
  pinf_cmd->add_option("--base", base)->required();
  pinf_cmd->add_option("--depth", depth)->check(CLI::PositiveNumber);
  pinf_cmd->add_option("--x", x, "Index in D_K")->required();
  pinf_cmd->add_option("--y", y, "Index in D_K")->required();

  auto* quant_cmd = app.add_subcommand("quantify-check", "Ball topology against up-sets");
  quant_cmd->add_option("--poset", poset)->required();
  quant_cmd->add_option("--metric", metric)->check(CLI::IsMember({"basis", "applicative"}));
  quant_cmd->add_option("--theta", theta);

  auto* axioms_cmd = app.add_subcommand("check-axioms", "Exhaustive axiom check on a named space");
  axioms_cmd->add_option("--space", space)->required();
  axioms_cmd->add_option("--mode", mode)->check(CLI::IsMember({"pm", "ppm", "pum"}));
  axioms_cmd->add_option("--poset", poset, "For weighted-basis and applicative");
  axioms_cmd->add_option("--theta", theta);
  axioms_cmd->add_option("--seed", seed);

  auto* verify_cmd = app.add_subcommand("verify", "Run property suites");
  verify_cmd->add_option("--suite", suite, "Suite name or all");
  verify_cmd->add_option("--seed", seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  int status = 0;
  json report;
  try {
    auto* cmd = app.get_subcommands().front();
    std::string verb = cmd->get_name();
    if (verb == "parse") {
      if (partial) {
        auto p = parse_partial(term);
        report = {{"partial", print(p)}, {"height", height(p)}, {"nodes", node_count(p)}};
      } else if (resource) {
        auto r = parse_resource(term);
        report = {{"resource", print(r)}, {"height", height(r)}, {"normal", is_normal(r)}};
      } else {
        auto t = parse(term);
        report = {{"term", print(t)}, {"size", size(t)}, {"free", free_vars(t)}, {"key", canonical_key(t)}};
      }
    } else if (verb == "reduce") {
      auto nf = normalize(parse(term), fuel);
      report = {{"normal_form", nf ? json(print(*nf)) : json(nullptr)}, {"exhausted", !nf}};
    } else if (verb == "solvable") {
      auto s = solvability(parse(term), fuel);
      report = {{"status", to_string(s.status)}, {"steps", s.steps}};
      if (s.hnf) report["hnf"] = print(from_head_form(*s.hnf));
      if (s.divergent()) {
        report["cycle_start"] = s.cycle_start;
        report["cycle_length"] = s.cycle_length;
        report["witness"] = print(s.witness);
      }
    } else if (verb == "approximant") {
      report = {{"approximant", print(direct_approximant(parse(term)))}};
    } else if (verb == "bohm") {
      auto t = bohm_truncate(parse(term), depth, fuel);
      report = {{"tree", print(t.tree)}, {"depth", t.depth}, {"exact", t.exact}, {"tentative", path_json(t.tentative)}};
    } else if (verb == "ptree") {
      report = value_json(p_tree(parse_partial(a), parse_partial(b)));
    } else if (verb == "pbohm") {
      report = value_json(p_bohm(parse(m), parse(n), depth, fuel));
    } else if (verb == "pint") {
      report = value_json(p_int(parse_interval(a), parse_interval(b)));
    } else if (verb == "pctx") {
      auto v = p_ctx_bracket(parse(m), parse(n), prefix, fuel);
      report = {{"lower", rational_json(v.lower())}, {"upper", rational_json(v.upper())}};
    } else if (verb == "ctx-ball") {
      Rational e = parse_rational(eps);
      if (e <= 0) throw InputError("eps must be positive");
      report = {{"verdict", to_string(in_ctx_ball(parse(center), parse(cand), e, fuel))}};
    } else if (verb == "rreduce") {
      report = strings(resource_reduce(parse_resource(term)));
    } else if (verb == "rmetric") {
      report = value_json(r_metric(parse_resource(a), parse_resource(b)));
    } else if (verb == "taylor") {
      TaylorFragment frag;
      try {
        frag = taylor_expand(parse_partial(term), mult, height_bound);
      } catch (const std::exception&) {
        frag = taylor_of_term(parse(term), mult, height_bound);
      }
      report = {{"mult", mult}, {"height", height_bound}, {"count", frag.elements.size()}, {"elements", strings(frag.elements)}};
    } else if (verb == "isometry") {
      auto r = isometry_check(parse_partial(a), parse_partial(b), mult,
                              order == "induced" ? LiftOrder::Induced : LiftOrder::Extension);
      report = {{"lhs", value_json(r.lhs)}, {"rhs", value_json(r.rhs)}, {"equal", r.equal}, {"stable", r.stable}};
    } else if (verb == "commute") {
      auto r = commutation_check(parse(term), mult, height_bound, fuel, raw_cap);
      report = {{"equal", r.equal}, {"lhs_within_rhs", r.lhs_within_rhs}, {"raw_bound", r.raw_bound},
                {"lhs", strings(r.lhs)},   {"rhs", strings(r.rhs)}};
    } else if (verb == "enum-isometry") {
      auto r = enumeration_isometry(parse_partial(a), parse_partial(b), prefix);
      report = {{"p_p", value_json(r.p_p)}, {"p_b", value_json(r.p_b)}, {"gap", rational_json(r.gap)},
                {"tail", rational_json(r.tail)}, {"within", r.within}};
      if (rows) {
        json rs = json::array();
        for (const auto& row : r.rows)
          rs.push_back({{"n", row.n}, {"partial", row.partial}, {"p_b", rational_json(row.p_b)}, {"p_p", rational_json(row.p_p)}});
        report["rows"] = rs;
      }
    } else if (verb == "tower") {
      auto p = load_poset(base);
      Tower t(p, base_metric(base, p), depth);
      json sizes = json::array();
      for (std::size_t k = 0; k <= t.depth(); ++k) sizes.push_back(t.level(k).size());
      auto laws = t.check_laws();
      report = {{"sizes", sizes}, {"law_checks", laws.checks}, {"law_failures", laws.failures}};
    } else if (verb == "pexp") {
      auto px = load_poset(domain), py = load_poset(codomain);
      std::vector<std::size_t> basis(px.size());
      for (std::size_t i = 0; i < basis.size(); ++i) basis[i] = i;
      auto v = applicative_metric(weighted_basis_space(py), basis, parse_theta(theta), parse_map(f, px, py),
                                  parse_map(g, px, py));
      report = value_json(DistanceValue::exact(v));
    } else if (verb == "pinf") {
      auto p = load_poset(base);
      Tower t(p, base_metric(base, p), depth);
      std::size_t top = t.level(t.depth()).size();
      if (x >= top || y >= top) throw InputError("--x and --y must index D_" + std::to_string(t.depth()));
      auto px = profile_of(t, x), py = profile_of(t, y);
      report = {{"value", value_json(p_infinity_prefix(t, px, py))}, {"x", px.levels}, {"y", py.levels}};
    } else if (verb == "quantify-check") {
      auto p = load_poset(poset);
      QuantificationReport r;
      if (metric == "basis") {
        r = quantification_decision(p, weighted_basis_space(p));
      } else {
        auto fs = function_space(p, p);
        r = quantification_decision(fs, applicative_space(fs, weighted_basis_space(p), parse_theta(theta)));
      }
      report = {{"passed", r.passed()}, {"balls_are_up_sets", r.balls_are_up_sets},
                {"up_sets_are_open", r.up_sets_are_open}, {"witnesses", r.witnesses}};
    } else if (verb == "check-axioms") {
      report = axiom_report(named_space(space, poset, theta, seed), parse_axiom_mode(mode));
    } else if (verb == "verify") {
      std::vector<std::string> names = lpm::verify::suite_names();
      if (suite != "all") {
        if (std::find(names.begin(), names.end(), suite) == names.end()) throw InputError("unknown suite '" + suite + "'");
        names = {suite};
      }
      json results = json::array();
      for (const auto& name : names) {
        std::cerr << "running " << name << " (seed " << seed << ")" << std::endl;
        auto r = lpm::verify::run_suite(name, seed);
        results.push_back({{"suite", r.name}, {"pass", r.pass}, {"failures", r.failures}, {"summary", r.summary},
                           {"issues", r.issues}});
        if (!r.pass) status = 1;
      }
      report = {{"seed", seed}, {"suites", results}};
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  std::string text = report.dump() + "\n";
  if (output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(output);
    if (!out) {
      std::cerr << "error: cannot write '" << output << "'\n";
      return 2;
    }
    out << text;
  }
  return status;
}
