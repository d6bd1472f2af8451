#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lambdapm/bohm.hpp"
#include "lambdapm/contextual.hpp"
#include "lambdapm/domains.hpp"
#include "lambdapm/intervals.hpp"
#include "lambdapm/pmetric.hpp"
#include "lambdapm/resource.hpp"
#include "lambdapm/taylor.hpp"
#include "lambdapm/verify.hpp"

namespace py = pybind11;
using namespace lpm;

namespace {

py::object fraction(const Rational& q) {
  static py::object cls = py::module_::import("fractions").attr("Fraction");
  return cls(py::int_(py::str(numerator(q).str())), py::int_(py::str(denominator(q).str())));
}

// Exact values become Fractions, +∞ becomes math.inf, a bracket becomes a
// (lower, upper) tuple with None for an infinite upper end.
py::object value(const DistanceValue& v) {
  if (v.is_exact()) return fraction(v.value());
  if (v.is_infinite()) return py::float_(std::numeric_limits<double>::infinity());
  return py::make_tuple(fraction(v.lower()), v.upper_is_infinite() ? py::none() : fraction(v.upper()));
}

Rational rational(const py::handle& q) {
  if (py::isinstance<py::str>(q)) return parse_rational(q.cast<std::string>());
  py::object f = py::module_::import("fractions").attr("Fraction")(q);
  return Rational(Integer(py::str(f.attr("numerator")).cast<std::string>()),
                  Integer(py::str(f.attr("denominator")).cast<std::string>()));
}

std::vector<std::string> strings(const ResourceSet& s) {
  std::vector<std::string> out;
  for (const auto& t : s) out.push_back(print(t));
  std::sort(out.begin(), out.end());
  return out;
}

FinitePoset poset(const std::vector<std::vector<bool>>& leq, std::size_t bottom) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < leq.size(); ++i) labels.push_back(std::to_string(i));
  return FinitePoset(labels, leq, bottom);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Partial metrics on λ-terms, resource terms and finite domains";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<CapExceeded>(m, "CapExceeded", PyExc_RuntimeError);

  m.def("normalize_term", [](const std::string& t) { return print(parse(t)); }, py::arg("term"));
  m.def("reduce", [](const std::string& t, std::size_t fuel) -> std::optional<std::string> {
        auto nf = normalize(parse(t), fuel);
        if (!nf) return std::nullopt;
        return print(*nf);
      }, py::arg("term"), py::arg("fuel") = 1000);
  m.def("solvable", [](const std::string& t, std::size_t fuel) { return to_string(solvability(parse(t), fuel).status); },
        py::arg("term"), py::arg("fuel") = 1000);
  m.def("approximant", [](const std::string& t) { return print(direct_approximant(parse(t))); }, py::arg("term"));
  m.def("bohm", [](const std::string& t, std::size_t depth, std::size_t fuel) {
        auto b = bohm_truncate(parse(t), depth, fuel);
        return py::make_tuple(print(b.tree), b.exact);
      }, py::arg("term"), py::arg("depth"), py::arg("fuel") = 1000,
      "The truncated Böhm tree and whether it is certified.");
  m.def("partial_leq", [](const std::string& a, const std::string& b) { return partial_leq(parse_partial(a), parse_partial(b)); });
  m.def("p_tree", [](const std::string& a, const std::string& b) { return value(p_tree(parse_partial(a), parse_partial(b))); });
  m.def("p_bohm", [](const std::string& a, const std::string& b, std::size_t depth, std::size_t fuel) {
        return value(p_bohm(parse(a), parse(b), depth, fuel));
      }, py::arg("m"), py::arg("n"), py::arg("depth"), py::arg("fuel") = 1000);
  m.def("p_int", [](const std::string& a, const std::string& b) {
        return value(p_int(parse_interval(a), parse_interval(b)));
      });
  m.def("p_ctx", [](const std::string& a, const std::string& b, std::size_t prefix, std::size_t fuel) {
        return value(p_ctx_bracket(parse(a), parse(b), prefix, fuel));
      }, py::arg("m"), py::arg("n"), py::arg("prefix"), py::arg("fuel") = 1000);
  m.def("ctx_ball", [](const std::string& c, const std::string& t, const py::object& eps, std::size_t fuel) {
        return to_string(in_ctx_ball(parse(c), parse(t), rational(eps), fuel));
      }, py::arg("center"), py::arg("candidate"), py::arg("eps"), py::arg("fuel") = 1000);
  m.def("rreduce", [](const std::string& t) { return strings(resource_reduce(parse_resource(t))); }, py::arg("term"));
  m.def("r_metric", [](const std::string& a, const std::string& b) {
        return value(r_metric(parse_resource(a), parse_resource(b)));
      });
  m.def("taylor", [](const std::string& a, std::size_t mult, std::size_t height) {
        return strings(taylor_expand(parse_partial(a), mult, height).elements);
      }, py::arg("partial"), py::arg("mult"), py::arg("height"));
  m.def("isometry", [](const std::string& a, const std::string& b, std::size_t mult) {
        auto r = isometry_check(parse_partial(a), parse_partial(b), mult);
        return py::make_tuple(value(r.lhs), value(r.rhs));
      }, py::arg("a"), py::arg("b"), py::arg("mult"), "(H*_r on the Taylor fragments, p_tree)");
  m.def("commute", [](const std::string& t, std::size_t mult, std::size_t height, std::size_t fuel) {
        return commutation_check(parse(t), mult, height, fuel).equal;
      }, py::arg("term"), py::arg("mult"), py::arg("height"), py::arg("fuel") = 1000);

  m.def("check_axioms", [](const std::vector<std::vector<py::object>>& table, const std::string& mode) {
        std::vector<std::string> labels;
        std::vector<std::vector<Rational>> t;
        for (std::size_t i = 0; i < table.size(); ++i) {
          labels.push_back(std::to_string(i));
          std::vector<Rational> row;
          for (const auto& q : table[i]) row.push_back(rational(q));
          t.push_back(row);
        }
        py::list out;
        for (const auto& v : check_axioms(FiniteSpace(labels, t), parse_axiom_mode(mode)))
          out.append(py::make_tuple(v.axiom, v.witnesses));
        return out;
      }, py::arg("table"), py::arg("mode") = "pm",
      "Violations as (axiom, witness indices) for a square table of rationals.");
  m.def("quantifies", [](const std::vector<std::vector<bool>>& leq, std::size_t bottom) {
        auto p = poset(leq, bottom);
        return quantification_decision(p, weighted_basis_space(p)).passed();
      }, py::arg("leq"), py::arg("bottom") = 0,
      "Whether the weighted-basis metric quantifies the up-set topology.");
  m.def("tower_sizes", [](const std::vector<std::vector<bool>>& leq, std::size_t bottom, std::size_t depth) {
        auto p = poset(leq, bottom);
        Tower t(p, weighted_basis_space(p), depth);
        std::vector<std::size_t> sizes;
        for (std::size_t k = 0; k <= t.depth(); ++k) sizes.push_back(t.level(k).size());
        return sizes;
      }, py::arg("leq"), py::arg("bottom"), py::arg("depth"));

  m.def("suites", &verify::suite_names);
  m.def("verify", [](const std::string& name, std::uint64_t seed) {
        verify::SuiteResult r;
        {
          py::gil_scoped_release release;
          r = verify::run_suite(name, seed);
        }
        return py::make_tuple(r.pass, r.summary);
      }, py::arg("suite"), py::arg("seed") = 0);
}
