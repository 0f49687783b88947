#include <memory>
#include <optional>
#include <sstream>

#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "montest/certificate.hpp"
#include "montest/cli.hpp"
#include "montest/distance.hpp"
#include "montest/errors.hpp"
#include "montest/hypercube.hpp"
#include "montest/testers.hpp"
#include "montest/witness.hpp"

namespace py = pybind11;
using namespace montest;

// Rational <-> fractions.Fraction. Ints and "p/q" strings are accepted too.
namespace pybind11::detail {
template <>
struct type_caster<Rational> {
  PYBIND11_TYPE_CASTER(Rational, const_name("fractions.Fraction"));

  bool load(handle src, bool) {
    if (!src) return false;
    try {
      if (py::isinstance<py::str>(src)) {
        value = parse_rational(src.cast<std::string>());
        return true;
      }
      if (py::isinstance<py::float_>(src)) return false;
      if (!py::hasattr(src, "numerator") || !py::hasattr(src, "denominator")) return false;
      const auto num = src.attr("numerator").cast<std::int64_t>();
      const auto den = src.attr("denominator").cast<std::int64_t>();
      value = Rational(num, den);
      return true;
    } catch (const std::exception&) {
      return false;
    }
  }

  static handle cast(const Rational& r, return_value_policy, handle) {
    static py::object fraction = py::module_::import("fractions").attr("Fraction");
    return fraction(r.numerator(), r.denominator()).release();
  }
};
}  // namespace pybind11::detail

namespace {

std::shared_ptr<const FunctionFamilies> build_families(int n, const Rational& eps, int threads) {
  return std::make_shared<const FunctionFamilies>(FunctionFamilies::build(n, eps, threads));
}

py::dict report_dict(const FeasibilityReport& r) {
  py::dict d;
  d["mode"] = r.exact ? "exact" : "float";
  d["pairs_checked"] = r.pairs_checked;
  d["max_abs_deviation"] = r.max_abs_deviation;
  d["feasible"] = r.feasible();
  py::list violations;
  for (const auto& [f, g] : r.violations) violations.append(py::make_tuple(f, g));
  d["violations"] = violations;
  d["objective"] = r.objective;
  d["argmax"] = r.argmax;
  d["K"] = r.k;
  d["L"] = r.l;
  if (r.explicit_check) {
    py::dict e;
    e["matrices"] = r.explicit_check->matrices;
    e["max_entry_deviation"] = r.explicit_check->max_entry_deviation;
    e["min_eigenvalue"] = r.explicit_check->min_eigenvalue;
    d["explicit_matrices"] = e;
  }
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Monotonicity testing on the Boolean hypercube: exact distances, testers, "
            "witness graphs and adversary certificates.";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<InvalidInput>(m, "InvalidInput", PyExc_ValueError);
  py::register_exception<NoViolations>(m, "NoViolations", base.ptr());
  py::register_exception<EmptyFamily>(m, "EmptyFamily", base.ptr());
  py::register_exception<NotInFamily>(m, "NotInFamily", base.ptr());
  py::register_exception<ConsistencyError>(m, "ConsistencyError", base.ptr());

  py::class_<BooleanFunction>(m, "BooleanFunction")
      .def(py::init([](const std::string& literal) { return parse_function(literal); }),
           py::arg("literal"))
      .def_static("from_table", [](int n, const std::vector<bool>& t) {
        return BooleanFunction::from_table(n, t);
      })
      .def_static("constant", &BooleanFunction::constant)
      .def_static("dictator", &BooleanFunction::dictator)
      .def_static("anti_dictator", &BooleanFunction::anti_dictator)
      .def_static("parity", &BooleanFunction::parity)
      .def_static("majority", &BooleanFunction::majority)
      .def_property_readonly("n", &BooleanFunction::dimension)
      .def("__len__", &BooleanFunction::size)
      .def("__call__", [](const BooleanFunction& f, std::uint32_t x) {
        if (x >= f.size()) throw InvalidInput("point index out of range");
        return f(x);
      })
      .def("table", [](const BooleanFunction& f) {
        std::vector<bool> out(f.size());
        for (std::uint32_t x = 0; x < f.size(); ++x) out[x] = f(x);
        return out;
      })
      .def("__str__", &format_function)
      .def("__repr__", [](const BooleanFunction& f) {
        return "BooleanFunction('" + format_function(f) + "')";
      })
      .def(py::self == py::self)
      .def("__hash__", [](const BooleanFunction& f) {
        return py::hash(py::str(format_function(f)));
      });

  m.def("parse_function", &parse_function);
  m.def("format_function", &format_function);
  m.def("is_monotone", &is_monotone);
  m.def("total_influence", &total_influence);
  m.def("count_01_edges", &count_01_edges);
  m.def("count_10_edges", &count_10_edges);
  m.def("enumerate_monotone", &enumerate_monotone, py::arg("n"));

  m.def("distance_bruteforce", &distance_bruteforce);
  m.def("distance_mincut", &distance_mincut);
  m.def("closest_monotone", &closest_monotone);
  m.def("max_violation_matching", &max_violation_matching);
  m.def("is_eps_far", &is_eps_far, py::arg("f"), py::arg("eps"));
  m.def("enumerate_eps_far", &enumerate_eps_far, py::arg("n"), py::arg("eps"),
        py::arg("threads") = 1);

  m.def("edge_reject_prob", &edge_reject_prob);
  m.def(
      "simulate_edge_tester",
      [](const BooleanFunction& f, std::uint64_t trials, std::uint64_t seed, const Rational& delta,
         int threads) {
        const auto r = simulate_edge_tester(f, trials, seed, delta, threads);
        py::dict d;
        d["exact_reject_prob"] = r.exact_reject_prob;
        d["trials"] = r.trials;
        d["rejections"] = r.rejections;
        d["empirical_freq"] = r.empirical_freq;
        d["classical_queries"] = r.classical_queries;
        d["quantum_queries"] = r.quantum_queries;
        d["rng_seed"] = r.rng_seed;
        return d;
      },
      py::arg("f"), py::arg("trials") = 10000, py::arg("seed") = 0,
      py::arg("delta") = kDefaultDelta, py::arg("threads") = 1);
  m.def("classical_query_estimate", &classical_query_estimate, py::arg("p"),
        py::arg("delta") = kDefaultDelta);
  m.def("amplified_query_estimate", &amplified_query_estimate, py::arg("p"));

  py::class_<WitnessGraph>(m, "WitnessGraph")
      .def_readonly("n", &WitnessGraph::n)
      .def_readonly("max_degree", &WitnessGraph::max_degree)
      .def_readonly("score", &WitnessGraph::score)
      .def_property_readonly("edges",
                             [](const WitnessGraph& g) {
                               std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
                               for (const auto& e : g.edges) {
                                 out.emplace_back(e.lower.index(), e.upper.index());
                               }
                               return out;
                             })
      .def("__len__", &WitnessGraph::edge_count)
      .def("degrees", &WitnessGraph::degrees);
  m.def("build_witness", &build_witness);
  m.def("max_edges_with_degree_cap", &max_edges_with_degree_cap, py::arg("f"), py::arg("cap"));
  m.def("is_valid_witness", [](const BooleanFunction& f, const WitnessGraph& g) {
    return is_valid_witness(f, g);
  });
  m.def("lemma_ratio", [](const BooleanFunction& f, const WitnessGraph& g) {
    const auto r = lemma_ratio(f, g);
    py::dict d;
    d["distance"] = r.distance;
    d["raw"] = r.raw;
    d["log_adjusted"] = r.log_adjusted;
    return d;
  });

  m.def("reference_parameters", [](int n, const Rational& eps) {
    const auto p = reference_parameters(n, eps);
    return py::make_tuple(p.k, p.l);
  });
  m.def(
      "certify",
      [](int n, const Rational& eps, std::optional<double> k, std::optional<double> l, bool exact,
         int threads) {
        if (k.has_value() != l.has_value()) throw InvalidInput("K and L go together");
        const auto fam = build_families(n, eps, threads);
        if (!k) {
          const auto p = reference_parameters(n, eps);
          k = p.k;
          l = p.l;
        }
        VerifyOptions options;
        options.exact = exact;
        options.threads = threads;
        auto d = report_dict(verify_certificate(AdversaryCertificate(fam, *k, *l), options));
        d["sizeX"] = fam->monotone().size();
        d["sizeY"] = fam->far().size();
        return d;
      },
      py::arg("n"), py::arg("eps"), py::arg("K") = py::none(), py::arg("L") = py::none(),
      py::arg("exact") = false, py::arg("threads") = 1);
  m.def(
      "optimize_kl",
      [](int n, const Rational& eps, int threads) {
        const auto r = optimize_kl(build_families(n, eps, threads), threads);
        py::dict d;
        d["K"] = r.k;
        d["L"] = r.l;
        d["objective"] = r.objective;
        d["reference_K"] = r.reference.k;
        d["reference_L"] = r.reference.l;
        d["paper_objective"] = r.paper_objective;
        d["evaluations"] = r.evaluations;
        d["report"] = report_dict(r.report);
        return d;
      },
      py::arg("n"), py::arg("eps"), py::arg("threads") = 1);
  m.def(
      "sweep_csv",
      [](const std::vector<int>& dims, const std::vector<Rational>& eps, int threads) {
        return sweep_csv(scaling_sweep(dims, eps, threads));
      },
      py::arg("dims"), py::arg("eps"), py::arg("threads") = 1);

  m.def(
      "run_cli",
      [](std::vector<std::string> args) {
        args.insert(args.begin(), "montest");
        std::ostringstream out;
        std::ostringstream err;
        const int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Run a command-line invocation; returns (exit_code, stdout, stderr).");
}
