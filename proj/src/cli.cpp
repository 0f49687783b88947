#include "montest/cli.hpp"

#include <cmath>
#include <memory>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "montest/certificate.hpp"
#include "montest/distance.hpp"
#include "montest/errors.hpp"
#include "montest/hypercube.hpp"
#include "montest/testers.hpp"
#include "montest/witness.hpp"

namespace montest::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr const char* kFormatHelp = R"(Function literals use the truth-table format n:HEX, where HEX has
ceil(2^n/4) hex digits and table entry 0 (the all-zero input) is the least
significant bit. Coordinate x_j of an input is bit j-1 of its index.
Examples: 2:6 is XOR of two bits, 2:5 is NOT x_1, 3:E8 is majority of three.

Rationals are written p/q or p, e.g. --eps 1/4. Exact values in JSON output
are strings "num/den".)";

constexpr std::size_t kMaxReportedViolations = 100;

std::string fraction(const Rational& r) { return to_string(r); }

Json optional_count(const std::optional<std::uint64_t>& v) {
  return v ? Json(*v) : Json(nullptr);
}

Rational parse_eps(const std::string& text) {
  const auto eps = parse_rational(text);
  require_eps(eps);
  return eps;
}

std::vector<int> parse_dimensions(const std::string& text) {
  std::vector<int> dims;
  const auto dots = text.find("..");
  const auto to_int = [&](const std::string& s) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(s, &used);
      if (used != s.size()) throw InvalidInput("");
      return v;
    } catch (const std::exception&) {
      throw InvalidInput("bad dimension list '" + text + "'");
    }
  };
  if (dots != std::string::npos) {
    const int lo = to_int(text.substr(0, dots));
    const int hi = to_int(text.substr(dots + 2));
    if (lo > hi) throw InvalidInput("empty dimension range '" + text + "'");
    for (int n = lo; n <= hi; ++n) dims.push_back(n);
    return dims;
  }
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) dims.push_back(to_int(item));
  if (dims.empty()) throw InvalidInput("empty dimension list");
  return dims;
}

std::vector<Rational> parse_eps_list(const std::string& text) {
  std::vector<Rational> grid;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) grid.push_back(parse_eps(item));
  if (grid.empty()) throw InvalidInput("empty eps list");
  return grid;
}

void require_family_dimension(int n) {
  require_dimension(n);
  if (n > kMaxFamilyDimension) {
    throw UnsupportedSize("family-level commands support n <= " +
                          std::to_string(kMaxFamilyDimension) + ", got " + std::to_string(n));
  }
}

Json report_json(const FunctionFamilies& families, const FeasibilityReport& report) {
  Json j;
  j["n"] = families.n();
  j["eps"] = fraction(families.eps());
  j["sizeX"] = families.monotone().size();
  j["sizeY"] = families.far().size();
  j["mode"] = report.exact ? "exact" : "float";
  j["pairs_checked"] = report.pairs_checked;
  j["max_abs_deviation"] = report.max_abs_deviation;
  j["feasible"] = report.feasible();
  Json violations = Json::array();
  for (std::size_t i = 0; i < report.violations.size() && i < kMaxReportedViolations; ++i) {
    violations.push_back({format_function(report.violations[i].first),
                          format_function(report.violations[i].second)});
  }
  j["violation_count"] = report.violations.size();
  j["violations"] = violations;
  j["objective"] = report.objective;
  j["argmax_function"] = report.argmax ? Json(format_function(*report.argmax)) : Json(nullptr);
  j["K"] = report.k;
  j["L"] = report.l;
  if (report.explicit_check) {
    j["explicit_matrices"] = {
        {"matrices", report.explicit_check->matrices},
        {"max_entry_deviation", report.explicit_check->max_entry_deviation},
        {"min_eigenvalue", report.explicit_check->min_eigenvalue},
    };
  }
  return j;
}

struct Options {
  int threads = 1;
  std::string function;
  int n = 0;
  std::string eps;
  std::uint64_t trials = 10000;
  std::uint64_t seed = 0;
  std::string delta = "1/3";
  std::optional<double> k;
  std::optional<double> l;
  bool exact = false;
  bool optimize = false;
  std::string dims = "2..4";
  std::string eps_list = "1/16,1/8,3/16,1/4,3/8,1/2";
};

int dispatch(const std::string& command, const Options& o, std::ostream& out) {
  if (command == "influence") {
    const auto f = parse_function(o.function);
    Json j;
    j["function"] = format_function(f);
    j["n"] = f.dimension();
    j["influence"] = fraction(total_influence(f));
    j["edges_01"] = count_01_edges(f);
    j["edges_10"] = count_10_edges(f);
    j["monotone"] = is_monotone(f);
    out << j.dump() << '\n';
  } else if (command == "enumerate-monotone") {
    for (const auto& f : enumerate_monotone(o.n)) out << format_function(f) << '\n';
  } else if (command == "distance") {
    const auto f = parse_function(o.function);
    if (f.dimension() > kMaxMinCutDimension) {
      throw UnsupportedSize("distance supports n <= " + std::to_string(kMaxMinCutDimension));
    }
    Json j;
    j["function"] = format_function(f);
    j["n"] = f.dimension();
    j["distance_bruteforce"] = f.dimension() <= kMaxBruteForceDimension
                                   ? Json(fraction(distance_bruteforce(f)))
                                   : Json(nullptr);
    j["distance_mincut"] = fraction(distance_mincut(f));
    if (f.dimension() <= kMaxMatchingDimension) {
      const auto matching = max_violation_matching(f);
      j["matching_size"] = matching;
      j["matching_lower_bound"] =
          fraction(Rational(static_cast<std::int64_t>(matching), static_cast<std::int64_t>(f.size())));
    } else {
      j["matching_size"] = nullptr;
      j["matching_lower_bound"] = nullptr;
    }
    j["closest_monotone"] = format_function(closest_monotone(f));
    out << j.dump() << '\n';
  } else if (command == "enumerate-far") {
    const auto eps = parse_eps(o.eps);
    for (const auto& f : enumerate_eps_far(o.n, eps, o.threads)) {
      out << format_function(f) << '\n';
    }
  } else if (command == "test") {
    const auto f = parse_function(o.function);
    const auto delta = parse_rational(o.delta);
    if (delta <= Rational(0) || delta >= Rational(1)) {
      throw InvalidInput("delta must lie in (0, 1)");
    }
    if (o.trials < 1) throw InvalidInput("trials must be at least 1");
    const auto report = simulate_edge_tester(f, o.trials, o.seed, delta, o.threads);
    Json j;
    j["function"] = format_function(f);
    j["exact_reject_prob"] = fraction(report.exact_reject_prob);
    j["trials"] = report.trials;
    j["rejections"] = report.rejections;
    j["empirical_freq"] = fraction(report.empirical_freq);
    j["delta"] = fraction(delta);
    j["classical_queries"] = optional_count(report.classical_queries);
    j["quantum_queries"] = optional_count(report.quantum_queries);
    j["never_rejects"] = !report.classical_queries.has_value();
    j["rng_seed"] = report.rng_seed;
    out << j.dump() << '\n';
  } else if (command == "witness") {
    const auto f = parse_function(o.function);
    if (f.dimension() > kMaxMinCutDimension) {
      throw UnsupportedSize("witness supports n <= " + std::to_string(kMaxMinCutDimension));
    }
    const auto graph = build_witness(f);
    const auto ratio = lemma_ratio(f, graph);
    Json edge_list = Json::array();
    for (const auto& e : graph.edges) edge_list.push_back({e.lower.index(), e.upper.index()});
    Json j;
    j["function"] = format_function(f);
    j["n"] = f.dimension();
    j["max_degree"] = graph.max_degree;
    j["edge_count"] = graph.edge_count();
    j["edges"] = edge_list;
    j["score"] = graph.score;
    j["distance"] = fraction(ratio.distance);
    j["lemma_ratio_raw"] = ratio.raw;
    j["lemma_ratio_log_adjusted"] = ratio.log_adjusted;
    out << j.dump() << '\n';
  } else if (command == "certify") {
    require_family_dimension(o.n);
    const auto eps = parse_eps(o.eps);
    if (o.k.has_value() != o.l.has_value()) throw InvalidInput("--K and --L go together");
    if (o.k && (!(*o.k > 0.0) || !(*o.l > 0.0))) throw InvalidInput("K and L must be positive");
    if (o.optimize && o.k) throw InvalidInput("--optimize conflicts with --K/--L");
    if (o.n < 2 && !o.k) throw UnsupportedSize("n = 1 needs explicit --K and --L");
    auto families =
        std::make_shared<const FunctionFamilies>(FunctionFamilies::build(o.n, eps, o.threads));
    if (families->far().empty()) {
      throw EmptyFamily("no functions are " + fraction(eps) + "-far from monotone at n = " +
                        std::to_string(o.n));
    }
    double k = 0.0;
    double l = 0.0;
    if (o.optimize) {
      const auto result = optimize_kl(families, o.threads);
      k = result.k;
      l = result.l;
    } else if (o.k) {
      k = *o.k;
      l = *o.l;
    } else {
      const auto reference = reference_parameters(o.n, eps);
      k = reference.k;
      l = reference.l;
    }
    const AdversaryCertificate cert(families, k, l);
    VerifyOptions options;
    options.exact = o.exact;
    options.threads = o.threads;
    out << report_json(*families, verify_certificate(cert, options)).dump() << '\n';
  } else if (command == "sweep") {
    const auto dims = parse_dimensions(o.dims);
    for (const int n : dims) {
      if (n < 2 || n > kMaxFamilyDimension) {
        throw UnsupportedSize("sweep dimensions must lie in [2, " +
                              std::to_string(kMaxFamilyDimension) + "]");
      }
    }
    const auto grid = parse_eps_list(o.eps_list);
    out << sweep_csv(scaling_sweep(dims, grid, o.threads));
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact verification toolkit for monotonicity testing on the Boolean hypercube."};
  app.footer(kFormatHelp);
  app.require_subcommand(1, 1);
  Options o;
  app.add_option("--threads", o.threads, "Worker threads for enumeration and verification")
      ->check(CLI::Range(1, 256));

  auto* influence = app.add_subcommand("influence", "Total influence and edge counts of a function");
  influence->add_option("function", o.function, "Function literal n:HEX")->required();

  auto* monotone = app.add_subcommand("enumerate-monotone", "List all monotone functions (n <= 5)");
  monotone->add_option("-n,--n", o.n, "Dimension")->required();

  auto* distance = app.add_subcommand("distance", "Exact distance to monotonicity");
  distance->add_option("function", o.function, "Function literal n:HEX")->required();

  auto* far = app.add_subcommand("enumerate-far", "List all eps-far functions (n <= 4)");
  far->add_option("-n,--n", o.n, "Dimension")->required();
  far->add_option("--eps", o.eps, "Distance threshold p/q in (0, 1]")->required();

  auto* test = app.add_subcommand("test", "Simulate the edge tester");
  test->add_option("function", o.function, "Function literal n:HEX")->required();
  test->add_option("--trials", o.trials, "Number of sampled edges");
  test->add_option("--seed", o.seed, "Generator seed");
  test->add_option("--delta", o.delta, "Failure probability p/q for the query estimate");

  auto* witness = app.add_subcommand("witness", "Bipartite witness graph of 10-edges");
  witness->add_option("function", o.function, "Function literal n:HEX")->required();

  auto* certify = app.add_subcommand(
      "certify",
      "Build and verify the adversary certificate for (monotone, eps-far). Without --K/--L "
      "the closed-form K, L are used. --exact checks constraints in rational arithmetic at "
      "K = L = 1 (the identity does not depend on K, L); the objective is reported at K, L.");
  certify->add_option("-n,--n", o.n, "Dimension (n <= 4)")->required();
  certify->add_option("--eps", o.eps, "Distance threshold p/q in (0, 1]")->required();
  certify->add_option("--K", o.k, "Scalar K > 0");
  certify->add_option("--L", o.l, "Scalar L > 0");
  certify->add_flag("--exact", o.exact, "Rational-arithmetic constraint check");
  certify->add_flag("--optimize", o.optimize, "Use K, L from the golden-section optimizer");

  auto* sweep = app.add_subcommand("sweep", "Optimized objective over a (n, eps) grid as CSV");
  sweep->add_option("-n,--n", o.dims, "Dimensions: a..b or a,b,c (2 <= n <= 4)");
  sweep->add_option("--eps", o.eps_list, "Comma-separated eps values p/q");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    return dispatch(command, o, out);
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomainError;
  }
}

}  // namespace montest::cli
