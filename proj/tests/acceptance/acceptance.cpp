// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "../unit/oracles.hpp"
#include "montest/certificate.hpp"
#include "montest/distance.hpp"
#include "montest/errors.hpp"
#include "montest/hypercube.hpp"
#include "montest/testers.hpp"
#include "montest/witness.hpp"

namespace {

using namespace montest;

struct Outcome {
  bool pass = true;
  std::string detail;
};

void fail(Outcome& o, const std::string& why) {
  if (o.pass) o.detail = why;
  o.pass = false;
}

std::shared_ptr<const FunctionFamilies> families(int n, const Rational& eps) {
  return std::make_shared<const FunctionFamilies>(FunctionFamilies::build(n, eps));
}

Outcome feasibility_identity() {
  Outcome o;
  const std::vector<std::pair<int, Rational>> cases = {
      {2, Rational(1, 2)}, {3, Rational(1, 8)}, {3, Rational(1, 4)}, {3, Rational(1, 2)}};
  std::ostringstream detail;
  for (const auto& [n, eps] : cases) {
    const auto fam = families(n, eps);
    const auto reference = reference_parameters(n, eps);
    const AdversaryCertificate at_reference(fam, reference.k, reference.l);
    const auto s = exact_scaling();
    std::size_t pairs = 0;
    double worst_float = 0.0;
    for (std::size_t g = 0; g < fam->far().size(); ++g) {
      for (std::size_t f = 0; f < fam->monotone().size(); ++f) {
        const MemberRef fx{Side::kMonotone, f};
        const MemberRef gy{Side::kFar, g};
        if (constraint_value(at_reference, s, fx, gy) != Rational(1)) {
          fail(o, "exact constraint != 1 at n = " + std::to_string(n));
        }
        worst_float = std::max(
            worst_float, std::abs(constraint_value(at_reference, at_reference.scaling(), fx, gy) - 1.0));
        ++pairs;
      }
    }
    if (worst_float > 1e-9) fail(o, "float deviation above 1e-9 at n = " + std::to_string(n));
    if (n == 2 && pairs != 12) fail(o, "expected 12 pairs at n = 2");
    if (pairs > 4720) fail(o, "more than 4720 pairs at n = 3");
    detail << "n=" << n << " eps=" << to_string(eps) << ": " << pairs << " pairs, float dev "
           << worst_float << "; ";
  }
  if (o.pass) o.detail = detail.str();
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  std::size_t checked = 0;
  for (int n = 2; n <= 3; ++n) {
    oracle::for_each_table(n, [&](const BooleanFunction& f) {
      if (distance_mincut(f) != distance_bruteforce(f)) fail(o, "mismatch at " + format_function(f));
      ++checked;
    });
  }
  if (checked != 16 + 256) fail(o, "wrong table count");
  if (o.pass) o.detail = std::to_string(checked) + " functions, exact equality";
  return o;
}

Outcome influence_bound() {
  Outcome o;
  std::ostringstream detail;
  for (int n = 1; n <= 5; ++n) {
    const auto mono = enumerate_monotone(n);
    Rational worst(0);
    for (const auto& f : mono) {
      const auto i = total_influence(f);
      worst = std::max(worst, i * i);
      if (i * i > Rational(n)) fail(o, "I^2 > n for " + format_function(f));
    }
    detail << "n=" << n << ": " << mono.size() << " monotone, max I^2 = " << to_string(worst)
           << "; ";
  }
  if (enumerate_monotone(5).size() != 7581) fail(o, "expected 7581 monotone functions at n = 5");
  if (o.pass) o.detail = detail.str();
  return o;
}

Outcome diagonal_formulas() {
  Outcome o;
  std::size_t members = 0;
  for (const auto& eps : {Rational(1, 8), Rational(1, 4), Rational(1, 2)}) {
    const auto fam = families(3, eps);
    const AdversaryCertificate cert(fam, 1.0, 1.0);
    for (const auto& s : {exact_scaling(), exact_scaling(Rational(3, 2), Rational(2, 7))}) {
      for (std::size_t i = 0; i < cert.member_count(); ++i) {
        const bool far = i >= fam->monotone().size();
        const MemberRef ref{far ? Side::kFar : Side::kMonotone,
                            far ? i - fam->monotone().size() : i};
        if (diagonal_value(cert, s, ref) != diagonal_bruteforce(cert, s, ref)) {
          fail(o, "closed form differs for " + format_function(cert.function(ref)));
        }
        ++members;
      }
    }
  }
  if (o.pass) o.detail = std::to_string(members) + " member diagonals equal exactly";
  return o;
}

Outcome tester_statistics() {
  Outcome o;
  const auto f = BooleanFunction::anti_dictator(3, 1);
  const auto a = simulate_edge_tester(f, 100000, 20251014);
  const auto b = simulate_edge_tester(f, 100000, 20251014);
  const double freq = to_double(a.empirical_freq);
  const double sd = std::sqrt((1.0 / 3.0) * (2.0 / 3.0) / 1e5);
  const double z = (freq - 1.0 / 3.0) / sd;
  if (a.exact_reject_prob != Rational(1, 3)) fail(o, "exact probability is not 1/3");
  if (std::abs(z) > 4.0) fail(o, "frequency outside 4 sigma");
  if (!(a == b)) fail(o, "same seed gave a different report");
  if (o.pass) {
    o.detail = "freq " + to_string(a.empirical_freq) + " (z = " + std::to_string(z) +
               "), reproducible";
  }
  return o;
}

Outcome witness_validity() {
  Outcome o;
  std::size_t checked = 0;
  const auto check = [&](const BooleanFunction& f) {
    if (is_monotone(f)) return;
    std::string why;
    if (!is_valid_witness(f, build_witness(f), &why)) {
      fail(o, format_function(f) + ": " + why);
    }
    const auto edges = oracle::down_edges(f);
    const auto matching = f.dimension() <= 3 ? oracle::max_matching_bruteforce(edges)
                                             : oracle::max_matching_augmenting(edges, f.size());
    if (max_edges_with_degree_cap(f, 1).edge_count() != matching) {
      fail(o, "cap-1 graph is not a maximum matching for " + format_function(f));
    }
    ++checked;
  };
  for (int n = 1; n <= 3; ++n) oracle::for_each_table(n, check);
  std::mt19937_64 rng(1000);
  for (int i = 0; i < 1000; ++i) check(oracle::random_function(4, rng));
  if (o.pass) o.detail = std::to_string(checked) + " non-monotone functions";
  return o;
}

// Objective from raw counts: 01-edges of monotone members, witness degrees of
// far members.
double raw_objective(const FunctionFamilies& fam, double k, double l) {
  double best = 0.0;
  for (const auto& f : fam.monotone()) {
    best = std::max(best, static_cast<double>(f.size()) / k +
                              static_cast<double>(oracle::edge_counts(f).first) / l);
  }
  for (const auto& g : fam.far()) {
    std::vector<double> degree(g.function.size(), 0.0);
    for (const auto& e : g.witness.edges) {
      degree[e.lower.index()] += 1;
      degree[e.upper.index()] += 1;
    }
    const double edges = static_cast<double>(g.witness.edges.size());
    double squares = 0.0;
    for (const double d : degree) squares += d * d;
    best = std::max(best, k * squares / (edges * edges) + l / edges);
  }
  return best;
}

Outcome optimizer_soundness() {
  Outcome o;
  std::ostringstream detail;
  constexpr int kGrid = 400;
  for (const auto& [n, eps] : {std::pair{2, Rational(1, 2)}, std::pair{3, Rational(1, 4)}}) {
    const auto fam = families(n, eps);
    const auto result = optimize_kl(fam);
    double grid = std::numeric_limits<double>::infinity();
    for (int i = 0; i < kGrid; ++i) {
      const double k = std::exp2(-10.0 + 20.0 * i / (kGrid - 1));
      for (int j = 0; j < kGrid; ++j) {
        grid = std::min(grid, raw_objective(*fam, k, std::exp2(-10.0 + 20.0 * j / (kGrid - 1))));
      }
    }
    const double gap = std::abs(result.objective - grid) / grid;
    if (gap > 0.01) fail(o, "optimizer differs from grid by more than 1%");
    if (result.objective > result.paper_objective) fail(o, "optimizer worse than the reference point");
    if (!result.report.feasible()) fail(o, "optimized certificate infeasible");
    detail << "n=" << n << " eps=" << to_string(eps) << ": opt " << result.objective << ", grid "
           << grid << ", reference " << result.paper_objective << "; ";
  }
  if (o.pass) o.detail = detail.str();
  return o;
}

Outcome scaling_sweep_sanity() {
  Outcome o;
  const std::vector<int> dims = {2, 3, 4};
  const std::vector<Rational> grid = {Rational(1, 16), Rational(1, 8), Rational(3, 16),
                                      Rational(1, 4),  Rational(3, 8), Rational(1, 2)};
  const auto start = std::chrono::steady_clock::now();
  const auto rows = scaling_sweep(dims, grid);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (rows.size() != dims.size() * grid.size()) fail(o, "wrong row count");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& row = rows[i];
    if (row.result) {
      const double expected = row.result->objective /
                              (std::pow(row.n, 0.25) / std::sqrt(to_double(row.eps)) *
                               std::log2(static_cast<double>(row.n)));
      if (std::abs(row.normalized - expected) > 1e-12 * expected) {
        fail(o, "normalized column wrong");
      }
    }
    if (i + 1 < rows.size() && rows[i + 1].n == row.n && rows[i + 1].result && row.result &&
        rows[i + 1].result->objective > row.result->objective * (1 + kOptimizerTolerance)) {
      fail(o, "objective increases in eps at n = " + std::to_string(row.n));
    }
  }
  const auto csv = sweep_csv(rows);
  if (csv.rfind("n,eps,sizeX,sizeY,K,L,objective,paper_objective,normalized\n", 0) != 0) {
    fail(o, "bad CSV header");
  }
  if (csv != sweep_csv(scaling_sweep(dims, grid))) fail(o, "CSV not deterministic");
  if (seconds > 600.0) fail(o, "sweep took longer than 10 minutes");
  if (o.pass) {
    o.detail = std::to_string(rows.size()) + " rows in " + std::to_string(seconds) +
               " s, deterministic CSV";
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"feasibility identity", feasibility_identity},
      {"oracle equivalence", oracle_equivalence},
      {"influence bound", influence_bound},
      {"diagonal formulas", diagonal_formulas},
      {"edge tester statistics", tester_statistics},
      {"witness validity", witness_validity},
      {"optimizer soundness", optimizer_soundness},
      {"scaling sweep sanity", scaling_sweep_sanity},
  };
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    all = all && o.pass;
    std::printf("%s criterion %zu [PRIMARY] %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
