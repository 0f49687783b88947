#include "montest/certificate.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>
#include <sstream>

#include <Eigen/Dense>

#include "montest/distance.hpp"
#include "montest/errors.hpp"
#include "montest/golden_section.hpp"
#include "montest/parallel.hpp"

namespace montest {

namespace {

std::uint64_t table_key(const BooleanFunction& f) { return f.word(0); }

template <class Scalar>
Scalar from_count(std::int64_t v) {
  return Scalar(v);
}

template <class Scalar>
bool equal_within_tolerance(const Scalar& a, const Scalar& b) {
  if constexpr (std::is_same_v<Scalar, Rational>) {
    return a == b;
  } else {
    return std::abs(a - b) <= kFloatTolerance;
  }
}

template <class Scalar>
double abs_deviation(const Scalar& value, const Scalar& target) {
  if constexpr (std::is_same_v<Scalar, Rational>) {
    return std::abs(to_double(value - target));
  } else {
    return std::abs(value - target);
  }
}

// psi and phi of one member, laid out by point (phi at z * n + j - 1).
template <class Scalar>
struct MemberVectors {
  std::vector<Scalar> psi;
  std::vector<Scalar> phi;
  std::vector<std::uint32_t> phi_support;  // bit j-1 set iff phi[z, j] != 0
};

template <class Scalar>
MemberVectors<Scalar> member_vectors(const AdversaryCertificate& cert, const Scaling<Scalar>& s,
                                     MemberRef ref) {
  const int n = cert.n();
  const std::uint32_t points = std::uint32_t{1} << n;
  MemberVectors<Scalar> v;
  v.psi.reserve(points);
  v.phi.reserve(static_cast<std::size_t>(points) * n);
  v.phi_support.assign(points, 0);
  for (std::uint32_t z = 0; z < points; ++z) {
    v.psi.push_back(psi_entry(cert, s, z, ref));
    for (int j = 1; j <= n; ++j) {
      v.phi.push_back(phi_entry(cert, s, z, j, ref));
      if (v.phi.back() != Scalar(0)) v.phi_support[z] |= std::uint32_t{1} << (j - 1);
    }
  }
  return v;
}

// Route (a): sum over z with f(z) != g(z) of psi_z[f] psi_z[g] + sum_j
// phi_{z,j}[f] phi_{z,j}[g]. Products with a zero factor are skipped.
template <class Scalar>
Scalar direct_sum(const BooleanFunction& f, const BooleanFunction& g, int n,
                  const MemberVectors<Scalar>& vf, const MemberVectors<Scalar>& vg) {
  Scalar total(0);
  const std::uint32_t points = std::uint32_t{1} << n;
  for (std::uint32_t z = 0; z < points; ++z) {
    if (f(z) == g(z)) continue;
    if (vg.psi[z] != Scalar(0)) total += vf.psi[z] * vg.psi[z];
    std::uint32_t both = vf.phi_support[z] & vg.phi_support[z];
    while (both != 0) {
      const int bit = std::countr_zero(both);
      both &= both - 1;
      const std::size_t at = static_cast<std::size_t>(z) * n + bit;
      total += vf.phi[at] * vg.phi[at];
    }
  }
  return total;
}

// Route (b): (1/|E_g|) sum over witness edges xy of
// [f(x) != g(x)] + [f(y) != g(y)] - [both].
template <class Scalar>
Scalar edge_form(const BooleanFunction& f, const FarFunction& g) {
  std::int64_t count = 0;
  for (const auto& e : g.witness.edges) {
    const bool lower_differs = f(e.lower.index()) != g.function(e.lower.index());
    const bool upper_differs = f(e.upper.index()) != g.function(e.upper.index());
    count += (lower_differs ? 1 : 0) + (upper_differs ? 1 : 0) -
             (lower_differs && upper_differs ? 1 : 0);
  }
  return from_count<Scalar>(count) /
         from_count<Scalar>(static_cast<std::int64_t>(g.witness.edge_count()));
}

template <class Scalar>
Scalar checked_constraint(const AdversaryCertificate& cert, std::size_t f_index,
                          std::size_t g_index, const MemberVectors<Scalar>& vf,
                          const MemberVectors<Scalar>& vg) {
  const auto& f = cert.families().monotone()[f_index];
  const auto& g = cert.families().far()[g_index];
  const Scalar a = direct_sum(f, g.function, cert.n(), vf, vg);
  const Scalar b = edge_form<Scalar>(f, g);
  if (!equal_within_tolerance(a, b)) {
    throw ConsistencyError("constraint routes disagree for f = " + format_function(f) +
                           ", g = " + format_function(g.function));
  }
  return a;
}

void require_side(MemberRef ref, Side side, const char* what) {
  if (ref.side != side) throw NotInFamily(std::string(what));
}

}  // namespace

FunctionFamilies::FunctionFamilies(int n, Rational eps, std::vector<BooleanFunction> monotone,
                                   std::vector<FarFunction> far)
    : n_(n), eps_(eps), monotone_(std::move(monotone)), far_(std::move(far)) {
  require_dimension(n);
  require_eps(eps);
  if (n > kMaxFamilyDimension) {
    throw UnsupportedSize("families support n <= " + std::to_string(kMaxFamilyDimension) +
                          ", got " + std::to_string(n));
  }
  std::set<std::uint64_t> seen;
  for (const auto& f : monotone_) {
    if (f.dimension() != n) throw DimensionMismatch("monotone member has wrong dimension");
    if (!is_monotone(f)) throw InvalidInput("X member is not monotone: " + format_function(f));
    if (!seen.insert(table_key(f)).second) throw InvalidInput("duplicate family member");
  }
  for (const auto& g : far_) {
    if (g.function.dimension() != n) throw DimensionMismatch("far member has wrong dimension");
    if (distance_mincut(g.function) < eps) {
      throw InvalidInput("Y member is not eps-far: " + format_function(g.function));
    }
    std::string why;
    if (!is_valid_witness(g.function, g.witness, &why) || g.witness.edges.empty()) {
      throw InvalidInput("invalid witness for " + format_function(g.function) + ": " + why);
    }
    if (!seen.insert(table_key(g.function)).second) throw InvalidInput("duplicate family member");
  }
}

FunctionFamilies FunctionFamilies::build(int n, const Rational& eps, int threads) {
  auto far_functions = enumerate_eps_far(n, eps, threads);
  std::vector<FarFunction> far(far_functions.size(), FarFunction{BooleanFunction(n), {}});
  parallel_chunks(far.size(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      far[i] = FarFunction{far_functions[i], build_witness(far_functions[i])};
    }
  });
  return FunctionFamilies(n, eps, monotone_functions(n), std::move(far));
}

Scaling<double> float_scaling(double k, double l) {
  return {k, l, std::sqrt(k), std::sqrt(l)};
}

Scaling<Rational> exact_scaling(const Rational& sqrt_k, const Rational& sqrt_l) {
  if (sqrt_k <= Rational(0) || sqrt_l <= Rational(0)) {
    throw InvalidInput("square roots of K and L must be positive");
  }
  return {sqrt_k * sqrt_k, sqrt_l * sqrt_l, sqrt_k, sqrt_l};
}

AdversaryCertificate::AdversaryCertificate(std::shared_ptr<const FunctionFamilies> families,
                                           double k, double l)
    : families_(std::move(families)), k_(k), l_(l) {
  if (!families_) throw InvalidInput("null families");
  if (!(k > 0.0) || !(l > 0.0) || !std::isfinite(k) || !std::isfinite(l)) {
    throw InvalidInput("K and L must be positive and finite");
  }
  const int n = families_->n();
  const std::uint32_t points = std::uint32_t{1} << n;
  const auto& xs = families_->monotone();
  const auto& ys = families_->far();

  up_edge_counts_.reserve(xs.size());
  up_edge_masks_.assign(xs.size() * points, 0);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    lookup_.emplace(table_key(xs[i]), MemberRef{Side::kMonotone, i});
    std::int64_t count = 0;
    for (std::uint32_t x = 0; x < points; ++x) {
      for (int j = 1; j <= n; ++j) {
        const std::uint32_t bit = std::uint32_t{1} << (j - 1);
        if ((x & bit) == 0 && !xs[i](x) && xs[i](x | bit)) {
          up_edge_masks_[i * points + x] |= bit;
          ++count;
        }
      }
    }
    up_edge_counts_.push_back(count);
  }

  witness_masks_.assign(ys.size() * points, 0);
  witness_degrees_.assign(ys.size() * points, 0);
  for (std::size_t i = 0; i < ys.size(); ++i) {
    lookup_.emplace(table_key(ys[i].function), MemberRef{Side::kFar, i});
    const auto& w = ys[i].witness;
    for (const auto& e : w.edges) {
      witness_masks_[i * points + e.lower.index()] |= std::uint32_t{1} << (e.direction - 1);
    }
    const auto deg = w.degrees();
    std::int64_t sum_sq = 0;
    for (std::uint32_t x = 0; x < points; ++x) {
      witness_degrees_[i * points + x] = deg[x];
      sum_sq += static_cast<std::int64_t>(deg[x]) * deg[x];
    }
    witness_edges_.push_back(static_cast<std::int64_t>(w.edge_count()));
    witness_sum_sq_.push_back(sum_sq);
  }
}

AdversaryCertificate AdversaryCertificate::with_parameters(double k, double l) const {
  return AdversaryCertificate(families_, k, l);
}

MemberRef AdversaryCertificate::find(const BooleanFunction& f) const {
  if (f.dimension() != n()) throw NotInFamily("function dimension differs from the families");
  const auto it = lookup_.find(table_key(f));
  if (it == lookup_.end()) throw NotInFamily(format_function(f) + " is in neither family");
  return it->second;
}

const BooleanFunction& AdversaryCertificate::function(MemberRef ref) const {
  return ref.side == Side::kMonotone ? families_->monotone().at(ref.index)
                                     : families_->far().at(ref.index).function;
}

std::int64_t AdversaryCertificate::up_edge_count(std::size_t i) const {
  return up_edge_counts_.at(i);
}

std::int64_t AdversaryCertificate::witness_edge_count(std::size_t i) const {
  return witness_edges_.at(i);
}

std::int64_t AdversaryCertificate::witness_sum_squared_degrees(std::size_t i) const {
  return witness_sum_sq_.at(i);
}

std::uint32_t AdversaryCertificate::up_edge_mask(std::size_t i, std::uint32_t x) const {
  return up_edge_masks_.at((i << n()) + x);
}

std::uint32_t AdversaryCertificate::witness_edge_mask(std::size_t i, std::uint32_t x) const {
  return witness_masks_.at((i << n()) + x);
}

int AdversaryCertificate::witness_degree(std::size_t i, std::uint32_t x) const {
  return witness_degrees_.at((i << n()) + x);
}

template <class Scalar>
Scalar psi_entry(const AdversaryCertificate& cert, const Scaling<Scalar>& s, std::uint32_t x,
                 MemberRef f) {
  if (f.side == Side::kMonotone) return Scalar(1) / s.sqrt_k;
  return s.sqrt_k * from_count<Scalar>(cert.witness_degree(f.index, x)) /
         from_count<Scalar>(cert.witness_edge_count(f.index));
}

template <class Scalar>
Scalar phi_entry(const AdversaryCertificate& cert, const Scaling<Scalar>& s, std::uint32_t x,
                 int j, MemberRef f) {
  if (j < 1 || j > cert.n()) throw InvalidInput("direction out of range");
  const std::uint32_t bit = std::uint32_t{1} << (j - 1);
  if (f.side == Side::kMonotone) {
    return (cert.up_edge_mask(f.index, x) & bit) != 0 ? -Scalar(1) / s.sqrt_l : Scalar(0);
  }
  return (cert.witness_edge_mask(f.index, x) & bit) != 0
             ? s.sqrt_l / from_count<Scalar>(cert.witness_edge_count(f.index))
             : Scalar(0);
}

template <class Scalar>
Scalar constraint_value(const AdversaryCertificate& cert, const Scaling<Scalar>& s, MemberRef f,
                        MemberRef g) {
  require_side(f, Side::kMonotone, "first argument must be a monotone member");
  require_side(g, Side::kFar, "second argument must be a far member");
  return checked_constraint(cert, f.index, g.index, member_vectors(cert, s, f),
                            member_vectors(cert, s, g));
}

template <class Scalar>
Scalar diagonal_value(const AdversaryCertificate& cert, const Scaling<Scalar>& s, MemberRef f) {
  if (f.side == Side::kMonotone) {
    return from_count<Scalar>(std::int64_t{1} << cert.n()) / s.k +
           from_count<Scalar>(cert.up_edge_count(f.index)) / s.l;
  }
  const auto edges = from_count<Scalar>(cert.witness_edge_count(f.index));
  return s.k * from_count<Scalar>(cert.witness_sum_squared_degrees(f.index)) / (edges * edges) +
         s.l / edges;
}

template <class Scalar>
Scalar diagonal_bruteforce(const AdversaryCertificate& cert, const Scaling<Scalar>& s,
                           MemberRef f) {
  Scalar total(0);
  const std::uint32_t points = std::uint32_t{1} << cert.n();
  for (std::uint32_t z = 0; z < points; ++z) {
    const Scalar psi = psi_entry(cert, s, z, f);
    total += psi * psi;
    for (int j = 1; j <= cert.n(); ++j) {
      const Scalar phi = phi_entry(cert, s, z, j, f);
      total += phi * phi;
    }
  }
  return total;
}

#define MONTEST_INSTANTIATE(Scalar)                                                         \
  template Scalar psi_entry<Scalar>(const AdversaryCertificate&, const Scaling<Scalar>&,    \
                                    std::uint32_t, MemberRef);                              \
  template Scalar phi_entry<Scalar>(const AdversaryCertificate&, const Scaling<Scalar>&,    \
                                    std::uint32_t, int, MemberRef);                         \
  template Scalar constraint_value<Scalar>(const AdversaryCertificate&,                     \
                                           const Scaling<Scalar>&, MemberRef, MemberRef);   \
  template Scalar diagonal_value<Scalar>(const AdversaryCertificate&, const Scaling<Scalar>&, \
                                         MemberRef);                                        \
  template Scalar diagonal_bruteforce<Scalar>(const AdversaryCertificate&,                  \
                                              const Scaling<Scalar>&, MemberRef);

MONTEST_INSTANTIATE(double)
MONTEST_INSTANTIATE(Rational)

#undef MONTEST_INSTANTIATE

double psi_entry(const AdversaryCertificate& cert, const Point& x, const BooleanFunction& f) {
  if (x.dimension() != cert.n()) throw DimensionMismatch("point dimension differs");
  return psi_entry(cert, cert.scaling(), x.index(), cert.find(f));
}

double phi_entry(const AdversaryCertificate& cert, const Point& x, int j,
                 const BooleanFunction& f) {
  if (x.dimension() != cert.n()) throw DimensionMismatch("point dimension differs");
  return phi_entry(cert, cert.scaling(), x.index(), j, cert.find(f));
}

double constraint_value(const AdversaryCertificate& cert, const BooleanFunction& f,
                        const BooleanFunction& g) {
  return constraint_value(cert, cert.scaling(), cert.find(f), cert.find(g));
}

Rational constraint_value_exact(const AdversaryCertificate& cert, const BooleanFunction& f,
                                const BooleanFunction& g, const Scaling<Rational>& s) {
  return constraint_value(cert, s, cert.find(f), cert.find(g));
}

double diagonal_value(const AdversaryCertificate& cert, const BooleanFunction& f) {
  return diagonal_value(cert, cert.scaling(), cert.find(f));
}

ObjectiveValue objective(const AdversaryCertificate& cert) {
  const auto& fam = cert.families();
  if (fam.far().empty()) throw EmptyFamily("no eps-far functions: the problem is vacuous");
  if (fam.monotone().empty()) throw EmptyFamily("no monotone functions");
  const auto s = cert.scaling();
  double best = -std::numeric_limits<double>::infinity();
  MemberRef arg{Side::kMonotone, 0};
  for (std::size_t i = 0; i < fam.monotone().size(); ++i) {
    const double v = diagonal_value(cert, s, MemberRef{Side::kMonotone, i});
    if (v > best) {
      best = v;
      arg = {Side::kMonotone, i};
    }
  }
  for (std::size_t i = 0; i < fam.far().size(); ++i) {
    const double v = diagonal_value(cert, s, MemberRef{Side::kFar, i});
    if (v > best) {
      best = v;
      arg = {Side::kFar, i};
    }
  }
  return {best, cert.function(arg)};
}

ExplicitMatrixCheck explicit_matrix_check(const AdversaryCertificate& cert) {
  const auto& fam = cert.families();
  const int n = cert.n();
  std::vector<MemberRef> members;
  for (std::size_t i = 0; i < fam.monotone().size(); ++i) members.push_back({Side::kMonotone, i});
  for (std::size_t i = 0; i < fam.far().size(); ++i) members.push_back({Side::kFar, i});
  const auto size = static_cast<Eigen::Index>(members.size());
  const auto s = cert.scaling();
  const double k = cert.k();
  const double l = cert.l();

  // Closed-form entry of X_z[a, b] from edge statistics, independent of the
  // psi/phi vectors.
  const auto closed_form = [&](std::uint32_t z, MemberRef a, MemberRef b) {
    if (a.side == Side::kFar && b.side == Side::kMonotone) std::swap(a, b);
    if (a.side == Side::kMonotone && b.side == Side::kMonotone) {
      const int shared = std::popcount(cert.up_edge_mask(a.index, z) & cert.up_edge_mask(b.index, z));
      return 1.0 / k + shared / l;
    }
    if (a.side == Side::kMonotone) {
      const double edges = static_cast<double>(cert.witness_edge_count(b.index));
      const int shared =
          std::popcount(cert.up_edge_mask(a.index, z) & cert.witness_edge_mask(b.index, z));
      return (cert.witness_degree(b.index, z) - shared) / edges;
    }
    const double ea = static_cast<double>(cert.witness_edge_count(a.index));
    const double eb = static_cast<double>(cert.witness_edge_count(b.index));
    const int shared =
        std::popcount(cert.witness_edge_mask(a.index, z) & cert.witness_edge_mask(b.index, z));
    return (k * cert.witness_degree(a.index, z) * cert.witness_degree(b.index, z) + l * shared) /
           (ea * eb);
  };

  ExplicitMatrixCheck check;
  check.min_eigenvalue = std::numeric_limits<double>::infinity();
  const std::uint32_t points = std::uint32_t{1} << n;
  for (std::uint32_t z = 0; z < points; ++z) {
    Eigen::VectorXd psi(size);
    for (Eigen::Index a = 0; a < size; ++a) psi[a] = psi_entry(cert, s, z, members[a]);
    Eigen::MatrixXd gram = psi * psi.transpose();
    for (int j = 1; j <= n; ++j) {
      Eigen::VectorXd phi(size);
      for (Eigen::Index a = 0; a < size; ++a) phi[a] = phi_entry(cert, s, z, j, members[a]);
      gram += phi * phi.transpose();
    }
    for (Eigen::Index a = 0; a < size; ++a) {
      for (Eigen::Index b = 0; b < size; ++b) {
        check.max_entry_deviation = std::max(
            check.max_entry_deviation, std::abs(gram(a, b) - closed_form(z, members[a], members[b])));
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram, Eigen::EigenvaluesOnly);
    check.min_eigenvalue = std::min(check.min_eigenvalue, solver.eigenvalues().minCoeff());
    ++check.matrices;
  }
  return check;
}

namespace {

template <class Scalar>
struct PairScan {
  std::size_t pairs = 0;
  double max_deviation = 0.0;
  std::vector<std::pair<std::size_t, std::size_t>> violations;
};

template <class Scalar>
PairScan<Scalar> scan_pairs(const AdversaryCertificate& cert, const Scaling<Scalar>& s,
                            int threads) {
  const auto& fam = cert.families();
  std::vector<MemberVectors<Scalar>> xs;
  xs.reserve(fam.monotone().size());
  for (std::size_t i = 0; i < fam.monotone().size(); ++i) {
    xs.push_back(member_vectors(cert, s, MemberRef{Side::kMonotone, i}));
  }
  const std::size_t workers = static_cast<std::size_t>(std::max(threads, 1));
  std::vector<PairScan<Scalar>> partial(workers);
  const std::size_t total = fam.far().size();
  parallel_chunks(workers, threads, [&](std::size_t wb, std::size_t we) {
    for (std::size_t w = wb; w < we; ++w) {
      auto& scan = partial[w];
      for (std::size_t g = total * w / workers; g < total * (w + 1) / workers; ++g) {
        const auto vg = member_vectors(cert, s, MemberRef{Side::kFar, g});
        for (std::size_t f = 0; f < xs.size(); ++f) {
          const Scalar value = checked_constraint(cert, f, g, xs[f], vg);
          const double dev = abs_deviation(value, Scalar(1));
          scan.max_deviation = std::max(scan.max_deviation, dev);
          const bool ok = std::is_same_v<Scalar, Rational> ? value == Scalar(1)
                                                           : dev <= kFloatTolerance;
          if (!ok) scan.violations.emplace_back(f, g);
          ++scan.pairs;
        }
      }
    }
  });
  PairScan<Scalar> merged;
  for (auto& p : partial) {
    merged.pairs += p.pairs;
    merged.max_deviation = std::max(merged.max_deviation, p.max_deviation);
    merged.violations.insert(merged.violations.end(), p.violations.begin(), p.violations.end());
  }
  return merged;
}

}  // namespace

FeasibilityReport verify_certificate(const AdversaryCertificate& cert,
                                     const VerifyOptions& options) {
  FeasibilityReport report;
  report.exact = options.exact;
  report.k = cert.k();
  report.l = cert.l();
  std::vector<std::pair<std::size_t, std::size_t>> bad;
  if (options.exact) {
    auto scan = scan_pairs(cert, options.exact_scale, options.threads);
    report.pairs_checked = scan.pairs;
    report.max_abs_deviation = scan.max_deviation;
    bad = std::move(scan.violations);
  } else {
    auto scan = scan_pairs(cert, cert.scaling(), options.threads);
    report.pairs_checked = scan.pairs;
    report.max_abs_deviation = scan.max_deviation;
    bad = std::move(scan.violations);
  }
  for (const auto& [f, g] : bad) {
    report.violations.emplace_back(cert.families().monotone()[f],
                                   cert.families().far()[g].function);
  }
  if (!cert.families().far().empty()) {
    const auto obj = objective(cert);
    report.objective = obj.value;
    report.argmax = obj.argmax;
  }
  if (cert.n() <= kExplicitMatrixDimension && cert.member_count() > 0) {
    report.explicit_check = explicit_matrix_check(cert);
  }
  return report;
}

KLParameters reference_parameters(int n, const Rational& eps) {
  require_eps(eps);
  if (n < 2) throw UnsupportedSize("the K, L formulas need n >= 2 (log2 n > 0)");
  const double base = std::ldexp(std::sqrt(to_double(eps)), n) / std::log2(static_cast<double>(n));
  const double quarter = std::pow(static_cast<double>(n), 0.25);
  return {base / quarter, base * quarter};
}

ObjectiveTerms::ObjectiveTerms(const FunctionFamilies& families)
    : points_(std::ldexp(1.0, families.n())), max_up_edges_(0.0) {
  if (families.far().empty()) throw EmptyFamily("no eps-far functions: the problem is vacuous");
  for (const auto& f : families.monotone()) {
    max_up_edges_ = std::max(max_up_edges_, static_cast<double>(count_01_edges(f)));
  }
  std::set<std::pair<std::int64_t, std::int64_t>> distinct;
  for (const auto& g : families.far()) {
    distinct.emplace(g.witness.sum_squared_degrees(),
                     static_cast<std::int64_t>(g.witness.edge_count()));
  }
  for (const auto& [sum_sq, edges] : distinct) {
    const double e = static_cast<double>(edges);
    far_terms_.emplace_back(static_cast<double>(sum_sq) / (e * e), 1.0 / e);
  }
}

double ObjectiveTerms::operator()(double k, double l) const {
  double value = points_ / k + max_up_edges_ / l;
  for (const auto& [a, b] : far_terms_) value = std::max(value, k * a + l * b);
  return value;
}

OptimizationResult optimize_kl(std::shared_ptr<const FunctionFamilies> families, int threads) {
  if (!families) throw InvalidInput("null families");
  const ObjectiveTerms terms(*families);
  OptimizationResult result;
  const auto inner = [&](double log_k) {
    return golden_section_minimize(
        [&](double log_l) { return terms(std::exp2(log_k), std::exp2(log_l)); }, kLogBoxMin,
        kLogBoxMax, kOptimizerTolerance);
  };
  const auto outer = golden_section_minimize(
      [&](double log_k) {
        const auto m = inner(log_k);
        result.evaluations += m.evaluations;
        return m.value;
      },
      kLogBoxMin, kLogBoxMax, kOptimizerTolerance);
  const auto best_l = inner(outer.x);
  result.evaluations += best_l.evaluations;

  result.reference = reference_parameters(families->n(), families->eps());
  const AdversaryCertificate searched(families, std::exp2(outer.x), std::exp2(best_l.x));
  const AdversaryCertificate reference(families, result.reference.k, result.reference.l);
  const double searched_value = objective(searched).value;
  result.paper_objective = objective(reference).value;

  const auto& chosen = searched_value <= result.paper_objective ? searched : reference;
  result.k = chosen.k();
  result.l = chosen.l();
  VerifyOptions options;
  options.threads = threads;
  result.report = verify_certificate(chosen, options);
  result.objective = result.report.objective;
  return result;
}

std::vector<SweepRow> scaling_sweep(std::span<const int> dimensions,
                                    std::span<const Rational> eps_grid, int threads) {
  for (const auto& eps : eps_grid) require_eps(eps);
  std::vector<SweepRow> rows;
  for (const int n : dimensions) {
    if (n < 2 || n > kMaxFamilyDimension) {
      throw UnsupportedSize("sweep dimensions must lie in [2, " +
                            std::to_string(kMaxFamilyDimension) + "], got " + std::to_string(n));
    }
    const auto distances = distance_table(n, threads);
    std::vector<std::size_t> non_monotone;
    for (std::size_t t = 0; t < distances.size(); ++t) {
      if (distances[t] > Rational(0)) non_monotone.push_back(t);
    }
    std::vector<WitnessGraph> witnesses(non_monotone.size());
    parallel_chunks(non_monotone.size(), threads, [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) {
        witnesses[i] = build_witness(BooleanFunction::from_word(n, non_monotone[i]));
      }
    });

    for (const auto& eps : eps_grid) {
      std::vector<FarFunction> far;
      for (std::size_t i = 0; i < non_monotone.size(); ++i) {
        if (distances[non_monotone[i]] >= eps) {
          far.push_back({BooleanFunction::from_word(n, non_monotone[i]), witnesses[i]});
        }
      }
      SweepRow row;
      row.n = n;
      row.eps = eps;
      row.size_x = monotone_functions(n).size();
      row.size_y = far.size();
      if (!far.empty()) {
        auto families = std::make_shared<const FunctionFamilies>(n, eps, monotone_functions(n),
                                                                 std::move(far));
        row.result = optimize_kl(families, threads);
        if (!row.result->report.feasible()) {
          throw ConsistencyError("certificate infeasible at n = " + std::to_string(n) +
                                 ", eps = " + to_string(eps));
        }
        row.normalized = row.result->objective /
                         (std::pow(static_cast<double>(n), 0.25) /
                          std::sqrt(to_double(eps)) * std::log2(static_cast<double>(n)));
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  const auto number = [](double v) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.12g", v);
    return std::string(buffer);
  };
  std::ostringstream out;
  out << "n,eps,sizeX,sizeY,K,L,objective,paper_objective,normalized\n";
  for (const auto& row : rows) {
    out << row.n << ',' << to_string(row.eps) << ',' << row.size_x << ',' << row.size_y;
    if (row.result) {
      out << ',' << number(row.result->k) << ',' << number(row.result->l) << ','
          << number(row.result->objective) << ',' << number(row.result->paper_objective) << ','
          << number(row.normalized);
    } else {
      out << ",,,,,";
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace montest
