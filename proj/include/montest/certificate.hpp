#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "montest/hypercube.hpp"
#include "montest/rational.hpp"
#include "montest/witness.hpp"

namespace montest {

struct FarFunction {
  BooleanFunction function;
  WitnessGraph witness;
};

/// The two sides of the distinguishing problem: monotone functions (X) and
/// eps-far functions (Y), each far function carrying its fixed witness graph.
class FunctionFamilies {
 public:
  /// Validates every invariant: n <= 4, X monotone, Y eps-far with valid
  /// witnesses, no duplicates.
  FunctionFamilies(int n, Rational eps, std::vector<BooleanFunction> monotone,
                   std::vector<FarFunction> far);

  /// X = all monotone functions, Y = all eps-far functions with build_witness.
  static FunctionFamilies build(int n, const Rational& eps, int threads = 1);

  int n() const { return n_; }
  const Rational& eps() const { return eps_; }
  const std::vector<BooleanFunction>& monotone() const { return monotone_; }
  const std::vector<FarFunction>& far() const { return far_; }

 private:
  int n_;
  Rational eps_;
  std::vector<BooleanFunction> monotone_;
  std::vector<FarFunction> far_;
};

enum class Side { kMonotone, kFar };

struct MemberRef {
  Side side;
  std::size_t index;

  friend bool operator==(const MemberRef&, const MemberRef&) = default;
};

/// K, L and their square roots in one arithmetic. Exact scalings are built
/// from the roots so every entry of psi and phi stays rational.
template <class Scalar>
struct Scaling {
  Scalar k;
  Scalar l;
  Scalar sqrt_k;
  Scalar sqrt_l;
};

Scaling<double> float_scaling(double k, double l);
Scaling<Rational> exact_scaling(const Rational& sqrt_k = Rational(1),
                                const Rational& sqrt_l = Rational(1));

/// Feasible point of the dual adversary program X_z = Y_z + Z_z with
/// Y_z = psi_z psi_z^T and Z_z = sum_j phi_{z,j} phi_{z,j}^T.
///
/// The matrices are never formed: entries are evaluated from per-member
/// statistics (01-edges of each monotone function, degrees and edge
/// membership of each witness graph).
class AdversaryCertificate {
 public:
  AdversaryCertificate(std::shared_ptr<const FunctionFamilies> families, double k, double l);

  const FunctionFamilies& families() const { return *families_; }
  std::shared_ptr<const FunctionFamilies> shared_families() const { return families_; }
  int n() const { return families_->n(); }
  double k() const { return k_; }
  double l() const { return l_; }
  Scaling<double> scaling() const { return float_scaling(k_, l_); }

  AdversaryCertificate with_parameters(double k, double l) const;

  /// Throws NotInFamily.
  MemberRef find(const BooleanFunction& f) const;
  const BooleanFunction& function(MemberRef ref) const;
  std::size_t member_count() const {
    return families_->monotone().size() + families_->far().size();
  }

  /// 01-edges of a monotone member.
  std::int64_t up_edge_count(std::size_t monotone_index) const;
  /// |E_g| and sum_x deg_g(x)^2 of a far member's witness.
  std::int64_t witness_edge_count(std::size_t far_index) const;
  std::int64_t witness_sum_squared_degrees(std::size_t far_index) const;

  /// Bit j-1 set iff (x, x^j) with x_j = 0 is a 01-edge of the member.
  std::uint32_t up_edge_mask(std::size_t monotone_index, std::uint32_t x) const;
  /// Bit j-1 set iff (x, x^j) with x_j = 0 is a witness edge.
  std::uint32_t witness_edge_mask(std::size_t far_index, std::uint32_t x) const;
  int witness_degree(std::size_t far_index, std::uint32_t x) const;

 private:
  std::shared_ptr<const FunctionFamilies> families_;
  double k_;
  double l_;
  std::unordered_map<std::uint64_t, MemberRef> lookup_;
  std::vector<std::int64_t> up_edge_counts_;
  std::vector<std::uint32_t> up_edge_masks_;  // |X| * 2^n
  std::vector<std::int64_t> witness_edges_;
  std::vector<std::int64_t> witness_sum_sq_;
  std::vector<std::uint32_t> witness_masks_;  // |Y| * 2^n
  std::vector<int> witness_degrees_;          // |Y| * 2^n
};

template <class Scalar>
Scalar psi_entry(const AdversaryCertificate& cert, const Scaling<Scalar>& s, std::uint32_t x,
                 MemberRef f);
template <class Scalar>
Scalar phi_entry(const AdversaryCertificate& cert, const Scaling<Scalar>& s, std::uint32_t x,
                 int j, MemberRef f);

/// Constraint sum over {z : f(z) != g(z)} of X_z[f, g], for f in X and g in
/// Y, computed by direct summation of psi/phi products and by the per-edge
/// indicator form; throws ConsistencyError if the routes disagree.
template <class Scalar>
Scalar constraint_value(const AdversaryCertificate& cert, const Scaling<Scalar>& s,
                        MemberRef f, MemberRef g);

/// Closed forms: 2^n/K + (#01-edges)/L on X; K*sum deg^2/|E|^2 + L/|E| on Y.
template <class Scalar>
Scalar diagonal_value(const AdversaryCertificate& cert, const Scaling<Scalar>& s, MemberRef f);

/// sum_z (psi_z[f]^2 + sum_j phi_{z,j}[f]^2) term by term.
template <class Scalar>
Scalar diagonal_bruteforce(const AdversaryCertificate& cert, const Scaling<Scalar>& s,
                           MemberRef f);

double psi_entry(const AdversaryCertificate& cert, const Point& x, const BooleanFunction& f);
double phi_entry(const AdversaryCertificate& cert, const Point& x, int j,
                 const BooleanFunction& f);
double constraint_value(const AdversaryCertificate& cert, const BooleanFunction& f,
                        const BooleanFunction& g);
Rational constraint_value_exact(const AdversaryCertificate& cert, const BooleanFunction& f,
                                const BooleanFunction& g,
                                const Scaling<Rational>& s = exact_scaling());
double diagonal_value(const AdversaryCertificate& cert, const BooleanFunction& f);

struct ObjectiveValue {
  double value;
  BooleanFunction argmax;
};

/// max over X ∪ Y of the diagonal; throws EmptyFamily when Y is empty.
ObjectiveValue objective(const AdversaryCertificate& cert);

/// Rank-one Gram assembly of each X_z compared against entrywise closed
/// forms, plus the smallest eigenvalue over all z.
struct ExplicitMatrixCheck {
  std::size_t matrices = 0;
  double max_entry_deviation = 0.0;
  double min_eigenvalue = 0.0;
};

ExplicitMatrixCheck explicit_matrix_check(const AdversaryCertificate& cert);

struct FeasibilityReport {
  bool exact = false;
  std::size_t pairs_checked = 0;
  double max_abs_deviation = 0.0;
  /// Offending (f, g) pairs; empty for a feasible certificate.
  std::vector<std::pair<BooleanFunction, BooleanFunction>> violations;
  double objective = 0.0;
  std::optional<BooleanFunction> argmax;
  double k = 0.0;
  double l = 0.0;
  std::optional<ExplicitMatrixCheck> explicit_check;

  bool feasible() const { return violations.empty(); }
};

inline constexpr double kFloatTolerance = 1e-9;
inline constexpr int kExplicitMatrixDimension = 2;

struct VerifyOptions {
  /// Rational arithmetic at the given exact scaling (K = L = 1 by default);
  /// float arithmetic at the certificate's K, L otherwise.
  bool exact = false;
  Scaling<Rational> exact_scale = exact_scaling();
  int threads = 1;
};

/// Checks every (f, g) in X x Y. At n <= 2 also runs explicit_matrix_check.
FeasibilityReport verify_certificate(const AdversaryCertificate& cert,
                                     const VerifyOptions& options = {});

struct KLParameters {
  double k;
  double l;
};

/// K = 2^n sqrt(eps) n^{-1/4} / log2 n and L = 2^n sqrt(eps) n^{1/4} / log2 n;
/// requires n >= 2.
KLParameters reference_parameters(int n, const Rational& eps);

/// The objective as a function of (K, L) reduced to its distinct terms.
class ObjectiveTerms {
 public:
  explicit ObjectiveTerms(const FunctionFamilies& families);
  double operator()(double k, double l) const;

 private:
  double points_;
  double max_up_edges_;
  std::vector<std::pair<double, double>> far_terms_;  // (sum deg^2/|E|^2, 1/|E|)
};

inline constexpr double kLogBoxMin = -20.0;  // log2 K, log2 L
inline constexpr double kLogBoxMax = 20.0;
inline constexpr double kOptimizerTolerance = 1e-6;

struct OptimizationResult {
  double k = 0.0;
  double l = 0.0;
  double objective = 0.0;
  KLParameters reference{};
  double paper_objective = 0.0;
  std::size_t evaluations = 0;
  FeasibilityReport report;
};

/// Nested golden-section search over (log2 K, log2 L) in the box
/// [2^-20, 2^20]^2; the reference point is kept if it is better. The
/// report verifies the certificate at the returned K, L in float mode.
OptimizationResult optimize_kl(std::shared_ptr<const FunctionFamilies> families,
                               int threads = 1);

struct SweepRow {
  int n = 0;
  Rational eps;
  std::size_t size_x = 0;
  std::size_t size_y = 0;
  /// Absent when Y is empty.
  std::optional<OptimizationResult> result;
  double normalized = 0.0;  // objective / (n^{1/4} eps^{-1/2} log2 n)
};

/// Rows in (n, eps) order; each present row is verified in float mode and
/// throws ConsistencyError if infeasible.
std::vector<SweepRow> scaling_sweep(std::span<const int> dimensions,
                                    std::span<const Rational> eps_grid, int threads = 1);

std::string sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace montest
