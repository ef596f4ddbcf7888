#pragma once

#include <functional>
#include <ostream>
#include <vector>

#include "jwvie/solver.hpp"

namespace jwvie {

enum class DerivBoundMode {
  /// Caller provides zeta_{n,j} directly.
  kUserSupplied,
  /// zeta_{n,j} estimated from a Chebyshev interpolant of
  /// x -> kappa(t,x) rho_{n,j}(x) differentiated 2N times. An estimate,
  /// not a bound.
  kSampledEstimate,
};

struct CriterionConfig {
  double epsilon = 1e-6;
  DerivBoundMode mode = DerivBoundMode::kSampledEstimate;
  /// Evaluation points per subinterval for the differentiated interpolant.
  /// Must be at least 2N+1.
  int sample_density = 64;
  /// zeta_{n,j} for kUserSupplied; n is 1-based.
  std::function<double(int n, int j)> user_bound;
};

struct CriterionPoint {
  int n;
  int m;
  double t;
  double residual;
  double derivative_term;
  double combined;
};

struct CriterionReport {
  std::vector<CriterionPoint> points;
  /// xi_{alpha,N} |sum_j u_{n,j} zeta_{n,j}| per subinterval.
  std::vector<double> derivative_factor;
  bool satisfied = false;
  int worst_point = 0;
  double worst_value = 0.0;
};

/// Per-subinterval zeta_{n,j} (outer index n-1, inner j) for a basis.
std::vector<std::vector<double>> estimate_zeta(const VIEProblem& problem,
                                               const WaveletBasis& basis,
                                               const CriterionConfig& cfg,
                                               int quad_order);

/// Evaluates, at every collocation point t_{n,m},
///
///   |U(t) - g(t) - 2^{alpha-1} t^{1-alpha-beta} sum_l w_l kappa(t,x_l) U(x_l)|
///     + t^{1-alpha-beta+2N} xi_{alpha,N} |sum_j u_{n,j} zeta_{n,j}|
///
/// and reports whether every value is below epsilon.
CriterionReport evaluate_criterion(const VIEProblem& problem,
                                   const WaveletSolution& sol,
                                   const CriterionConfig& cfg,
                                   int quad_order = kDefaultQuadOrder);

struct BasisSelection {
  WaveletSolution solution;
  CriterionReport report;

  const WaveletBasis& basis() const noexcept { return solution.basis(); }
};

/// Walks (k, M) with 1 <= k <= k_max, 0 <= M <= M_max in ascending basis size
/// (ties: smaller M first) and returns the first configuration meeting the
/// criterion; otherwise the one with the smallest worst value, with
/// report.satisfied false.
BasisSelection select_basis(const VIEProblem& problem,
                            const JacobiParams& params,
                            const CriterionConfig& cfg, int k_max, int M_max,
                            int quad_order = kDefaultQuadOrder);

/// CSV rows "n,m,t,residual,derivative_term,combined".
void write_criterion_csv(std::ostream& out, const CriterionReport& report);

}  // namespace jwvie
