#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <vector>

#include "jwvie/wavelets.hpp"

namespace jwvie {

using ScalarFunction = std::function<double(double)>;
using KernelFunction = std::function<double(double t, double x)>;

/// Third-kind Volterra equation on [0,T]:
///
///   t^beta u(t) = t^beta g(t) + int_0^t (t-x)^{-alpha} kappa(t,x) u(x) dx,
///   kappa(t,x)  = x^{alpha+beta-1} kappa1(t,x).
///
/// Requires beta > 0, alpha in [0,1), alpha + beta >= 1. Callbacks must be
/// safe to call concurrently.
struct VIEProblem {
  double alpha;
  double beta;
  double T;
  KernelFunction kernel1;
  ScalarFunction forcing_g;
  std::optional<ScalarFunction> exact;

  /// Throws DomainError if the parameter constraints are violated.
  void validate() const;

  double kernel(double t, double x) const;
  /// f(t) = t^beta g(t).
  double forcing(double t) const;
};

/// Shifted Gauss-Jacobi collocation points, indexed like the basis.
struct CollocationGrid {
  std::vector<double> tau;     // zeros of P_{M+1}^{(nu,gamma)}
  std::vector<double> points;  // t_{n,m} = T/2^k (tau_m + 2n - 1), n-major
};

/// Dense collocation system A U = F.
struct LinearSystem {
  Eigen::MatrixXd A;
  Eigen::VectorXd F;
};

struct SolveReport {
  WaveletSolution solution;
  double rcond;     // reciprocal 1-norm condition estimate
  double residual;  // ||A U - F||_inf
};

inline constexpr int kDefaultQuadOrder = 10;

CollocationGrid build_collocation_grid(const WaveletBasis& basis);

LinearSystem assemble(const VIEProblem& problem, const WaveletBasis& basis,
                      int quad_order = kDefaultQuadOrder);

/// Assembles and solves the collocation system. Uses forward block
/// substitution for k >= 4 and dense partial-pivot LU otherwise. Throws
/// SolverError if the system is singular to working precision or the
/// residual check fails.
SolveReport solve_with_report(const VIEProblem& problem,
                              const WaveletBasis& basis,
                              int quad_order = kDefaultQuadOrder);

WaveletSolution solve(const VIEProblem& problem, const WaveletBasis& basis,
                      int quad_order = kDefaultQuadOrder);

}  // namespace jwvie
