#include "jwvie/solver.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "jwvie/errors.hpp"
#include "jwvie/quadrature.hpp"

namespace jwvie {

namespace {

constexpr int kBlockSubstitutionLevel = 4;
constexpr double kResidualTolerance = 1e-10;

}  // namespace

void VIEProblem::validate() const {
  if (!(alpha >= 0.0 && alpha < 1.0)) {
    throw DomainError("alpha must lie in [0,1), got " + std::to_string(alpha));
  }
  if (!(beta > 0.0)) {
    throw DomainError("beta must be positive, got " + std::to_string(beta));
  }
  if (!(alpha + beta >= 1.0)) {
    throw DomainError("alpha + beta must be at least 1");
  }
  if (!(T > 0.0) || !std::isfinite(T)) {
    throw DomainError("horizon T must be positive and finite");
  }
  if (!kernel1 || !forcing_g) {
    throw DomainError("problem needs both kernel1 and forcing_g");
  }
}

double VIEProblem::kernel(double t, double x) const {
  return std::pow(x, alpha + beta - 1.0) * kernel1(t, x);
}

double VIEProblem::forcing(double t) const {
  return std::pow(t, beta) * forcing_g(t);
}

CollocationGrid build_collocation_grid(const WaveletBasis& basis) {
  const auto rule = cached_gauss_jacobi_rule(basis.params(), basis.M() + 1);
  CollocationGrid grid{rule->nodes, {}};
  grid.points.reserve(basis.size());
  for (int n = 1; n <= basis.num_subintervals(); ++n) {
    for (double tau : grid.tau) {
      grid.points.push_back(basis.global_coordinate(n, tau));
    }
  }
  return grid;
}

LinearSystem assemble(const VIEProblem& problem, const WaveletBasis& basis,
                      int quad_order) {
  problem.validate();
  if (basis.T() != problem.T) {
    throw DomainError("basis horizon does not match problem horizon");
  }
  const CollocationGrid grid = build_collocation_grid(basis);
  const auto inner =
      cached_gauss_jacobi_rule(JacobiParams(-problem.alpha, 0.0), quad_order);

  const int size = basis.size();
  const int M = basis.M();
  LinearSystem sys{Eigen::MatrixXd::Zero(size, size), Eigen::VectorXd(size)};
  std::vector<double> psi(M + 1);

  for (int row = 0; row < size; ++row) {
    const double t = grid.points[row];
    const int n = row / (M + 1) + 1;

    basis.eval_local(grid.tau[row % (M + 1)], psi.data());
    const double t_beta = std::pow(t, problem.beta);
    for (int j = 0; j <= M; ++j) sys.A(row, basis.flat({n, j})) += t_beta * psi[j];

    const double prefactor = std::pow(0.5 * t, 1.0 - problem.alpha);
    for (int l = 0; l < quad_order; ++l) {
      const double x = 0.5 * t * (inner->nodes[l] + 1.0);
      if (!(x > 0.0 && x < t)) {
        throw NumericError("inner abscissa escaped (0,t) at row " +
                           std::to_string(row) + ", node " + std::to_string(l));
      }
      const double kappa = problem.kernel(t, x);
      if (!std::isfinite(kappa)) {
        throw NumericError("kernel is not finite at row " +
                           std::to_string(row) + ", node " + std::to_string(l));
      }
      const int i = basis.subinterval_of(x);
      basis.eval_local(basis.local_coordinate(i, x), psi.data());
      const double c = prefactor * inner->weights[l] * kappa;
      for (int j = 0; j <= M; ++j) sys.A(row, basis.flat({i, j})) -= c * psi[j];
    }

    sys.F(row) = problem.forcing(t);
    if (!std::isfinite(sys.F(row))) {
      throw NumericError("forcing is not finite at row " + std::to_string(row));
    }
  }
  return sys;
}

SolveReport solve_with_report(const VIEProblem& problem,
                              const WaveletBasis& basis, int quad_order) {
  const LinearSystem sys = assemble(problem, basis, quad_order);
  const int size = basis.size();
  Eigen::VectorXd U(size);
  double rcond = 0.0;
  // Dimension-scaled: a column that vanishes up to round-off still leaves an
  // rcond estimate of a few eps.
  double singular_below = std::numeric_limits<double>::epsilon();

  if (basis.k() >= kBlockSubstitutionLevel) {
    // Columns of later subintervals never reach earlier rows (x < t), so the
    // system is block lower-triangular.
    const int b = basis.M() + 1;
    rcond = std::numeric_limits<double>::infinity();
    singular_below *= b;
    for (int n = 0; n < basis.num_subintervals(); ++n) {
      Eigen::VectorXd rhs = sys.F.segment(n * b, b);
      if (n > 0) {
        rhs.noalias() -= sys.A.block(n * b, 0, b, n * b) * U.head(n * b);
      }
      Eigen::PartialPivLU<Eigen::MatrixXd> lu(sys.A.block(n * b, n * b, b, b));
      rcond = std::min(rcond, lu.rcond());
      U.segment(n * b, b) = lu.solve(rhs);
    }
  } else {
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(sys.A);
    rcond = lu.rcond();
    singular_below *= size;
    U = lu.solve(sys.F);
  }

  if (!(rcond > singular_below)) {
    throw SolverError("collocation matrix is singular to working precision "
                      "(rcond=" + std::to_string(rcond) + ")",
                      rcond);
  }
  const double residual = (sys.A * U - sys.F).lpNorm<Eigen::Infinity>();
  const double bound =
      kResidualTolerance * (1.0 + sys.F.lpNorm<Eigen::Infinity>());
  if (!(residual <= bound)) {
    throw SolverError("collocation residual " + std::to_string(residual) +
                          " exceeds tolerance (rcond=" + std::to_string(rcond) +
                          ")",
                      rcond);
  }
  return {WaveletSolution(basis, std::vector<double>(U.data(), U.data() + size)),
          rcond, residual};
}

WaveletSolution solve(const VIEProblem& problem, const WaveletBasis& basis,
                      int quad_order) {
  return solve_with_report(problem, basis, quad_order).solution;
}

}  // namespace jwvie
