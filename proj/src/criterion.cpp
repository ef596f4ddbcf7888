#include "jwvie/criterion.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <tuple>

#include "jwvie/errors.hpp"
#include "jwvie/format.hpp"
#include "jwvie/quadrature.hpp"

namespace jwvie {

namespace {

constexpr int kTimeSamples = 5;
constexpr int kExtraDegree = 6;
// Relative magnitude below which Chebyshev coefficients are treated as
// round-off before differentiating.
constexpr double kChopTolerance = 1e-13;

std::vector<double> chebyshev_coefficients(const std::vector<double>& values) {
  const int count = static_cast<int>(values.size());
  std::vector<double> c(count, 0.0);
  for (int j = 0; j < count; ++j) {
    double s = 0.0;
    for (int i = 0; i < count; ++i) {
      s += values[i] * std::cos(std::numbers::pi * j * (i + 0.5) / count);
    }
    c[j] = 2.0 * s / count;
  }
  c[0] *= 0.5;
  return c;
}

void chop(std::vector<double>& c) {
  double peak = 0.0;
  for (double v : c) peak = std::max(peak, std::abs(v));
  for (double& v : c) {
    if (std::abs(v) <= kChopTolerance * peak) v = 0.0;
  }
}

std::vector<double> differentiate(const std::vector<double>& c) {
  const int degree = static_cast<int>(c.size()) - 1;
  if (degree <= 0) return {0.0};
  std::vector<double> d(degree, 0.0);
  d[degree - 1] = 2.0 * degree * c[degree];
  if (degree >= 2) d[degree - 2] = 2.0 * (degree - 1) * c[degree - 1];
  for (int j = degree - 3; j >= 0; --j) {
    d[j] = d[j + 2] + 2.0 * (j + 1) * c[j + 1];
  }
  d[0] *= 0.5;
  return d;
}

double clenshaw(const std::vector<double>& c, double y) {
  double b1 = 0.0;
  double b2 = 0.0;
  for (int j = static_cast<int>(c.size()) - 1; j >= 1; --j) {
    const double b0 = 2.0 * y * b1 - b2 + c[j];
    b2 = b1;
    b1 = b0;
  }
  return y * b1 - b2 + c[0];
}

}  // namespace

std::vector<std::vector<double>> estimate_zeta(const VIEProblem& problem,
                                               const WaveletBasis& basis,
                                               const CriterionConfig& cfg,
                                               int quad_order) {
  const int subintervals = basis.num_subintervals();
  const int M = basis.M();
  std::vector<std::vector<double>> zeta(subintervals,
                                        std::vector<double>(M + 1, 0.0));

  if (cfg.mode == DerivBoundMode::kUserSupplied) {
    if (!cfg.user_bound) {
      throw DomainError("user-supplied derivative bound mode needs a callable");
    }
    for (int n = 1; n <= subintervals; ++n) {
      for (int j = 0; j <= M; ++j) {
        const double z = cfg.user_bound(n, j);
        if (!std::isfinite(z) || z < 0.0) {
          throw NumericError("user derivative bound is not a finite "
                             "non-negative number at (" +
                             std::to_string(n) + "," + std::to_string(j) + ")");
        }
        zeta[n - 1][j] = z;
      }
    }
    return zeta;
  }

  const int order = 2 * quad_order;
  if (cfg.sample_density < order + 1) {
    throw DomainError("sample_density must be at least 2N+1");
  }
  const int degree = order + kExtraDegree;
  const int nodes = degree + 1;
  std::vector<double> cheb(nodes);
  for (int i = 0; i < nodes; ++i) {
    cheb[i] = std::cos(std::numbers::pi * (i + 0.5) / nodes);
  }

  const double h = basis.subinterval_width();
  const double chain = std::pow(2.0 / h, order);
  std::vector<double> psi(M + 1);
  std::vector<std::vector<double>> samples(M + 1, std::vector<double>(nodes));

  for (int n = 1; n <= subintervals; ++n) {
    for (int ts = 0; ts < kTimeSamples; ++ts) {
      const double t =
          basis.lower(n) + h * static_cast<double>(ts) / (kTimeSamples - 1);
      for (int i = 0; i < nodes; ++i) {
        const double x = basis.global_coordinate(n, cheb[i]);
        const double kappa = problem.kernel(t, x);
        basis.eval_local(cheb[i], psi.data());
        for (int j = 0; j <= M; ++j) {
          samples[j][i] = kappa * psi[j];
          if (!std::isfinite(samples[j][i])) {
            throw NumericError("derivative-bound sample is not finite at t=" +
                               std::to_string(t) + ", x=" + std::to_string(x));
          }
        }
      }
      for (int j = 0; j <= M; ++j) {
        std::vector<double> c = chebyshev_coefficients(samples[j]);
        chop(c);
        for (int d = 0; d < order; ++d) c = differentiate(c);
        double peak = 0.0;
        for (int s = 0; s < cfg.sample_density; ++s) {
          const double y = -1.0 + 2.0 * s / (cfg.sample_density - 1);
          peak = std::max(peak, std::abs(clenshaw(c, y)));
        }
        const double value = peak * chain;
        if (!std::isfinite(value)) {
          throw NumericError("derivative-bound estimate overflowed on "
                             "subinterval " + std::to_string(n));
        }
        zeta[n - 1][j] = std::max(zeta[n - 1][j], value);
      }
    }
  }
  return zeta;
}

CriterionReport evaluate_criterion(const VIEProblem& problem,
                                   const WaveletSolution& sol,
                                   const CriterionConfig& cfg,
                                   int quad_order) {
  problem.validate();
  if (!(cfg.epsilon > 0.0)) throw DomainError("epsilon must be positive");
  const WaveletBasis& basis = sol.basis();
  const int M = basis.M();
  const CollocationGrid grid = build_collocation_grid(basis);
  const auto inner =
      cached_gauss_jacobi_rule(JacobiParams(-problem.alpha, 0.0), quad_order);
  const double xi = remainder_constant(problem.alpha, quad_order);
  const auto zeta = estimate_zeta(problem, basis, cfg, quad_order);

  CriterionReport report;
  report.derivative_factor.resize(basis.num_subintervals());
  for (int n = 1; n <= basis.num_subintervals(); ++n) {
    double s = 0.0;
    for (int j = 0; j <= M; ++j) s += sol.coeff({n, j}) * zeta[n - 1][j];
    report.derivative_factor[n - 1] = xi * std::abs(s);
  }

  const double a = problem.alpha;
  const double b = problem.beta;
  report.points.reserve(grid.points.size());
  for (std::size_t p = 0; p < grid.points.size(); ++p) {
    const double t = grid.points[p];
    const int n = static_cast<int>(p) / (M + 1) + 1;
    const int m = static_cast<int>(p) % (M + 1);

    double integral = 0.0;
    for (int l = 0; l < quad_order; ++l) {
      const double x = 0.5 * t * (inner->nodes[l] + 1.0);
      integral += inner->weights[l] * problem.kernel(t, x) * eval_expansion(sol, x);
    }
    const double residual =
        std::abs(eval_expansion(sol, t) - problem.forcing_g(t) -
                 std::pow(2.0, a - 1.0) * std::pow(t, 1.0 - a - b) * integral);
    const double derivative =
        std::pow(t, 1.0 - a - b + 2.0 * quad_order) *
        report.derivative_factor[n - 1];
    if (!std::isfinite(residual) || !std::isfinite(derivative)) {
      throw NumericError("criterion is not finite at collocation point " +
                         std::to_string(p));
    }
    report.points.push_back({n, m, t, residual, derivative, residual + derivative});
  }

  report.satisfied = true;
  for (std::size_t p = 0; p < report.points.size(); ++p) {
    const double v = report.points[p].combined;
    if (!(v < cfg.epsilon)) report.satisfied = false;
    if (p == 0 || v > report.worst_value) {
      report.worst_value = v;
      report.worst_point = static_cast<int>(p);
    }
  }
  return report;
}

BasisSelection select_basis(const VIEProblem& problem,
                            const JacobiParams& params,
                            const CriterionConfig& cfg, int k_max, int M_max,
                            int quad_order) {
  if (k_max < 1 || M_max < 0) {
    throw DomainError("select_basis needs k_max >= 1 and M_max >= 0");
  }
  std::vector<std::tuple<int, int, int>> order;  // (size, M, k)
  for (int k = 1; k <= k_max; ++k) {
    for (int M = 0; M <= M_max; ++M) {
      order.emplace_back((1 << (k - 1)) * (M + 1), M, k);
    }
  }
  std::sort(order.begin(), order.end());

  std::optional<BasisSelection> best;
  for (const auto& [size, M, k] : order) {
    WaveletBasis basis(k, M, problem.T, params);
    BasisSelection candidate{solve(problem, basis, quad_order), {}};
    candidate.report =
        evaluate_criterion(problem, candidate.solution, cfg, quad_order);
    if (candidate.report.satisfied) return candidate;
    if (!best || candidate.report.worst_value < best->report.worst_value) {
      best = std::move(candidate);
    }
  }
  return std::move(*best);
}

void write_criterion_csv(std::ostream& out, const CriterionReport& report) {
  out << "n,m,t,residual,derivative_term,combined\n";
  for (const CriterionPoint& p : report.points) {
    out << p.n << ',' << p.m << ',' << format_sci(p.t) << ','
        << format_sci(p.residual) << ',' << format_sci(p.derivative_term) << ','
        << format_sci(p.combined) << '\n';
  }
}

}  // namespace jwvie
