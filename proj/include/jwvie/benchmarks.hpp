#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "jwvie/solver.hpp"

namespace jwvie {

enum class BenchmarkId { kExample1, kExample2, kExample3 };

/// "example1" / "example2" / "example3".
std::string_view to_string(BenchmarkId id);
/// Inverse of to_string; throws DomainError on an unknown name.
BenchmarkId parse_benchmark_id(std::string_view name);

struct BenchmarkProblem {
  BenchmarkId id;
  VIEProblem problem;  // exact solution always attached
};

/// The three model equations on [0,1]:
///   example1  alpha = beta = 2/3, kappa1 = sqrt(3)/(3 pi), u = t^{13/4}
///   example2  alpha = 0, beta = 1, kappa1 = 1/2,            u = t^{5/2}
///   example3  alpha = 1/2, beta = 3/2, kappa1 = sqrt(2)/(2 pi), u = t^{9/5}
BenchmarkProblem make_benchmark(BenchmarkId id);

enum class ErrorWeight {
  /// w^{(nu,gamma)}(2t/T - 1) over the whole of [0,T]. This is the norm the
  /// published convergence tables are reported in.
  kGlobal,
  /// Piecewise w_{n,k} on each subinterval (the orthonormality weight).
  kPiecewise,
};

inline constexpr int kErrorQuadOrder = 30;

/// Weighted L2 norm of U - exact. Each subinterval is integrated with an
/// order-quad_order Gauss-Jacobi rule absorbing whatever endpoint
/// singularities the chosen weight has there.
double weighted_l2_error(const WaveletSolution& sol, const ScalarFunction& exact,
                         int quad_order = kErrorQuadOrder,
                         ErrorWeight weight = ErrorWeight::kGlobal);

double max_error_at_collocation(const WaveletSolution& sol,
                                const ScalarFunction& exact,
                                const CollocationGrid& grid);

struct ConvergenceRow {
  int k;
  int M;
  double nu;
  double gamma;
  double l2_error;
  std::optional<double> ratio;  // e(k-1)/e(k) within the same M
  double max_abs_colloc;
};

struct ConvergenceTable {
  std::vector<ConvergenceRow> rows;  // M outer, k inner
};

struct StudyOptions {
  int quad_order = kDefaultQuadOrder;
  int error_order = kErrorQuadOrder;
  ErrorWeight weight = ErrorWeight::kGlobal;
  /// 0 selects JWVIE_THREADS or the hardware concurrency.
  int threads = 0;
};

/// Solves every (M, k) cell (in parallel) and assembles rows in
/// deterministic order. Ratios are filled when the preceding k in k_list is
/// exactly k-1.
ConvergenceTable run_convergence_study(BenchmarkId id, const JacobiParams& params,
                                       const std::vector<int>& M_list,
                                       const std::vector<int>& k_list,
                                       const StudyOptions& options = {});

void write_table_csv(std::ostream& out, const ConvergenceTable& table);

/// Samples U(t) - exact(t) on count uniformly spaced points of [0,T] and
/// writes "t,error" rows.
void write_error_samples_csv(std::ostream& out, const WaveletSolution& sol,
                             const ScalarFunction& exact, int count = 2000);

/// (sum_{j=min(mu,M+1)}^{mu} (2^k)^{2r-2j} ||u^{(j)}||^2_{w_k})^{1/2} where
/// derivatives[j] is the j-th derivative of u.
double sobolev_seminorm(const std::vector<ScalarFunction>& derivatives,
                        const WaveletBasis& basis, int r, int mu,
                        int quad_order = kErrorQuadOrder);

/// Worker count from JWVIE_THREADS when set and positive, else the hardware
/// concurrency (at least 1).
int default_thread_count();

}  // namespace jwvie
