#include "jwvie/benchmarks.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <numbers>
#include <thread>

#include "jwvie/errors.hpp"
#include "jwvie/format.hpp"
#include "jwvie/quadrature.hpp"

namespace jwvie {

namespace {

using std::numbers::pi;

double gamma_ratio_example1() {
  // Gamma(1/3) Gamma(55/12) / (pi sqrt(3) Gamma(59/12))
  return std::exp(log_gamma(1.0 / 3.0) + log_gamma(55.0 / 12.0) -
                  log_gamma(59.0 / 12.0)) /
         (pi * std::sqrt(3.0));
}

double gamma_ratio_example3() {
  // Gamma(19/5) / (sqrt(2 pi) Gamma(43/10))
  return std::exp(log_gamma(19.0 / 5.0) - log_gamma(43.0 / 10.0)) /
         std::sqrt(2.0 * pi);
}

// Local weight factor and rule for the global weight w(2t/T - 1) restricted
// to subinterval n of nb. Endpoint singularities at t=0 and t=T are folded
// into the rule; the remaining smooth factor is returned by the callable.
struct GlobalWeightPiece {
  JacobiParams rule_params;
  double nu_exp;     // exponent applied to (1-s) in the smooth factor, or 0
  double gamma_exp;  // exponent applied to (1+s) in the smooth factor, or 0
  double constant;
};

GlobalWeightPiece global_piece(const JacobiParams& p, int n, int nb) {
  const double nu = p.nu();
  const double ga = p.gamma();
  if (nb == 1) return {p, 0.0, 0.0, 1.0};
  if (n == 1) {
    return {JacobiParams(0.0, ga), nu, 0.0, std::pow(nb, -ga)};
  }
  if (n == nb) {
    return {JacobiParams(nu, 0.0), 0.0, ga, std::pow(nb, -nu)};
  }
  return {JacobiParams(0.0, 0.0), nu, ga, 1.0};
}

template <class Body>
void parallel_for(int count, int threads, Body body) {
  const int workers = std::max(1, std::min(threads, count));
  if (workers == 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (int i = next++; i < count; i = next++) {
          try {
            body(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

std::string_view to_string(BenchmarkId id) {
  switch (id) {
    case BenchmarkId::kExample1: return "example1";
    case BenchmarkId::kExample2: return "example2";
    case BenchmarkId::kExample3: return "example3";
  }
  return "unknown";
}

BenchmarkId parse_benchmark_id(std::string_view name) {
  if (name == "example1") return BenchmarkId::kExample1;
  if (name == "example2") return BenchmarkId::kExample2;
  if (name == "example3") return BenchmarkId::kExample3;
  throw DomainError("unknown benchmark '" + std::string(name) + "'");
}

BenchmarkProblem make_benchmark(BenchmarkId id) {
  switch (id) {
    case BenchmarkId::kExample1: {
      // f(t) = t^{47/12} (1 - c); g = f / t^{2/3} = (1 - c) t^{13/4}
      const double scale = 1.0 - gamma_ratio_example1();
      const double k1 = std::sqrt(3.0) / (3.0 * pi);
      return {id,
              {2.0 / 3.0, 2.0 / 3.0, 1.0,
               [k1](double, double) { return k1; },
               [scale](double t) { return scale * std::pow(t, 13.0 / 4.0); },
               [](double t) { return std::pow(t, 13.0 / 4.0); }}};
    }
    case BenchmarkId::kExample2: {
      // alpha + beta - 1 = 0, so kappa1 = kappa = 1/2.
      return {id,
              {0.0, 1.0, 1.0,
               [](double, double) { return 0.5; },
               [](double t) { return 6.0 / 7.0 * std::pow(t, 2.5); },
               [](double t) { return std::pow(t, 2.5); }}};
    }
    case BenchmarkId::kExample3: {
      // f(t) = t^{33/10} (1 - c); g = (1 - c) t^{9/5}; kappa = x kappa1.
      const double scale = 1.0 - gamma_ratio_example3();
      const double k1 = std::sqrt(2.0) / (2.0 * pi);
      return {id,
              {0.5, 1.5, 1.0,
               [k1](double, double) { return k1; },
               [scale](double t) { return scale * std::pow(t, 9.0 / 5.0); },
               [](double t) { return std::pow(t, 9.0 / 5.0); }}};
    }
  }
  throw DomainError("unknown benchmark id");
}

double weighted_l2_error(const WaveletSolution& sol, const ScalarFunction& exact,
                         int quad_order, ErrorWeight weight) {
  const WaveletBasis& basis = sol.basis();
  const int nb = basis.num_subintervals();
  const double jacobian = std::ldexp(basis.T(), -basis.k());
  double total = 0.0;
  for (int n = 1; n <= nb; ++n) {
    const GlobalWeightPiece piece =
        weight == ErrorWeight::kGlobal
            ? global_piece(basis.params(), n, nb)
            : GlobalWeightPiece{basis.params(), 0.0, 0.0, 1.0};
    const auto rule = cached_gauss_jacobi_rule(piece.rule_params, quad_order);
    const double sum = apply_rule(*rule, [&](double y) {
      const double t = basis.global_coordinate(n, y);
      const double e = eval_expansion(sol, t) - exact(t);
      double factor = piece.constant;
      if (piece.nu_exp != 0.0) {
        factor *= std::pow((2.0 * nb - 2.0 * n + 1.0 - y) / nb, piece.nu_exp);
      }
      if (piece.gamma_exp != 0.0) {
        factor *= std::pow((y + 2.0 * n - 1.0) / nb, piece.gamma_exp);
      }
      return factor * e * e;
    });
    total += jacobian * sum;
  }
  return std::sqrt(total);
}

double max_error_at_collocation(const WaveletSolution& sol,
                                const ScalarFunction& exact,
                                const CollocationGrid& grid) {
  if (static_cast<int>(grid.points.size()) != sol.basis().size()) {
    throw DomainError("collocation grid does not match the solution basis");
  }
  double worst = 0.0;
  for (double t : grid.points) {
    worst = std::max(worst, std::abs(eval_expansion(sol, t) - exact(t)));
  }
  return worst;
}

int default_thread_count() {
  if (const char* env = std::getenv("JWVIE_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

ConvergenceTable run_convergence_study(BenchmarkId id, const JacobiParams& params,
                                       const std::vector<int>& M_list,
                                       const std::vector<int>& k_list,
                                       const StudyOptions& options) {
  if (M_list.empty() || k_list.empty()) {
    throw DomainError("convergence study needs non-empty M and k lists");
  }
  const BenchmarkProblem bench = make_benchmark(id);
  const ScalarFunction& exact = *bench.problem.exact;

  ConvergenceTable table;
  table.rows.resize(M_list.size() * k_list.size());
  const int cells = static_cast<int>(table.rows.size());
  const int threads =
      options.threads > 0 ? options.threads : default_thread_count();

  parallel_for(cells, threads, [&](int cell) {
    const int M = M_list[cell / k_list.size()];
    const int k = k_list[cell % k_list.size()];
    const WaveletBasis basis(k, M, bench.problem.T, params);
    const WaveletSolution sol = solve(bench.problem, basis, options.quad_order);
    table.rows[cell] = {k,
                        M,
                        params.nu(),
                        params.gamma(),
                        weighted_l2_error(sol, exact, options.error_order,
                                          options.weight),
                        std::nullopt,
                        max_error_at_collocation(
                            sol, exact, build_collocation_grid(basis))};
  });

  for (std::size_t i = 1; i < table.rows.size(); ++i) {
    ConvergenceRow& row = table.rows[i];
    const ConvergenceRow& prev = table.rows[i - 1];
    if (prev.M == row.M && prev.k == row.k - 1) {
      row.ratio = prev.l2_error / row.l2_error;
    }
  }
  return table;
}

void write_table_csv(std::ostream& out, const ConvergenceTable& table) {
  out << "k,M,nu,gamma,l2_error,ratio,max_abs_colloc\n";
  for (const ConvergenceRow& r : table.rows) {
    out << r.k << ',' << r.M << ',' << format_sci(r.nu) << ','
        << format_sci(r.gamma) << ',' << format_sci(r.l2_error) << ','
        << (r.ratio ? format_sci(*r.ratio) : std::string()) << ','
        << format_sci(r.max_abs_colloc) << '\n';
  }
}

void write_error_samples_csv(std::ostream& out, const WaveletSolution& sol,
                             const ScalarFunction& exact, int count) {
  if (count < 2) throw DomainError("need at least two error samples");
  const double T = sol.basis().T();
  out << "t,error\n";
  for (int i = 0; i < count; ++i) {
    const double t = i == count - 1 ? T : T * i / (count - 1);
    out << format_sci(t) << ',' << format_sci(eval_expansion(sol, t) - exact(t))
        << '\n';
  }
}

double sobolev_seminorm(const std::vector<ScalarFunction>& derivatives,
                        const WaveletBasis& basis, int r, int mu,
                        int quad_order) {
  if (r < 0 || r > mu) throw DomainError("seminorm needs 0 <= r <= mu");
  if (static_cast<int>(derivatives.size()) <= mu) {
    throw DomainError("seminorm needs derivatives up to order mu");
  }
  const auto rule = cached_gauss_jacobi_rule(basis.params(), quad_order);
  const double jacobian = std::ldexp(basis.T(), -basis.k());
  const double two_k = std::ldexp(1.0, basis.k());
  double total = 0.0;
  for (int j = std::min(mu, basis.M() + 1); j <= mu; ++j) {
    const ScalarFunction& d = derivatives[j];
    double norm_sq = 0.0;
    for (int n = 1; n <= basis.num_subintervals(); ++n) {
      norm_sq += jacobian * apply_rule(*rule, [&](double y) {
                   const double v = d(basis.global_coordinate(n, y));
                   return v * v;
                 });
    }
    total += std::pow(two_k, 2.0 * r - 2.0 * j) * norm_sq;
  }
  return std::sqrt(total);
}

}  // namespace jwvie
