#include "jwvie/wavelets.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "jwvie/errors.hpp"
#include "jwvie/format.hpp"
#include "jwvie/quadrature.hpp"

namespace jwvie {

namespace {

constexpr double kBreakpointSnap = 1e-14;

void check_time(const WaveletBasis& basis, double t) {
  if (!(t >= 0.0 && t <= basis.T())) {
    throw DomainError("t=" + std::to_string(t) + " outside [0," +
                      std::to_string(basis.T()) + "]");
  }
}

}  // namespace

WaveletBasis::WaveletBasis(int k, int M, double T, JacobiParams params)
    : k_(k), M_(M), T_(T), params_(params) {
  if (k < 1 || k > 30) {
    throw DomainError("resolution level k must lie in [1,30], got " +
                      std::to_string(k));
  }
  if (M < 0) throw DomainError("degree M must be non-negative");
  if (!(T > 0.0) || !std::isfinite(T)) {
    throw DomainError("horizon T must be positive and finite");
  }
  scales_.resize(M + 1);
  for (int m = 0; m <= M; ++m) {
    scales_[m] = std::sqrt(std::ldexp(1.0, k) / (jacobi_norm(params, m) * T));
  }
}

int WaveletBasis::subinterval_of(double t) const {
  check_time(*this, t);
  const double scaled = t / subinterval_width();
  int n = static_cast<int>(std::floor(scaled)) + 1;
  // A point just above a breakpoint by round-off belongs below it.
  if (n > 1 && scaled > n - 1 &&
      scaled - (n - 1) < kBreakpointSnap * num_subintervals()) --n;
  return std::clamp(n, 1, num_subintervals());
}

void WaveletBasis::eval_local(double y, double* out) const {
  eval_jacobi_all(params_, M_, y, out);
  for (int m = 0; m <= M_; ++m) out[m] *= scales_[m];
}

double eval_wavelet(const WaveletBasis& basis, WaveletIndex idx, double t) {
  check_time(basis, t);
  if (idx.n < 1 || idx.n > basis.num_subintervals() || idx.m < 0 ||
      idx.m > basis.M()) {
    throw DomainError("wavelet index out of range");
  }
  if (basis.subinterval_of(t) != idx.n) return 0.0;
  return basis.scale(idx.m) *
         eval_jacobi(basis.params(), idx.m, basis.local_coordinate(idx.n, t));
}

double eval_piecewise_weight(const WaveletBasis& basis, double t) {
  check_time(basis, t);
  const int n = basis.subinterval_of(t);
  return eval_weight(basis.params(),
                     std::clamp(basis.local_coordinate(n, t), -1.0, 1.0));
}

WaveletSolution::WaveletSolution(WaveletBasis basis, std::vector<double> coeffs)
    : basis_(std::move(basis)), coeffs_(std::move(coeffs)) {
  if (static_cast<int>(coeffs_.size()) != basis_.size()) {
    throw DomainError("coefficient count " + std::to_string(coeffs_.size()) +
                      " does not match basis size " +
                      std::to_string(basis_.size()));
  }
  for (double c : coeffs_) {
    if (!std::isfinite(c)) throw NumericError("non-finite wavelet coefficient");
  }
}

double eval_expansion(const WaveletSolution& sol, double t) {
  const WaveletBasis& basis = sol.basis();
  check_time(basis, t);
  const int n = basis.subinterval_of(t);
  const double y = basis.local_coordinate(n, t);
  std::vector<double> psi(basis.M() + 1);
  basis.eval_local(y, psi.data());
  const double* u = sol.coeffs().data() + basis.flat({n, 0});
  double sum = 0.0;
  for (int m = 0; m <= basis.M(); ++m) sum += u[m] * psi[m];
  return sum;
}

WaveletSolution project(const WaveletBasis& basis,
                        const std::function<double(double)>& u,
                        int quad_order) {
  const int order = quad_order > 0 ? quad_order : basis.M() + 8;
  const auto rule = cached_gauss_jacobi_rule(basis.params(), order);
  const int M = basis.M();
  // dt = (T / 2^k) dy on each subinterval.
  const double jacobian = std::ldexp(basis.T(), -basis.k());

  std::vector<double> coeffs(basis.size(), 0.0);
  std::vector<double> psi(M + 1);
  for (int n = 1; n <= basis.num_subintervals(); ++n) {
    double* c = coeffs.data() + basis.flat({n, 0});
    for (int l = 0; l < order; ++l) {
      const double y = rule->nodes[l];
      const double value = u(basis.global_coordinate(n, y));
      if (!std::isfinite(value)) {
        throw NumericError("projected function is not finite at t=" +
                           std::to_string(basis.global_coordinate(n, y)));
      }
      basis.eval_local(y, psi.data());
      for (int m = 0; m <= M; ++m) {
        c[m] += rule->weights[l] * value * psi[m];
      }
    }
    for (int m = 0; m <= M; ++m) c[m] *= jacobian;
  }
  return WaveletSolution(basis, std::move(coeffs));
}

void write_coefficients_csv(std::ostream& out, const WaveletSolution& sol) {
  const WaveletBasis& basis = sol.basis();
  out << "n,m,coefficient\n";
  for (int n = 1; n <= basis.num_subintervals(); ++n) {
    for (int m = 0; m <= basis.M(); ++m) {
      out << n << ',' << m << ',' << format_sci(sol.coeff({n, m})) << '\n';
    }
  }
}

}  // namespace jwvie
