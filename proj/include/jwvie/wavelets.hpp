#pragma once

#include <cmath>
#include <functional>
#include <ostream>
#include <vector>

#include "jwvie/jacobi.hpp"

namespace jwvie {

/// Position of one basis function: subinterval n (1-based) and degree m.
struct WaveletIndex {
  int n;
  int m;
};

/// Generalized Jacobi wavelet basis on [0,T): 2^{k-1} dyadic subintervals,
/// degrees 0..M on each.
///
///   psi_{n,m}(t) = 2^{k/2} / sqrt(h_m T) * P_m(2^k t / T - 2n + 1)   on I_{k,n}
///
/// and zero elsewhere. The last subinterval is treated as closed at T.
class WaveletBasis {
 public:
  WaveletBasis(int k, int M, double T, JacobiParams params);

  int k() const noexcept { return k_; }
  int M() const noexcept { return M_; }
  double T() const noexcept { return T_; }
  const JacobiParams& params() const noexcept { return params_; }

  int num_subintervals() const noexcept { return 1 << (k_ - 1); }
  int size() const noexcept { return num_subintervals() * (M_ + 1); }
  double subinterval_width() const noexcept { return T_ / num_subintervals(); }

  /// Row-major flat position (n outer, m inner).
  int flat(WaveletIndex idx) const noexcept {
    return (idx.n - 1) * (M_ + 1) + idx.m;
  }

  /// Subinterval containing t in [0,T]. A breakpoint itself belongs to the
  /// subinterval it opens, but values above it by less than 1e-14 T are
  /// treated as round-off and snapped to the lower one.
  int subinterval_of(double t) const;

  double lower(int n) const noexcept { return (n - 1) * subinterval_width(); }
  double upper(int n) const noexcept { return n * subinterval_width(); }

  /// Affine map of t onto [-1,1] relative to subinterval n.
  double local_coordinate(int n, double t) const noexcept {
    return std::ldexp(t / T_, k_) - 2.0 * n + 1.0;
  }
  /// Inverse of local_coordinate.
  double global_coordinate(int n, double y) const noexcept {
    return T_ * std::ldexp(y + 2.0 * n - 1.0, -k_);
  }

  /// 2^{k/2} / sqrt(h_m T).
  double scale(int m) const { return scales_.at(m); }

  /// psi_{n,0..M} restricted to subinterval n, at local coordinate y.
  void eval_local(double y, double* out) const;

 private:
  int k_;
  int M_;
  double T_;
  JacobiParams params_;
  std::vector<double> scales_;
};

double eval_wavelet(const WaveletBasis& basis, WaveletIndex idx, double t);

/// w_{n,k}(t) = w^{(nu,gamma)}(2^k t / T - 2n + 1) on the subinterval holding t.
double eval_piecewise_weight(const WaveletBasis& basis, double t);

/// Expansion coefficients u_{n,m} over a basis.
class WaveletSolution {
 public:
  WaveletSolution(WaveletBasis basis, std::vector<double> coeffs);

  const WaveletBasis& basis() const noexcept { return basis_; }
  const std::vector<double>& coeffs() const noexcept { return coeffs_; }
  double coeff(WaveletIndex idx) const { return coeffs_.at(basis_.flat(idx)); }

 private:
  WaveletBasis basis_;
  std::vector<double> coeffs_;
};

/// Sum over the single active subinterval of u_{n,m} psi_{n,m}(t).
double eval_expansion(const WaveletSolution& sol, double t);

/// Weighted-L2 best approximation of u. quad_order <= 0 selects M + 8.
WaveletSolution project(const WaveletBasis& basis,
                        const std::function<double(double)>& u,
                        int quad_order = 0);

/// CSV rows "n,m,coefficient" with a header line.
void write_coefficients_csv(std::ostream& out, const WaveletSolution& sol);

}  // namespace jwvie
