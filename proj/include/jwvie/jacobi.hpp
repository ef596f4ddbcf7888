#pragma once

// Jacobi polynomials P_i^{(nu,gamma)} on [-1,1] and the associated weight
// w(t) = (1-t)^nu (1+t)^gamma.

namespace jwvie {

/// Parameter pair of a Jacobi family. Both must exceed -1.
class JacobiParams {
 public:
  JacobiParams(double nu, double gamma);

  double nu() const noexcept { return nu_; }
  double gamma() const noexcept { return gamma_; }

  friend bool operator==(const JacobiParams&, const JacobiParams&) = default;

 private:
  double nu_;
  double gamma_;
};

/// P_degree^{(nu,gamma)}(t) by the three-term recurrence. Arguments within
/// 1e-12 outside [-1,1] are clamped; anything further throws DomainError.
double eval_jacobi(const JacobiParams& params, int degree, double t);

/// d/dt P_degree^{(nu,gamma)}(t) = (degree+nu+gamma+1)/2 * P_{degree-1}^{(nu+1,gamma+1)}(t).
double eval_jacobi_derivative(const JacobiParams& params, int degree, double t);

/// Evaluates P_0..P_max_degree at t in one recurrence sweep. out must hold
/// max_degree+1 values.
void eval_jacobi_all(const JacobiParams& params, int max_degree, double t,
                     double* out);

/// h_degree = integral of w * P_degree^2 over [-1,1].
double jacobi_norm(const JacobiParams& params, int degree);

double eval_weight(const JacobiParams& params, double t);

/// log Gamma(x) for x > 0.
double log_gamma(double x);

}  // namespace jwvie
