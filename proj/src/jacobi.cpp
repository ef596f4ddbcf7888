#include "jwvie/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "jwvie/errors.hpp"

namespace jwvie {

namespace {

constexpr double kClampSlack = 1e-12;

double checked_argument(double t) {
  if (!(t >= -1.0 - kClampSlack && t <= 1.0 + kClampSlack)) {
    throw DomainError("Jacobi argument outside [-1,1]: " + std::to_string(t));
  }
  return std::clamp(t, -1.0, 1.0);
}

void check_degree(int degree) {
  if (degree < 0) {
    throw DomainError("negative Jacobi degree " + std::to_string(degree));
  }
}

// P_0..P_max_degree at an already validated argument.
void recurrence(double a, double b, int max_degree, double t, double* out) {
  out[0] = 1.0;
  if (max_degree == 0) return;
  out[1] = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * t;
  const double ab = a + b;
  const double a2b2 = a * a - b * b;
  for (int n = 2; n <= max_degree; ++n) {
    const double c = 2.0 * n + ab;
    const double denom = 2.0 * n * (n + ab) * (c - 2.0);
    const double p = (c - 1.0) * (c * (c - 2.0) * t + a2b2);
    const double q = 2.0 * (n + a - 1.0) * (n + b - 1.0) * c;
    out[n] = (p * out[n - 1] - q * out[n - 2]) / denom;
  }
}

double single(double a, double b, int degree, double t) {
  if (degree == 0) return 1.0;
  double p0 = 1.0;
  double p1 = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * t;
  const double ab = a + b;
  const double a2b2 = a * a - b * b;
  for (int n = 2; n <= degree; ++n) {
    const double c = 2.0 * n + ab;
    const double denom = 2.0 * n * (n + ab) * (c - 2.0);
    const double p2 = ((c - 1.0) * (c * (c - 2.0) * t + a2b2) * p1 -
                       2.0 * (n + a - 1.0) * (n + b - 1.0) * c * p0) /
                      denom;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

}  // namespace

JacobiParams::JacobiParams(double nu, double gamma) : nu_(nu), gamma_(gamma) {
  if (!(nu > -1.0) || !(gamma > -1.0) || !std::isfinite(nu) ||
      !std::isfinite(gamma)) {
    throw DomainError("Jacobi parameters must exceed -1 (nu=" +
                      std::to_string(nu) + ", gamma=" + std::to_string(gamma) +
                      ")");
  }
}

double eval_jacobi(const JacobiParams& params, int degree, double t) {
  check_degree(degree);
  return single(params.nu(), params.gamma(), degree, checked_argument(t));
}

double eval_jacobi_derivative(const JacobiParams& params, int degree,
                              double t) {
  check_degree(degree);
  const double x = checked_argument(t);
  if (degree == 0) return 0.0;
  const double a = params.nu();
  const double b = params.gamma();
  return 0.5 * (degree + a + b + 1.0) * single(a + 1.0, b + 1.0, degree - 1, x);
}

void eval_jacobi_all(const JacobiParams& params, int max_degree, double t,
                     double* out) {
  check_degree(max_degree);
  recurrence(params.nu(), params.gamma(), max_degree, checked_argument(t), out);
}

double jacobi_norm(const JacobiParams& params, int degree) {
  check_degree(degree);
  const double a = params.nu();
  const double b = params.gamma();
  // Degree 0 in limiting form: (a+b+1) Gamma(a+b+1) = Gamma(a+b+2) stays
  // finite when a+b = -1.
  if (degree == 0) {
    return std::exp((a + b + 1.0) * std::numbers::ln2 + log_gamma(a + 1.0) +
                    log_gamma(b + 1.0) - log_gamma(a + b + 2.0));
  }
  const double i = degree;
  const double log_h = (a + b + 1.0) * std::numbers::ln2 +
                       log_gamma(a + i + 1.0) + log_gamma(b + i + 1.0) -
                       log_gamma(i + 1.0) - log_gamma(a + b + i + 1.0);
  return std::exp(log_h) / (a + b + 2.0 * i + 1.0);
}

double eval_weight(const JacobiParams& params, double t) {
  if (!(t >= -1.0 && t <= 1.0)) {
    throw DomainError("weight argument outside [-1,1]: " + std::to_string(t));
  }
  const double a = params.nu();
  const double b = params.gamma();
  if ((t == 1.0 && a < 0.0) || (t == -1.0 && b < 0.0)) {
    throw DomainError("weight is singular at t=" + std::to_string(t));
  }
  return std::pow(1.0 - t, a) * std::pow(1.0 + t, b);
}

double log_gamma(double x) {
  if (!(x > 0.0)) {
    throw DomainError("log_gamma requires a positive argument, got " +
                      std::to_string(x));
  }
  return std::lgamma(x);
}

}  // namespace jwvie
