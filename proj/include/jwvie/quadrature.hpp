#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "jwvie/jacobi.hpp"

namespace jwvie {

/// N-point Gauss-Jacobi rule: integral of (1-t)^nu (1+t)^gamma f(t) over
/// [-1,1] is approximated by sum_l weights[l] * f(nodes[l]). Exact for
/// polynomials of degree <= 2N-1.
struct QuadratureRule {
  JacobiParams params;
  int order;
  std::vector<double> nodes;    // strictly increasing, inside (-1,1)
  std::vector<double> weights;  // positive
};

/// Nodes are the roots of P_N^{(nu,gamma)} found by Newton iteration from
/// asymptotic angle seeds; weights follow from P_N'. Throws NumericError
/// (naming the node index) if an iterate fails to converge.
QuadratureRule gauss_jacobi_rule(const JacobiParams& params, int order);

/// Process-wide memoized gauss_jacobi_rule, keyed by the exact bits of
/// (nu, gamma) and the order. Safe for concurrent use.
std::shared_ptr<const QuadratureRule> cached_gauss_jacobi_rule(
    const JacobiParams& params, int order);

/// sum_l w_l f(s_l). Throws NumericError if f is non-finite at any node.
double apply_rule(const QuadratureRule& rule,
                  const std::function<double(double)>& integrand);

/// Gamma-ratio constant multiplying the remainder of the (-alpha, 0) rule
/// with N nodes:
///   (N!)^2 Gamma(N+1-alpha)^2 / ((2N)! (2N+1-alpha) Gamma(2N+1-alpha)^2).
double remainder_constant(double alpha, int order);

}  // namespace jwvie
