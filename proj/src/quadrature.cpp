#include "jwvie/quadrature.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <numbers>
#include <shared_mutex>
#include <string>
#include <tuple>

#include "jwvie/errors.hpp"

namespace jwvie {

namespace {

constexpr int kNewtonCap = 100;
constexpr double kNewtonTolerance = 1e-15;

}  // namespace

QuadratureRule gauss_jacobi_rule(const JacobiParams& params, int order) {
  if (order < 1) {
    throw DomainError("quadrature order must be positive, got " +
                      std::to_string(order));
  }
  const double a = params.nu();
  const double b = params.gamma();
  const int n = order;

  QuadratureRule rule{params, order, std::vector<double>(n),
                      std::vector<double>(n)};

  const double log_scale = (a + b + 1.0) * std::numbers::ln2 +
                           log_gamma(a + n + 1.0) + log_gamma(b + n + 1.0) -
                           log_gamma(n + 1.0) - log_gamma(a + b + n + 1.0);
  const double scale = std::exp(log_scale);

  for (int i = 1; i <= n; ++i) {
    // Asymptotic angle for the i-th largest root.
    const double theta =
        (2.0 * i + a - 0.5) * std::numbers::pi / (2.0 * n + a + b + 1.0);
    double x = std::cos(theta);
    bool converged = false;
    for (int iter = 0; iter < kNewtonCap; ++iter) {
      const double p = eval_jacobi(params, n, x);
      const double dp = eval_jacobi_derivative(params, n, x);
      const double step = p / dp;
      x -= step;
      if (!std::isfinite(x) || std::abs(x) >= 1.0) break;
      if (std::abs(step) <= kNewtonTolerance) {
        converged = true;
        break;
      }
    }
    if (!converged) {
      throw NumericError("Gauss-Jacobi node " + std::to_string(i - 1) +
                         " did not converge (order " + std::to_string(n) + ")");
    }
    const double dp = eval_jacobi_derivative(params, n, x);
    // Seeds run from the largest root downward; store ascending.
    const int slot = n - i;
    rule.nodes[slot] = x;
    rule.weights[slot] = scale / (dp * dp * (1.0 - x * x));
  }

  for (int l = 1; l < n; ++l) {
    if (!(rule.nodes[l] > rule.nodes[l - 1])) {
      throw NumericError("Gauss-Jacobi node " + std::to_string(l) +
                         " collided with its neighbour (order " +
                         std::to_string(n) + ")");
    }
  }
  return rule;
}

std::shared_ptr<const QuadratureRule> cached_gauss_jacobi_rule(
    const JacobiParams& params, int order) {
  using Key = std::tuple<std::uint64_t, std::uint64_t, int>;
  static std::shared_mutex mutex;
  static std::map<Key, std::shared_ptr<const QuadratureRule>> cache;

  const Key key{std::bit_cast<std::uint64_t>(params.nu()),
                std::bit_cast<std::uint64_t>(params.gamma()), order};
  {
    std::shared_lock lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto rule =
      std::make_shared<const QuadratureRule>(gauss_jacobi_rule(params, order));
  std::unique_lock lock(mutex);
  return cache.try_emplace(key, std::move(rule)).first->second;
}

double apply_rule(const QuadratureRule& rule,
                  const std::function<double(double)>& integrand) {
  double sum = 0.0;
  for (std::size_t l = 0; l < rule.nodes.size(); ++l) {
    const double value = integrand(rule.nodes[l]);
    if (!std::isfinite(value)) {
      throw NumericError("integrand is not finite at node " +
                         std::to_string(l) + " (s=" +
                         std::to_string(rule.nodes[l]) + ")");
    }
    sum += rule.weights[l] * value;
  }
  return sum;
}

double remainder_constant(double alpha, int order) {
  if (!(alpha >= 0.0 && alpha < 1.0)) {
    throw DomainError("remainder_constant requires alpha in [0,1)");
  }
  if (order < 1) {
    throw DomainError("remainder_constant requires order >= 1");
  }
  const double n = order;
  const double log_xi = 2.0 * log_gamma(n + 1.0) +
                        2.0 * log_gamma(n + 1.0 - alpha) -
                        log_gamma(2.0 * n + 1.0) -
                        std::log(2.0 * n + 1.0 - alpha) -
                        2.0 * log_gamma(2.0 * n + 1.0 - alpha);
  return std::exp(log_xi);
}

}  // namespace jwvie
