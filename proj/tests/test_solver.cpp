#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "jwvie/benchmarks.hpp"
#include "jwvie/errors.hpp"
#include "jwvie/solver.hpp"

using namespace jwvie;

namespace {

double beta_fn(double a, double b) {
  return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
}

// kappa1 = 1 and u = t^p: the integral term is t^{beta+p} B(1-alpha, alpha+beta+p).
VIEProblem manufactured(double alpha, double beta, int p) {
  const double c = 1.0 - beta_fn(1.0 - alpha, alpha + beta + p);
  return VIEProblem{alpha, beta, 1.0, [](double, double) { return 1.0; },
                    [c, p](double t) { return c * std::pow(t, p); },
                    [p](double t) { return std::pow(t, p); }};
}

VIEProblem no_kernel(ScalarFunction g, double beta = 1.0) {
  return VIEProblem{0.0, beta, 1.0, [](double, double) { return 0.0; }, std::move(g),
                    std::nullopt};
}

}  // namespace

TEST_CASE("problem validation") {
  auto p = no_kernel([](double t) { return t; });
  CHECK_NOTHROW(p.validate());
  p.alpha = 1.0;
  CHECK_THROWS_AS(p.validate(), DomainError);
  p.alpha = 0.2;
  p.beta = 0.5;
  CHECK_THROWS_AS(p.validate(), DomainError);
  p.beta = 0.0;
  CHECK_THROWS_AS(p.validate(), DomainError);
  p.beta = 1.0;
  p.kernel1 = nullptr;
  CHECK_THROWS_AS(p.validate(), DomainError);
}

TEST_CASE("collocation grid") {
  const JacobiParams legendre(0.0, 0.0);
  const auto one = build_collocation_grid(WaveletBasis(1, 0, 1.0, legendre));
  REQUIRE(one.points.size() == 1);
  CHECK(one.points[0] == doctest::Approx(0.5).epsilon(1e-15));

  const auto two = build_collocation_grid(WaveletBasis(2, 0, 1.0, legendre));
  CHECK(two.points[0] == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(two.points[1] == doctest::Approx(0.75).epsilon(1e-15));

  const auto pair = build_collocation_grid(WaveletBasis(1, 1, 1.0, legendre));
  const double r = 1.0 / std::sqrt(3.0);
  CHECK(pair.points[0] == doctest::Approx((1 - r) / 2).epsilon(1e-15));
  CHECK(pair.points[1] == doctest::Approx((1 + r) / 2).epsilon(1e-15));

  const WaveletBasis b(3, 4, 2.0, JacobiParams(-0.5, -0.5));
  const auto grid = build_collocation_grid(b);
  REQUIRE(static_cast<int>(grid.points.size()) == b.size());
  for (int row = 0; row < b.size(); ++row) {
    const int n = row / 5 + 1;
    CHECK(grid.points[row] > b.lower(n));
    CHECK(grid.points[row] < b.upper(n));
    if (row > 0) CHECK(grid.points[row] > grid.points[row - 1]);
  }
}

TEST_CASE("zero kernel reduces to interpolation of g") {
  const auto g = [](double t) { return t * t; };
  for (double beta : {1.0, 2.5}) {
    const VIEProblem p = no_kernel(g, beta);
    const WaveletSolution s = solve(p, WaveletBasis(2, 3, 1.0, JacobiParams(0.5, 0.5)));
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    for (int i = 0; i < 20; ++i) {
      const double t = dist(rng);
      CHECK(std::abs(eval_expansion(s, t) - t * t) <= 1e-10);
    }
    for (double t : build_collocation_grid(s.basis()).points) {
      CHECK(std::abs(eval_expansion(s, t) - g(t)) <= 1e-10);
    }
  }
}

TEST_CASE("manufactured polynomial solutions are recovered") {
  // An integer alpha + beta - 1 keeps the inner integrand polynomial.
  const std::vector<std::pair<double, double>> cases = {{0.0, 2.0}, {0.5, 0.5}, {1.0 / 3.0, 5.0 / 3.0}};
  for (auto [alpha, beta] : cases) {
    for (int p : {2, 3}) {
      for (int M : {p, p + 2}) {
        CAPTURE(alpha);
        CAPTURE(p);
        CAPTURE(M);
        const VIEProblem prob = manufactured(alpha, beta, p);
        const WaveletSolution s = solve(prob, WaveletBasis(2, M, 1.0, JacobiParams(0.5, 0.5)));
        std::mt19937_64 rng(5);
        std::uniform_real_distribution<double> dist(0.0, 1.0);
        for (int i = 0; i < 20; ++i) {
          const double t = dist(rng);
          CHECK(std::abs(eval_expansion(s, t) - std::pow(t, p)) <= 1e-9);
        }
      }
    }
  }
}

TEST_CASE("block lower-triangular structure") {
  const BenchmarkProblem bench = make_benchmark(BenchmarkId::kExample1);
  for (int k = 1; k <= 4; ++k) {
    const WaveletBasis b(k, 3, 1.0, JacobiParams(0.5, 0.5));
    const LinearSystem sys = assemble(bench.problem, b);
    const int blk = 4;
    for (int row = 0; row < b.size(); ++row) {
      for (int col = 0; col < b.size(); ++col) {
        if (col / blk > row / blk) CHECK(sys.A(row, col) == 0.0);
      }
    }
    for (int row = 0; row < b.size(); ++row) CHECK(std::isfinite(sys.F(row)));
  }
}

TEST_CASE("block substitution agrees with dense LU") {
  const BenchmarkProblem bench = make_benchmark(BenchmarkId::kExample3);
  const WaveletBasis b(5, 4, 1.0, JacobiParams(-0.5, -0.5));
  const LinearSystem sys = assemble(bench.problem, b);
  const Eigen::VectorXd dense = sys.A.partialPivLu().solve(sys.F);
  const SolveReport report = solve_with_report(bench.problem, b);
  for (int i = 0; i < b.size(); ++i) {
    CHECK(std::abs(report.solution.coeffs()[i] - dense(i)) <= 1e-10 * (1.0 + std::abs(dense(i))));
  }
  CHECK(report.rcond > 0.0);
  CHECK(report.residual <= 1e-10 * (1.0 + sys.F.lpNorm<Eigen::Infinity>()));
}

TEST_CASE("assembly error paths") {
  VIEProblem p = no_kernel([](double t) { return t; });
  CHECK_THROWS_AS(assemble(p, WaveletBasis(1, 1, 2.0, JacobiParams(0.0, 0.0))), DomainError);
  p.kernel1 = [](double, double x) { return 1.0 / (x - x); };
  CHECK_THROWS_AS(assemble(p, WaveletBasis(1, 1, 1.0, JacobiParams(0.0, 0.0))), NumericError);
  p.kernel1 = [](double, double) { return 0.0; };
  p.forcing_g = [](double) { return std::numeric_limits<double>::quiet_NaN(); };
  CHECK_THROWS_AS(assemble(p, WaveletBasis(1, 1, 1.0, JacobiParams(0.0, 0.0))), NumericError);
}

TEST_CASE("singular collocation matrix is reported") {
  // With kappa1 = 1, alpha = 0 and beta = 1 a constant u gives t u = int_0^t u,
  // so the column of the constant wavelet is zero up to round-off.
  VIEProblem p{0.0, 1.0, 1.0, [](double, double) { return 1.0; }, [](double t) { return t; },
               std::nullopt};
  try {
    solve(p, WaveletBasis(1, 1, 1.0, JacobiParams(0.0, 0.0)));
    FAIL("expected a SolverError");
  } catch (const SolverError& e) {
    CHECK(e.rcond() <= 2 * std::numeric_limits<double>::epsilon());
  }
}

TEST_CASE("published error levels") {
  const BenchmarkProblem ex1 = make_benchmark(BenchmarkId::kExample1);
  const BenchmarkProblem ex2 = make_benchmark(BenchmarkId::kExample2);

  const auto sys = assemble(ex1.problem, WaveletBasis(1, 3, 1.0, JacobiParams(0.5, 0.5)));
  CHECK(sys.A.rows() == 4);
  const auto e1 =
      weighted_l2_error(solve(ex1.problem, WaveletBasis(1, 3, 1.0, JacobiParams(0.5, 0.5))),
                        *ex1.problem.exact);
  CHECK(e1 == doctest::Approx(6.61e-4).epsilon(0.01));

  const auto e2 =
      weighted_l2_error(solve(ex2.problem, WaveletBasis(1, 3, 1.0, JacobiParams(0.0, 0.0))),
                        *ex2.problem.exact);
  CHECK(e2 == doctest::Approx(1.07e-3).epsilon(0.01));

  const auto e3 =
      weighted_l2_error(solve(ex1.problem, WaveletBasis(5, 5, 1.0, JacobiParams(0.5, 0.5))),
                        *ex1.problem.exact);
  CHECK(e3 == doctest::Approx(2.12e-10).epsilon(0.05));
}

TEST_CASE("error is nonincreasing in k") {
  for (auto id : {BenchmarkId::kExample1, BenchmarkId::kExample2, BenchmarkId::kExample3}) {
    const BenchmarkProblem bench = make_benchmark(id);
    for (int M : {3, 5}) {
      double previous = std::numeric_limits<double>::infinity();
      for (int k = 1; k <= 5; ++k) {
        const double e = weighted_l2_error(
            solve(bench.problem, WaveletBasis(k, M, 1.0, JacobiParams(0.0, 0.0))),
            *bench.problem.exact);
        CHECK(e <= previous);
        previous = e;
      }
    }
  }
}
