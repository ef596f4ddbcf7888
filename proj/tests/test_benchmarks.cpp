#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <sstream>
#include <string>

#include "jwvie/benchmarks.hpp"
#include "jwvie/errors.hpp"
#include "oracles.hpp"

using namespace jwvie;

namespace {

const BenchmarkId kAll[] = {BenchmarkId::kExample1, BenchmarkId::kExample2,
                            BenchmarkId::kExample3};

// int_0^t (t-x)^{-alpha} h(x) dx after t - x = t w^{1/(1-alpha)}, which
// removes the endpoint singularity.
template <class H>
double abel_integral(double alpha, double t, H h) {
  const double q = 1.0 / (1.0 - alpha);
  const double s = oracle::midpoint(
      [&](double w) { return h(t - t * std::pow(w, q)); }, 0.0, 1.0, 200000);
  return std::pow(t, 1.0 - alpha) / (1.0 - alpha) * s;
}

// Global weight (1-y)^nu (1+y)^gamma with y = 2t/T - 1.
double global_weight(double nu, double gamma, double t) {
  const double y = 2.0 * t - 1.0;
  return std::pow(1.0 - y, nu) * std::pow(1.0 + y, gamma);
}

}  // namespace

TEST_CASE("benchmark names") {
  for (BenchmarkId id : kAll) CHECK(parse_benchmark_id(to_string(id)) == id);
  CHECK(to_string(BenchmarkId::kExample2) == "example2");
  CHECK_THROWS_AS(parse_benchmark_id("example4"), DomainError);
}

TEST_CASE("benchmark definitions") {
  const VIEProblem ex1 = make_benchmark(BenchmarkId::kExample1).problem;
  CHECK((*ex1.exact)(1.0) == 1.0);
  CHECK(ex1.kernel(0.7, 1.0) ==
        doctest::Approx(std::sqrt(3.0) / (3.0 * std::numbers::pi)).epsilon(1e-15));
  CHECK(ex1.alpha == doctest::Approx(2.0 / 3.0).epsilon(1e-15));

  const VIEProblem ex2 = make_benchmark(BenchmarkId::kExample2).problem;
  CHECK(ex2.forcing(1.0) == doctest::Approx(6.0 / 7.0).epsilon(1e-15));
  CHECK(ex2.kernel(0.3, 0.2) == 0.5);

  const VIEProblem ex3 = make_benchmark(BenchmarkId::kExample3).problem;
  // full kernel is sqrt(2)/(2 pi) x
  CHECK(ex3.kernel(0.9, 0.4) ==
        doctest::Approx(std::sqrt(2.0) / (2.0 * std::numbers::pi) * 0.4).epsilon(1e-14));
  for (BenchmarkId id : kAll) CHECK_NOTHROW(make_benchmark(id).problem.validate());
}

TEST_CASE("exact solutions satisfy their equations") {
  for (BenchmarkId id : kAll) {
    const VIEProblem p = make_benchmark(id).problem;
    for (double t : {0.1, 0.45, 1.0}) {
      CAPTURE(to_string(id));
      CAPTURE(t);
      const double integral =
          abel_integral(p.alpha, t, [&](double x) { return p.kernel(t, x) * (*p.exact)(x); });
      const double lhs = std::pow(t, p.beta) * (*p.exact)(t);
      CHECK(std::abs(lhs - p.forcing(t) - integral) <= 1e-6 * std::abs(lhs));
    }
  }
}

TEST_CASE("weighted L2 error") {
  const JacobiParams half(0.5, 0.5);
  const auto cubic = [](double t) { return t * t * t - t; };
  const WaveletSolution proj = project(WaveletBasis(2, 3, 1.0, half), cubic);
  CHECK(weighted_l2_error(proj, cubic) <= 1e-12);
  CHECK(weighted_l2_error(proj, cubic, 30, ErrorWeight::kPiecewise) <= 1e-12);

  const VIEProblem ex1 = make_benchmark(BenchmarkId::kExample1).problem;
  for (const JacobiParams& p : {half, JacobiParams(0.0, 0.0), JacobiParams(0.5, -0.3)}) {
    const WaveletSolution sol = solve(ex1, WaveletBasis(3, 2, 1.0, p));
    const auto err = [&](double t) { return eval_expansion(sol, t) - (*ex1.exact)(t); };
    const double oracle = std::sqrt(oracle::midpoint(
        [&](double t) { return global_weight(p.nu(), p.gamma(), t) * err(t) * err(t); }, 0.0,
        1.0, 400000));
    CHECK(weighted_l2_error(sol, *ex1.exact) == doctest::Approx(oracle).epsilon(1e-4));

    const WaveletBasis& b = sol.basis();
    const double piecewise = std::sqrt(oracle::midpoint(
        [&](double t) { return eval_piecewise_weight(b, t) * err(t) * err(t); }, 0.0, 1.0,
        400000));
    CHECK(weighted_l2_error(sol, *ex1.exact, 30, ErrorWeight::kPiecewise) ==
          doctest::Approx(piecewise).epsilon(1e-4));
  }

  // one subinterval: the two weights coincide
  const WaveletSolution single = solve(ex1, WaveletBasis(1, 3, 1.0, half));
  CHECK(weighted_l2_error(single, *ex1.exact) ==
        doctest::Approx(weighted_l2_error(single, *ex1.exact, 30, ErrorWeight::kPiecewise))
            .epsilon(1e-12));
}

TEST_CASE("published weighted errors") {
  const VIEProblem ex1 = make_benchmark(BenchmarkId::kExample1).problem;
  const VIEProblem ex3 = make_benchmark(BenchmarkId::kExample3).problem;
  CHECK(weighted_l2_error(solve(ex1, WaveletBasis(2, 4, 1.0, JacobiParams(0.0, 0.0))),
                          *ex1.exact) == doctest::Approx(6.33e-6).epsilon(0.01));
  CHECK(weighted_l2_error(solve(ex3, WaveletBasis(5, 5, 1.0, JacobiParams(-0.5, -0.5))),
                          *ex3.exact) == doctest::Approx(4.99e-7).epsilon(0.01));
}

TEST_CASE("maximum error at collocation points") {
  const VIEProblem trivial{0.0, 1.0, 1.0, [](double, double) { return 0.0; },
                           [](double t) { return t * t; }, [](double t) { return t * t; }};
  const WaveletSolution s = solve(trivial, WaveletBasis(2, 2, 1.0, JacobiParams(0.0, 0.0)));
  CHECK(max_error_at_collocation(s, *trivial.exact, build_collocation_grid(s.basis())) <= 1e-10);

  const JacobiParams legendre(0.0, 0.0);
  const VIEProblem ex1 = make_benchmark(BenchmarkId::kExample1).problem;
  const WaveletSolution s1 = solve(ex1, WaveletBasis(6, 5, 1.0, legendre));
  CHECK(max_error_at_collocation(s1, *ex1.exact, build_collocation_grid(s1.basis())) ==
        doctest::Approx(2.02e-10).epsilon(0.02));

  const VIEProblem ex2 = make_benchmark(BenchmarkId::kExample2).problem;
  const WaveletSolution s2 = solve(ex2, WaveletBasis(6, 5, 1.0, legendre));
  CHECK(max_error_at_collocation(s2, *ex2.exact, build_collocation_grid(s2.basis())) ==
        doctest::Approx(2.69e-8).epsilon(0.02));
}

TEST_CASE("convergence study") {
  const auto last_ratio = [](BenchmarkId id, double p, int M) {
    const ConvergenceTable t = run_convergence_study(id, JacobiParams(p, p), {M}, {1, 2, 3, 4, 5});
    REQUIRE(t.rows.size() == 5);
    CHECK_FALSE(t.rows.front().ratio.has_value());
    return *t.rows.back().ratio;
  };
  CHECK(last_ratio(BenchmarkId::kExample1, 0.5, 3) == doctest::Approx(14.23).epsilon(0.02));
  CHECK(last_ratio(BenchmarkId::kExample2, 0.0, 4) == doctest::Approx(7.83).epsilon(0.02));
  CHECK(last_ratio(BenchmarkId::kExample3, -0.5, 5) == doctest::Approx(4.15).epsilon(0.02));

  StudyOptions serial;
  serial.threads = 1;
  StudyOptions parallel;
  parallel.threads = 4;
  const auto a = run_convergence_study(BenchmarkId::kExample1, JacobiParams(0.5, 0.5), {3, 4},
                                       {1, 2, 3}, serial);
  const auto b = run_convergence_study(BenchmarkId::kExample1, JacobiParams(0.5, 0.5), {3, 4},
                                       {1, 2, 3}, parallel);
  REQUIRE(a.rows.size() == 6);
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(a.rows[i].M == (i < 3 ? 3 : 4));
    CHECK(a.rows[i].k == static_cast<int>(i % 3) + 1);
    CHECK(a.rows[i].l2_error == b.rows[i].l2_error);
    CHECK(a.rows[i].max_abs_colloc == b.rows[i].max_abs_colloc);
  }
  CHECK(*a.rows[1].ratio == doctest::Approx(a.rows[0].l2_error / a.rows[1].l2_error));

  // a gap in k leaves the ratio empty
  const auto gap = run_convergence_study(BenchmarkId::kExample2, JacobiParams(0.0, 0.0), {3}, {1, 3});
  CHECK_FALSE(gap.rows[1].ratio.has_value());

  CHECK_THROWS_AS(run_convergence_study(BenchmarkId::kExample2, JacobiParams(0.0, 0.0), {}, {1}),
                  DomainError);
}

TEST_CASE("table and sample CSV") {
  ConvergenceTable t;
  t.rows.push_back({1, 3, 0.5, 0.5, 6.61e-4, std::nullopt, 7e-4});
  t.rows.push_back({2, 3, 0.5, 0.5, 5.68e-5, 11.637, 7.4e-5});
  std::ostringstream out;
  write_table_csv(out, t);
  CHECK(out.str() ==
        "k,M,nu,gamma,l2_error,ratio,max_abs_colloc\n"
        "1,3,5.000000e-01,5.000000e-01,6.610000e-04,,7.000000e-04\n"
        "2,3,5.000000e-01,5.000000e-01,5.680000e-05,1.163700e+01,7.400000e-05\n");

  const WaveletSolution zero(WaveletBasis(1, 0, 1.0, JacobiParams(0.0, 0.0)), {0.0});
  std::ostringstream samples;
  write_error_samples_csv(samples, zero, [](double t) { return t; });
  std::istringstream in(samples.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "t,error");
  int rows = 0;
  std::string last;
  while (std::getline(in, line)) {
    ++rows;
    last = line;
  }
  CHECK(rows == 2000);
  CHECK(last == "1.000000e+00,-1.000000e+00");
}

TEST_CASE("Sobolev seminorm") {
  const WaveletBasis b(2, 4, 1.0, JacobiParams(0.0, 0.0));
  const ScalarFunction zero = [](double) { return 0.0; };
  CHECK(sobolev_seminorm({[](double) { return 3.0; }, zero}, b, 0, 1) == 0.0);

  // u = t^{13/4}; with M + 1 > mu only j = mu contributes.
  const ScalarFunction d3 = [](double t) { return 13.0 / 4 * 9.0 / 4 * 5.0 / 4 * std::pow(t, 0.25); };
  const std::vector<ScalarFunction> derivs = {
      [](double t) { return std::pow(t, 3.25); },
      [](double t) { return 3.25 * std::pow(t, 2.25); },
      [](double t) { return 3.25 * 2.25 * std::pow(t, 1.25); }, d3};
  const double oracle =
      std::pow(4.0, -3.0) *
      std::sqrt(oracle::midpoint([&](double t) { return d3(t) * d3(t); }, 0.0, 1.0, 100000));
  CHECK(sobolev_seminorm(derivs, b, 0, 3) == doctest::Approx(oracle).epsilon(1e-4));

  // mu beyond M + 1 sums several orders
  const WaveletBasis small(1, 1, 1.0, JacobiParams(0.0, 0.0));
  const auto norm2 = [&](const ScalarFunction& f) {
    return oracle::midpoint([&](double t) { return f(t) * f(t); }, 0.0, 1.0, 100000);
  };
  const double expected = std::sqrt(std::pow(2.0, 2.0 * (1 - 2)) * norm2(derivs[2]) +
                                    std::pow(2.0, 2.0 * (1 - 3)) * norm2(derivs[3]));
  CHECK(sobolev_seminorm(derivs, small, 1, 3) == doctest::Approx(expected).epsilon(1e-4));
  CHECK_THROWS_AS(sobolev_seminorm(derivs, b, 4, 3), DomainError);
}

TEST_CASE("projection error decays algebraically in M") {
  const ScalarFunction u = [](double t) { return std::pow(t, 3.25); };
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int count = 0;
  for (int M = 3; M <= 8; ++M) {
    const WaveletSolution s = project(WaveletBasis(1, M, 1.0, JacobiParams(0.5, 0.5)), u, 40);
    const double x = std::log(M);
    const double y = std::log(weighted_l2_error(s, u, 40));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++count;
  }
  const double slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
  CHECK(slope <= -2.5);
}

TEST_CASE("thread count from the environment") {
  ::setenv("JWVIE_THREADS", "3", 1);
  CHECK(default_thread_count() == 3);
  ::setenv("JWVIE_THREADS", "zero", 1);
  CHECK(default_thread_count() >= 1);
  ::unsetenv("JWVIE_THREADS");
  CHECK(default_thread_count() >= 1);
}
