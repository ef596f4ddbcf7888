#include "jwvie/run.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

#include "jwvie/benchmarks.hpp"
#include "jwvie/criterion.hpp"
#include "jwvie/errors.hpp"
#include "jwvie/expression.hpp"
#include "jwvie/format.hpp"
#include "jwvie/solver.hpp"

namespace jwvie {

namespace {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

int parse_int(std::string_view text) {
  int value = 0;
  const auto [end, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size()) {
    throw ConfigError("not an integer: '" + std::string(text) + "'");
  }
  return value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  return s;
}

void write_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << body;
  out.close();
  if (!out) throw IoError("failed writing " + path.string());
}

VIEProblem custom_problem(const RunConfig& cfg) {
  const Expression kernel = compile_expression(cfg.kernel);
  const Expression forcing = compile_expression(cfg.forcing);
  VIEProblem problem{cfg.alpha, cfg.beta, cfg.T, kernel,
                     [forcing](double t) { return forcing(t, 0.0); },
                     std::nullopt};
  if (!cfg.exact.empty()) {
    const Expression exact = compile_expression(cfg.exact);
    problem.exact = [exact](double t) { return exact(t, 0.0); };
  }
  return problem;
}

// Builds the problem and validates every range up front so that bad input
// maps to the configuration exit code rather than a numeric failure.
VIEProblem checked_problem(const RunConfig& cfg) {
  try {
    VIEProblem problem = cfg.mode == RunMode::kCustom || cfg.example == "custom"
                             ? custom_problem(cfg)
                             : make_benchmark(parse_benchmark_id(cfg.example)).problem;
    problem.validate();
    JacobiParams params(cfg.nu, cfg.gamma);
    if (cfg.M_list.empty() || cfg.k_list.empty()) {
      throw ConfigError("M and k lists must not be empty");
    }
    for (int M : cfg.M_list) {
      if (M < 0) throw ConfigError("M must be non-negative");
    }
    for (int k : cfg.k_list) {
      if (k < 1 || k > 20) throw ConfigError("k must lie in [1,20]");
    }
    if (cfg.N < 1) throw ConfigError("N must be positive");
    if (cfg.mode == RunMode::kCustom &&
        (cfg.M_list.size() != 1 || cfg.k_list.size() != 1)) {
      throw ConfigError("custom mode takes a single M and a single k");
    }
    if (cfg.mode == RunMode::kCriterionSearch && !(cfg.epsilon > 0.0)) {
      throw ConfigError("epsilon must be positive");
    }
    if (cfg.mode == RunMode::kBenchmark && cfg.example == "custom") {
      throw ConfigError("benchmark mode needs a built-in example");
    }
    return problem;
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
}

void run_benchmark(const RunConfig& cfg, std::ostream& log) {
  const BenchmarkId id = parse_benchmark_id(cfg.example);
  const JacobiParams params(cfg.nu, cfg.gamma);
  StudyOptions options;
  options.quad_order = cfg.N;
  const ConvergenceTable table =
      run_convergence_study(id, params, cfg.M_list, cfg.k_list, options);

  std::ostringstream csv;
  write_table_csv(csv, table);
  const std::string name(to_string(id));
  write_file(cfg.out_dir / ("convergence_" + name + ".csv"), csv.str());

  const int M = *std::max_element(cfg.M_list.begin(), cfg.M_list.end());
  const int k = *std::max_element(cfg.k_list.begin(), cfg.k_list.end());
  const BenchmarkProblem bench = make_benchmark(id);
  const WaveletSolution sol =
      solve(bench.problem, WaveletBasis(k, M, bench.problem.T, params), cfg.N);
  std::ostringstream samples;
  write_error_samples_csv(samples, sol, *bench.problem.exact);
  write_file(cfg.out_dir / ("error_" + name + "_M" + std::to_string(M) + "_k" +
                            std::to_string(k) + ".csv"),
             samples.str());

  for (const ConvergenceRow& r : table.rows) {
    log << "M=" << r.M << " k=" << r.k << " l2=" << format_sci(r.l2_error)
        << " ratio=" << (r.ratio ? format_sci(*r.ratio) : std::string("-"))
        << " max_colloc=" << format_sci(r.max_abs_colloc) << '\n';
  }
}

void run_custom(const RunConfig& cfg, const VIEProblem& problem,
                std::ostream& log) {
  const WaveletBasis basis(cfg.k_list.front(), cfg.M_list.front(), problem.T,
                           JacobiParams(cfg.nu, cfg.gamma));
  const SolveReport report = solve_with_report(problem, basis, cfg.N);

  std::ostringstream coeffs;
  write_coefficients_csv(coeffs, report.solution);
  write_file(cfg.out_dir / "coefficients.csv", coeffs.str());

  constexpr int kSamples = 2000;
  std::ostringstream samples;
  samples << (problem.exact ? "t,u,error\n" : "t,u\n");
  for (int i = 0; i < kSamples; ++i) {
    const double t = i == kSamples - 1 ? problem.T : problem.T * i / (kSamples - 1);
    const double u = eval_expansion(report.solution, t);
    samples << format_sci(t) << ',' << format_sci(u);
    if (problem.exact) samples << ',' << format_sci(u - (*problem.exact)(t));
    samples << '\n';
  }
  write_file(cfg.out_dir / "solution.csv", samples.str());

  log << "size=" << basis.size() << " rcond=" << format_sci(report.rcond)
      << " residual=" << format_sci(report.residual) << '\n';
  if (problem.exact) {
    log << "l2_error=" << format_sci(weighted_l2_error(report.solution, *problem.exact))
        << '\n';
  }
}

void run_criterion_search(const RunConfig& cfg, const VIEProblem& problem,
                          std::ostream& log) {
  CriterionConfig criterion;
  criterion.epsilon = cfg.epsilon;
  criterion.sample_density = std::max(criterion.sample_density, 2 * cfg.N + 1);
  const int k_max = *std::max_element(cfg.k_list.begin(), cfg.k_list.end());
  const int M_max = *std::max_element(cfg.M_list.begin(), cfg.M_list.end());
  const BasisSelection choice =
      select_basis(problem, JacobiParams(cfg.nu, cfg.gamma), criterion, k_max,
                   M_max, cfg.N);

  std::ostringstream report;
  write_criterion_csv(report, choice.report);
  write_file(cfg.out_dir / "criterion_report.csv", report.str());

  std::ostringstream selection;
  selection << "k,M,satisfied,worst_value,l2_error\n"
            << choice.basis().k() << ',' << choice.basis().M() << ','
            << (choice.report.satisfied ? "true" : "false") << ','
            << format_sci(choice.report.worst_value) << ','
            << (problem.exact
                    ? format_sci(weighted_l2_error(choice.solution, *problem.exact))
                    : std::string())
            << '\n';
  write_file(cfg.out_dir / "selection.csv", selection.str());

  log << "chosen k=" << choice.basis().k() << " M=" << choice.basis().M()
      << " satisfied=" << (choice.report.satisfied ? "true" : "false")
      << " worst=" << format_sci(choice.report.worst_value) << '\n';
}

}  // namespace

RunMode parse_run_mode(std::string_view name) {
  if (name == "benchmark") return RunMode::kBenchmark;
  if (name == "custom") return RunMode::kCustom;
  if (name == "criterion-search") return RunMode::kCriterionSearch;
  throw ConfigError("unknown mode '" + std::string(name) + "'");
}

std::vector<int> parse_int_list(std::string_view text) {
  text = trim(text);
  std::vector<int> values;
  if (const auto dots = text.find(".."); dots != std::string_view::npos) {
    const int first = parse_int(trim(text.substr(0, dots)));
    const int last = parse_int(trim(text.substr(dots + 2)));
    if (last < first) throw ConfigError("empty range '" + std::string(text) + "'");
    for (int v = first; v <= last; ++v) values.push_back(v);
    return values;
  }
  while (!text.empty()) {
    const auto comma = text.find(',');
    values.push_back(parse_int(trim(text.substr(0, comma))));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  if (values.empty()) throw ConfigError("empty integer list");
  return values;
}

int run(const RunConfig& config, std::ostream& log, std::ostream& err) {
  try {
    const VIEProblem problem = checked_problem(config);
    std::error_code ec;
    std::filesystem::create_directories(config.out_dir, ec);
    if (ec) throw IoError("cannot create " + config.out_dir.string() + ": " + ec.message());

    switch (config.mode) {
      case RunMode::kBenchmark: run_benchmark(config, log); break;
      case RunMode::kCustom: run_custom(config, problem, log); break;
      case RunMode::kCriterionSearch: run_criterion_search(config, problem, log); break;
    }
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    err << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  }
}

}  // namespace jwvie
