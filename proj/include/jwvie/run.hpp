#pragma once

#include <filesystem>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace jwvie {

enum class RunMode { kBenchmark, kCustom, kCriterionSearch };

RunMode parse_run_mode(std::string_view name);

/// Everything a CLI invocation can ask for.
struct RunConfig {
  RunMode mode = RunMode::kBenchmark;
  /// Benchmark name, or "custom" in criterion-search mode to use the
  /// expression-defined problem below.
  std::string example = "example1";

  // Custom problem. kernel is kappa1(t,x); forcing is g(t).
  double alpha = 0.0;
  double beta = 1.0;
  double T = 1.0;
  std::string kernel = "0";
  std::string forcing = "0";
  std::string exact;  // optional

  double nu = 0.5;
  double gamma = 0.5;
  std::vector<int> M_list{3};
  std::vector<int> k_list{1};
  int N = 10;
  double epsilon = 1e-6;
  std::filesystem::path out_dir = ".";
};

/// Malformed or out-of-range configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// "3", "3,4,5" or "1..5".
std::vector<int> parse_int_list(std::string_view text);

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumeric = 3;
inline constexpr int kExitIo = 4;

/// Executes a configuration, writing CSV files under out_dir and a short
/// human-readable summary to log. Returns one of the kExit* codes; failures
/// print a single diagnostic line to err.
///
///   benchmark         convergence_<example>.csv, error_<example>_M<M>_k<k>.csv
///   custom            coefficients.csv, solution.csv
///   criterion-search  criterion_report.csv, selection.csv
int run(const RunConfig& config, std::ostream& log, std::ostream& err);

}  // namespace jwvie
