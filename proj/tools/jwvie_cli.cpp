// Command-line front end: benchmark studies, custom problems and the
// residual-based basis search.

#include <CLI11.hpp>
#include <iostream>

#include "jwvie/run.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Jacobi-wavelet collocation for third-kind Volterra equations"};
  app.set_config("--config", "", "flat key=value file; flags override it");

  jwvie::RunConfig cfg;
  std::string mode = "benchmark";
  std::string M_text = "3";
  std::string k_text = "1";
  std::string out_dir = ".";

  app.add_option("--mode", mode, "benchmark | custom | criterion-search")
      ->capture_default_str();
  app.add_option("--example", cfg.example,
                 "example1 | example2 | example3 (or custom for criterion-search)")
      ->capture_default_str();
  app.add_option("--alpha", cfg.alpha, "kernel singularity exponent (custom)");
  app.add_option("--beta", cfg.beta, "power of t on the left side (custom)");
  app.add_option("--T", cfg.T, "horizon (custom)");
  app.add_option("--kernel", cfg.kernel, "kappa1(t,x) expression (custom)");
  app.add_option("--forcing", cfg.forcing, "g(t) expression, f = t^beta g (custom)");
  app.add_option("--exact", cfg.exact, "exact solution expression (optional)");
  app.add_option("--nu", cfg.nu, "Jacobi parameter nu")->capture_default_str();
  app.add_option("--gamma", cfg.gamma, "Jacobi parameter gamma")->capture_default_str();
  app.add_option("--M", M_text, "degree(s): 3, 3,4,5 or 3..5")->capture_default_str();
  app.add_option("--k", k_text, "level(s): 1, 1,2 or 1..5")->capture_default_str();
  app.add_option("--N", cfg.N, "inner Gauss-Jacobi order")->capture_default_str();
  app.add_option("--epsilon", cfg.epsilon, "criterion target")->capture_default_str();
  app.add_option("--out-dir", out_dir, "output directory")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return jwvie::kExitConfig;
  }

  try {
    cfg.mode = jwvie::parse_run_mode(mode);
    cfg.M_list = jwvie::parse_int_list(M_text);
    cfg.k_list = jwvie::parse_int_list(k_text);
  } catch (const jwvie::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return jwvie::kExitConfig;
  }
  cfg.out_dir = out_dir;
  return jwvie::run(cfg, std::cout, std::cerr);
}
