// p3p-bench: accuracy and timing of the two P3P solvers on random poses.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ecp3p/bench.h"
#include "ecp3p/error.h"

namespace {

constexpr int kExitInvalidConfig = 2;
constexpr int kExitExhausted = 3;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Benchmark P3P solvers on synthetic poses"};
  app.require_subcommand(1);
  CLI::App* run = app.add_subcommand("run", "Run one experiment configuration");

  std::string method = "both";
  std::string triangle = "acute";
  std::string format = "table";
  ecp3p::TrialConfig cfg;
  bool hist = false;
  bool serial = false;
  unsigned threads = 0;

  run->add_option("--method", method, "Solver")->check(CLI::IsMember({"ec", "lt", "both"}));
  run->add_option("--triangle", triangle, "acute, obtuse or file:<path>");
  run->add_option("--attack-min", cfg.attack_min, "Smallest attack angle (degrees)");
  run->add_option("--attack-max", cfg.attack_max, "Largest attack angle (degrees)");
  run->add_option("--lift-min", cfg.lift_min, "Smallest lift");
  run->add_option("--lift-max", cfg.lift_max, "Largest lift");
  run->add_option("--trials", cfg.trials, "Number of trials");
  run->add_option("--seed", cfg.seed, "Random seed");
  run->add_option("--format", format, "Output format")->check(CLI::IsMember({"table", "csv"}));
  run->add_option("--threads", threads, "Worker threads (0: all cores)");
  run->add_flag("--hist", hist, "Include the decade histogram");
  run->add_flag("--serial", serial, "Run every trial on the calling thread");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalidConfig;
  }

  std::vector<ecp3p::Method> methods;
  if (method != "lt") methods.push_back(ecp3p::Method::kEc);
  if (method != "ec") methods.push_back(ecp3p::Method::kLt);

  try {
    cfg.triangle = ecp3p::Triangle::parse(triangle);
    ecp3p::validate(cfg);
    const bool csv = format == "csv";
    std::cout << (csv ? ecp3p::csv_header(hist) : ecp3p::table_header()) << '\n';
    for (ecp3p::Method m : methods) {
      const ecp3p::TrialStats s = ecp3p::run_experiment(cfg, m, {serial, threads});
      if (csv) {
        std::cout << ecp3p::csv_row(cfg, m, s, hist) << '\n';
      } else {
        std::cout << ecp3p::table_row(cfg, m, s) << '\n';
        if (hist) std::cout << ecp3p::table_hist(s);
      }
    }
  } catch (const ecp3p::Error& e) {
    std::cerr << "p3p-bench: " << e.what() << '\n';
    if (e.code() == ecp3p::ErrorCode::kExhaustedSampling) return kExitExhausted;
    return kExitInvalidConfig;
  }
  return 0;
}
