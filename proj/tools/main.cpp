#include <cstdlib>
#include <iostream>
#include <string>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "experiments.hpp"
#include "run.hpp"
#include "stochkg/vacuum/mode_set.hpp"
#include "version.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_failure = 1;
constexpr int exit_usage = 2;

unsigned workers_from_env() {
  const char* env = std::getenv("STOCHKG_WORKERS");
  if (!env || !*env) return 1;
  try {
    const unsigned long n = std::stoul(env);
    return n == 0 ? 1u : static_cast<unsigned>(n);
  } catch (const std::exception&) {
    throw stochkg::runner::ConfigError("$STOCHKG_WORKERS", fmt::format("expected a positive integer (got '{}')", env));
  }
}

void print_list() {
  for (const auto& e : stochkg::runner::experiments()) {
    fmt::print("{:<17} {:<34} {}\n", e.name, e.topic, e.description);
  }
}

int print_report(const stochkg::runner::RunReport& report) {
  for (const auto& v : report.verdicts) {
    fmt::print("{} {} {}: {} {} {}\n", v.pass ? "PASS" : "FAIL", v.criterion, v.name,
               stochkg::format_real(v.measured), v.comparison, stochkg::format_real(v.tolerance));
  }
  for (const auto& m : report.measurements) fmt::print("MEASURE {}: {}\n", m.name, stochkg::format_real(m.value));
  fmt::print("output: {}\n", report.directory.string());
  return report.passed() ? exit_ok : exit_failure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Relativistic stochastic-kinetics experiment runner", "stochkg"};
  app.set_version_flag("--version", stochkg::runner::version_string);
  app.require_subcommand(1);

  stochkg::runner::RunOptions options;
  std::optional<unsigned> workers;
  auto* run_cmd = app.add_subcommand("run", "Run one experiment from a JSON config");
  run_cmd->add_option("config", options.config_path, "Config file (schema stochkg.config/1)")->required();
  run_cmd->add_option("--seed", options.seed, "Override the config seed");
  run_cmd->add_option("--out", options.out_dir, "Output directory");
  run_cmd->add_option("--workers", workers, "Worker threads (default $STOCHKG_WORKERS or 1)")
      ->check(CLI::PositiveNumber);
  app.add_subcommand("list", "List the available experiments");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_usage;
  }

  try {
    if (app.got_subcommand("list")) {
      print_list();
      return exit_ok;
    }
    options.workers = workers ? *workers : workers_from_env();
    return print_report(stochkg::runner::run(options));
  } catch (const stochkg::runner::ConfigError& e) {
    std::cerr << "stochkg: config error: " << e.what() << "\n";
    return exit_usage;
  } catch (const stochkg::vacuum::ConfigurationError& e) {
    std::cerr << "stochkg: config error: $.parameters: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::exception& e) {
    std::cerr << "stochkg: numerical failure: " << e.what() << "\n";
    return exit_failure;
  }
}
