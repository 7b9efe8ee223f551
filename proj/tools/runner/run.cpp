#include "run.hpp"

#include <algorithm>
#include <cstdlib>

#include <fmt/format.h>

#include "experiments.hpp"

namespace stochkg::runner {

std::filesystem::path default_output_root() {
  const char* env = std::getenv("STOCHKG_OUTPUT_ROOT");
  return env && *env ? std::filesystem::path(env) : std::filesystem::path("stochkg-runs");
}

RunReport run(const RunOptions& options) { return run(load_run_config(options.config_path), options); }

RunReport run(const RunConfig& config, const RunOptions& options) {
  const ExperimentInfo* info = find_experiment(config.experiment);
  if (!info) throw ConfigError("$.experiment", fmt::format("unknown experiment '{}'", config.experiment));
  const std::uint64_t seed = options.seed.value_or(config.seed);

  ConfigReader reader(config.parameters, "$.parameters");
  Plan plan = info->configure(reader);
  reader.finish();

  Json effective;
  effective["schema"] = "stochkg.config/1";
  effective["experiment"] = config.experiment;
  effective["seed"] = seed;
  effective["parameters"] = reader.echo();

  const auto dir = options.out_dir.empty()
                       ? default_output_root() / fmt::format("{}-seed{}", config.experiment, seed)
                       : options.out_dir;
  RunContext ctx(config.experiment, seed, std::move(effective), dir, std::max(1u, options.workers));
  plan(ctx);
  return ctx.finish();
}

}  // namespace stochkg::runner
