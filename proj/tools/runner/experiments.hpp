#pragma once

#include <functional>
#include <string_view>
#include <vector>

#include "config.hpp"
#include "report.hpp"

namespace stochkg::runner {

/// Validated parameters bound to the code that runs them.
using Plan = std::function<void(RunContext&)>;

struct ExperimentInfo {
  const char* name;
  const char* description;
  /// Physics topic the experiment exercises.
  const char* topic;
  /// Reads and validates the "parameters" object; throws ConfigError.
  Plan (*configure)(ConfigReader& parameters);
};

/// The nine experiments in a fixed order.
const std::vector<ExperimentInfo>& experiments();
const ExperimentInfo* find_experiment(std::string_view name);

Plan configure_field_stats(ConfigReader& p);
Plan configure_ensemble(ConfigReader& p);
Plan configure_kg_conservation(ConfigReader& p);
Plan configure_madelung_check(ConfigReader& p);
Plan configure_beta_fit(ConfigReader& p);
Plan configure_wigner_check(ConfigReader& p);
Plan configure_mass_shell_nogo(ConfigReader& p);
Plan configure_lump_check(ConfigReader& p);
Plan configure_packet_compare(ConfigReader& p);

}  // namespace stochkg::runner
