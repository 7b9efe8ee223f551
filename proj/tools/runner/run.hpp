#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "report.hpp"

namespace stochkg::runner {

struct RunOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  /// Empty selects <output root>/<experiment>-seed<seed>.
  std::filesystem::path out_dir;
  /// Worker threads; never part of the effective config.
  unsigned workers = 1;
};

/// $STOCHKG_OUTPUT_ROOT, or "stochkg-runs" when unset.
std::filesystem::path default_output_root();

/// Loads, validates and runs one experiment. Throws ConfigError (and
/// vacuum::ConfigurationError) for invalid configs; numerical failures propagate as the
/// library's exceptions.
RunReport run(const RunOptions& options);

/// Same, for an already parsed config document.
RunReport run(const RunConfig& config, const RunOptions& options);

}  // namespace stochkg::runner
