// Runs every bundled config and prints one PASS/FAIL line per acceptance criterion.

#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "run.hpp"

namespace fs = std::filesystem;
using namespace stochkg::runner;

namespace {

struct Bundle {
  std::string file;
  std::vector<std::string> criteria;
};

const std::vector<Bundle> bundles{
    {"field_stats.json", {"AC-1"}},
    {"ensemble.json", {"AC-2", "AC-3", "AC-4"}},
    {"kg_conservation.json", {"AC-5"}},
    {"madelung_1d.json", {"AC-6"}},
    {"beta_fit.json", {"AC-6"}},
    {"wigner_check.json", {"AC-7"}},
    {"mass_shell_nogo.json", {"AC-8"}},
    {"lump_check.json", {"AC-9"}},
    {"packet_compare.json", {"AC-10"}},
};

const std::map<std::string, std::string> titles{
    {"AC-1", "vacuum two-point function and mean against the phase-average oracle"},
    {"AC-2", "mass-shell drift of charged characteristics and its step-size order"},
    {"AC-3", "free-streaming histograms against the characteristics oracle"},
    {"AC-4", "transport operator applied to the retarded inverse"},
    {"AC-5", "Klein-Gordon norm conservation and mixed-sign oscillation"},
    {"AC-6", "hydrodynamic residual convergence and the fitted coefficient"},
    {"AC-7", "product distribution equations, moments and divergence hierarchy"},
    {"AC-8", "mass-shell integral forms and the single-mode residual"},
    {"AC-9", "lump transport residual, positivity and boost form"},
    {"AC-10", "packet centroid velocity against the lump velocity"},
    {"AC-11", "byte-identical artifacts across worker counts"},
};

struct Outcome {
  std::size_t checks = 0;
  std::vector<std::string> failures;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Every file of `a` must exist in `b` with identical bytes, and the file sets must match.
std::vector<std::string> compare_dirs(const fs::path& a, const fs::path& b) {
  std::vector<std::string> diffs;
  std::size_t count_a = 0;
  for (const auto& e : fs::directory_iterator(a)) {
    ++count_a;
    const auto other = b / e.path().filename();
    if (!fs::exists(other) || slurp(e.path()) != slurp(other)) diffs.push_back(e.path().filename().string());
  }
  std::size_t count_b = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(b)) ++count_b;
  if (count_a != count_b) diffs.push_back("file count");
  return diffs;
}

}  // namespace

int main() {
  const fs::path configs = STOCHKG_CONFIG_DIR;
  const fs::path root = fs::temp_directory_path() / fmt::format("stochkg_acceptance_{}", ::getpid());
  fs::remove_all(root);

  std::map<std::string, Outcome> outcomes;
  Outcome& determinism = outcomes["AC-11"];
  for (const auto& b : bundles) {
    const auto stem = fs::path(b.file).stem().string();
    std::vector<fs::path> dirs;
    for (unsigned workers : {1u, 3u}) {
      RunOptions o;
      o.config_path = (configs / b.file).string();
      o.out_dir = root / fmt::format("{}-w{}", stem, workers);
      o.workers = workers;
      dirs.push_back(o.out_dir);
      try {
        const auto report = run(o);
        if (workers != 1) continue;
        for (const auto& v : report.verdicts) {
          auto& out = outcomes[v.criterion];
          ++out.checks;
          if (!v.pass) {
            out.failures.push_back(fmt::format("{}: {} = {} (need {} {})", stem, v.name, v.measured, v.comparison,
                                               v.tolerance));
          }
        }
      } catch (const std::exception& e) {
        for (const auto& c : b.criteria) outcomes[c].failures.push_back(fmt::format("{}: {}", stem, e.what()));
        determinism.failures.push_back(fmt::format("{}: run with {} workers failed", stem, workers));
      }
    }
    ++determinism.checks;
    if (fs::exists(dirs[0]) && fs::exists(dirs[1])) {
      for (const auto& d : compare_dirs(dirs[0], dirs[1])) {
        determinism.failures.push_back(fmt::format("{}: {} differs between 1 and 3 workers", stem, d));
      }
    }
  }

  bool all = true;
  for (int n = 1; n <= 11; ++n) {
    const auto id = fmt::format("AC-{}", n);
    const auto& out = outcomes[id];
    const bool pass = out.checks > 0 && out.failures.empty();
    all = all && pass;
    fmt::print("{} {}: {} ({} checks)\n", pass ? "PASS" : "FAIL", id, titles.at(id), out.checks);
    for (const auto& f : out.failures) fmt::print("    {}\n", f);
  }
  fs::remove_all(root);
  return all ? EXIT_SUCCESS : EXIT_FAILURE;
}
