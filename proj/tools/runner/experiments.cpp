#include "experiments.hpp"

namespace stochkg::runner {

const std::vector<ExperimentInfo>& experiments() {
  static const std::vector<ExperimentInfo> list{
      {"field-stats", "Monte Carlo two-point function of the random vacuum potential against the phase-average oracle",
       "zero-point field statistics", configure_field_stats},
      {"ensemble", "shell drift of charged characteristics, free-streaming histograms and the retarded inverse",
       "phase-space transport", configure_ensemble},
      {"kg-conservation", "norm of pure- and mixed-sign Klein-Gordon waves over time",
       "probability conservation", configure_kg_conservation},
      {"madelung-check", "continuity and Hamilton-Jacobi residuals under time-step refinement",
       "hydrodynamic form", configure_madelung_check},
      {"beta-fit", "least-squares estimate of the quantum-potential coefficient",
       "hydrodynamic form", configure_beta_fit},
      {"wigner-check", "mixed-derivative equation, moment decomposition and divergence hierarchy of the product ansatz",
       "product phase-space distribution", configure_wigner_check},
      {"mass-shell-nogo", "grid and spectral forms of the mass-shell integral on positive-energy waves",
       "mass-shell obstruction", configure_mass_shell_nogo},
      {"lump-check", "transport residual, positivity and boost form of the Yukawa lump",
       "singular lump solutions", configure_lump_check},
      {"packet-compare", "centroid velocity of a Klein-Gordon packet against the lump velocity",
       "packet correspondence", configure_packet_compare},
  };
  return list;
}

const ExperimentInfo* find_experiment(std::string_view name) {
  for (const auto& e : experiments()) {
    if (name == e.name) return &e;
  }
  return nullptr;
}

}  // namespace stochkg::runner
