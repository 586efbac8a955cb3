#pragma once

#include <optional>
#include <span>
#include <vector>

#include "ergoquench/dynamics.hpp"
#include "ergoquench/linalg.hpp"
#include "ergoquench/model.hpp"

// Lossy-cavity Jaynes-Cummings model truncated to n <= 1 photons versus the
// adiabatically eliminated two-level master equation.
//
// The 4x4 qubit+cavity space uses the ordering {|g,0>, |e,0>, |g,1>, |e,1>};
// atomic states returned to callers use the repo-wide (|e>, |g>) ordering.

namespace ergoquench::jc {

struct JCSpec {
  double omega_q = 10.0;
  double omega_c = 10.0;
  double g = 1.0;
  double kappa = 10.0;

  double delta() const { return omega_c - omega_q; }
  /// Finite parameters, g >= 0 and kappa > 0.
  void validate() const;
};

linalg::Matrix jc_hamiltonian(const JCSpec& spec);

/// Effective decay rate 4 g^2 kappa / (kappa^2 + 4 Delta^2).
double effective_decay_rate(const JCSpec& spec);

/// Lamb-shift energy of |e>: -g^2 Delta / (kappa^2/4 + Delta^2).
double lamb_shift(const JCSpec& spec);

/// Full 4x4 evolution from rho_atom (x) |0><0|, traced over the cavity at each output time.
dynamics::Trajectory jc_full_evolution(const JCSpec& spec, const model::DensityMatrix& rho0_atom,
                                       const dynamics::TimeGrid& grid);

/// 2x2 Lindblad evolution with jump sigma^- at Gamma_eff and H = lamb_shift |e><e|.
dynamics::Trajectory effective_atom_evolution(const JCSpec& spec, const model::DensityMatrix& rho0_atom,
                                              const dynamics::TimeGrid& grid);

struct JCComparison {
  double kappa_over_g = 0.0;
  double gamma_eff = 0.0;
  double max_deviation = 0.0;  // max_t |p_ee_full - p_ee_eff|
  double max_coherence = 0.0;  // max_t of |rho_eg| over both descriptions
  dynamics::Trajectory full;
  dynamics::Trajectory effective;
};

inline constexpr std::size_t kSamplesPerRun = 400;

/// For each ratio, kappa = ratio * g; the atom starts in |e>. With no explicit
/// grid, each run covers t in [0, 8 / Gamma_eff] with kSamplesPerRun steps.
std::vector<JCComparison> compare_jc(const JCSpec& spec_base, std::span<const double> kappa_over_g,
                                     std::optional<dynamics::TimeGrid> grid = std::nullopt);

}  // namespace ergoquench::jc
