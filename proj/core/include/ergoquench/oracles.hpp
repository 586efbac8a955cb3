#pragma once

#include <array>
#include <complex>
#include <vector>

#include "ergoquench/linalg.hpp"
#include "ergoquench/model.hpp"

// Closed-form two-qubit results for the XX chain. Everything here is solved from
// hand-assembled equations and shares no code with channels/ or dynamics/; all
// coefficients assume J = 1.

namespace ergoquench::oracles {

/// Two-qubit populations p_nm = rho_{nm,nm} and coherence c = rho_{eg,ge}.
struct TwoQubitBlockState {
  double p_gg = 0.0;
  double p_eg = 0.0;
  double p_ge = 0.0;
  double p_ee = 0.0;
  std::complex<double> c{};

  /// Populations in [0,1] summing to 1 and |c| <= sqrt(p_eg p_ge) (tolerance 1e-10).
  bool valid(double tol = 1e-10) const;

  /// Diagonal/coherence entries of a 4x4 state in the (|ee>,|eg>,|ge>,|gg>) basis.
  static TwoQubitBlockState from_density(const model::DensityMatrix& rho);
};

/// (1/gamma) ln[1 + tanh(beta (1 - h))]. Throws std::domain_error for h >= 1.
double t_c_analytic(double beta, double h, double gamma);

/// Positive root of sinh(2b) = cosh(2bh) by bisection on (0, 20].
double beta_critical(double h, double tol = 1e-10);

/// Parallel dissipation, alpha^(-) = 0.
TwoQubitBlockState two_qubit_parallel_block(const TwoQubitBlockState& init, double gamma, double t);

struct SumCoherence {
  double s = 0.0;  // p_eg + p_ge
  double c = 0.0;
};

/// Collective dissipation closed form for s(t) and real c(t).
SumCoherence two_qubit_collective_sc(const TwoQubitBlockState& init, double gamma, double t);

/// Gibbs initial data s(0), c(0), and s_inf = e^{2 beta} / Z.
struct CollectiveGibbsData {
  double z = 0.0;
  double s0 = 0.0;
  double c0 = 0.0;
  double s_inf = 0.0;
};
CollectiveGibbsData collective_gibbs_data(double beta, double h);

/// lambda_1..lambda_4 at t -> infinity: {0, 1 - s_inf, 0, s_inf}.
std::array<double, 4> collective_steady_spectrum(double beta, double h);

/// True iff sinh(2 beta) >= cosh(2 beta h), i.e. the collective steady state is passive.
bool passivity_predicate(double beta, double h);

struct DarkSubspace {
  std::vector<linalg::Vector> basis;
  linalg::Matrix projector;

  std::size_t dimension() const { return basis.size(); }
};

/// Kernel of S^+ S^-.
DarkSubspace dark_subspace(const model::ModelSpec& model);

struct DarkPopulation {
  double p_dark = 0.0;
  double mean_energy = 0.0;       // <H>
  double mean_energy_dark = 0.0;  // <H>_dark
  double derivative = 0.0;        // dp_dark/dbeta = -(<H>_dark - <H>) p_dark
};

/// Tr[P_dark rho_beta] with the ingredients of its beta-derivative.
DarkPopulation dark_population(double beta, const model::ModelSpec& model);
double p_dark(double beta, const model::ModelSpec& model);

/// Parallel dephasing (alpha = 1, alpha^(z) = 0).
TwoQubitBlockState dephasing_two_qubit_block(const TwoQubitBlockState& init, double gamma, double t);

}  // namespace ergoquench::oracles
