#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ergoquench/dynamics.hpp"
#include "ergoquench/linalg.hpp"
#include "ergoquench/model.hpp"

namespace ergoquench::ergotropy {

using linalg::Matrix;
using model::DensityMatrix;

struct ErgotropyRecord {
  double time = 0.0;
  double energy = 0.0;
  double passive_energy = 0.0;
  double ergotropy = 0.0;
  std::vector<double> rho_spectrum;  // descending
};

inline constexpr double kNegativeErgotropyTolerance = 1e-10;
inline constexpr double kActivationThreshold = 1e-6;
inline constexpr double kDifferenceNoiseFloor = 1e-9;
inline constexpr double kCrossingGap = 1e-10;

/// Passive energy pairs the descending spectrum of rho with the ascending spectrum
/// of H. Values in [-1e-10, 0) are clipped to 0; anything lower throws
/// InvariantViolation.
ErgotropyRecord ergotropy(const DensityMatrix& rho, const Matrix& h_matrix, double time = 0.0);

/// sum_k r_k |e_k><e_k| with r descending and |e_k> the ascending-energy eigenvectors of H.
DensityMatrix passive_state(const DensityMatrix& rho, const Matrix& h_matrix);

std::vector<ErgotropyRecord> ergotropy_series(const dynamics::Trajectory& traj, const Matrix& h_matrix);

/// First time the ergotropy exceeds `threshold`, linearly interpolated against the
/// previous grid point; nullopt if it never does.
std::optional<double> activation_time(const dynamics::Trajectory& traj, const Matrix& h_matrix,
                                      double threshold = kActivationThreshold);
std::optional<double> activation_time(std::span<const ErgotropyRecord> series,
                                      double threshold = kActivationThreshold);

struct ErgotropyDifference {
  std::vector<double> times;
  std::vector<double> delta;           // E_a(t) - E_b(t)
  std::vector<double> sign_changes;    // interpolated zero crossings
};

/// Sign changes only count between points with |delta| above `noise_floor`.
ErgotropyDifference ergotropy_difference(const dynamics::Trajectory& traj_a, const dynamics::Trajectory& traj_b,
                                         const Matrix& h_matrix, double noise_floor = kDifferenceNoiseFloor);
ErgotropyDifference ergotropy_difference(std::span<const ErgotropyRecord> a, std::span<const ErgotropyRecord> b,
                                         double noise_floor = kDifferenceNoiseFloor);

struct EigenvalueCrossing {
  double time = 0.0;
  std::size_t branch_a = 0;  // branch labels = ascending order at t_0
  std::size_t branch_b = 0;
};

/// Eigenvalue branches of rho(t) are followed by maximal eigenvector overlap between
/// consecutive grid points; a crossing is an order swap of two branches whose gap
/// exceeds kCrossingGap on both sides of the interval.
std::vector<EigenvalueCrossing> eigenvalue_crossings(const dynamics::Trajectory& traj);

/// Row k holds <e_j|rho(t_k)|e_j> over the ascending energy eigenbasis.
std::vector<std::vector<double>> energy_basis_populations(const dynamics::Trajectory& traj, const Matrix& h_matrix);

}  // namespace ergoquench::ergotropy
