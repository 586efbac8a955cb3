#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ergoquench/channels.hpp"
#include "ergoquench/model.hpp"

namespace ergoquench::dynamics {

using model::DensityMatrix;

/// Uniform output grid t_k = k * dt, k = 0..steps().
struct TimeGrid {
  double t_max = 800.0;
  double dt = 0.5;

  std::size_t steps() const;
  double time(std::size_t k) const { return static_cast<double>(k) * dt; }
  /// Throws std::invalid_argument unless 0 < dt <= 1, t_max >= 0 and t_max/dt is integral.
  void validate() const;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<DensityMatrix> states;
  std::optional<model::ModelSpec> model;
  std::optional<channels::ChannelSpec> channel;

  std::size_t size() const { return times.size(); }
  const DensityMatrix& final_state() const { return states.back(); }
};

/// Tolerance applied to every propagated state; exceeding it raises
/// InvariantViolation naming the step.
inline constexpr double kPropagationTolerance = 1e-9;

/// rho(t_k) = P^k rho0 with P = expm(L dt); each state is re-symmetrized and
/// checked before it is stored.
Trajectory propagate(const channels::Liouvillian& liou, const DensityMatrix& rho0, const TimeGrid& grid);

/// Classical RK4 with dt/substeps internal step. Independent cross-check of propagate().
Trajectory propagate_rk4(const channels::Liouvillian& liou, const DensityMatrix& rho0, const TimeGrid& grid,
                         std::size_t substeps);

struct SteadyState {
  DensityMatrix state;
  bool converged = false;
  double t_settle = 0.0;
};

/// Converged when |rho(t_k) - rho(t_{k-1})|_F < tol * dt over the final 10% of the
/// grid. t_settle is the first grid time from which that bound holds to the end.
SteadyState detect_steady(const Trajectory& traj, double tol);

}  // namespace ergoquench::dynamics
