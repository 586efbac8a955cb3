#include "ergoquench/dynamics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "ergoquench/errors.hpp"

namespace ergoquench::dynamics {

using linalg::Complex;
using linalg::Matrix;
using linalg::Vector;

std::size_t TimeGrid::steps() const { return static_cast<std::size_t>(std::llround(t_max / dt)); }

void TimeGrid::validate() const {
  if (!(dt > 0.0) || dt > 1.0) throw std::invalid_argument("dt must be in (0, 1]");
  if (!(t_max >= 0.0) || !std::isfinite(t_max)) throw std::invalid_argument("t_max must be finite and >= 0");
  const double ratio = t_max / dt;
  if (std::abs(ratio - std::round(ratio)) > 1e-9 * std::max(1.0, ratio))
    throw std::invalid_argument("t_max must be an integer multiple of dt");
}

namespace {

const model::StateTolerance kStepTolerance{kPropagationTolerance, kPropagationTolerance, -kPropagationTolerance};

DensityMatrix checked_state(const Vector& v, std::size_t dim, std::size_t step) {
  try {
    return DensityMatrix(linalg::hermitian_part(channels::unvectorize(v, dim)), kStepTolerance);
  } catch (const InvariantViolation& e) {
    throw InvariantViolation("dynamics", "step " + std::to_string(step) + ": " + e.what());
  }
}

// For a trace-preserving generator the exact propagator satisfies vec(I)^dagger P = vec(I)^dagger.
// Rounding in expm breaks this at ~1e-13 per step, which adds up over long stiff runs, so
// the defect row is removed with a rank-1 update. Generators that are not trace
// preserving are left alone.
Matrix trace_corrected(Matrix p, const Matrix& l, std::size_t d) {
  const std::size_t n = d * d;
  const double scale = std::max(1.0, linalg::max_abs(l));
  for (std::size_t j = 0; j < n; ++j) {
    Complex col{};
    for (std::size_t k = 0; k < d; ++k) col += l(k * d + k, j);
    if (std::abs(col) > 1e-12 * scale) return p;
  }
  for (std::size_t j = 0; j < n; ++j) {
    Complex defect = (j % (d + 1) == 0) ? Complex(1.0) : Complex{};
    for (std::size_t k = 0; k < d; ++k) defect -= p(k * d + k, j);
    for (std::size_t k = 0; k < d; ++k) p(k * d + k, j) += defect / static_cast<double>(d);
  }
  return p;
}

void check_inputs(const channels::Liouvillian& liou, const DensityMatrix& rho0, const TimeGrid& grid) {
  grid.validate();
  if (liou.dim_state() != rho0.dim()) throw std::invalid_argument("propagate: state and Liouvillian dimensions differ");
}

}  // namespace

Trajectory propagate(const channels::Liouvillian& liou, const DensityMatrix& rho0, const TimeGrid& grid) {
  check_inputs(liou, rho0, grid);
  const std::size_t d = rho0.dim();
  const Matrix step = trace_corrected(linalg::expm(liou.matrix() * Complex(grid.dt)), liou.matrix(), d);

  Trajectory traj;
  const std::size_t n = grid.steps();
  traj.times.reserve(n + 1);
  traj.states.reserve(n + 1);

  Vector v = channels::vectorize(rho0.matrix());
  for (std::size_t k = 0; k <= n; ++k) {
    if (k > 0) v = step * std::span<const Complex>(v);
    DensityMatrix rho = checked_state(v, d, k);
    v = channels::vectorize(rho.matrix());
    traj.times.push_back(grid.time(k));
    traj.states.push_back(std::move(rho));
  }
  return traj;
}

Trajectory propagate_rk4(const channels::Liouvillian& liou, const DensityMatrix& rho0, const TimeGrid& grid,
                         std::size_t substeps) {
  check_inputs(liou, rho0, grid);
  if (substeps < 1) throw std::invalid_argument("propagate_rk4: substeps must be >= 1");
  const std::size_t d = rho0.dim();
  const Matrix& l = liou.matrix();
  const double h = grid.dt / static_cast<double>(substeps);

  auto axpy = [](const Vector& x, double a, const Vector& y) {
    Vector r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] + a * y[i];
    return r;
  };

  Trajectory traj;
  const std::size_t n = grid.steps();
  Vector v = channels::vectorize(rho0.matrix());
  for (std::size_t k = 0; k <= n; ++k) {
    if (k > 0) {
      for (std::size_t s = 0; s < substeps; ++s) {
        const Vector k1 = l * std::span<const Complex>(v);
        const Vector k2 = l * std::span<const Complex>(axpy(v, 0.5 * h, k1));
        const Vector k3 = l * std::span<const Complex>(axpy(v, 0.5 * h, k2));
        const Vector k4 = l * std::span<const Complex>(axpy(v, h, k3));
        for (std::size_t i = 0; i < v.size(); ++i) v[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
      }
    }
    DensityMatrix rho = checked_state(v, d, k);
    v = channels::vectorize(rho.matrix());
    traj.times.push_back(grid.time(k));
    traj.states.push_back(std::move(rho));
  }
  return traj;
}

SteadyState detect_steady(const Trajectory& traj, double tol) {
  if (traj.states.empty()) throw std::invalid_argument("detect_steady: empty trajectory");
  const std::size_t n = traj.size();
  if (n == 1) return {traj.states.back(), true, traj.times.front()};

  const double dt = traj.times[1] - traj.times[0];
  std::vector<bool> small(n, true);
  for (std::size_t k = 1; k < n; ++k)
    small[k] = linalg::frobenius_norm(traj.states[k].matrix() - traj.states[k - 1].matrix()) < tol * dt;

  // first index from which every later step is small
  std::size_t settle = n;
  for (std::size_t k = n; k-- > 1;) {
    if (!small[k]) break;
    settle = k;
  }
  const std::size_t tail_start = n - std::max<std::size_t>(1, n / 10);
  SteadyState out{traj.states.back(), settle <= tail_start, 0.0};
  if (settle == n) {
    out.t_settle = traj.times.back();
  } else {
    out.t_settle = traj.times[settle - 1];
  }
  return out;
}

}  // namespace ergoquench::dynamics
