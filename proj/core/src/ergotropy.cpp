#include "ergoquench/ergotropy.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <tuple>

#include "ergoquench/errors.hpp"

namespace ergoquench::ergotropy {

using linalg::Complex;

namespace {

void check_dims(const DensityMatrix& rho, const Matrix& h) {
  if (!h.square() || h.rows() != rho.dim()) throw std::invalid_argument("ergotropy: state and Hamiltonian dimensions differ");
}

double expectation(const Matrix& rho, const Matrix& h) {
  // Tr(rho H) = sum_ij rho_ij H_ji
  double acc = 0.0;
  for (std::size_t i = 0; i < rho.rows(); ++i)
    for (std::size_t j = 0; j < rho.cols(); ++j) acc += std::real(rho(i, j) * h(j, i));
  return acc;
}

ErgotropyRecord record_with_levels(const DensityMatrix& rho, const Matrix& h_matrix, std::span<const double> levels,
                                   double time) {
  const auto r = linalg::hermitian_eigenvalues(rho.matrix());

  ErgotropyRecord rec;
  rec.time = time;
  rec.rho_spectrum.assign(r.rbegin(), r.rend());
  rec.energy = expectation(rho.matrix(), h_matrix);
  rec.passive_energy = 0.0;
  for (std::size_t k = 0; k < levels.size(); ++k) rec.passive_energy += rec.rho_spectrum[k] * levels[k];

  const double w = rec.energy - rec.passive_energy;
  if (w < -kNegativeErgotropyTolerance)
    throw InvariantViolation("ergotropy", "negative ergotropy " + std::to_string(w) + " at t=" + std::to_string(time));
  rec.ergotropy = std::max(w, 0.0);
  return rec;
}

}  // namespace

ErgotropyRecord ergotropy(const DensityMatrix& rho, const Matrix& h_matrix, double time) {
  check_dims(rho, h_matrix);
  const auto e = linalg::hermitian_eig(h_matrix);
  return record_with_levels(rho, h_matrix, e.values, time);
}

DensityMatrix passive_state(const DensityMatrix& rho, const Matrix& h_matrix) {
  check_dims(rho, h_matrix);
  const auto r = linalg::hermitian_eig(rho.matrix());
  const auto e = linalg::hermitian_eig(h_matrix);
  const std::size_t d = rho.dim();
  Matrix out(d, d);
  for (std::size_t k = 0; k < d; ++k) {
    const double p = r.values[d - 1 - k];
    const auto v = e.vector(k);
    out += Matrix::outer(v, v) * Complex(p);
  }
  return DensityMatrix(linalg::hermitian_part(out));
}

std::vector<ErgotropyRecord> ergotropy_series(const dynamics::Trajectory& traj, const Matrix& h_matrix) {
  std::vector<ErgotropyRecord> out;
  if (traj.states.empty()) return out;
  check_dims(traj.states.front(), h_matrix);
  const auto e = linalg::hermitian_eig(h_matrix);
  out.reserve(traj.size());
  for (std::size_t k = 0; k < traj.size(); ++k)
    out.push_back(record_with_levels(traj.states[k], h_matrix, e.values, traj.times[k]));
  return out;
}

std::optional<double> activation_time(std::span<const ErgotropyRecord> series, double threshold) {
  if (series.empty()) throw std::invalid_argument("activation_time: empty series");
  if (series.front().ergotropy > threshold) return series.front().time;
  for (std::size_t k = 1; k < series.size(); ++k) {
    const auto& prev = series[k - 1];
    const auto& cur = series[k];
    if (cur.ergotropy > threshold) {
      const double frac = (threshold - prev.ergotropy) / (cur.ergotropy - prev.ergotropy);
      return prev.time + frac * (cur.time - prev.time);
    }
  }
  return std::nullopt;
}

std::optional<double> activation_time(const dynamics::Trajectory& traj, const Matrix& h_matrix, double threshold) {
  const auto series = ergotropy_series(traj, h_matrix);
  return activation_time(series, threshold);
}

ErgotropyDifference ergotropy_difference(std::span<const ErgotropyRecord> a, std::span<const ErgotropyRecord> b,
                                         double noise_floor) {
  if (a.size() != b.size()) throw std::invalid_argument("ergotropy_difference: grids differ in length");
  ErgotropyDifference out;
  out.times.reserve(a.size());
  out.delta.reserve(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (std::abs(a[k].time - b[k].time) > 1e-12 * std::max(1.0, std::abs(a[k].time)))
      throw std::invalid_argument("ergotropy_difference: grids differ at index " + std::to_string(k));
    out.times.push_back(a[k].time);
    out.delta.push_back(a[k].ergotropy - b[k].ergotropy);
  }

  // compare each significant point with the previous significant one
  std::optional<std::size_t> last;
  for (std::size_t k = 0; k < out.delta.size(); ++k) {
    if (std::abs(out.delta[k]) <= noise_floor) continue;
    if (last && std::signbit(out.delta[*last]) != std::signbit(out.delta[k])) {
      const double d0 = out.delta[*last];
      const double d1 = out.delta[k];
      const double t0 = out.times[*last];
      const double t1 = out.times[k];
      out.sign_changes.push_back(t0 + (t1 - t0) * d0 / (d0 - d1));
    }
    last = k;
  }
  return out;
}

ErgotropyDifference ergotropy_difference(const dynamics::Trajectory& traj_a, const dynamics::Trajectory& traj_b,
                                         const Matrix& h_matrix, double noise_floor) {
  const auto a = ergotropy_series(traj_a, h_matrix);
  const auto b = ergotropy_series(traj_b, h_matrix);
  return ergotropy_difference(a, b, noise_floor);
}

std::vector<EigenvalueCrossing> eigenvalue_crossings(const dynamics::Trajectory& traj) {
  if (traj.states.empty()) throw std::invalid_argument("eigenvalue_crossings: empty trajectory");
  const std::size_t d = traj.states.front().dim();

  auto eig0 = linalg::hermitian_eig(traj.states.front().matrix());
  std::vector<double> values = eig0.values;
  std::vector<linalg::Vector> vectors;
  for (std::size_t b = 0; b < d; ++b) vectors.push_back(eig0.vector(b));

  std::vector<EigenvalueCrossing> out;
  std::vector<std::tuple<double, std::size_t, std::size_t>> overlaps;
  overlaps.reserve(d * d);

  for (std::size_t k = 1; k < traj.size(); ++k) {
    const auto eig = linalg::hermitian_eig(traj.states[k].matrix());
    overlaps.clear();
    for (std::size_t b = 0; b < d; ++b)
      for (std::size_t m = 0; m < d; ++m)
        overlaps.emplace_back(std::norm(linalg::inner(vectors[b], eig.vector(m))), b, m);
    std::sort(overlaps.begin(), overlaps.end(), std::greater<>());

    std::vector<std::ptrdiff_t> assigned(d, -1);
    std::vector<bool> taken(d, false);
    for (const auto& [ov, b, m] : overlaps) {
      if (assigned[b] >= 0 || taken[m]) continue;
      assigned[b] = static_cast<std::ptrdiff_t>(m);
      taken[m] = true;
    }

    std::vector<double> next(d);
    for (std::size_t b = 0; b < d; ++b) {
      const auto m = static_cast<std::size_t>(assigned[b]);
      next[b] = eig.values[m];
      vectors[b] = eig.vector(m);
    }

    const double t0 = traj.times[k - 1];
    const double t1 = traj.times[k];
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = a + 1; b < d; ++b) {
        const double g0 = values[a] - values[b];
        const double g1 = next[a] - next[b];
        if (std::abs(g0) <= kCrossingGap || std::abs(g1) <= kCrossingGap) continue;
        if (std::signbit(g0) == std::signbit(g1)) continue;
        out.push_back({t0 + (t1 - t0) * g0 / (g0 - g1), a, b});
      }
    values = std::move(next);
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.time < y.time; });
  return out;
}

std::vector<std::vector<double>> energy_basis_populations(const dynamics::Trajectory& traj, const Matrix& h_matrix) {
  const auto e = linalg::hermitian_eig(h_matrix);
  const std::size_t d = h_matrix.rows();
  std::vector<linalg::Vector> basis;
  for (std::size_t k = 0; k < d; ++k) basis.push_back(e.vector(k));

  std::vector<std::vector<double>> rows;
  rows.reserve(traj.size());
  for (const auto& state : traj.states) {
    if (state.dim() != d) throw std::invalid_argument("energy_basis_populations: dimension mismatch");
    std::vector<double> row(d);
    for (std::size_t k = 0; k < d; ++k) {
      const auto rv = state.matrix() * std::span<const Complex>(basis[k]);
      row[k] = std::real(linalg::inner(basis[k], rv));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace ergoquench::ergotropy
