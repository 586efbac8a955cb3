#include "ergoquench/oracles.hpp"

#include <cmath>
#include <stdexcept>

namespace ergoquench::oracles {

using linalg::Complex;
using linalg::Matrix;

namespace {

// Two-qubit basis indices in the repo convention.
constexpr std::size_t kEE = 0, kEG = 1, kGE = 2, kGG = 3;

// State vector of the real 6 x 6 systems: p_gg, p_eg, p_ge, p_ee, Re c, Im c.
using Real6 = std::array<double, 6>;
using Coeffs6 = std::array<std::array<double, 6>, 6>;

Real6 pack(const TwoQubitBlockState& s) { return {s.p_gg, s.p_eg, s.p_ge, s.p_ee, s.c.real(), s.c.imag()}; }

TwoQubitBlockState unpack(const Real6& x) { return {x[0], x[1], x[2], x[3], {x[4], x[5]}}; }

TwoQubitBlockState evolve_linear(const Coeffs6& a, const TwoQubitBlockState& init, double t) {
  Matrix m(6, 6);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) m(i, j) = a[i][j] * t;
  const Matrix prop = linalg::expm(m);
  const Real6 x0 = pack(init);
  Real6 x{};
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) x[i] += prop(i, j).real() * x0[j];
  return unpack(x);
}

void require_unit_coupling(const model::ModelSpec& m) {
  if (m.j_coupling != 1.0) throw std::invalid_argument("oracles assume J = 1");
}

}  // namespace

bool TwoQubitBlockState::valid(double tol) const {
  for (double p : {p_gg, p_eg, p_ge, p_ee})
    if (p < -tol || p > 1.0 + tol) return false;
  if (std::abs(p_gg + p_eg + p_ge + p_ee - 1.0) > tol) return false;
  return std::abs(c) <= std::sqrt(std::max(0.0, p_eg * p_ge)) + tol;
}

TwoQubitBlockState TwoQubitBlockState::from_density(const model::DensityMatrix& rho) {
  if (rho.dim() != 4) throw std::invalid_argument("TwoQubitBlockState: expected a 4x4 state");
  return {rho(kGG, kGG).real(), rho(kEG, kEG).real(), rho(kGE, kGE).real(), rho(kEE, kEE).real(), rho(kEG, kGE)};
}

double t_c_analytic(double beta, double h, double gamma) {
  if (h >= 1.0) throw std::domain_error("t_c formula requires h < J = 1");
  if (!(beta > 0.0) || !(gamma > 0.0)) throw std::domain_error("t_c formula requires beta > 0 and gamma > 0");
  return std::log1p(std::tanh(beta - beta * h)) / gamma;
}

double beta_critical(double h, double tol) {
  if (!(h >= 0.0 && h < 1.0)) throw std::domain_error("beta_critical requires 0 <= h < 1");
  auto f = [h](double b) { return std::sinh(2.0 * b) - std::cosh(2.0 * b * h); };
  double lo = 1e-12;
  double hi = 20.0;
  if (!(f(lo) < 0.0 && f(hi) > 0.0)) throw std::runtime_error("beta_critical: no sign change on (0, 20]");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

TwoQubitBlockState two_qubit_parallel_block(const TwoQubitBlockState& init, double gamma, double t) {
  const double g = gamma;
  // clang-format off
  const Coeffs6 a = {{
      //  p_gg  p_eg  p_ge  p_ee  Re c  Im c
      {{  0.0,   g,    g,   0.0,  0.0,  0.0 }},
      {{  0.0,  -g,   0.0,   g,   0.0, -4.0 }},
      {{  0.0,  0.0,  -g,    g,   0.0,  4.0 }},
      {{  0.0,  0.0,  0.0, -2*g,  0.0,  0.0 }},
      {{  0.0,  0.0,  0.0,  0.0,  -g,   0.0 }},
      {{  0.0,  2.0, -2.0,  0.0,  0.0,  -g  }},
  }};
  // clang-format on
  return evolve_linear(a, init, t);
}

TwoQubitBlockState dephasing_two_qubit_block(const TwoQubitBlockState& init, double gamma, double t) {
  const double g4 = 4.0 * gamma;
  // clang-format off
  const Coeffs6 a = {{
      {{ 0.0, 0.0,  0.0, 0.0,  0.0,  0.0 }},
      {{ 0.0, 0.0,  0.0, 0.0,  0.0, -4.0 }},
      {{ 0.0, 0.0,  0.0, 0.0,  0.0,  4.0 }},
      {{ 0.0, 0.0,  0.0, 0.0,  0.0,  0.0 }},
      {{ 0.0, 0.0,  0.0, 0.0,  -g4,  0.0 }},
      {{ 0.0, 2.0, -2.0, 0.0,  0.0,  -g4 }},
  }};
  // clang-format on
  return evolve_linear(a, init, t);
}

SumCoherence two_qubit_collective_sc(const TwoQubitBlockState& init, double gamma, double t) {
  const double e = std::exp(-2.0 * gamma * t);
  const double s0 = init.p_eg + init.p_ge;
  const double c0 = init.c.real();
  const double pee = init.p_ee;
  return {2.0 * gamma * pee * t * e + 0.5 * s0 * (1.0 + e) + c0 * (e - 1.0),
          gamma * pee * t * e + 0.25 * s0 * (e - 1.0) + 0.5 * c0 * (e + 1.0)};
}

CollectiveGibbsData collective_gibbs_data(double beta, double h) {
  CollectiveGibbsData d;
  d.z = 2.0 * (std::cosh(2.0 * beta) + std::cosh(2.0 * beta * h));
  d.s0 = 2.0 * std::cosh(2.0 * beta) / d.z;
  d.c0 = -std::sinh(2.0 * beta) / d.z;
  d.s_inf = std::exp(2.0 * beta) / d.z;
  return d;
}

std::array<double, 4> collective_steady_spectrum(double beta, double h) {
  if (!(beta > 0.0)) throw std::domain_error("collective_steady_spectrum requires beta > 0");
  const double s = collective_gibbs_data(beta, h).s_inf;
  return {0.0, 1.0 - s, 0.0, s};
}

bool passivity_predicate(double beta, double h) { return std::sinh(2.0 * beta) >= std::cosh(2.0 * beta * h); }

DarkSubspace dark_subspace(const model::ModelSpec& model) {
  require_unit_coupling(model);
  const Matrix s_minus = model::collective_operator(model, model::CollectiveKind::minus);
  DarkSubspace out;
  out.basis = linalg::null_space_hermitian(s_minus.adjoint() * s_minus, linalg::NULL_TOL);
  out.projector = Matrix(model.dim(), model.dim());
  for (const auto& v : out.basis) out.projector += Matrix::outer(v, v);
  return out;
}

DarkPopulation dark_population(double beta, const model::ModelSpec& model) {
  require_unit_coupling(model);
  if (!(beta >= 0.0)) throw std::invalid_argument("p_dark requires beta >= 0");
  const Matrix h = model::build_hamiltonian(model);
  const auto dark = dark_subspace(model);
  const auto eig = linalg::hermitian_eig(h);
  const double e0 = eig.values.front();

  double z = 0.0, z_h = 0.0, z_dark = 0.0, z_dark_h = 0.0;
  for (std::size_t k = 0; k < eig.values.size(); ++k) {
    const double w = std::exp(-beta * (eig.values[k] - e0));
    const auto v = eig.vector(k);
    const double overlap = std::real(linalg::inner(v, dark.projector * std::span<const Complex>(v)));
    z += w;
    z_h += w * eig.values[k];
    z_dark += w * overlap;
    z_dark_h += w * overlap * eig.values[k];
  }
  DarkPopulation out;
  out.p_dark = z_dark / z;
  out.mean_energy = z_h / z;
  out.mean_energy_dark = z_dark > 0.0 ? z_dark_h / z_dark : 0.0;
  out.derivative = -(out.mean_energy_dark - out.mean_energy) * out.p_dark;
  return out;
}

double p_dark(double beta, const model::ModelSpec& model) { return dark_population(beta, model).p_dark; }

}  // namespace ergoquench::oracles
