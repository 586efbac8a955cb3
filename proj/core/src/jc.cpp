#include "ergoquench/jc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ergoquench/channels.hpp"

namespace ergoquench::jc {

using linalg::Complex;
using linalg::Matrix;

namespace {

// qubit+cavity index for atomic level (0 = g, 1 = e) and photon number n
constexpr std::size_t jc_index(std::size_t atom, std::size_t n) { return atom + 2 * n; }
// repo atomic index (0 = e, 1 = g) -> JC atomic level
constexpr std::size_t to_jc_atom(std::size_t repo) { return 1 - repo; }

Matrix annihilation() {
  Matrix a(4, 4);
  a(jc_index(0, 0), jc_index(0, 1)) = 1.0;
  a(jc_index(1, 0), jc_index(1, 1)) = 1.0;
  return a;
}

Matrix embed_vacuum(const Matrix& atom) {
  Matrix full(4, 4);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) full(jc_index(to_jc_atom(i), 0), jc_index(to_jc_atom(j), 0)) = atom(i, j);
  return full;
}

Matrix trace_cavity(const Matrix& full) {
  Matrix atom(2, 2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t n = 0; n < 2; ++n)
        atom(i, j) += full(jc_index(to_jc_atom(i), n), jc_index(to_jc_atom(j), n));
  return atom;
}

channels::DissipatorTerm single_jump(const Matrix& jump, double rate) {
  return {channels::RateMatrix(1, {rate}), {jump}, 1.0};
}

}  // namespace

void JCSpec::validate() const {
  for (double v : {omega_q, omega_c, g, kappa})
    if (!std::isfinite(v)) throw std::invalid_argument("JC parameters must be finite");
  if (g < 0.0) throw std::invalid_argument("JC coupling g must be >= 0");
  if (!(kappa > 0.0)) throw std::invalid_argument("JC cavity loss kappa must be > 0");
}

Matrix jc_hamiltonian(const JCSpec& spec) {
  spec.validate();
  Matrix h(4, 4);
  h(0, 0) = -spec.omega_q / 2.0;
  h(1, 1) = spec.omega_q / 2.0;
  h(2, 2) = spec.omega_c - spec.omega_q / 2.0;
  h(3, 3) = spec.omega_c + spec.omega_q / 2.0;
  h(1, 2) = spec.g;
  h(2, 1) = spec.g;
  return h;
}

double effective_decay_rate(const JCSpec& spec) {
  const double d = spec.delta();
  return 4.0 * spec.g * spec.g * spec.kappa / (spec.kappa * spec.kappa + 4.0 * d * d);
}

double lamb_shift(const JCSpec& spec) {
  const double d = spec.delta();
  return -spec.g * spec.g * d / (spec.kappa * spec.kappa / 4.0 + d * d);
}

dynamics::Trajectory jc_full_evolution(const JCSpec& spec, const model::DensityMatrix& rho0_atom,
                                       const dynamics::TimeGrid& grid) {
  if (rho0_atom.dim() != 2) throw std::invalid_argument("jc_full_evolution: atomic state must be 2x2");
  const std::vector<channels::DissipatorTerm> terms = {single_jump(annihilation(), spec.kappa)};
  const auto liou = channels::assemble_liouvillian(jc_hamiltonian(spec), terms);
  const auto full = dynamics::propagate(liou, model::DensityMatrix(embed_vacuum(rho0_atom.matrix())), grid);

  dynamics::Trajectory atom;
  atom.times = full.times;
  atom.states.reserve(full.size());
  for (const auto& s : full.states) atom.states.emplace_back(trace_cavity(s.matrix()));
  return atom;
}

dynamics::Trajectory effective_atom_evolution(const JCSpec& spec, const model::DensityMatrix& rho0_atom,
                                              const dynamics::TimeGrid& grid) {
  spec.validate();
  if (rho0_atom.dim() != 2) throw std::invalid_argument("effective_atom_evolution: atomic state must be 2x2");
  Matrix h(2, 2);
  h(0, 0) = lamb_shift(spec);
  const std::vector<channels::DissipatorTerm> terms = {
      single_jump(model::pauli(model::PauliKind::minus), effective_decay_rate(spec))};
  const auto liou = channels::assemble_liouvillian(h, terms);
  return dynamics::propagate(liou, rho0_atom, grid);
}

std::vector<JCComparison> compare_jc(const JCSpec& spec_base, std::span<const double> kappa_over_g,
                                     std::optional<dynamics::TimeGrid> grid) {
  const model::DensityMatrix excited(Matrix{{1.0, 0.0}, {0.0, 0.0}});
  std::vector<JCComparison> out;
  for (double ratio : kappa_over_g) {
    if (!(ratio > 0.0)) throw std::invalid_argument("compare_jc: kappa/g ratios must be positive");
    JCSpec spec = spec_base;
    // g = 0 decouples the atom; any positive kappa gives the same trivial dynamics
    spec.kappa = spec.g > 0.0 ? ratio * spec.g : ratio;

    JCComparison cmp;
    cmp.kappa_over_g = ratio;
    cmp.gamma_eff = effective_decay_rate(spec);

    dynamics::TimeGrid run_grid{10.0, 0.05};
    if (grid) {
      run_grid = *grid;
    } else if (cmp.gamma_eff > 0.0) {
      const double t_max = 8.0 / cmp.gamma_eff;
      const auto samples = std::max<std::size_t>(kSamplesPerRun, static_cast<std::size_t>(std::ceil(t_max)));
      run_grid = {t_max, t_max / static_cast<double>(samples)};
    }

    cmp.full = jc_full_evolution(spec, excited, run_grid);
    cmp.effective = effective_atom_evolution(spec, excited, run_grid);
    for (std::size_t k = 0; k < cmp.full.size(); ++k) {
      const auto& f = cmp.full.states[k];
      const auto& e = cmp.effective.states[k];
      cmp.max_deviation = std::max(cmp.max_deviation, std::abs(f(0, 0).real() - e(0, 0).real()));
      cmp.max_coherence = std::max({cmp.max_coherence, std::abs(f(0, 1)), std::abs(e(0, 1))});
    }
    out.push_back(std::move(cmp));
  }
  return out;
}

}  // namespace ergoquench::jc
