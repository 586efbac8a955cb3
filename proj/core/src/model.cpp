#include "ergoquench/model.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "ergoquench/errors.hpp"

namespace ergoquench::model {

using linalg::Complex;

void ModelSpec::validate() const {
  if (n_qubits < 1 || n_qubits > 6) throw std::invalid_argument("n_qubits must be in [1,6]");
  if (!(field_h >= 0.0) || !std::isfinite(field_h)) throw std::invalid_argument("field h must be finite and >= 0");
  if (!std::isfinite(j_coupling)) throw std::invalid_argument("coupling J must be finite");
}

Matrix pauli(PauliKind kind) {
  const Complex i{0.0, 1.0};
  switch (kind) {
    case PauliKind::x:
      return {{0.0, 1.0}, {1.0, 0.0}};
    case PauliKind::y:
      return {{0.0, -i}, {i, 0.0}};
    case PauliKind::z:
      return {{1.0, 0.0}, {0.0, -1.0}};
    case PauliKind::minus:  // |g><e|
      return {{0.0, 0.0}, {1.0, 0.0}};
    case PauliKind::plus:  // |e><g|
      return {{0.0, 1.0}, {0.0, 0.0}};
  }
  throw std::invalid_argument("unknown Pauli kind");
}

Matrix site_operator(const ModelSpec& spec, int site, PauliKind kind) {
  spec.validate();
  if (site < 1 || site > spec.n_qubits)
    throw std::out_of_range("site " + std::to_string(site) + " outside [1," + std::to_string(spec.n_qubits) + "]");
  Matrix out = Matrix::identity(1);
  const Matrix id2 = Matrix::identity(2);
  const Matrix op = pauli(kind);
  for (int k = 1; k <= spec.n_qubits; ++k) out = linalg::kron(out, k == site ? op : id2);
  return out;
}

Matrix collective_operator(const ModelSpec& spec, CollectiveKind kind) {
  const PauliKind p = kind == CollectiveKind::minus ? PauliKind::minus : PauliKind::z;
  Matrix out(spec.dim(), spec.dim());
  for (int i = 1; i <= spec.n_qubits; ++i) out += site_operator(spec, i, p);
  return out;
}

Matrix build_hamiltonian(const ModelSpec& spec) {
  spec.validate();
  Matrix h(spec.dim(), spec.dim());
  for (int i = 1; i < spec.n_qubits; ++i) {
    Matrix bond = site_operator(spec, i, PauliKind::x) * site_operator(spec, i + 1, PauliKind::x);
    bond += site_operator(spec, i, PauliKind::y) * site_operator(spec, i + 1, PauliKind::y);
    h += bond * Complex(spec.j_coupling);
  }
  for (int i = 1; i <= spec.n_qubits; ++i) h += site_operator(spec, i, PauliKind::z) * Complex(spec.field_h);
  return h;
}

int excitations(std::size_t index, int n_qubits) {
  // bit 1 is |g> on that site
  const auto ones = std::popcount(static_cast<unsigned long long>(index));
  return n_qubits - ones;
}

std::optional<std::string> state_defect(const Matrix& m, const StateTolerance& tol) {
  std::ostringstream msg;
  if (!m.square() || m.empty()) return "state must be a nonempty square matrix";
  for (const auto& z : m.data())
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return "state has non-finite entries";
  const double herm = linalg::hermiticity_defect(m);
  if (herm > tol.hermiticity) {
    msg << "Hermiticity defect " << herm;
    return msg.str();
  }
  const Complex tr = m.trace();
  if (std::abs(tr - 1.0) > tol.trace) {
    msg << "trace " << tr.real() << (tr.imag() >= 0 ? "+" : "") << tr.imag() << "i differs from 1";
    return msg.str();
  }
  // rho - min_eigenvalue * I > 0 is the cheap test; the spectrum is only needed for the message
  const Matrix shifted = linalg::hermitian_part(m) - Matrix::identity(m.rows()) * Complex(tol.min_eigenvalue);
  if (!linalg::positive_definite(shifted)) {
    const double lo = linalg::hermitian_eigenvalues(linalg::hermitian_part(m)).front();
    if (lo < tol.min_eigenvalue) {
      msg << "minimum eigenvalue " << lo << " below " << tol.min_eigenvalue;
      return msg.str();
    }
  }
  return std::nullopt;
}

DensityMatrix::DensityMatrix(Matrix m, const StateTolerance& tol) : m_(std::move(m)) {
  if (auto defect = state_defect(m_, tol)) throw InvariantViolation("model", "invalid density matrix: " + *defect);
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
  return DensityMatrix(Matrix::identity(dim) * Complex(1.0 / static_cast<double>(dim)));
}

DensityMatrix DensityMatrix::pure(std::span<const Complex> ket) {
  const double n = linalg::norm(ket);
  if (n == 0.0) throw std::invalid_argument("pure state from zero vector");
  Matrix m = Matrix::outer(ket, ket) * Complex(1.0 / (n * n));
  return DensityMatrix(std::move(m));
}

DensityMatrix gibbs_state(const Matrix& h_matrix, double beta) {
  if (!(beta >= 0.0)) throw std::invalid_argument("beta must be >= 0");
  const auto eig = linalg::hermitian_eig(h_matrix);
  const double e0 = eig.values.front();
  std::vector<double> w(eig.values.size());
  double z = 0.0;
  for (std::size_t k = 0; k < w.size(); ++k) {
    w[k] = std::exp(-beta * (eig.values[k] - e0));
    z += w[k];
  }
  const std::size_t d = h_matrix.rows();
  Matrix rho(d, d);
  for (std::size_t k = 0; k < w.size(); ++k) {
    const double p = w[k] / z;
    if (p == 0.0) continue;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) rho(i, j) += p * eig.vectors(i, k) * std::conj(eig.vectors(j, k));
  }
  return DensityMatrix(linalg::hermitian_part(rho));
}

}  // namespace ergoquench::model
