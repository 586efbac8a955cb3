#include "ergoquench/channels.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ergoquench::channels {

using linalg::Complex;

namespace {

void check_unit_interval(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument(std::string(name) + " out of [0,1]");
}

std::vector<Matrix> site_jumps(const model::ModelSpec& m, model::PauliKind kind) {
  std::vector<Matrix> jumps;
  for (int i = 1; i <= m.n_qubits; ++i) jumps.push_back(model::site_operator(m, i, kind));
  return jumps;
}

}  // namespace

void ChannelSpec::validate() const {
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw std::invalid_argument("gamma must be finite and >= 0");
  check_unit_interval(alpha, "alpha");
  check_unit_interval(alpha_minus, "alpha_minus");
  check_unit_interval(alpha_z, "alpha_z");
}

RateMatrix::RateMatrix(std::size_t n, std::vector<double> values) : n_(n), values_(std::move(values)) {
  if (values_.size() != n * n) throw std::invalid_argument("RateMatrix: expected n*n values");
}

RateMatrix rate_matrix(double gamma, double alpha_interp, std::size_t n) {
  if (!(gamma >= 0.0)) throw std::invalid_argument("gamma must be >= 0");
  check_unit_interval(alpha_interp, "alpha");
  std::vector<double> v(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) v[i * n + j] = gamma * ((i == j ? 1.0 - alpha_interp : 0.0) + alpha_interp);
  return RateMatrix(n, std::move(v));
}

Matrix dissipator_apply(const RateMatrix& rates, std::span<const Matrix> jumps, const Matrix& rho) {
  if (jumps.size() != rates.size()) throw std::invalid_argument("dissipator_apply: jump count does not match rates");
  for (const auto& a : jumps)
    if (a.rows() != rho.rows() || a.cols() != rho.cols())
      throw std::invalid_argument("dissipator_apply: jump/state dimension mismatch");

  Matrix out(rho.rows(), rho.cols());
  for (std::size_t i = 0; i < jumps.size(); ++i) {
    const Matrix ai_rho = jumps[i] * rho;
    for (std::size_t j = 0; j < jumps.size(); ++j) {
      const double g = rates(i, j);
      if (g == 0.0) continue;
      const Matrix aj_dag = jumps[j].adjoint();
      const Matrix ajd_ai = aj_dag * jumps[i];
      Matrix term = ai_rho * aj_dag;
      term -= linalg::anticommutator(ajd_ai, rho) * Complex(0.5);
      out += term * Complex(g);
    }
  }
  return out;
}

linalg::Vector vectorize(const Matrix& rho) {
  const std::size_t d = rho.rows();
  linalg::Vector v(d * rho.cols());
  for (std::size_t j = 0; j < rho.cols(); ++j)
    for (std::size_t i = 0; i < d; ++i) v[j * d + i] = rho(i, j);
  return v;
}

Matrix unvectorize(std::span<const Complex> v, std::size_t dim) {
  if (v.size() != dim * dim) throw std::invalid_argument("unvectorize: size mismatch");
  Matrix rho(dim, dim);
  for (std::size_t j = 0; j < dim; ++j)
    for (std::size_t i = 0; i < dim; ++i) rho(i, j) = v[j * dim + i];
  return rho;
}

Liouvillian::Liouvillian(Matrix superop, std::size_t dim_state) : superop_(std::move(superop)), dim_(dim_state) {
  if (superop_.rows() != dim_ * dim_ || !superop_.square())
    throw std::invalid_argument("Liouvillian: superoperator must be D^2 x D^2");
}

Matrix Liouvillian::apply(const Matrix& rho) const {
  const auto out = superop_ * std::span<const Complex>(vectorize(rho));
  return unvectorize(out, dim_);
}

Liouvillian assemble_liouvillian(const Matrix& h_matrix, std::span<const DissipatorTerm> terms) {
  if (!h_matrix.square()) throw std::invalid_argument("Hamiltonian must be square");
  const std::size_t d = h_matrix.rows();
  const Matrix id = Matrix::identity(d);
  const Complex minus_i{0.0, -1.0};

  // vec(H rho) = (I (x) H) vec(rho); vec(rho H) = (H^T (x) I) vec(rho)
  Matrix l = (linalg::kron(id, h_matrix) - linalg::kron(h_matrix.transpose(), id)) * minus_i;

  for (const auto& term : terms) {
    if (term.weight == 0.0) continue;
    if (term.jumps.size() != term.rates.size())
      throw std::invalid_argument("assemble_liouvillian: jump count does not match rates");
    for (std::size_t i = 0; i < term.jumps.size(); ++i) {
      const Matrix& ai = term.jumps[i];
      if (ai.rows() != d || ai.cols() != d) throw std::invalid_argument("assemble_liouvillian: jump dimension");
      for (std::size_t j = 0; j < term.jumps.size(); ++j) {
        const double g = term.weight * term.rates(i, j);
        if (g == 0.0) continue;
        const Matrix& aj = term.jumps[j];
        const Matrix ajd_ai = aj.adjoint() * ai;
        // A_i rho A_j^dagger -> conj(A_j) (x) A_i
        Matrix piece = linalg::kron(aj.conj(), ai);
        piece -= linalg::kron(id, ajd_ai) * Complex(0.5);
        piece -= linalg::kron(ajd_ai.transpose(), id) * Complex(0.5);
        l += piece * Complex(g);
      }
    }
  }
  return Liouvillian(std::move(l), d);
}

Liouvillian build_liouvillian(const Matrix& h_matrix, const ChannelSpec& spec, const model::ModelSpec& model) {
  spec.validate();
  model.validate();
  if (h_matrix.rows() != model.dim()) throw std::invalid_argument("build_liouvillian: H dimension does not match model");
  const auto n = static_cast<std::size_t>(model.n_qubits);
  const std::vector<DissipatorTerm> terms = {
      {rate_matrix(spec.gamma, spec.alpha_minus, n), site_jumps(model, model::PauliKind::minus), 1.0 - spec.alpha},
      {rate_matrix(spec.gamma, spec.alpha_z, n), site_jumps(model, model::PauliKind::z), spec.alpha},
  };
  return assemble_liouvillian(h_matrix, terms);
}

Matrix lindblad_rhs(const Matrix& h_matrix, const ChannelSpec& spec, const model::ModelSpec& model,
                    const Matrix& rho) {
  spec.validate();
  const auto n = static_cast<std::size_t>(model.n_qubits);
  Matrix out = linalg::commutator(h_matrix, rho) * Complex(0.0, -1.0);
  if (spec.alpha < 1.0) {
    const auto jumps = site_jumps(model, model::PauliKind::minus);
    out += dissipator_apply(rate_matrix(spec.gamma, spec.alpha_minus, n), jumps, rho) * Complex(1.0 - spec.alpha);
  }
  if (spec.alpha > 0.0) {
    const auto jumps = site_jumps(model, model::PauliKind::z);
    out += dissipator_apply(rate_matrix(spec.gamma, spec.alpha_z, n), jumps, rho) * Complex(spec.alpha);
  }
  return out;
}

}  // namespace ergoquench::channels
