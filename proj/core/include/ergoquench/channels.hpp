#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ergoquench/linalg.hpp"
#include "ergoquench/model.hpp"

namespace ergoquench::channels {

using linalg::Matrix;

/// Dissipator parameters. `alpha` mixes dissipation (0) with dephasing (1);
/// `alpha_minus` / `alpha_z` interpolate each channel from local (0) to collective (1).
struct ChannelSpec {
  double gamma = 0.05;
  double alpha = 0.0;
  double alpha_minus = 0.0;
  double alpha_z = 0.0;

  /// Throws std::invalid_argument on gamma < 0 or any alpha outside [0,1].
  void validate() const;
};

/// Symmetric N x N coupling-rate matrix Gamma_ij = gamma [(1 - a) delta_ij + a].
class RateMatrix {
 public:
  RateMatrix(std::size_t n, std::vector<double> values);

  std::size_t size() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return values_[i * n_ + j]; }

 private:
  std::size_t n_;
  std::vector<double> values_;
};

RateMatrix rate_matrix(double gamma, double alpha_interp, std::size_t n);

/// sum_ij Gamma_ij (A_i rho A_j^dagger - 1/2 {A_j^dagger A_i, rho}).
Matrix dissipator_apply(const RateMatrix& rates, std::span<const Matrix> jumps, const Matrix& rho);

/// One weighted Gamma-matrix dissipator; a Liouvillian is the commutator plus a sum of these.
struct DissipatorTerm {
  RateMatrix rates;
  std::vector<Matrix> jumps;
  double weight = 1.0;
};

// Column-stacking vectorization: vec(rho)[j*D + i] = rho(i, j), so that
// vec(A rho B) = (B^T (x) A) vec(rho).
linalg::Vector vectorize(const Matrix& rho);
Matrix unvectorize(std::span<const linalg::Complex> v, std::size_t dim);

/// D^2 x D^2 generator acting on column-stacked states. Immutable after construction.
class Liouvillian {
 public:
  Liouvillian(Matrix superop, std::size_t dim_state);

  const Matrix& matrix() const { return superop_; }
  std::size_t dim_state() const { return dim_; }

  Matrix apply(const Matrix& rho) const;

 private:
  Matrix superop_;
  std::size_t dim_;
};

Liouvillian assemble_liouvillian(const Matrix& h_matrix, std::span<const DissipatorTerm> terms);

/// -i[H, .] + (1 - alpha) D^(-) + alpha D^(z) with the Gamma-matrix channels of `spec`.
Liouvillian build_liouvillian(const Matrix& h_matrix, const ChannelSpec& spec, const model::ModelSpec& model);

/// Direct (non-vectorized) evaluation of the same generator; used to cross-check
/// the superoperator.
Matrix lindblad_rhs(const Matrix& h_matrix, const ChannelSpec& spec, const model::ModelSpec& model,
                    const Matrix& rho);

}  // namespace ergoquench::channels
