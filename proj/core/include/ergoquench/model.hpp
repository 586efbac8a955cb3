#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "ergoquench/linalg.hpp"

// Basis convention used everywhere: single-qubit basis (|e>, |g>) with
// sigma_z|e> = +|e> and sigma^-|e> = |g>; sites 1..N are Kronecker factors from
// left to right, so |e...e> has index 0 and |g...g> has index 2^N - 1.

namespace ergoquench::model {

using linalg::Matrix;

struct ModelSpec {
  int n_qubits = 2;
  double j_coupling = 1.0;
  double field_h = 0.1;

  std::size_t dim() const { return std::size_t{1} << n_qubits; }
  /// Throws std::invalid_argument unless 1 <= n_qubits <= 6 and h >= 0.
  void validate() const;
};

enum class PauliKind { x, y, z, minus, plus };
enum class CollectiveKind { minus, z };

Matrix pauli(PauliKind kind);

/// J sum_{i<N} (X_i X_{i+1} + Y_i Y_{i+1}) + h sum_i Z_i, open boundary.
Matrix build_hamiltonian(const ModelSpec& spec);

/// Operator `kind` acting on `site` (1-based) of the chain.
Matrix site_operator(const ModelSpec& spec, int site, PauliKind kind);

Matrix collective_operator(const ModelSpec& spec, CollectiveKind kind);

/// Number of excited qubits in computational basis state `index`.
int excitations(std::size_t index, int n_qubits);

struct StateTolerance {
  double hermiticity = 1e-10;
  double trace = 1e-10;
  double min_eigenvalue = -1e-9;
};

/// Describes the first violated density-matrix invariant, or nullopt if `m` is a
/// valid state within `tol`.
std::optional<std::string> state_defect(const Matrix& m, const StateTolerance& tol = {});

/// Hermitian, unit-trace, positive semidefinite D x D matrix.
class DensityMatrix {
 public:
  /// Throws InvariantViolation if `m` fails any invariant within `tol`.
  explicit DensityMatrix(Matrix m, const StateTolerance& tol = {});

  const Matrix& matrix() const { return m_; }
  std::size_t dim() const { return m_.rows(); }
  linalg::Complex operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

  static DensityMatrix maximally_mixed(std::size_t dim);
  static DensityMatrix pure(std::span<const linalg::Complex> ket);

 private:
  Matrix m_;
};

/// exp(-beta H) / Z built in the eigenbasis of H with shifted exponents, so
/// beta -> infinity yields the uniform mixture over the ground space.
DensityMatrix gibbs_state(const Matrix& h_matrix, double beta);

}  // namespace ergoquench::model
