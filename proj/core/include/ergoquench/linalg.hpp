#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace ergoquench::linalg {

using Complex = std::complex<double>;
using Vector = std::vector<Complex>;

inline constexpr double HERM_TOL = 1e-12;
inline constexpr double EIG_TOL = 1e-10;
inline constexpr double NULL_TOL = 1e-10;

/// Dense complex matrix, row-major.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  Matrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static Matrix identity(std::size_t n);
  static Matrix zeros(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }
  static Matrix diagonal(std::span<const double> values);
  static Matrix outer(std::span<const Complex> ket, std::span<const Complex> bra);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }
  bool empty() const { return data_.empty(); }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<Complex> data() { return data_; }
  std::span<const Complex> data() const { return data_; }

  Matrix adjoint() const;
  Matrix transpose() const;
  Matrix conj() const;
  Complex trace() const;

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(Complex s);

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, Complex s) { return a *= s; }
  friend Matrix operator*(Complex s, Matrix a) { return a *= s; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

Vector operator*(const Matrix& m, std::span<const Complex> v);

Complex inner(std::span<const Complex> a, std::span<const Complex> b);  // <a|b>
double norm(std::span<const Complex> v);

double frobenius_norm(const Matrix& m);
double max_abs(const Matrix& m);
double one_norm(const Matrix& m);
double hermiticity_defect(const Matrix& m);  // max |m - m^dagger|
Matrix hermitian_part(const Matrix& m);      // (m + m^dagger) / 2
Matrix commutator(const Matrix& a, const Matrix& b);
Matrix anticommutator(const Matrix& a, const Matrix& b);

/// Kronecker product: (a (x) b)[i*P + k, j*Q + l] = a[i,j] * b[k,l], P x Q = dims of b.
Matrix kron(const Matrix& a, const Matrix& b);

/// Eigenpairs of a Hermitian matrix. Eigenvalues ascending; eigenvectors are the
/// columns of `vectors`.
struct HermitianEig {
  std::vector<double> values;
  Matrix vectors;

  Vector vector(std::size_t k) const;
};

/// Cyclic complex Jacobi. Throws std::invalid_argument if `m` is not Hermitian to
/// HERM_TOL (scaled by max(1, |m|_F)); the input is symmetrized before rotating.
HermitianEig hermitian_eig(const Matrix& m);

/// Same rotations as hermitian_eig without accumulating eigenvectors. Ascending.
std::vector<double> hermitian_eigenvalues(const Matrix& m);

/// Cholesky test on the Hermitian part's lower triangle: true iff every pivot is > 0.
bool positive_definite(const Matrix& m);

/// Solves a * x = b by LU with partial pivoting. Throws std::runtime_error if singular.
Matrix solve(const Matrix& a, const Matrix& b);

/// Matrix exponential, Pade(13) scaling and squaring.
Matrix expm(const Matrix& m);

/// Orthonormal basis of the eigenspace of a Hermitian PSD matrix with eigenvalues below tol.
std::vector<Vector> null_space_hermitian(const Matrix& m, double tol = NULL_TOL);

}  // namespace ergoquench::linalg
