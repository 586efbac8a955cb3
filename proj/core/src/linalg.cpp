#include "ergoquench/linalg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace ergoquench::linalg {

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

Matrix::Matrix(std::initializer_list<std::initializer_list<Complex>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw std::invalid_argument("Matrix: ragged initializer");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const double> values) {
  Matrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

Matrix Matrix::outer(std::span<const Complex> ket, std::span<const Complex> bra) {
  Matrix m(ket.size(), bra.size());
  for (std::size_t i = 0; i < ket.size(); ++i)
    for (std::size_t j = 0; j < bra.size(); ++j) m(i, j) = ket[i] * std::conj(bra[j]);
  return m;
}

Matrix Matrix::adjoint() const {
  Matrix r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
  return r;
}

Matrix Matrix::transpose() const {
  Matrix r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

Matrix Matrix::conj() const {
  Matrix r = *this;
  for (auto& z : r.data_) z = std::conj(z);
  return r;
}

Complex Matrix::trace() const {
  Complex t = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

Matrix& Matrix::operator+=(const Matrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw std::invalid_argument("Matrix +=: shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw std::invalid_argument("Matrix -=: shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

Matrix& Matrix::operator*=(Complex s) {
  for (auto& z : data_) z *= s;
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("Matrix *: shape mismatch");
  Matrix r(a.rows(), b.cols());
  const std::size_t n = b.cols();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Complex* out = &r(i, 0);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      const Complex* brow = &b(k, 0);
      for (std::size_t j = 0; j < n; ++j) out[j] += aik * brow[j];
    }
  }
  return r;
}

Vector operator*(const Matrix& m, std::span<const Complex> v) {
  if (m.cols() != v.size()) throw std::invalid_argument("Matrix * vector: shape mismatch");
  Vector r(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Complex acc = 0.0;
    const Complex* row = &m(i, 0);
    for (std::size_t j = 0; j < v.size(); ++j) acc += row[j] * v[j];
    r[i] = acc;
  }
  return r;
}

Complex inner(std::span<const Complex> a, std::span<const Complex> b) {
  Complex acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

double norm(std::span<const Complex> v) { return std::sqrt(std::real(inner(v, v))); }

double frobenius_norm(const Matrix& m) {
  double acc = 0.0;
  for (const auto& z : m.data()) acc += std::norm(z);
  return std::sqrt(acc);
}

double max_abs(const Matrix& m) {
  double r = 0.0;
  for (const auto& z : m.data()) r = std::max(r, std::abs(z));
  return r;
}

double one_norm(const Matrix& m) {
  double best = 0.0;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    double col = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) col += std::abs(m(i, j));
    best = std::max(best, col);
  }
  return best;
}

double hermiticity_defect(const Matrix& m) {
  if (!m.square()) return INFINITY;
  double r = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i; j < m.cols(); ++j) r = std::max(r, std::abs(m(i, j) - std::conj(m(j, i))));
  return r;
}

Matrix hermitian_part(const Matrix& m) {
  Matrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
  return r;
}

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }
Matrix anticommutator(const Matrix& a, const Matrix& b) { return a * b + b * a; }

Matrix kron(const Matrix& a, const Matrix& b) {
  const std::size_t p = b.rows();
  const std::size_t q = b.cols();
  Matrix r(a.rows() * p, a.cols() * q);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Complex aij = a(i, j);
      if (aij == Complex{}) continue;
      for (std::size_t k = 0; k < p; ++k)
        for (std::size_t l = 0; l < q; ++l) r(i * p + k, j * q + l) = aij * b(k, l);
    }
  return r;
}

Vector HermitianEig::vector(std::size_t k) const {
  Vector v(vectors.rows());
  for (std::size_t i = 0; i < vectors.rows(); ++i) v[i] = vectors(i, k);
  return v;
}

namespace {

double off_diagonal_norm(const Matrix& a) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) acc += std::norm(a(i, j));
  return std::sqrt(acc);
}

// Zeroes a(p,q) of a Hermitian matrix: a phase on column/row q makes a(p,q) real,
// then a real Givens rotation diagonalizes the (p,q) block. v accumulates both.
void jacobi_rotate(Matrix& a, Matrix* v, std::size_t p, std::size_t q) {
  const std::size_t n = a.rows();
  const Complex apq = a(p, q);
  const double mag = std::abs(apq);
  if (mag == 0.0) return;

  const Complex phase = std::conj(apq) / mag;  // e^{-i phi}
  for (std::size_t k = 0; k < n; ++k) {
    a(k, q) *= phase;
    if (v) (*v)(k, q) *= phase;
  }
  for (std::size_t k = 0; k < n; ++k) a(q, k) *= std::conj(phase);

  const double app = std::real(a(p, p));
  const double aqq = std::real(a(q, q));
  const double theta = (aqq - app) / (2.0 * mag);
  const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;

  for (std::size_t k = 0; k < n; ++k) {
    const Complex akp = a(k, p);
    const Complex akq = a(k, q);
    a(k, p) = c * akp - s * akq;
    a(k, q) = s * akp + c * akq;
  }
  if (v) {
    for (std::size_t k = 0; k < n; ++k) {
      const Complex vkp = (*v)(k, p);
      const Complex vkq = (*v)(k, q);
      (*v)(k, p) = c * vkp - s * vkq;
      (*v)(k, q) = s * vkp + c * vkq;
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    const Complex apk = a(p, k);
    const Complex aqk = a(q, k);
    a(p, k) = c * apk - s * aqk;
    a(q, k) = s * apk + c * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = std::real(a(p, p));
  a(q, q) = std::real(a(q, q));
}


Matrix jacobi_diagonalize(const Matrix& m, Matrix* v) {
  if (!m.square() || m.empty()) throw std::invalid_argument("hermitian_eig: matrix must be square and nonempty");
  const double scale = std::max(1.0, frobenius_norm(m));
  if (hermiticity_defect(m) > HERM_TOL * scale)
    throw std::invalid_argument("hermitian_eig: matrix is not Hermitian (defect " +
                                std::to_string(hermiticity_defect(m)) + ")");

  const std::size_t n = m.rows();
  Matrix a = hermitian_part(m);
  const double target = 1e-15 * std::max(frobenius_norm(a), 1e-300);
  for (int sweep = 0; sweep < 100; ++sweep) {
    if (off_diagonal_norm(a) <= target) break;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) jacobi_rotate(a, v, p, q);
  }
  return a;
}

std::vector<std::size_t> ascending_diagonal(const Matrix& a) {
  std::vector<std::size_t> order(a.rows());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return std::real(a(i, i)) < std::real(a(j, j)); });
  return order;
}

}  // namespace

HermitianEig hermitian_eig(const Matrix& m) {
  Matrix v = Matrix::identity(m.rows());
  const Matrix a = jacobi_diagonalize(m, &v);
  const auto order = ascending_diagonal(a);
  const std::size_t n = a.rows();

  HermitianEig out;
  out.values.resize(n);
  out.vectors = Matrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = std::real(a(order[k], order[k]));
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

std::vector<double> hermitian_eigenvalues(const Matrix& m) {
  const Matrix a = jacobi_diagonalize(m, nullptr);
  std::vector<double> values;
  for (std::size_t i : ascending_diagonal(a)) values.push_back(std::real(a(i, i)));
  return values;
}

bool positive_definite(const Matrix& m) {
  if (!m.square()) throw std::invalid_argument("positive_definite: matrix must be square");
  const std::size_t n = m.rows();
  Matrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = std::real(m(j, j));
    for (std::size_t k = 0; k < j; ++k) d -= std::norm(l(j, k));
    if (!(d > 0.0)) return false;
    l(j, j) = std::sqrt(d);
    for (std::size_t i = j + 1; i < n; ++i) {
      Complex acc = m(i, j);
      for (std::size_t k = 0; k < j; ++k) acc -= l(i, k) * std::conj(l(j, k));
      l(i, j) = acc / l(j, j);
    }
  }
  return true;
}

Matrix solve(const Matrix& a, const Matrix& b) {
  if (!a.square() || a.rows() != b.rows()) throw std::invalid_argument("solve: shape mismatch");
  const std::size_t n = a.rows();
  Matrix lu = a;
  Matrix x = b;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = std::abs(lu(k, k));
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(lu(i, k)) > best) {
        best = std::abs(lu(i, k));
        piv = i;
      }
    if (best == 0.0) throw std::runtime_error("solve: singular matrix");
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu(k, j), lu(piv, j));
      for (std::size_t j = 0; j < x.cols(); ++j) std::swap(x(k, j), x(piv, j));
    }
    const Complex inv = 1.0 / lu(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const Complex f = lu(i, k) * inv;
      if (f == Complex{}) continue;
      lu(i, k) = f;
      for (std::size_t j = k + 1; j < n; ++j) lu(i, j) -= f * lu(k, j);
      for (std::size_t j = 0; j < x.cols(); ++j) x(i, j) -= f * x(k, j);
    }
  }
  for (std::size_t k = n; k-- > 0;) {
    for (std::size_t j = 0; j < x.cols(); ++j) {
      Complex acc = x(k, j);
      for (std::size_t i = k + 1; i < n; ++i) acc -= lu(k, i) * x(i, j);
      x(k, j) = acc / lu(k, k);
    }
  }
  return x;
}

Matrix expm(const Matrix& m) {
  if (!m.square()) throw std::invalid_argument("expm: matrix must be square");
  const std::size_t n = m.rows();
  if (n == 0) return m;

  // Higham (2005) degree-13 coefficients and theta_13.
  static constexpr std::array<double, 14> b = {
      64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0, 129060195264000.0,
      10559470521600.0,    670442572800.0,      33522128640.0,      1323241920.0,       40840800.0,
      960960.0,            16380.0,             182.0,              1.0};
  constexpr double theta13 = 5.371920351148152;

  const double norm1 = one_norm(m);
  int squarings = 0;
  if (norm1 > theta13) squarings = static_cast<int>(std::ceil(std::log2(norm1 / theta13)));
  Matrix a = m * Complex(std::ldexp(1.0, -squarings));

  const Matrix id = Matrix::identity(n);
  const Matrix a2 = a * a;
  const Matrix a4 = a2 * a2;
  const Matrix a6 = a4 * a2;

  Matrix u_inner = a6 * b[13] + a4 * b[11] + a2 * b[9];
  u_inner = a6 * u_inner;
  u_inner += a6 * b[7] + a4 * b[5] + a2 * b[3] + id * b[1];
  const Matrix u = a * u_inner;

  Matrix v = a6 * b[12] + a4 * b[10] + a2 * b[8];
  v = a6 * v;
  v += a6 * b[6] + a4 * b[4] + a2 * b[2] + id * b[0];

  Matrix r = solve(v - u, v + u);
  for (int s = 0; s < squarings; ++s) r = r * r;
  return r;
}

std::vector<Vector> null_space_hermitian(const Matrix& m, double tol) {
  const HermitianEig eig = hermitian_eig(m);
  std::vector<Vector> basis;
  for (std::size_t k = 0; k < eig.values.size(); ++k)
    if (eig.values[k] < tol) basis.push_back(eig.vector(k));
  return basis;
}

}  // namespace ergoquench::linalg
