#include <cmath>
#include <random>

#include "doctest.h"
#include "ergoquench/linalg.hpp"
#include "ergoquench/model.hpp"
#include "test_support.hpp"

using namespace ergoquench;
using namespace ergoquench::testing;
using linalg::Complex;
using linalg::Matrix;

namespace {

const Matrix sx{{0, 1}, {1, 0}};
const Matrix sz{{1, 0}, {0, -1}};

}  // namespace

TEST_CASE("kron identities") {
  CHECK(max_abs_diff(linalg::kron(Matrix::identity(2), Matrix::identity(2)), Matrix::identity(4)) == 0.0);

  const Matrix z1 = linalg::kron(sz, Matrix::identity(2));
  const double diag[] = {1, 1, -1, -1};
  CHECK(max_abs_diff(z1, Matrix::diagonal(diag)) == 0.0);

  const Matrix xx = linalg::kron(sx, sx);
  CHECK(max_abs_diff(xx * xx, Matrix::identity(4)) == 0.0);
}

TEST_CASE("kron index convention against an explicit loop") {
  std::mt19937_64 rng(7);
  const Matrix a = random_matrix(2, rng);
  const Matrix b = random_matrix(3, rng);
  const Matrix k = linalg::kron(a, b);
  REQUIRE(k.rows() == 6);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t p = 0; p < 3; ++p)
        for (std::size_t q = 0; q < 3; ++q) CHECK(k(i * 3 + p, j * 3 + q) == a(i, j) * b(p, q));
}

TEST_CASE("kron mixed-product property") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    const Matrix a = random_matrix(2, rng), b = random_matrix(2, rng), c = random_matrix(2, rng),
                 d = random_matrix(2, rng);
    CHECK(max_abs_diff(linalg::kron(a, b) * linalg::kron(c, d), linalg::kron(a * c, b * d)) < 1e-12);
  }
}

TEST_CASE("hermitian_eig simple spectra") {
  auto e = linalg::hermitian_eig(sz);
  CHECK(e.values[0] == doctest::Approx(-1.0));
  CHECK(e.values[1] == doctest::Approx(1.0));

  e = linalg::hermitian_eig(Matrix::identity(5));
  for (double v : e.values) CHECK(v == doctest::Approx(1.0));
}

TEST_CASE("hermitian_eig reconstruction on random Hermitian matrices") {
  std::mt19937_64 rng(2024);
  for (std::size_t n : {2u, 3u, 8u, 16u}) {
    const Matrix a = random_hermitian(n, rng);
    const auto e = linalg::hermitian_eig(a);
    CHECK(eig_residual(a, e) < 1e-10);
    CHECK(std::is_sorted(e.values.begin(), e.values.end()));
    // V^dagger V = I
    CHECK(max_abs_diff(e.vectors.adjoint() * e.vectors, Matrix::identity(n)) < 1e-12);
    // V diag V^dagger = A
    Matrix rebuilt = e.vectors * Matrix::diagonal(e.values) * e.vectors.adjoint();
    CHECK(max_abs_diff(rebuilt, a) < 1e-10);
    // trace is preserved
    double sum = 0.0;
    for (double v : e.values) sum += v;
    CHECK(sum == doctest::Approx(a.trace().real()).epsilon(1e-12));

    const auto values = linalg::hermitian_eigenvalues(a);
    for (std::size_t k = 0; k < n; ++k) CHECK(values[k] == doctest::Approx(e.values[k]).epsilon(1e-12));
  }
}

TEST_CASE("hermitian_eig is unitarily invariant") {
  std::mt19937_64 rng(99);
  const Matrix a = random_hermitian(6, rng);
  const Matrix u = random_unitary(6, rng);
  const auto e1 = linalg::hermitian_eig(a);
  const auto e2 = linalg::hermitian_eig(linalg::hermitian_part(u * a * u.adjoint()));
  for (std::size_t k = 0; k < 6; ++k) CHECK(e1.values[k] == doctest::Approx(e2.values[k]).epsilon(1e-10));
}

TEST_CASE("hermitian_eig rejects non-Hermitian input") {
  const Matrix m{{0, 1}, {0, 0}};
  CHECK_THROWS_AS(linalg::hermitian_eig(m), std::invalid_argument);
}

TEST_CASE("positive_definite") {
  CHECK(linalg::positive_definite(Matrix::identity(3)));
  const double d[] = {1.0, -1e-12, 2.0};
  CHECK_FALSE(linalg::positive_definite(Matrix::diagonal(d)));
  std::mt19937_64 rng(3);
  const auto rho = random_state(8, rng);
  CHECK(linalg::positive_definite(rho.matrix()));
}

TEST_CASE("expm closed forms") {
  CHECK(max_abs_diff(linalg::expm(Matrix(3, 3)), Matrix::identity(3)) == 0.0);

  const double ab[] = {0.3, -1.7};
  const Matrix e = linalg::expm(Matrix::diagonal(ab));
  CHECK(e(0, 0).real() == doctest::Approx(std::exp(0.3)).epsilon(1e-14));
  CHECK(e(1, 1).real() == doctest::Approx(std::exp(-1.7)).epsilon(1e-14));
  CHECK(std::abs(e(0, 1)) == 0.0);

  const Matrix nil{{0, 1}, {0, 0}};
  CHECK(max_abs_diff(linalg::expm(nil), Matrix{{1, 1}, {0, 1}}) < 1e-15);
}

TEST_CASE("expm of i*theta*sigma_x is a rotation") {
  for (double theta : {0.1, 1.0, 7.5, 40.0}) {
    const Matrix r = linalg::expm(sx * Complex(0, theta));
    const Matrix expect{{std::cos(theta), Complex(0, std::sin(theta))}, {Complex(0, std::sin(theta)), std::cos(theta)}};
    CHECK(max_abs_diff(r, expect) < 1e-12);
  }
}

TEST_CASE("expm matches the spectral exponential of a Hermitian matrix") {
  std::mt19937_64 rng(5);
  for (double scale : {0.01, 1.0, 30.0}) {
    const Matrix h = random_hermitian(8, rng) * Complex(scale);
    const auto e = linalg::hermitian_eig(h);
    Matrix spectral(8, 8);
    for (std::size_t k = 0; k < 8; ++k) {
      const auto v = e.vector(k);
      spectral += Matrix::outer(v, v) * std::exp(Complex(0, -e.values[k]));
    }
    const Matrix u = linalg::expm(h * Complex(0, -1));
    CHECK(max_abs_diff(u, spectral) < 1e-10);
    CHECK(max_abs_diff(u * u.adjoint(), Matrix::identity(8)) < 1e-10);
  }
}

TEST_CASE("expm group property exp(A)exp(-A) = I") {
  std::mt19937_64 rng(8);
  const Matrix a = random_matrix(6, rng);
  CHECK(max_abs_diff(linalg::expm(a) * linalg::expm(a * Complex(-1)), Matrix::identity(6)) < 1e-10);
}

TEST_CASE("solve recovers a known solution") {
  std::mt19937_64 rng(12);
  const Matrix a = random_matrix(7, rng);
  const Matrix x = random_matrix(7, rng);
  CHECK(max_abs_diff(linalg::solve(a, a * x), x) < 1e-10);
  CHECK_THROWS_AS(linalg::solve(Matrix(2, 2), Matrix::identity(2)), std::runtime_error);
}

TEST_CASE("null_space_hermitian") {
  const double d[] = {0.0, 1.0};
  const auto ns = linalg::null_space_hermitian(Matrix::diagonal(d));
  REQUIRE(ns.size() == 1);
  CHECK(std::abs(ns[0][0]) == doctest::Approx(1.0));
  CHECK(std::abs(ns[0][1]) < 1e-15);
}

TEST_CASE("null space of S+S- matches a brute-force kernel") {
  for (int n : {2, 4}) {
    const model::ModelSpec spec{n, 1.0, 0.1};
    const Matrix sm = model::collective_operator(spec, model::CollectiveKind::minus);
    const Matrix op = sm.adjoint() * sm;
    const auto ns = linalg::null_space_hermitian(op);
    CHECK(ns.size() == (n == 2 ? 2u : 6u));
    for (const auto& v : ns) {
      const auto w = sm * std::span<const Complex>(v);
      CHECK(linalg::norm(w) < 1e-12);
      CHECK(linalg::norm(v) == doctest::Approx(1.0));
    }
    for (std::size_t i = 0; i < ns.size(); ++i)
      for (std::size_t j = i + 1; j < ns.size(); ++j) CHECK(std::abs(linalg::inner(ns[i], ns[j])) < 1e-12);
  }

  // N=2: span{|gg>, (|eg>-|ge>)/sqrt2}, checked through the projector
  const model::ModelSpec spec{2, 1.0, 0.1};
  const Matrix sm = model::collective_operator(spec, model::CollectiveKind::minus);
  const auto ns = linalg::null_space_hermitian(sm.adjoint() * sm);
  Matrix p(4, 4);
  for (const auto& v : ns) p += Matrix::outer(v, v);
  Matrix expect(4, 4);
  expect(3, 3) = 1.0;
  expect(1, 1) = expect(2, 2) = 0.5;
  expect(1, 2) = expect(2, 1) = -0.5;
  CHECK(max_abs_diff(p, expect) < 1e-12);
}
