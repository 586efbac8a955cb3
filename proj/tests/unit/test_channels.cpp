#include <random>

#include "doctest.h"
#include "ergoquench/channels.hpp"
#include "ergoquench/model.hpp"
#include "test_support.hpp"

using namespace ergoquench;
using namespace ergoquench::testing;
using channels::ChannelSpec;
using linalg::Complex;
using linalg::Matrix;
using model::ModelSpec;
using model::PauliKind;

namespace {

Matrix single_jump(const Matrix& a, const Matrix& rho, double rate) {
  const Matrix ada = a.adjoint() * a;
  return (a * rho * a.adjoint() - (ada * rho + rho * ada) * Complex(0.5)) * Complex(rate);
}

// Gamma = gamma[(1-a) I + a 11^T] splits into independent local jumps and one collective jump.
Matrix reference_channel(const ModelSpec& m, PauliKind kind, double gamma, double a, const Matrix& rho) {
  Matrix out(rho.rows(), rho.cols());
  Matrix total(rho.rows(), rho.cols());
  for (int i = 1; i <= m.n_qubits; ++i) {
    const Matrix op = model::site_operator(m, i, kind);
    out += single_jump(op, rho, gamma * (1.0 - a));
    total += op;
  }
  out += single_jump(total, rho, gamma * a);
  return out;
}

Matrix reference_rhs(const ModelSpec& m, const ChannelSpec& c, const Matrix& rho) {
  const Matrix h = model::build_hamiltonian(m);
  Matrix out = linalg::commutator(h, rho) * Complex(0, -1);
  out += reference_channel(m, PauliKind::minus, c.gamma, c.alpha_minus, rho) * Complex(1.0 - c.alpha);
  out += reference_channel(m, PauliKind::z, c.gamma, c.alpha_z, rho) * Complex(c.alpha);
  return out;
}

}  // namespace

TEST_CASE("rate matrices") {
  auto r = channels::rate_matrix(0.05, 0.0, 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(r(i, j) == doctest::Approx(i == j ? 0.05 : 0.0));
  r = channels::rate_matrix(0.05, 1.0, 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(r(i, j) == doctest::Approx(0.05));
  r = channels::rate_matrix(0.05, 0.5, 2);
  CHECK(r(0, 0) == doctest::Approx(0.05));
  CHECK(r(0, 1) == doctest::Approx(0.025));
  CHECK(r(1, 0) == doctest::Approx(0.025));
}

TEST_CASE("ChannelSpec validation") {
  CHECK_THROWS_AS((ChannelSpec{-1.0, 0, 0, 0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((ChannelSpec{0.05, 1.5, 0, 0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((ChannelSpec{0.05, 0, -0.1, 0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((ChannelSpec{0.05, 0, 0, 2}.validate()), std::invalid_argument);
  CHECK_NOTHROW((ChannelSpec{0.0, 1, 1, 1}.validate()));
}

TEST_CASE("vectorization is column stacking") {
  std::mt19937_64 rng(1);
  const Matrix a = random_matrix(3, rng), b = random_matrix(3, rng), rho = random_matrix(3, rng);
  const auto v = channels::vectorize(rho);
  CHECK(v[1] == rho(1, 0));
  CHECK(v[3] == rho(0, 1));
  CHECK(max_abs_diff(channels::unvectorize(v, 3), rho) == 0.0);
  const auto lhs = channels::vectorize(a * rho * b);
  const auto rhs = linalg::kron(b.transpose(), a) * std::span<const Complex>(v);
  for (std::size_t i = 0; i < 9; ++i) CHECK(std::abs(lhs[i] - rhs[i]) < 1e-12);
}

TEST_CASE("dissipator special cases") {
  const ModelSpec one{1, 1.0, 0.1};
  const Matrix sm = model::site_operator(one, 1, PauliKind::minus);
  const Matrix e{{1, 0}, {0, 0}};
  const Matrix jumps[] = {sm};
  const Matrix d = channels::dissipator_apply(channels::rate_matrix(0.05, 0.0, 1), jumps, e);
  CHECK(max_abs_diff(d, Matrix{{-0.05, 0}, {0, 0.05}}) < 1e-15);

  // dephasing leaves diagonal states alone
  const ModelSpec two{2, 1.0, 0.1};
  std::vector<Matrix> z = {model::site_operator(two, 1, PauliKind::z), model::site_operator(two, 2, PauliKind::z)};
  const double diag[] = {0.1, 0.2, 0.3, 0.4};
  for (double a : {0.0, 0.4, 1.0})
    CHECK(linalg::max_abs(channels::dissipator_apply(channels::rate_matrix(0.05, a, 2), z, Matrix::diagonal(diag))) <
          1e-15);

  // collective dephasing annihilates Gibbs states
  const Matrix h = model::build_hamiltonian(two);
  for (double beta : {0.2, 1.0, 5.0})
    CHECK(linalg::max_abs(channels::dissipator_apply(channels::rate_matrix(0.05, 1.0, 2), z,
                                                     model::gibbs_state(h, beta).matrix())) < 1e-15);
}

TEST_CASE("gamma = 0 gives the von Neumann generator") {
  const ModelSpec m{2, 1.0, 0.1};
  const Matrix h = model::build_hamiltonian(m);
  const auto l = channels::build_liouvillian(h, {0.0, 0.3, 0.5, 0.7}, m);
  const Matrix id = Matrix::identity(4);
  const Matrix ref = (linalg::kron(id, h) - linalg::kron(h.transpose(), id)) * Complex(0, -1);
  CHECK(max_abs_diff(l.matrix(), ref) < 1e-15);
  // i L is Hermitian
  CHECK(linalg::hermiticity_defect(l.matrix() * Complex(0, 1)) < 1e-15);
}

TEST_CASE("superoperator agrees with direct evaluation on random states") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int n : {1, 2, 3}) {
    const ModelSpec m{n, 1.0, 0.1};
    const Matrix h = model::build_hamiltonian(m);
    for (int trial = 0; trial < 6; ++trial) {
      const ChannelSpec c{0.05, unit(rng), unit(rng), unit(rng)};
      const auto l = channels::build_liouvillian(h, c, m);
      const auto rho = random_state(m.dim(), rng);
      const Matrix via_l = l.apply(rho.matrix());
      CHECK(max_abs_diff(via_l, reference_rhs(m, c, rho.matrix())) < 1e-12);
      CHECK(max_abs_diff(via_l, channels::lindblad_rhs(h, c, m, rho.matrix())) < 1e-12);
    }
  }
}

TEST_CASE("generator preserves trace and Hermiticity") {
  std::mt19937_64 rng(23);
  const ModelSpec m{3, 1.0, 0.1};
  const Matrix h = model::build_hamiltonian(m);
  const auto l = channels::build_liouvillian(h, {0.05, 0.3, 0.6, 0.2}, m);
  for (int trial = 0; trial < 5; ++trial) {
    const Matrix d = l.apply(random_state(m.dim(), rng).matrix());
    CHECK(std::abs(d.trace()) < 1e-13);
    CHECK(linalg::hermiticity_defect(d) < 1e-13);
  }
}

TEST_CASE("Gibbs states are stationary under collective dephasing") {
  for (int n : {2, 4}) {
    const ModelSpec m{n, 1.0, 0.1};
    const Matrix h = model::build_hamiltonian(m);
    const auto l = channels::build_liouvillian(h, {0.05, 1.0, 0.0, 1.0}, m);
    for (double beta : {0.2, 1.0, 5.0}) CHECK(linalg::max_abs(l.apply(model::gibbs_state(h, beta).matrix())) < 1e-13);
  }
}
