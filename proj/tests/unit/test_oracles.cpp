#include <cmath>

#include "doctest.h"
#include "ergoquench/dynamics.hpp"
#include "ergoquench/ergotropy.hpp"
#include "ergoquench/oracles.hpp"
#include "test_support.hpp"

using namespace ergoquench;
using namespace ergoquench::testing;
using linalg::Complex;
using linalg::Matrix;
using model::ModelSpec;
using oracles::TwoQubitBlockState;

namespace {

const ModelSpec kTwo{2, 1.0, 0.1};

dynamics::Trajectory engine(const ModelSpec& m, const channels::ChannelSpec& c, const model::DensityMatrix& rho0,
                            dynamics::TimeGrid grid) {
  const Matrix h = model::build_hamiltonian(m);
  return dynamics::propagate(channels::build_liouvillian(h, c, m), rho0, grid);
}

double block_dev(const TwoQubitBlockState& a, const TwoQubitBlockState& b) {
  return std::max({std::abs(a.p_gg - b.p_gg), std::abs(a.p_eg - b.p_eg), std::abs(a.p_ge - b.p_ge),
                   std::abs(a.p_ee - b.p_ee), std::abs(a.c - b.c)});
}

// least-squares slope of log|y| against t
double log_slope(const std::vector<double>& t, const std::vector<double>& y) {
  double st = 0, sy = 0, stt = 0, sty = 0;
  const double n = static_cast<double>(t.size());
  for (std::size_t k = 0; k < t.size(); ++k) {
    const double ly = std::log(y[k]);
    st += t[k];
    sy += ly;
    stt += t[k] * t[k];
    sty += t[k] * ly;
  }
  return (n * sty - st * sy) / (n * stt - st * st);
}

// Off-Gibbs two-qubit state with populations in every block and a complex coherence.
model::DensityMatrix skewed_state() {
  Matrix m(4, 4);
  m(0, 0) = 0.1;
  m(1, 1) = 0.35;
  m(2, 2) = 0.25;
  m(3, 3) = 0.3;
  m(1, 2) = Complex(0.1, 0.2);
  m(2, 1) = std::conj(m(1, 2));
  return model::DensityMatrix(m);
}

}  // namespace

TEST_CASE("activation time formula") {
  CHECK(oracles::t_c_analytic(1.0, 0.1, 0.05) == doctest::Approx(10.803).epsilon(1e-4));
  CHECK(oracles::t_c_analytic(60.0, 0.1, 0.05) == doctest::Approx(std::log(2.0) / 0.05).epsilon(1e-12));
  CHECK(std::log(2.0) / 0.05 == doctest::Approx(13.86).epsilon(1e-3));
  CHECK(oracles::t_c_analytic(1e-9, 0.1, 0.05) < 1e-6);
  CHECK_THROWS_AS(oracles::t_c_analytic(1.0, 1.0, 0.05), std::domain_error);
}

TEST_CASE("critical inverse temperature") {
  const double bc = oracles::beta_critical(0.1);
  CHECK(bc == doctest::Approx(0.44).epsilon(0.01));
  CHECK(std::sinh(2 * bc) == doctest::Approx(std::cosh(0.2 * bc)).epsilon(1e-9));
  CHECK(oracles::beta_critical(0.0) == doctest::Approx(std::log(1.0 + std::sqrt(2.0)) / 2.0).epsilon(1e-9));
  CHECK(oracles::beta_critical(0.5) > oracles::beta_critical(0.1));
  CHECK(oracles::passivity_predicate(bc + 1e-8, 0.1));
  CHECK_FALSE(oracles::passivity_predicate(bc - 1e-8, 0.1));
}

TEST_CASE("passivity predicate") {
  CHECK_FALSE(oracles::passivity_predicate(0.2, 0.1));
  CHECK(oracles::passivity_predicate(5.0, 0.1));
}

TEST_CASE("parallel block matches the engine") {
  for (const auto& rho0 : {model::gibbs_state(model::build_hamiltonian(kTwo), 0.5), skewed_state()}) {
    const auto traj = engine(kTwo, {0.05, 0, 0, 0}, rho0, {800, 0.5});
    const auto init = TwoQubitBlockState::from_density(rho0);
    double worst = 0.0;
    for (std::size_t k = 0; k < traj.size(); ++k) {
      const auto o = oracles::two_qubit_parallel_block(init, 0.05, traj.times[k]);
      CHECK(o.valid());
      worst = std::max(worst, block_dev(o, TwoQubitBlockState::from_density(traj.states[k])));
      CHECK(o.p_ee == doctest::Approx(init.p_ee * std::exp(-0.1 * traj.times[k])).epsilon(1e-12));
      CHECK(o.p_gg + o.p_eg + o.p_ge + o.p_ee == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK(worst < 1e-8);
  }
}

TEST_CASE("collective closed form") {
  const double beta = 0.2, h = 0.1;
  const double z = 2.0 * (std::cosh(2 * beta) + std::cosh(2 * beta * h));
  const auto g = oracles::collective_gibbs_data(beta, h);
  CHECK(g.z == doctest::Approx(z).epsilon(1e-14));
  CHECK(g.s_inf == doctest::Approx(std::exp(2 * beta) / z).epsilon(1e-14));
  CHECK(g.s_inf == doctest::Approx(0.3583).epsilon(1e-3));
  CHECK(g.s_inf == doctest::Approx(g.s0 / 2 - g.c0).epsilon(1e-12));

  const Matrix hm = model::build_hamiltonian(kTwo);
  const auto rho0 = model::gibbs_state(hm, beta);
  const auto init = TwoQubitBlockState::from_density(rho0);
  const auto at0 = oracles::two_qubit_collective_sc(init, 0.05, 0.0);
  CHECK(at0.s == doctest::Approx(init.p_eg + init.p_ge).epsilon(1e-14));
  CHECK(at0.c == doctest::Approx(init.c.real()).epsilon(1e-14));
  const auto late = oracles::two_qubit_collective_sc(init, 0.05, 1e4);
  CHECK(late.s == doctest::Approx(g.s_inf).epsilon(1e-10));
  CHECK(late.c == doctest::Approx(-g.s_inf / 2).epsilon(1e-10));

  const auto traj = engine(kTwo, {0.05, 0, 1.0, 0}, rho0, {800, 0.5});
  double worst = 0.0;
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const auto sc = oracles::two_qubit_collective_sc(init, 0.05, traj.times[k]);
    const auto e = TwoQubitBlockState::from_density(traj.states[k]);
    worst = std::max({worst, std::abs(e.p_eg + e.p_ge - sc.s), std::abs(e.c - sc.c)});
  }
  CHECK(worst < 1e-8);

  const auto spec = oracles::collective_steady_spectrum(beta, h);
  CHECK(spec[0] + spec[1] + spec[2] + spec[3] == doctest::Approx(1.0).epsilon(1e-14));
  auto sorted = std::vector<double>(spec.begin(), spec.end());
  std::sort(sorted.begin(), sorted.end());
  const auto steady = dynamics::detect_steady(traj, 1e-8);
  const auto eig = linalg::hermitian_eig(steady.state.matrix()).values;
  for (std::size_t k = 0; k < 4; ++k) CHECK(std::abs(eig[k] - sorted[k]) < 1e-6);

  CHECK(oracles::collective_gibbs_data(5.0, 0.1).s_inf > 0.5);
}

TEST_CASE("dephasing block matches the engine") {
  for (const auto& rho0 : {model::gibbs_state(model::build_hamiltonian(kTwo), 1.0), skewed_state()}) {
    const auto traj = engine(kTwo, {0.05, 1.0, 0, 0}, rho0, {800, 0.5});
    const auto init = TwoQubitBlockState::from_density(rho0);
    double worst = 0.0;
    for (std::size_t k = 0; k < traj.size(); ++k) {
      const auto o = oracles::dephasing_two_qubit_block(init, 0.05, traj.times[k]);
      CHECK(std::abs(o.p_gg - init.p_gg) < 1e-12);
      CHECK(std::abs(o.p_ee - init.p_ee) < 1e-12);
      worst = std::max(worst, block_dev(o, TwoQubitBlockState::from_density(traj.states[k])));
    }
    CHECK(worst < 1e-8);
  }
}

TEST_CASE("dephasing coherence decay rates") {
  const double gamma = 0.05;
  // single-site coherence, N=1
  const auto plus = model::DensityMatrix(Matrix{{0.5, 0.5}, {0.5, 0.5}});
  const auto one = engine({1, 1.0, 0.1}, {gamma, 1.0, 0, 0}, plus, {100, 0.5});
  // two-site coherence rho_{ee,gg}, N=2 from |++>
  Matrix pp(4, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) pp(i, j) = 0.25;
  const auto two = engine(kTwo, {gamma, 1.0, 0, 0}, model::DensityMatrix(pp), {100, 0.5});

  std::vector<double> t, c1, c2;
  for (std::size_t k = 0; k < one.size(); ++k) {
    t.push_back(one.times[k]);
    c1.push_back(std::abs(one.states[k](0, 1)));
    c2.push_back(std::abs(two.states[k](0, 3)));
  }
  CHECK(-log_slope(t, c1) == doctest::Approx(2 * gamma).epsilon(0.01));
  CHECK(-log_slope(t, c2) == doctest::Approx(4 * gamma).epsilon(0.01));
}

TEST_CASE("block state validity") {
  CHECK(TwoQubitBlockState{0.25, 0.25, 0.25, 0.25, 0.1}.valid());
  CHECK_FALSE((TwoQubitBlockState{0.5, 0.25, 0.25, 0.25, 0.0}.valid()));
  CHECK_FALSE((TwoQubitBlockState{0.25, 0.25, 0.25, 0.25, 0.3}.valid()));
}

TEST_CASE("dark subspaces") {
  const std::size_t expect[] = {0, 1, 2, 3, 6};
  for (int n : {1, 2, 3, 4}) {
    const ModelSpec m{n, 1.0, 0.1};
    const auto dark = oracles::dark_subspace(m);
    CHECK(dark.dimension() == expect[n]);
    const Matrix sm = model::collective_operator(m, model::CollectiveKind::minus);
    for (const auto& v : dark.basis) CHECK(linalg::norm(sm * std::span<const Complex>(v)) < 1e-12);
    CHECK(max_abs_diff(dark.projector * dark.projector, dark.projector) < 1e-12);
  }
}

TEST_CASE("dark population of the Gibbs state") {
  const ModelSpec four{4, 1.0, 0.1};
  CHECK(oracles::p_dark(0.0, four) == doctest::Approx(0.375).epsilon(1e-14));

  // independent route: trace of P_dark against the expm-based Gibbs state
  const Matrix h = model::build_hamiltonian(four);
  const auto dark = oracles::dark_subspace(four);
  for (double beta : {0.3, 1.0, 2.5}) {
    Matrix g = linalg::expm(h * Complex(-beta));
    g *= Complex(1.0 / g.trace().real());
    CHECK(oracles::p_dark(beta, four) == doctest::Approx((dark.projector * g).trace().real()).epsilon(1e-10));
  }

  double prev = -1.0;
  for (int i = 0; i <= 96; ++i) {
    const double beta = 0.2 + 0.05 * i;
    const double p = oracles::p_dark(beta, four);
    CHECK(p > prev);
    prev = p;

    const double fd = (oracles::p_dark(beta + 1e-5, four) - oracles::p_dark(beta - 1e-5, four)) / 2e-5;
    CHECK(std::abs(oracles::dark_population(beta, four).derivative - fd) < 1e-6);
  }
}

TEST_CASE("oracles require J = 1") {
  CHECK_THROWS(oracles::dark_subspace({2, 2.0, 0.1}));
}
