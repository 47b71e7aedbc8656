#include <doctest.h>

#include <cmath>

#include "udw/asymptotics.hpp"
#include "udw/perturbative.hpp"

using namespace udw;

namespace {

DetectorConfig windowed(double on, double off, double gap = 4, double lambda = 0.01) {
  DetectorConfig d;
  d.gap = gap;
  d.lambda = lambda;
  d.switching = SwitchingSpec::top_hat(on, off);
  return d;
}

}  // namespace

TEST_CASE("RWA with no excited amplitude is silent") {
  auto d = windowed(0, 2);
  d.a_e = 0;
  d.a_g = 1;
  for (auto obs : {Observable::PhiSquared, Observable::EnergyDensity})
    CHECK(expectation_second_order(obs, CouplingModel::RWA, 3, 2, d).value == cplx{});
}

TEST_CASE("assembled expectations are real and positive for RWA") {
  const auto d = windowed(0, 2);
  for (auto obs : {Observable::PhiSquared, Observable::EnergyDensity}) {
    const auto r = expectation_second_order(obs, CouplingModel::RWA, 2.5, 2, d);
    CHECK(r.value.imag() == 0.0);
    CHECK(r.value.real() > 0);
    CHECK(r.abs_err < 1e-3 * r.value.real());
  }
}

TEST_CASE("full model vanishes outside the causal shell") {
  // window (0, 2), evaluated at t = 2: support needs |x| <= t - t_on + R = 3
  const auto d = windowed(0, 2);
  for (auto obs : {Observable::PhiSquared, Observable::EnergyDensity}) {
    const double inside = std::abs(expectation_second_order(obs, CouplingModel::Full, 2.5, 2, d).value.real());
    CHECK(inside > 0);
    CHECK(std::abs(expectation_second_order(obs, CouplingModel::Full, 3.2, 2, d).value.real()) < 1e-9 * inside);
    CHECK(std::abs(expectation_second_order(obs, CouplingModel::Full, 9, 2, d).value.real()) < 1e-9 * inside);
  }
}

TEST_CASE("RWA is nonzero beyond the shell") {
  const auto d = windowed(0, 2);
  CHECK(expectation_second_order(Observable::PhiSquared, CouplingModel::RWA, 9, 2, d).value.real() > 0);
}

TEST_CASE("short window tail against the large-distance form") {
  const auto d = windowed(0, 2);
  const double x = 100;
  const double v = expectation_second_order(Observable::PhiSquared, CouplingModel::RWA, x, 2, d).value.real();
  const double c = asymptotic_value(TailFormula::PertPhi2, {0.01, 4, 2, 1, x});
  CHECK(v / c == doctest::Approx(1.0).epsilon(0.02));
  const double e = expectation_second_order(Observable::EnergyDensity, CouplingModel::RWA, x, 2, d).value.real();
  const double ce = asymptotic_value(TailFormula::PertT00, {0.01, 4, 2, 1, x});
  CHECK(e / ce == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("both routes agree") {
  auto d = windowed(0, 2, 1.0, 0.1);
  QuadratureConfig spec, st;
  spec.route = Route::Spectral;
  spec.tol_rel = 1e-6;
  spec.omega_max = 4000;
  st.route = Route::Spacetime;
  for (double x : {1.5, 3.0, 7.0})
    for (auto obs : {Observable::PhiSquared, Observable::EnergyDensity}) {
      CAPTURE(x);
      const auto a = expectation_second_order(obs, CouplingModel::RWA, x, 2.5, d, spec);
      const auto b = expectation_second_order(obs, CouplingModel::RWA, x, 2.5, d, st);
      CHECK(a.value.real() == doctest::Approx(b.value.real()).epsilon(1e-3));
      CHECK(std::abs(a.value - b.value) <= 3 * (a.abs_err + b.abs_err));
    }
}

TEST_CASE("ordered term split adds back up") {
  auto d = windowed(0, 1, 1.0, 1.0);
  QuadratureConfig q;
  q.omega_max = 20;
  q.extrapolate = false;
  q.tol_rel = 0.05;
  q.max_evals = 400'000'000;
  q.route = Route::Spectral;
  for (auto [x, T] : {std::pair{3.0, 2.0}, std::pair{5.0, 1.0}}) {
    d.switching = SwitchingSpec::top_hat(-T, T);
    const auto s = m2_split(x, T, d, q);
    const auto j = j2_m2(x, T, d, DetectorState::Excited, q);
    CHECK(std::abs(s.residual.value + s.uniform.value - j.m2) < 1e-6 * std::abs(j.m2));
  }
  CHECK_THROWS_AS(m2_split(0, 1, d, q), std::domain_error);
}

TEST_CASE("first-order amplitude falls with the window length") {
  auto d = windowed(0, 1, 0.0, 1.0);
  for (double gap : {0.0, 1.0}) {
    d.gap = gap;
    double last = INFINITY;
    for (double T : {10.0, 20.0, 40.0, 80.0}) {
      const auto r = first_order_difference(d, T, {});
      CHECK(r.value.real() > 0);
      CHECK(r.value.real() < last);
      last = r.value.real();
    }
  }
  d.gap = 1;
  const double open = first_order_difference(d, 20, {}).value.real();
  d.gap = 0;
  CHECK(first_order_difference(d, 20, {}).value.real() > open);
  d.smearing = {SmearingKind::TabulatedRadial, 1.0, {0.0, 1.0}, {0.0, 0.0}};
  CHECK(first_order_difference(d, 10, {}).value == cplx{});
  CHECK_THROWS_AS(first_order_difference(d, 0, {}), std::domain_error);
}

TEST_CASE("window checks") {
  auto d = windowed(0, 2);
  CHECK_THROWS_AS(expectation_second_order(Observable::PhiSquared, CouplingModel::RWA, 3, 1, d), std::domain_error);
  CHECK_THROWS_AS(expectation_second_order(Observable::PhiSquared, CouplingModel::RWA, 0, 2, d), std::domain_error);
  CHECK_THROWS_AS(expectation_second_order(Observable::Cab, CouplingModel::RWA, 3, 2, d), std::invalid_argument);
  d.switching = SwitchingSpec::delta(1);
  CHECK_THROWS_AS(expectation_second_order(Observable::PhiSquared, CouplingModel::RWA, 3, 2, d),
                  std::invalid_argument);
}
