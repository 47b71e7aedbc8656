#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <numbers>
#include <vector>

#include "udw/asymptotics.hpp"

using namespace udw;
using std::numbers::pi;

TEST_CASE("perturbative tail values") {
  // lambda = 1, Omega = 1, t = pi: sin^2 = 1
  const TailParams p{1.0, 1.0, pi, 1.0, 10.0};
  CHECK(asymptotic_value(TailFormula::PertPhi2, p) == doctest::Approx(8 / (9 * pi * pi) * 1e-4).epsilon(1e-14));
  CHECK(asymptotic_value(TailFormula::PertPhi2, p) == doctest::Approx(9.00632743487447e-6).epsilon(1e-12));
  CHECK(asymptotic_value(TailFormula::PertT00, p) == doctest::Approx(16 / (9 * pi * pi) * 1e-6).epsilon(1e-14));
  // zeros of sin(t Omega / 2)
  CHECK(asymptotic_value(TailFormula::PertPhi2, {1.0, 1.0, 2 * pi, 1.0, 10.0}) < 1e-35);
  CHECK(asymptotic_value(TailFormula::PertT00, {1.0, 2.0, 0.0, 1.0, 10.0}) == 0.0);
}

TEST_CASE("delta tail values") {
  const TailParams p{1.0, 3.0, 0.0, 1.0, 10.0};
  const double s2 = std::pow(std::sin(1.0), 2);
  CHECK(asymptotic_value(TailFormula::DeltaPhi2, p) == doctest::Approx(2 * s2 / (9 * pi * pi) * 1e-4).epsilon(1e-14));
  CHECK(asymptotic_value(TailFormula::DeltaT00, p) == doctest::Approx(4 * s2 / (9 * pi * pi) * 1e-6).epsilon(1e-14));
  // gap does not enter
  CHECK(asymptotic_value(TailFormula::DeltaT00, {1.0, 0.1, 0.0, 1.0, 10.0}) ==
        asymptotic_value(TailFormula::DeltaT00, p));
  CHECK(asymptotic_value(TailFormula::DeltaPhi2, {1.0, 1.0, 0.0, std::sqrt(pi), 10.0}) < 1e-35);
}

TEST_CASE("energy density over phi^2 is 2/r^2") {
  for (double r : {5.0, 50.0, 500.0}) {
    const TailParams p{0.3, 4.0, 150.0, 1.0, r};
    CHECK(asymptotic_value(TailFormula::PertT00, p) / asymptotic_value(TailFormula::PertPhi2, p) ==
          doctest::Approx(2 / (r * r)).epsilon(1e-14));
    CHECK(asymptotic_value(TailFormula::DeltaT00, p) / asymptotic_value(TailFormula::DeltaPhi2, p) ==
          doctest::Approx(2 / (r * r)).epsilon(1e-14));
  }
  CHECK(asymptotic_value(TailFormula::SignallingD2, {1, 1, 0, 1, 4}) == 0.0625);
}

TEST_CASE("quadratic in lambda") {
  const TailParams a{0.01, 4.0, 150.0, 1.0, 200.0}, b{0.03, 4.0, 150.0, 1.0, 200.0};
  for (auto f : {TailFormula::PertPhi2, TailFormula::PertT00, TailFormula::DeltaPhi2, TailFormula::DeltaT00})
    CHECK(asymptotic_value(f, b) == doctest::Approx(9 * asymptotic_value(f, a)).epsilon(1e-14));
}

TEST_CASE("power-law fit") {
  SUBCASE("exact power law") {
    std::vector<std::pair<double, double>> s;
    for (double r : {10.0, 20.0, 40.0, 80.0}) s.emplace_back(r, 3.5 * std::pow(r, -4.0));
    const auto f = fit_power_law(s);
    CHECK(f.slope == doctest::Approx(-4.0).epsilon(1e-12));
    CHECK(f.amplitude == doctest::Approx(3.5).epsilon(1e-10));
    CHECK(f.residual < 1e-12);
  }
  SUBCASE("two points") {
    const std::pair<double, double> s[] = {{1.0, 1.0}, {10.0, 0.01}};
    CHECK(fit_power_law(s).slope == doctest::Approx(-2.0));
  }
  SUBCASE("scale equivariance") {
    // rescaling r by c and v by k keeps the slope and maps the amplitude
    std::vector<std::pair<double, double>> s, t;
    const double c = 3.0, k = 7.0;
    for (int i = 0; i < 8; ++i) {
      const double r = 10 + 5 * i, v = std::pow(r, -6.0) * (1 + 0.05 * std::sin(double(i)));
      s.emplace_back(r, v);
      t.emplace_back(c * r, k * v);
    }
    const auto a = fit_power_law(s), b = fit_power_law(t);
    CHECK(b.slope == doctest::Approx(a.slope).epsilon(1e-12));
    CHECK(b.amplitude == doctest::Approx(k * a.amplitude * std::pow(c, -a.slope)).epsilon(1e-10));
    CHECK(b.residual == doctest::Approx(a.residual).epsilon(1e-9));
    CHECK(a.residual > 0);
  }
  SUBCASE("rejected input") {
    const std::pair<double, double> one[] = {{1.0, 1.0}};
    CHECK_THROWS_AS(fit_power_law(one), std::invalid_argument);
    const std::pair<double, double> neg[] = {{1.0, 1.0}, {2.0, -1.0}};
    CHECK_THROWS_AS(fit_power_law(neg), std::domain_error);
    const std::pair<double, double> unordered[] = {{2.0, 1.0}, {1.0, 1.0}};
    CHECK_THROWS_AS(fit_power_law(unordered), std::domain_error);
    const std::pair<double, double> zero_r[] = {{0.0, 1.0}, {1.0, 1.0}};
    CHECK_THROWS_AS(fit_power_law(zero_r), std::domain_error);
  }
}
