#include <doctest.h>

#include <algorithm>

#include "udw/kernels.hpp"
#include "udw/wightman.hpp"

using namespace udw;

namespace {

QuadratureResult spectral(double s, double x, RadialKernel k) {
  const auto hs = SmearingProfile::hard_sphere(1.0);
  QuadratureConfig q;
  q.omega_max = 4000;
  q.tol_rel = 1e-9;
  return radial_reduce([&](const Eigen::ArrayXd& w) -> Eigen::ArrayXcd { return (smearing_ft(hs, w) / w).cast<cplx>(); },
                       x, s, k, q);
}

}  // namespace

TEST_CASE("frozen equal-time values") {
  struct Ref {
    double x, p, px;
  };
  for (const Ref& c : {Ref{0.5, 144.01404728469263884, -58.943703169162828405},
                       Ref{3.0, 5.9852249275722924723, -4.0858925475711172158},
                       Ref{10.0, 0.52743619623965328927, -0.10569961070426742998}}) {
    const auto v = smeared_wightman(0.0, c.x);
    CHECK(v.p.real() == doctest::Approx(c.p).epsilon(1e-12));
    CHECK(std::abs(v.p.imag()) < 1e-12 * c.p);
    CHECK(v.px.real() == doctest::Approx(c.px).epsilon(1e-11));
  }
}

TEST_CASE("closed form agrees with the frequency integral") {
  for (auto [s, x] : {std::pair{0.3, 3.0}, std::pair{-1.2, 0.7}, std::pair{4.0, 1.5}, std::pair{7.0, 3.0}}) {
    const auto v = smeared_wightman(s, x);
    const auto n = spectral(s, x, RadialKernel::Sin);
    CHECK(std::abs(v.p - n.value) < 1e-6 * (1 + std::abs(v.p)));
    // CosDeriv is i dP/dx
    const auto d = spectral(s, x, RadialKernel::CosDeriv);
    CHECK(std::abs(cplx{0, 1} * v.px - d.value) < 1e-6 * (1 + std::abs(v.px)));
  }
}

TEST_CASE("derivatives match finite differences") {
  const double h = 1e-5;
  for (auto [s, x] : {std::pair{0.3, 3.0}, std::pair{-0.4, 0.9}, std::pair{5.5, 2.2}}) {
    const auto v = smeared_wightman(s, x);
    const cplx ds = (smeared_wightman(s + h, x).p - smeared_wightman(s - h, x).p) / (2 * h);
    const cplx dx = (smeared_wightman(s, x + h).p - smeared_wightman(s, x - h).p) / (2 * h);
    CHECK(std::abs(v.ps - ds) < 1e-6 * (1 + std::abs(ds)));
    CHECK(std::abs(v.px - dx) < 1e-6 * (1 + std::abs(dx)));
  }
}

TEST_CASE("radius scaling") {
  // P_R(s, x) = P_1(s/R, x/R) / R^2
  const auto a = smeared_wightman(1.4, 5.0, 2.0);
  const auto b = smeared_wightman(0.7, 2.5, 1.0);
  CHECK(std::abs(a.p - b.p / 4.0) < 1e-12 * std::abs(b.p));
}

TEST_CASE("imaginary part is supported inside the light cone of the ball") {
  // Im P is nonzero only within R of |s| = x
  CHECK(std::abs(smeared_wightman(2.0, 6.0).p.imag()) < 1e-14);
  CHECK(std::abs(smeared_wightman(-4.9, 6.0).p.imag()) < 1e-14);
  CHECK(std::abs(smeared_wightman(7.5, 6.0).p.imag()) < 1e-14);
  CHECK(std::abs(smeared_wightman(5.5, 6.0).p.imag()) > 1e-3);
  CHECK(std::abs(smeared_wightman(-6.5, 6.0).p.imag()) > 1e-3);
}

TEST_CASE("route selection") {
  const auto hs = SmearingProfile::hard_sphere(1.0);
  SmearingProfile tab{SmearingKind::TabulatedRadial, 1.0, {0, 1}, {1, 1}};
  CHECK(use_spacetime(hs, Route::Auto));
  CHECK_FALSE(use_spacetime(hs, Route::Spectral));
  CHECK_FALSE(use_spacetime(tab, Route::Auto));
  CHECK_THROWS_AS(use_spacetime(tab, Route::Spacetime), std::invalid_argument);
}

TEST_CASE("singular times") {
  const auto s = wightman_singular_times(5.0, 1.0, -10, 10);
  for (double v : {-6.0, -4.0, 4.0, 6.0}) CHECK(std::find(s.begin(), s.end(), v) != s.end());
  for (double v : s) CHECK((v >= -10 && v <= 10));
}
