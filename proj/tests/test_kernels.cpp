#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "udw/kernels.hpp"

using namespace udw;
using std::numbers::pi;

namespace {

const cplx I{0, 1};

// Gauss-Legendre nodes on [-1, 1] by Newton iteration.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.resize(n);
  w.resize(n);
  for (int i = 0; i < n; ++i) {
    double z = std::cos(pi * (i + 0.75) / (n + 0.5)), dp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1, p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * z * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (z * p1 - p0) / (z * z - 1);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    x[i] = z;
    w[i] = 2 / ((1 - z * z) * dp * dp);
  }
}

// int_{lo}^{hi} dt1 int_{lo}^{t1} dt2 exp(-i a t1 - i b t2), brute force.
cplx triangle(double lo, double hi, double a, double b) {
  std::vector<double> x, w;
  gauss_legendre(120, x, w);
  cplx s{};
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double t1 = lo + (hi - lo) * (x[i] + 1) / 2, w1 = w[i] * (hi - lo) / 2;
    for (std::size_t j = 0; j < x.size(); ++j) {
      const double t2 = lo + (t1 - lo) * (x[j] + 1) / 2, w2 = w[j] * (t1 - lo) / 2;
      s += w1 * w2 * std::exp(-I * (a * t1 + b * t2));
    }
  }
  return s;
}

}  // namespace

TEST_CASE("hard sphere transform") {
  const auto hs = SmearingProfile::hard_sphere(1.0);
  CHECK(smearing_ft(hs, 0.0) == doctest::Approx(4 * pi / 3).epsilon(1e-15));
  CHECK(smearing_ft(hs, 1e-9) == doctest::Approx(4 * pi / 3).epsilon(1e-15));
  CHECK(smearing_ft(hs, pi) == doctest::Approx(4 / pi).epsilon(1e-14));
  // F depends on kR only
  CHECK(smearing_ft(SmearingProfile::hard_sphere(2.0), pi / 2) == doctest::Approx(4 / pi).epsilon(1e-14));
  CHECK_THROWS_AS(smearing_ft(hs, -1.0), std::domain_error);
  // series and closed form meet continuously
  CHECK(smearing_ft(hs, 0.00999999) == doctest::Approx(smearing_ft(hs, 0.01000001)).epsilon(1e-9));
  // envelope 4 pi / k^2
  for (double k : {100.0, 200.0}) CHECK(std::abs(smearing_ft(hs, k)) * k * k <= 4 * pi * (1 + 1.0 / k));
  const double a = smearing_ft(hs, 100 * pi), b = smearing_ft(hs, 200 * pi);
  CHECK(a / b == doctest::Approx(4.0).epsilon(1e-3));
}

TEST_CASE("hard sphere transform works on float arrays too") {
  Eigen::ArrayXf u(3);
  u << 0.0f, 1.0f, 3.0f;
  const Eigen::ArrayXf f = hard_sphere_ft(u);
  CHECK(f[0] == doctest::Approx(4 * pi / 3).epsilon(1e-6));
  CHECK(f[2] == doctest::Approx(smearing_ft(SmearingProfile::hard_sphere(1), 3.0)).epsilon(1e-5));
}

TEST_CASE("tabulated profile reproduces the hard sphere") {
  SmearingProfile tab{SmearingKind::TabulatedRadial, 1.0, {0.0, 1.0}, {1.0, 1.0}};
  const auto hs = SmearingProfile::hard_sphere(1.0);
  for (double k : {0.0, 0.3, 2.0, 7.5, 20.0})
    CHECK(smearing_ft(tab, k) == doctest::Approx(smearing_ft(hs, k)).epsilon(1e-7));
  tab.radius = 0.5;
  CHECK(smearing_ft(tab, 4.0) == doctest::Approx(smearing_ft(hs, 2.0)).epsilon(1e-7));
}

TEST_CASE("tabulated linear ramp against its closed form") {
  // G = 1 - zeta on [0, 1]: F(0) = 4 pi int z^2 (1-z) = pi/3
  SmearingProfile ramp{SmearingKind::TabulatedRadial, 1.0, {0.0, 1.0}, {1.0, 0.0}};
  CHECK(smearing_ft(ramp, 0.0) == doctest::Approx(pi / 3).epsilon(1e-9));
  // 4 pi int z^2 (1-z) sin(kz)/(kz) dz
  const double k = 3.0;
  const double closed = 4 * pi * (2 - 2 * std::cos(k) - k * std::sin(k)) / (k * k * k * k);
  CHECK(smearing_ft(ramp, k) == doctest::Approx(closed).epsilon(1e-8));
}

TEST_CASE("nonlocal kernel") {
  CHECK(nonlocal_kernel(2.0) == doctest::Approx(pi));
  CHECK(nonlocal_kernel(1.0) == doctest::Approx(4 * pi));
  CHECK(nonlocal_kernel(10.0) == doctest::Approx(0.04 * pi));
  CHECK_THROWS_AS(nonlocal_kernel(0.0), std::domain_error);
  CHECK_THROWS_AS(nonlocal_kernel(-1.0), std::domain_error);
}

TEST_CASE("regularized kernel") {
  CHECK(regularized_kernel_numeric(1.0, 1e-3, 1e4) == doctest::Approx(4 * pi).epsilon(1e-3));
  CHECK(regularized_kernel_numeric(2.0, 1e-3, 4e4) == doctest::Approx(pi).epsilon(1e-3));
  CHECK(regularized_kernel_numeric(1.0, 0.5, 400) == doctest::Approx(4 * pi / 1.25).epsilon(1e-9));
  CHECK(regularized_kernel_numeric(1.0, 0.5, 400) == doctest::Approx(10.053096491487338).epsilon(1e-9));
  CHECK_THROWS_AS(regularized_kernel_numeric(1.0, 0.0, 400), std::domain_error);
  CHECK_THROWS_AS(regularized_kernel_numeric(0.0, 0.1, 400), std::domain_error);
}

TEST_CASE("radial reduction") {
  QuadratureConfig q;
  q.tol_rel = 1e-10;
  SUBCASE("zero integrand") {
    const auto r = radial_reduce([](const Eigen::ArrayXd& w) { return Eigen::ArrayXcd::Zero(w.size()).eval(); }, 1.0,
                                 0.0, RadialKernel::Sin, q);
    CHECK(r.value == cplx{});
  }
  SUBCASE("regularized kernel") {
    const double eps = 0.5;
    auto g = [&](const Eigen::ArrayXd& w) -> Eigen::ArrayXcd { return ((-eps * w).exp() / w).cast<cplx>(); };
    for (double x : {0.5, 1.0, 3.0}) {
      const auto r = radial_reduce(g, x, 0.0, RadialKernel::Sin, q);
      CHECK(r.value.real() == doctest::Approx(4 * pi / (x * x + eps * eps)).epsilon(1e-9));
      CHECK(std::abs(r.value.imag()) < 1e-12);
    }
  }
  SUBCASE("hard sphere two-point function at equal times") {
    // independent high-precision values of (4 pi / x) int F(w) sin(w x) dw
    // and of its x derivative
    const auto hs = SmearingProfile::hard_sphere(1.0);
    auto g = [&](const Eigen::ArrayXd& w) -> Eigen::ArrayXcd { return (smearing_ft(hs, w) / w).cast<cplx>(); };
    q.omega_max = 4000;
    q.tol_rel = 1e-8;
    struct Ref {
      double x, p, px;
    };
    for (const Ref& c : {Ref{0.5, 144.01404728469263884, -58.943703169162828405},
                         Ref{3.0, 5.9852249275722924723, -4.0858925475711172158},
                         Ref{10.0, 0.52743619623965328927, -0.10569961070426742998}}) {
      const auto s = radial_reduce(g, c.x, 0.0, RadialKernel::Sin, q);
      CHECK(s.value.real() == doctest::Approx(c.p).epsilon(1e-6));
      // the CosDeriv kernel is i d/dx
      const auto d = radial_reduce(g, c.x, 0.0, RadialKernel::CosDeriv, q);
      CHECK(d.value.imag() == doctest::Approx(c.px).epsilon(1e-6));
    }
  }
  SUBCASE("x must be positive") {
    CHECK_THROWS_AS(radial_reduce([](const Eigen::ArrayXd& w) { return Eigen::ArrayXcd::Ones(w.size()).eval(); }, 0.0,
                                  0.0, RadialKernel::Sin, q),
                    std::domain_error);
  }
}

TEST_CASE("time window transform") {
  CHECK(window_ft(SwitchingSpec::delta(0.3), 5.0) == cplx{0.3, 0});
  CHECK(window_ft(SwitchingSpec::delta(0.3), -2.0) == cplx{0.3, 0});
  const auto th = SwitchingSpec::top_hat(0, 10);
  CHECK(std::abs(time_window_ft(th, 1.0, 1.0, +1) - 10.0) < 1e-14);
  const cplx want = I * (std::exp(-10.0 * I) - 1.0);
  CHECK(std::abs(time_window_ft(th, 1.0, 2.0, +1) - want) < 1e-13);
  // s = -1 shifts the resonance to w = -Omega
  CHECK(std::abs(time_window_ft(th, 1.0, -1.0, -1) - 10.0) < 1e-14);

  // continuity across the series region
  const double dp = 1e-4, T = 10;
  for (double nu : {0.5 * dp, -0.5 * dp, 0.999 * dp}) {
    const cplx closed = (std::exp(-I * nu * T) - 1.0) / (-I * nu);
    CHECK(std::abs(window_ft(th, nu, dp) - closed) < 1e-9 * T);
  }
  // a shifted window only changes the phase
  const auto sh = SwitchingSpec::top_hat(3, 13);
  CHECK(std::abs(window_ft(sh, 0.7) - std::exp(-I * 0.7 * 3.0) * window_ft(th, 0.7)) < 1e-13);
}

TEST_CASE("nested time integral") {
  SUBCASE("ordered triangle area") {
    const auto sw = SwitchingSpec::top_hat(-2.5, 2.5);
    const auto n = nested_time_integral(sw, 0.0, 0.0, 0.0);
    CHECK(std::abs(n.first - 12.5) < 1e-13);
    CHECK(std::abs(n.second - 12.5) < 1e-13);
  }
  SUBCASE("against brute-force triangle quadrature") {
    const double gap = 1, T = 5;
    const auto sw = SwitchingSpec::top_hat(-T, T);
    for (auto [w, w2] : {std::pair{0.7, 1.3}, std::pair{0.7, 1.0}, std::pair{0.0, 1.0}, std::pair{2.2, 0.4}}) {
      const auto n = nested_time_integral(sw, gap, w, w2);
      CHECK(std::abs(n.first - triangle(-T, T, w + gap, w2 - gap)) < 1e-8);
      CHECK(std::abs(n.second - triangle(-T, T, w2 + gap, w - gap)) < 1e-8);
    }
  }
  SUBCASE("pole neighbourhood is continuous") {
    const auto sw = SwitchingSpec::top_hat(0, 4);
    const cplx at = ordered_window_ft(sw, 0.9, 0.0);
    const cplx near = ordered_window_ft(sw, 0.9, 2e-4);
    CHECK(std::abs(at - triangle(0, 4, 0.9, 0.0)) < 1e-10);
    CHECK(std::abs(near - triangle(0, 4, 0.9, 2e-4)) < 1e-10);
    CHECK(std::abs(ordered_window_ft(sw, 0.5, -0.5) - triangle(0, 4, 0.5, -0.5)) < 1e-10);
  }
  SUBCASE("both orderings together factorize") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-3, 3);
    const auto sw = SwitchingSpec::top_hat(-1.5, 2.0);
    for (int i = 0; i < 50; ++i) {
      const double a = u(rng), b = u(rng);
      const cplx sum = ordered_window_ft(sw, a, b) + ordered_window_ft(sw, b, a);
      CHECK(std::abs(sum - window_ft(sw, a) * window_ft(sw, b)) < 1e-11);
    }
  }
}

TEST_CASE("counter-rotating integrand") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(0.1, 4);
  for (int i = 0; i < 20; ++i) {
    const double w = u(rng), w2 = u(rng), T = u(rng), x = u(rng), gap = 1.3;
    const auto r = counter_rotating_I(w, w2, T, gap, x);
    const auto n = nested_time_integral(SwitchingSpec::top_hat(-T, T), gap, w, w2);
    const cplx outer = std::exp(I * (w + w2) * T) * std::sin(w * x) * std::sin(w2 * x);
    CHECK(std::abs(r.value - 2.0 * outer * n.first) < 1e-12 * (1 + std::abs(r.value)));
    CHECK(std::abs(r.value - (r.a_term + r.b_term)) < 1e-10 * (1 + std::abs(r.value)));
  }
  // removable pole at w2 = gap
  const auto at = counter_rotating_I(0.8, 1.3, 2.0, 1.3, 1.1);
  const auto near = counter_rotating_I(0.8, 1.3 + 1e-6, 2.0, 1.3, 1.1);
  CHECK(std::isfinite(at.value.real()));
  CHECK(std::abs(at.value - near.value) < 1e-5);
}
