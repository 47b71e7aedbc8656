#include "udw/verify.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "udw/asymptotics.hpp"
#include "udw/delta_coupling.hpp"
#include "udw/kernels.hpp"
#include "udw/perturbative.hpp"
#include "udw/quadrature.hpp"
#include "udw/signalling.hpp"

namespace udw {

namespace {

constexpr double kPi = std::numbers::pi;

template <class... A>
std::string fmt(const char* f, A... a) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, a...);
  return buf;
}

using Samples = std::vector<std::pair<double, double>>;

std::vector<double> logspace(double a, double b, int n) {
  std::vector<double> v;
  for (int i = 0; i < n; ++i) v.push_back(a * std::pow(b / a, double(i) / (n - 1)));
  return v;
}

DetectorConfig sphere_detector(double gap, double lambda, SwitchingSpec sw) {
  DetectorConfig d;
  d.gap = gap;
  d.lambda = lambda;
  d.smearing = SmearingProfile::hard_sphere(1.0);
  d.switching = sw;
  return d;
}

CriterionResult start(int id, const char* name) {
  CriterionResult r;
  r.id = id;
  r.name = name;
  return r;
}

bool within(double v, double want, double tol) { return std::abs(v - want) <= tol; }

// ---- 1: nonlocal kernel ----------------------------------------------------

CriterionResult kernel_oracle() {
  auto r = start(1, "regularized kernel vs 4 pi / (r^2 + eps^2)");
  const double eps = 1e-3;
  QuadratureConfig q;
  q.tol_rel = 1e-8;
  double worst = 0.0;
  for (double x : {0.5, 1.0, 2.0, 10.0}) {
    // e^{-eps w} has dropped to e^{-40} at the cutoff
    const double v = regularized_kernel_numeric(x, eps, 40.0 / eps, q);
    worst = std::max(worst, std::abs(v / (4 * kPi / (x * x + eps * eps)) - 1));
  }
  r.pass = worst < 1e-3;
  r.detail = fmt("max rel err %.2e (limit 1e-3)", worst);
  return r;
}

// ---- 2: delta kick, full model ---------------------------------------------

CriterionResult delta_causality() {
  auto r = start(2, "delta kick full model vanishes outside 1.05 R");
  const auto det = sphere_detector(1.0, 1.0, SwitchingSpec::delta(1.0));
  // offset keeps nodes off the smearing edge at x = R
  std::vector<double> xs;
  for (int i = 0; i < 512; ++i) xs.push_back(0.01 + 4.99 * i / 511.0 + 1e-9);
  bool ok = true;
  std::string d;
  for (auto obs : {Observable::EnergyDensity, Observable::PhiSquared}) {
    const auto prof = kick_profile(CouplingModel::Full, obs, xs, 0.0, det);
    double peak = 0.0, outside = 0.0;
    for (const auto& p : prof.profile) {
      if (p.x <= 1.0) peak = std::max(peak, std::abs(p.value));
      if (p.x > 1.05) outside = std::max(outside, std::abs(p.value));
    }
    // phi^2 is identically zero at t = 0, so its peak is 0 as well
    ok = ok && outside <= 1e-6 * peak;
    d += fmt("%s peak %.3e outside max %.3e; ", to_string(obs), peak, outside);
  }
  r.pass = ok;
  r.detail = d;
  return r;
}

// ---- 3: delta kick, RWA tails ----------------------------------------------

CriterionResult delta_tails() {
  auto r = start(3, "delta kick RWA tails over [10R, 100R]");
  const auto xs = logspace(10, 100, 20);
  bool ok = true;
  std::string d;
  for (auto [obs, want] : {std::pair{Observable::PhiSquared, -4.0}, std::pair{Observable::EnergyDensity, -6.0}}) {
    double amp[2];
    int k = 0;
    for (double lt : {0.1, 1.0}) {
      const auto det = sphere_detector(1.0, lt, SwitchingSpec::delta(1.0));
      const auto prof = kick_profile(CouplingModel::RWA, obs, xs, 0.0, det);
      Samples s;
      for (const auto& p : prof.profile) s.emplace_back(p.x, p.value);
      const auto fit = fit_power_law(s);
      ok = ok && within(fit.slope, want, 0.1);
      amp[k++] = fit.amplitude / (lt * lt * sinc2(prof.K));
      d += fmt("%s lt=%g slope %.4f; ", to_string(obs), lt, fit.slope);
    }
    const double mis = std::abs(amp[0] / amp[1] - 1);
    ok = ok && mis < 0.01;
    d += fmt("%s rescaled amplitude mismatch %.2e; ", to_string(obs), mis);
  }
  r.pass = ok;
  r.detail = d;
  return r;
}

// ---- 4: perturbative full model, long window -------------------------------

CriterionResult pert_causality() {
  auto r = start(4, "full model T=150R vanishes beyond 154R");
  const double T = 150;
  const auto det = sphere_detector(4.0, 0.01, SwitchingSpec::top_hat(0, T));
  bool ok = true;
  std::string d;
  for (auto obs : {Observable::PhiSquared, Observable::EnergyDensity}) {
    const double ref = std::abs(expectation_second_order(obs, CouplingModel::Full, 140, T, det).value.real());
    double worst = 0.0;
    for (int i = 0; i < 40; ++i) {
      const double x = 154.01 + (400 - 154.01) * i / 39.0;
      worst = std::max(worst, std::abs(expectation_second_order(obs, CouplingModel::Full, x, T, det).value.real()));
    }
    ok = ok && ref > 0 && worst <= 1e-6 * ref;
    d += fmt("%s |x=140| %.3e beyond max %.3e; ", to_string(obs), ref, worst);
  }
  r.pass = ok;
  r.detail = d;
  return r;
}

// ---- 5: perturbative RWA tails ---------------------------------------------

CriterionResult pert_tails() {
  auto r = start(5, "RWA T=150R tails over [170R, 400R]; T=2R closed form");
  const double T = 150, lam = 0.01, gap = 4;
  const auto det = sphere_detector(gap, lam, SwitchingSpec::top_hat(0, T));
  bool ok = true;
  std::string d;
  for (auto [obs, want] : {std::pair{Observable::PhiSquared, -4.0}, std::pair{Observable::EnergyDensity, -6.0}}) {
    Samples s;
    for (double x : logspace(170, 400, 16))
      s.emplace_back(x, expectation_second_order(obs, CouplingModel::RWA, x, T, det).value.real());
    const auto fit = fit_power_law(s);
    ok = ok && within(fit.slope, want, 0.15);
    d += fmt("%s slope %.3f (want %.1f +- 0.15); ", to_string(obs), fit.slope, want);
  }
  const auto small = sphere_detector(gap, lam, SwitchingSpec::top_hat(0, 2));
  const double v = expectation_second_order(Observable::PhiSquared, CouplingModel::RWA, 100, 2, small).value.real();
  const double closed = asymptotic_value(TailFormula::PertPhi2, {lam, gap, 2.0, 1.0, 100.0});
  ok = ok && std::abs(v / closed - 1) < 0.1;
  d += fmt("T=2 x=100 phi2/closed form %.5f", v / closed);
  r.pass = ok;
  r.detail = d;
  return r;
}

// ---- 6: signalling ---------------------------------------------------------

CriterionResult signalling() {
  auto r = start(6, "signalling: full C_AB causal and Huygens, RWA tail 1/d^2");
  TwoDetectorScenario sc;
  sc.a = sphere_detector(1.0, 1.0, SwitchingSpec::top_hat(13, 23));
  sc.b = sphere_detector(1.0, 1.0, SwitchingSpec::top_hat(0, 10));
  double peak = 0.0;
  for (double d = 2; d <= 24.001; d += 0.5) {
    sc.d = d;
    peak = std::max(peak, std::abs(c_ab(CouplingModel::Full, sc).value));
  }
  sc.d = 30;
  const double far = std::abs(c_ab(CouplingModel::Full, sc).value);
  sc.d = 0.5;
  const double near = std::abs(c_ab(CouplingModel::Full, sc).value);
  Samples s;
  for (double d : logspace(30, 300, 16)) {
    sc.d = d;
    s.emplace_back(d, std::abs(c_ab(CouplingModel::RWA, sc).value));
  }
  const auto fit = fit_power_law(s);
  r.pass = far < 1e-6 * peak && near < 1e-6 * peak && within(fit.slope, -2.0, 0.1);
  r.detail = fmt("in-cone max %.4e; d=30 ratio %.2e; d=0.5 ratio %.2e; RWA slope %.4f", peak, far / peak,
                 near / peak, fit.slope);
  return r;
}

// ---- 7: long-time split of the ordered term --------------------------------

CriterionResult long_time_split() {
  auto r = start(7, "ordered second-order term: uniform part shrinks, light-cone residual persists");
  // [0, 20]^2 without tail extrapolation; omega_max = 30 changes the values
  // by < 1e-3 relative
  QuadratureConfig q;
  q.omega_max = 20;
  q.extrapolate = false;
  q.tol_rel = 0.05;
  q.max_evals = 400'000'000;
  const auto det = sphere_detector(1.0, 1.0, SwitchingSpec::top_hat(-1, 1));
  std::vector<M2Split> fixed;
  for (double T : {10.0, 20.0, 40.0}) fixed.push_back(m2_split(5, T, det, q));
  bool dec = true;
  for (int i = 0; i + 1 < 3; ++i) {
    const auto &a = fixed[i].uniform, &b = fixed[i + 1].uniform;
    dec = dec && std::abs(a.value) - std::abs(b.value) > a.abs_err + b.abs_err;
  }
  const auto c1 = m2_split(10, 5, det, q), c4 = m2_split(40, 20, det, q);
  const double ratio = std::abs(c1.residual.value) / std::abs(c4.residual.value);
  // same ratio without the overall 1/|x|^2 of the decomposition
  const double bare = ratio * (10.0 * 10.0) / (40.0 * 40.0);
  r.pass = dec && ratio < 2;
  r.detail = fmt("|uniform| at x=5, T=10,20,40: %.5g %.5g %.5g; |residual(T=5)/residual(T=20)| on x=2T: %.3f "
                 "(%.3f without the 1/|x|^2 prefactor)",
                 std::abs(fixed[0].uniform.value), std::abs(fixed[1].uniform.value),
                 std::abs(fixed[2].uniform.value), ratio, bare);
  return r;
}

// ---- 8: state overlap ------------------------------------------------------

CriterionResult overlap() {
  auto r = start(8, "state overlap closed form");
  bool ok = std::abs(state_overlap(0.0, 1.0, 0.0) - 1.0) == 0.0 && std::abs(state_overlap(0.0, 0.0, 1.0) - 1.0) == 0.0;
  double prev = 2.0;
  for (int i = 0; i <= 100; ++i) {
    const double v = state_overlap(i / 100.0, 1.0, 0.0).real();
    ok = ok && (i == 0 || v < prev);
    prev = v;
  }
  // 30-digit references
  struct Ref {
    double K, ground, excited, mixed;
  };
  const Ref refs[] = {
      {0.5, 0.882496902584595402864892143229, 0.986009669049588175815612403938, 0.934253285817091789340252273584},
      {1.0, 0.606530659712633423603799534991, 0.838087865567032637261755713660, 0.722309262639833030432777624325},
      {kPi, 0.00719188335582636560780136639637, -0.00719188335582636560780136639637, 0.0},
  };
  double worst = 0.0;
  const double h = std::sqrt(0.5);
  for (const auto& c : refs) {
    worst = std::max(worst, std::abs(state_overlap(c.K, 1.0, 0.0) - c.ground));
    worst = std::max(worst, std::abs(state_overlap(c.K, 0.0, 1.0) - c.excited));
    worst = std::max(worst, std::abs(state_overlap(c.K, h, h) - c.mixed));
  }
  r.pass = ok && worst <= 1e-12;
  r.detail = fmt("K=0 exact and monotone on [0,1]: %s; max deviation %.2e", ok ? "yes" : "no", worst);
  return r;
}

// ---- 9: quadrature oracles -------------------------------------------------

// Composite Simpson on [0, L]^2 with n (even) intervals per axis.
cplx simpson_2d(const RowIntegrand& f, double L, int n) {
  const double h = L / n;
  Eigen::ArrayXd x(n + 1), w(n + 1);
  for (int i = 0; i <= n; ++i) {
    x[i] = i * h;
    w[i] = (i == 0 || i == n ? 1.0 : (i % 2 ? 4.0 : 2.0)) * h / 3;
  }
  cplx s{};
  for (int i = 0; i <= n; ++i) s += w[i] * (f(x[i], x) * w.cast<cplx>()).sum();
  return s;
}

CriterionResult quadrature_oracles() {
  auto r = start(9, "quadrature engine within 3x reported abs_err");
  bool ok = true;
  std::string d;
  auto check = [&](const char* name, const QuadratureResult& q, cplx exact) {
    const double e = std::abs(q.value - exact);
    const bool good = e <= 3 * q.abs_err;
    ok = ok && good;
    d += fmt("%s err %.1e/%.1e%s; ", name, e, q.abs_err, good ? "" : " FAIL");
  };
  QuadratureConfig q1;
  q1.tol_rel = 1e-10;
  const double one[] = {1.0};
  check("dirichlet",
        integrate_osc_1d([](const Eigen::ArrayXd& w) -> Eigen::ArrayXcd { return (w.sin() / w).cast<cplx>(); }, one,
                         q1),
        kPi / 2);
  const double mixed[] = {1.3, 0.7};
  check("sin*cos/w",
        integrate_osc_1d(
            [](const Eigen::ArrayXd& w) -> Eigen::ArrayXcd { return (w.sin() * (0.3 * w).cos() / w).cast<cplx>(); },
            mixed, q1),
        kPi / 2);

  QuadratureConfig q2;
  q2.tol_rel = 1e-6;
  q2.omega_max = 400;
  const auto prod = [](double w, const Eigen::ArrayXd& v) -> Eigen::ArrayXcd {
    const double a = w < 1e-8 ? 1.0 : std::sin(w) / w;
    return (a * (v.sin() / v)).cast<cplx>();
  };
  const double two[] = {2.0};
  check("product", integrate_osc_2d(prod, two, q2), kPi * kPi / 4);

  // a non-separable oscillatory integrand on a finite square
  const RowIntegrand dense = [](double w, const Eigen::ArrayXd& v) -> Eigen::ArrayXcd {
    const Eigen::ArrayXd ph = w - 2 * v + 0.3 * w * v;
    const Eigen::ArrayXd amp = (1.0 + w + v).square().inverse();
    return (amp * ph.cos()).cast<cplx>() + cplx{0, 1} * (amp * ph.sin()).cast<cplx>();
  };
  QuadratureConfig q3;
  q3.tol_rel = 1e-9;
  q3.omega_max = 10;
  q3.extrapolate = false;
  const double ph3[] = {5.0};
  const auto got = integrate_osc_2d(dense, ph3, q3);
  // one Richardson step on top of Simpson
  const cplx fine = simpson_2d(dense, 10, 4000), coarse = simpson_2d(dense, 10, 2000);
  const cplx ref = fine + (fine - coarse) / 15.0;
  const double ref_err = std::abs(ref - (coarse + (coarse - simpson_2d(dense, 10, 1000)) / 15.0)) / 63;
  check("dense grid", got, ref);
  d += fmt("(grid reference error ~%.0e)", ref_err);
  r.pass = ok;
  r.detail = d;
  return r;
}

}  // namespace

CriterionResult run_criterion(int id) {
  static const std::function<CriterionResult()> table[] = {kernel_oracle, delta_causality, delta_tails,
                                                           pert_causality, pert_tails, signalling,
                                                           long_time_split, overlap, quadrature_oracles};
  if (id < 1 || id > 9) throw std::invalid_argument("criterion id must be 1..9");
  const auto t0 = std::chrono::steady_clock::now();
  CriterionResult r;
  try {
    r = table[id - 1]();
  } catch (const std::exception& e) {
    static const char* names[] = {"regularized kernel", "delta kick full causality", "delta kick RWA tails",
                                  "full model long-window causality", "RWA long-window tails", "signalling",
                                  "long-time split", "state overlap", "quadrature oracles"};
    r.id = id;
    r.name = names[id - 1];
    r.pass = false;
    r.detail = std::string("error: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  // desk-scale runtime limits
  const double limit = id == 1 ? 1.0 : id == 2 ? 30.0 : id == 6 ? 300.0 : id == 4 ? 600.0 : 0.0;
  if (limit > 0 && r.seconds > limit) {
    r.pass = false;
    r.detail += fmt(" [runtime %.1f s over %.0f s]", r.seconds, limit);
  }
  return r;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> n{"kernels", "causality", "tails", "huygens", "appendixC", "all"};
  return n;
}

std::vector<int> suite_criteria(const std::string& suite) {
  if (suite == "kernels") return {1, 8, 9};
  if (suite == "causality") return {2, 4};
  if (suite == "tails") return {3, 5};
  if (suite == "huygens") return {6};
  if (suite == "appendixC") return {7};
  if (suite == "all") return {1, 2, 3, 4, 5, 6, 7, 8, 9};
  throw std::invalid_argument("unknown suite '" + suite + "'");
}

std::string format_result(const CriterionResult& r) {
  return fmt("%s [%d] %s: %s (%.1f s)", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(), r.detail.c_str(),
             r.seconds);
}

}  // namespace udw
