#include "udw/perturbative.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "udw/kernels.hpp"
#include "udw/wightman.hpp"

namespace udw {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx I{0.0, 1.0};
const double kTwoPi6 = std::pow(2 * kPi, 6);
constexpr double kEps = std::numeric_limits<double>::epsilon();

int sigma(DetectorState st) { return st == DetectorState::Excited ? +1 : -1; }

void require_window(const DetectorConfig& cfg, double x, double t) {
  if (cfg.switching.kind != SwitchingKind::TopHat) throw std::invalid_argument("top-hat switching required");
  if (!(cfg.switching.duration() > 0)) throw std::invalid_argument("switching window must have t_off > t_on");
  if (t < cfg.switching.t_off) throw std::domain_error("evaluation time must satisfy t >= t_off");
  if (!(x > 0)) throw std::domain_error("|x| must be positive");
}

// Largest oscillation frequency of e^{iwt} times the window transform, per unit x.
double time_phase(const SwitchingSpec& sw, double t) {
  return std::max(std::abs(t - sw.t_on), std::abs(t - sw.t_off));
}

// F(w) e^{iwt} W(w - sigma Omega), the common envelope of the spectral route
Eigen::ArrayXcd envelope(const DetectorConfig& cfg, int s, double t, const Eigen::ArrayXd& w, double dp) {
  const Eigen::ArrayXd ft = smearing_ft(cfg.smearing, w);
  Eigen::ArrayXcd out(w.size());
  for (Eigen::Index i = 0; i < w.size(); ++i)
    out[i] = ft[i] * std::exp(I * w[i] * t) * time_window_ft(cfg.switching, cfg.gap, w[i], s, dp);
  return out;
}

struct SpacetimeTerms {
  WindowedWightman ww;
  cplx m2[2], c2[2];  // index 0: e, 1: g
  double err_m2 = 0, err_c2 = 0;
};

SpacetimeTerms spacetime_terms(double x, double t, const DetectorConfig& cfg, bool ordered) {
  SpacetimeTerms st;
  st.ww = windowed_wightman(x, t, cfg.switching, cfg.gap, cfg.smearing.radius, ordered);
  const auto& w = st.ww;
  // ordered integral = (unordered product + sine moment) decomposition
  const cplx prod_m = w.m1[1] * w.m1[0];
  const cplx prod_c = w.j0[1] * w.j0[0] + w.jr[1] * w.jr[0];
  for (int k = 0; k < 2; ++k) {
    const double sg = k == 0 ? 1.0 : -1.0;
    st.m2[k] = prod_m - 2.0 * I * sg * w.tri_phi;
    st.c2[k] = prod_c - 2.0 * I * sg * w.tri_t00;
  }
  st.err_m2 = 2 * std::abs(w.m1[0]) * w.err_m1 + 2 * w.err_tri_phi;
  st.err_c2 = 2 * (std::abs(w.j0[0]) + std::abs(w.jr[0])) * w.err_j + 2 * w.err_tri_t00;
  return st;
}

}  // namespace

JContraction j1(double x, double t, const DetectorConfig& cfg, DetectorState stt, const QuadratureConfig& q) {
  require_window(cfg, x, t);
  JContraction out;
  const int s = sigma(stt);
  if (use_spacetime(cfg.smearing, q.route)) {
    const auto ww = windowed_wightman(x, t, cfg.switching, cfg.gap, cfg.smearing.radius, false);
    const int k = s > 0 ? 0 : 1;
    out.j0 = ww.j0[k];
    out.jr = ww.jr[k];
    out.abs_err = ww.err_j + 16 * kEps * (std::abs(out.j0) + std::abs(out.jr));
    out.n_evals = ww.n_evals;
    return out;
  }
  const double dp = q.delta_pole;
  const BatchIntegrand g0 = [&](const Eigen::ArrayXd& w) -> Eigen::ArrayXcd { return envelope(cfg, s, t, w, dp); };
  const BatchIntegrand gr = [&](const Eigen::ArrayXd& w) -> Eigen::ArrayXcd {
    return envelope(cfg, s, t, w, dp) / w.cast<cplx>();
  };
  const double ph[] = {time_phase(cfg.switching, t)};
  const auto a = radial_reduce(g0, x, 0.0, RadialKernel::Sin, q, ph);
  const auto b = radial_reduce(gr, x, 0.0, RadialKernel::CosDeriv, q, ph);
  out.j0 = a.value;
  out.jr = -b.value;
  out.abs_err = a.abs_err + b.abs_err;
  out.n_evals = a.n_evals + b.n_evals;
  return out;
}

QuadratureResult m1(double x, double t, const DetectorConfig& cfg, DetectorState stt, const QuadratureConfig& q) {
  require_window(cfg, x, t);
  const int s = sigma(stt);
  if (use_spacetime(cfg.smearing, q.route)) {
    const auto ww = windowed_wightman(x, t, cfg.switching, cfg.gap, cfg.smearing.radius, false);
    const cplx v = ww.m1[s > 0 ? 0 : 1];
    return {v, ww.err_m1 + 16 * kEps * std::abs(v), ww.n_evals};
  }
  const double dp = q.delta_pole;
  const BatchIntegrand g = [&](const Eigen::ArrayXd& w) -> Eigen::ArrayXcd {
    return envelope(cfg, s, t, w, dp) / w.cast<cplx>();
  };
  const double ph[] = {time_phase(cfg.switching, t)};
  return radial_reduce(g, x, 0.0, RadialKernel::Sin, q, ph);
}

SecondOrderTerms j2_m2(double x, double t, const DetectorConfig& cfg, DetectorState stt,
                       const QuadratureConfig& q) {
  require_window(cfg, x, t);
  const int s = sigma(stt);
  SecondOrderTerms out;
  if (use_spacetime(cfg.smearing, q.route)) {
    const auto st = spacetime_terms(x, t, cfg, true);
    const int k = s > 0 ? 0 : 1;
    out.m2 = st.m2[k];
    out.j2_t00 = st.c2[k];
    out.err_m2 = st.err_m2 + 16 * kEps * std::abs(out.m2);
    out.err_j2 = st.err_c2 + 16 * kEps * std::abs(out.j2_t00);
    out.n_evals = st.ww.n_evals;
    return out;
  }

  const auto& sw = cfg.switching;
  const double gap = s * cfg.gap, dp = q.delta_pole;
  const double c = 4 * kPi / x;
  // radial factors of the scalar and the two current components
  auto factors = [&](const Eigen::ArrayXd& w, Eigen::ArrayXcd& m, Eigen::ArrayXcd& a0, Eigen::ArrayXcd& ar) {
    const Eigen::ArrayXd ft = smearing_ft(cfg.smearing, w);
    const Eigen::ArrayXd sn = (w * x).sin(), cs = (w * x).cos();
    m = (c * sn * ft).cast<cplx>();
    a0 = (c * w * sn * ft).cast<cplx>();
    ar = -I * (4 * kPi * (w * cs / x - sn / (x * x)) * ft).cast<cplx>();
  };
  auto row = [&](double w, const Eigen::ArrayXd& w2, bool scalar) -> Eigen::ArrayXcd {
    Eigen::ArrayXd one(1);
    one << w;
    Eigen::ArrayXcd m, a0, ar, m2, b0, br;
    factors(one, m, a0, ar);
    factors(w2, m2, b0, br);
    Eigen::ArrayXcd out(w2.size());
    for (Eigen::Index j = 0; j < w2.size(); ++j) {
      const cplx n = nested_time_integral(sw, gap, w, w2[j], dp).sum() * std::exp(I * (w + w2[j]) * t);
      out[j] = n * (scalar ? m[0] * m2[j] : a0[0] * b0[j] + ar[0] * br[j]);
    }
    return out;
  };
  const double ph[] = {x + time_phase(sw, t)};
  const auto rm = integrate_osc_2d([&](double w, const Eigen::ArrayXd& w2) { return row(w, w2, true); }, ph, q);
  const auto rc = integrate_osc_2d([&](double w, const Eigen::ArrayXd& w2) { return row(w, w2, false); }, ph, q);
  out.m2 = rm.value;
  out.err_m2 = rm.abs_err;
  out.j2_t00 = rc.value;
  out.err_j2 = rc.abs_err;
  out.n_evals = rm.n_evals + rc.n_evals;
  return out;
}

QuadratureResult expectation_second_order(Observable obs, CouplingModel model, double x, double t,
                                          const DetectorConfig& cfg, const QuadratureConfig& q) {
  require_window(cfg, x, t);
  if (obs == Observable::Cab) throw std::invalid_argument("C_AB is a two-detector observable");
  const double l2 = cfg.lambda * cfg.lambda;
  const bool phi = obs == Observable::PhiSquared;
  const bool full = model == CouplingModel::Full;
  QuadratureResult r;
  if (!full && cfg.pe() == 0.0) return r;

  // per-state first-order pieces and (full model) ordered pieces
  cplx first[2][2]{};  // [state][M1 or J0, -, Jr]
  double err1[2]{};
  cplx second[2]{};
  double err2[2]{};
  if (use_spacetime(cfg.smearing, q.route)) {
    const auto st = spacetime_terms(x, t, cfg, full);
    for (int k = 0; k < 2; ++k) {
      if (phi) {
        first[k][0] = st.ww.m1[k];
        err1[k] = st.ww.err_m1;
        second[k] = st.m2[k];
        err2[k] = st.err_m2;
      } else {
        first[k][0] = st.ww.j0[k];
        first[k][1] = st.ww.jr[k];
        err1[k] = st.ww.err_j;
        second[k] = st.c2[k];
        err2[k] = st.err_c2;
      }
    }
    r.n_evals = st.ww.n_evals;
  } else {
    for (int k = 0; k < (full ? 2 : 1); ++k) {
      const auto state = k == 0 ? DetectorState::Excited : DetectorState::Ground;
      if (phi) {
        const auto a = m1(x, t, cfg, state, q);
        first[k][0] = a.value;
        err1[k] = a.abs_err;
        r.n_evals += a.n_evals;
      } else {
        const auto a = j1(x, t, cfg, state, q);
        first[k][0] = a.j0;
        first[k][1] = a.jr;
        err1[k] = a.abs_err;
        r.n_evals += a.n_evals;
      }
      if (full) {
        const auto b = j2_m2(x, t, cfg, state, q);
        second[k] = phi ? b.m2 : b.j2_t00;
        err2[k] = phi ? b.err_m2 : b.err_j2;
        r.n_evals += b.n_evals;
      }
    }
  }

  const double p[2] = {cfg.pe(), cfg.pg()};
  double value = 0.0, err = 0.0;
  const double pre = l2 / (4 * kTwoPi6);
  for (int k = 0; k < (full ? 2 : 1); ++k) {
    if (p[k] == 0.0) continue;
    const double n1 = std::norm(first[k][0]) + std::norm(first[k][1]);
    const double e1 = 2 * (std::abs(first[k][0]) + std::abs(first[k][1])) * err1[k];
    if (phi) {
      // RWA: lambda^2/(2(2pi)^6) |M1|^2 = pre * 2|M1|^2; full adds -2 Re M2
      value += p[k] * pre * (2 * n1 - (full ? 2 * second[k].real() : 0.0));
      err += p[k] * pre * (2 * e1 + (full ? 2 * err2[k] : 0.0));
    } else {
      value += p[k] * pre * (n1 + (full ? second[k].real() : 0.0));
      err += p[k] * pre * (e1 + (full ? err2[k] : 0.0));
    }
  }
  r.value = value;
  r.abs_err = err + 16 * kEps * std::abs(value);
  return r;
}

QuadratureResult first_order_difference(const DetectorConfig& cfg, double T, const QuadratureConfig& q) {
  if (!(T > 0)) throw std::domain_error("first_order_difference: T must be positive");
  const double gap = cfg.gap;
  const BatchIntegrand f = [&](const Eigen::ArrayXd& w) -> Eigen::ArrayXcd {
    const Eigen::ArrayXd ft = smearing_ft(cfg.smearing, w);
    const Eigen::ArrayXd nu = w + gap;
    Eigen::ArrayXd win(w.size());
    for (Eigen::Index i = 0; i < w.size(); ++i)
      win[i] = std::abs(nu[i]) < 1e-8 / T ? T : 2 * std::sin(0.5 * nu[i] * T) / nu[i];
    return (4 * kPi * w * w * ft / (std::pow(2 * kPi, 1.5) * (2 * w).sqrt()) * win).cast<cplx>();
  };
  const double ph[] = {0.5 * T};
  const auto a = integrate_osc_1d(f, ph, q);
  const double l2 = cfg.lambda * cfg.lambda;
  return {l2 * std::norm(a.value), l2 * 2 * std::abs(a.value) * a.abs_err, a.n_evals};
}

M2Split m2_split(double x, double T, const DetectorConfig& cfg, const QuadratureConfig& q) {
  if (!(x > 0) || !(T > 0)) throw std::domain_error("m2_split: x and T must be positive");
  const double gap = cfg.gap;
  const double pre = 2 * std::pow(2 * kPi, 2) / (x * x);
  // slow phase (w + w')(2T - x) near the light cone; the remaining exponentials
  // carry 2T in every term
  auto row = [&](double w, const Eigen::ArrayXd& w2, bool residual) -> Eigen::ArrayXcd {
    Eigen::ArrayXd one(1);
    one << w;
    const double fw = smearing_ft(cfg.smearing, one)[0];
    const Eigen::ArrayXd f2 = smearing_ft(cfg.smearing, w2);
    Eigen::ArrayXcd out(w2.size());
    for (Eigen::Index j = 0; j < w2.size(); ++j) {
      const double v = w2[j];
      const double ss = -4 * std::sin(w * x) * std::sin(v * x);
      const double d_sum = w + v, d_pole = v - gap, d_cr = w + gap;
      const cplx slow = std::exp(I * d_sum * (2 * T - x)) / (d_cr * d_sum);
      cplx val;
      if (residual) {
        val = ss / (d_pole * d_sum) + slow;
      } else {
        val = ss * (std::exp(2.0 * I * d_sum * T) / (d_cr * d_sum) - std::exp(2.0 * I * d_pole * T) / (d_pole * d_cr)) -
              slow;
      }
      out[j] = pre * fw * f2[j] * val;
    }
    return out;
  };
  const double ph[] = {2 * T + x};
  const double poles[] = {gap};
  M2Split out;
  out.residual = integrate_osc_2d([&](double w, const Eigen::ArrayXd& v) { return row(w, v, true); }, ph, q, {},
                                  poles);
  out.uniform = integrate_osc_2d([&](double w, const Eigen::ArrayXd& v) { return row(w, v, false); }, ph, q, {},
                                 poles);
  return out;
}

}  // namespace udw
