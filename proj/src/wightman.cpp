#include "udw/wightman.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "udw/quadrature.hpp"

namespace udw {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx I{0.0, 1.0};

struct LambdaValue {
  cplx v, d;
};

// Lambda(u -/+ i0) = u + (1 - u^2)/2 [ln|(1+u)/(1-u)| +/- i pi 1{|u|<1}] and its
// derivative 2 - u [ln|...| +/- i pi 1{|u|<1}]; branch = +1 for u - i0.
LambdaValue lambda_fn(double u, int branch) {
  const double a = std::abs(u);
  if (a > 4.0) {
    // odd tail series, avoids the cancellation between u and the log term
    const double inv = 1.0 / u, inv2 = inv * inv;
    double pw = inv, v = 0.0, d = 0.0;
    for (int m = 0; m < 60; ++m) {
      const double tv = 2.0 * pw / ((2 * m + 1.0) * (2 * m + 3.0));
      const double td = -2.0 * pw * inv / (2 * m + 3.0);
      v += tv;
      d += td;
      if (std::abs(tv) < 1e-18 * std::abs(v)) break;
      pw *= inv2;
    }
    return {v, d};
  }
  const double im = a < 1.0 ? branch * kPi : 0.0;
  if (a == 1.0) return {u, cplx(-std::numeric_limits<double>::infinity(), 0.0)};
  const double L = std::log(std::abs((1.0 + u) / (1.0 - u)));
  const cplx bracket(L, im);
  return {u + 0.5 * (1.0 - u * u) * bracket, 2.0 - u * bracket};
}

struct Rule15 {
  Eigen::Array<double, 15, 1> x, wk, wg;
};

const Rule15& gk() {
  static const Rule15 r{kronrod_nodes(), kronrod_weights(), gauss_weights_embedded()};
  return r;
}

// Panels on [lo, hi] no wider than h, with geometric refinement towards the
// singular points. The last 2^-40 of a panel next to a singular point is left
// out: nodes there round onto the singularity, and the piece is below 1e-11
// of the panel integral.
std::vector<Panel> time_panels(double lo, double hi, double h, const std::vector<double>& sing) {
  std::vector<double> edges{lo};
  for (double b : sing)
    if (b > lo && b < hi) edges.push_back(b);
  edges.push_back(hi);
  auto is_sing = [&](double v) { return std::find(sing.begin(), sing.end(), v) != sing.end(); };

  constexpr int kLevels = 40;
  std::vector<Panel> out;
  for (std::size_t e = 0; e + 1 < edges.size(); ++e) {
    const double a = edges[e], b = edges[e + 1];
    if (!(b > a)) continue;
    const int n = std::max(1, int(std::ceil((b - a) / h)));
    const double w = (b - a) / n;
    for (int k = 0; k < n; ++k) {
      const double pa = a + k * w, pb = (k + 1 == n) ? b : a + (k + 1) * w;
      const bool left = k == 0 && is_sing(a);
      const bool right = k + 1 == n && is_sing(b);
      if (!left && !right) {
        out.push_back({pa, pb});
        continue;
      }
      const double mid = (left && right) ? 0.5 * (pa + pb) : (left ? pb : pa);
      if (left) {
        const double len = mid - pa;
        for (int l = kLevels; l >= 1; --l)
          out.push_back({pa + len * std::ldexp(1.0, -l), pa + len * std::ldexp(1.0, -l + 1)});
      }
      if (right) {
        const double len = pb - mid;
        for (int l = 1; l <= kLevels; ++l)
          out.push_back({pb - len * std::ldexp(1.0, -l + 1), pb - len * std::ldexp(1.0, -l)});
      }
    }
  }
  return out;
}

struct Node {
  cplx p, p0, pr;  // P, -i P_s, -i P_x
};

Node node_at(double s, double x, double radius) {
  const auto w = smeared_wightman(s, x, radius);
  return {w.p, -I * w.ps, -I * w.px};
}

}  // namespace

WightmanValue smeared_wightman(double s, double x, double radius) {
  const double S = s / radius, X = x / radius;
  const auto lm = lambda_fn(X - S, +1);
  const auto lp = lambda_fn(X + S, -1);
  const double c = 4 * kPi * kPi / X;
  WightmanValue r;
  r.p = c * (lm.v + lp.v);
  r.ps = c * (lp.d - lm.d);
  r.px = -r.p / X + c * (lm.d + lp.d);
  const double r2 = radius * radius;
  r.p /= r2;
  r.ps /= r2 * radius;
  r.px /= r2 * radius;
  return r;
}

bool use_spacetime(const SmearingProfile& p, Route route) {
  const bool hs = p.kind == SmearingKind::HardSphere;
  if (route == Route::Spacetime && !hs) throw std::invalid_argument("spacetime route needs a hard-sphere profile");
  return route != Route::Spectral && hs;
}

std::vector<double> wightman_singular_times(double x, double radius, double lo, double hi) {
  std::vector<double> out;
  for (double v : {x - radius, radius - x, x + radius, -x - radius})
    if (v > lo && v < hi) out.push_back(v);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

WindowedWightman windowed_wightman(double x, double t, const SwitchingSpec& sw, double gap, double radius,
                                   bool ordered_terms) {
  const double s_lo = t - sw.t_off, s_hi = t - sw.t_on;
  const auto sing = wightman_singular_times(x, radius, s_lo, s_hi);
  const double h = 0.5 * std::min(radius, kPi / std::max(std::abs(gap), 1e-300));
  const auto panels = time_panels(s_lo, s_hi, h, sing);
  const auto& r = gk();

  WindowedWightman out;
  cplx gm[2]{}, g0[2]{}, gr[2]{};
  // running cos/sin moments of P and of (P0, Pr) for the ordered integrals
  cplx cP{}, sP{}, c0{}, s0{}, cR{}, sR{};
  cplx tri_phi_g{}, tri_t00_g{};
  double inner_err_phi = 0, inner_err_t00 = 0;

  for (const auto& pan : panels) {
    const double c = 0.5 * (pan.a + pan.b), hw = 0.5 * (pan.b - pan.a);
    Node nd[15];
    double sv[15];
    for (int j = 0; j < 15; ++j) {
      sv[j] = c + hw * r.x[j];
      nd[j] = node_at(sv[j], x, radius);
    }
    out.n_evals += 15;
    for (int j = 0; j < 15; ++j) {
      const double t1 = t - sv[j];
      const cplx ph(std::cos(gap * t1), std::sin(gap * t1));
      const cplx phc = std::conj(ph);
      const double wk = hw * r.wk[j], wg = hw * r.wg[j];
      out.m1[0] += wk * ph * nd[j].p;
      out.m1[1] += wk * phc * nd[j].p;
      gm[0] += wg * ph * nd[j].p;
      gm[1] += wg * phc * nd[j].p;
      out.j0[0] += wk * ph * nd[j].p0;
      out.j0[1] += wk * phc * nd[j].p0;
      out.jr[0] += wk * ph * nd[j].pr;
      out.jr[1] += wk * phc * nd[j].pr;
      g0[0] += wg * ph * nd[j].p0;
      g0[1] += wg * phc * nd[j].p0;
      gr[0] += wg * ph * nd[j].pr;
      gr[1] += wg * phc * nd[j].pr;
    }
    if (!ordered_terms) continue;

    // s measured from s_lo keeps the trig arguments small
    for (int j = 0; j < 15; ++j) {
      const double s2 = sv[j];
      const double ih = 0.5 * (s2 - pan.a), ic = 0.5 * (s2 + pan.a);
      cplx kP[2]{}, k0[2]{}, kR[2]{}, gPi[2]{}, g0i[2]{}, gRi[2]{};
      for (int q = 0; q < 15; ++q) {
        const double s1 = ic + ih * r.x[q];
        const Node m = node_at(s1, x, radius);
        const double cw = std::cos(gap * (s1 - s_lo)), sw1 = std::sin(gap * (s1 - s_lo));
        const double wk = ih * r.wk[q], wg = ih * r.wg[q];
        kP[0] += wk * cw * m.p;
        kP[1] += wk * sw1 * m.p;
        k0[0] += wk * cw * m.p0;
        k0[1] += wk * sw1 * m.p0;
        kR[0] += wk * cw * m.pr;
        kR[1] += wk * sw1 * m.pr;
        gPi[0] += wg * cw * m.p;
        gPi[1] += wg * sw1 * m.p;
        g0i[0] += wg * cw * m.p0;
        g0i[1] += wg * sw1 * m.p0;
        gRi[0] += wg * cw * m.pr;
        gRi[1] += wg * sw1 * m.pr;
      }
      out.n_evals += 15;
      const double c2 = std::cos(gap * (s2 - s_lo)), sn2 = std::sin(gap * (s2 - s_lo));
      const cplx fphi = nd[j].p * (sn2 * (cP + kP[0]) - c2 * (sP + kP[1]));
      const cplx ft00 = nd[j].p0 * (sn2 * (c0 + k0[0]) - c2 * (s0 + k0[1])) +
                        nd[j].pr * (sn2 * (cR + kR[0]) - c2 * (sR + kR[1]));
      const double wk = hw * r.wk[j], wg = hw * r.wg[j];
      out.tri_phi += wk * fphi;
      out.tri_t00 += wk * ft00;
      tri_phi_g += wg * fphi;
      tri_t00_g += wg * ft00;
      inner_err_phi += wk * std::abs(nd[j].p) * (std::abs(kP[0] - gPi[0]) + std::abs(kP[1] - gPi[1]));
      inner_err_t00 += wk * (std::abs(nd[j].p0) * (std::abs(k0[0] - g0i[0]) + std::abs(k0[1] - g0i[1])) +
                             std::abs(nd[j].pr) * (std::abs(kR[0] - gRi[0]) + std::abs(kR[1] - gRi[1])));
    }
    for (int j = 0; j < 15; ++j) {
      const double cw = std::cos(gap * (sv[j] - s_lo)), sw1 = std::sin(gap * (sv[j] - s_lo));
      const double wk = hw * r.wk[j];
      cP += wk * cw * nd[j].p;
      sP += wk * sw1 * nd[j].p;
      c0 += wk * cw * nd[j].p0;
      s0 += wk * sw1 * nd[j].p0;
      cR += wk * cw * nd[j].pr;
      sR += wk * sw1 * nd[j].pr;
    }
  }
  out.err_m1 = std::max(std::abs(out.m1[0] - gm[0]), std::abs(out.m1[1] - gm[1]));
  out.err_j = std::max(std::abs(out.j0[0] - g0[0]), std::abs(out.j0[1] - g0[1])) +
              std::max(std::abs(out.jr[0] - gr[0]), std::abs(out.jr[1] - gr[1]));
  out.err_tri_phi = std::abs(out.tri_phi - tri_phi_g) + inner_err_phi;
  out.err_tri_t00 = std::abs(out.tri_t00 - tri_t00_g) + inner_err_t00;
  return out;
}

}  // namespace udw
