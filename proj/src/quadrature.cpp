#include "udw/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace udw {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// QUADPACK 7-15 pair.
constexpr double xgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                           0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                           0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                           0.207784955007898467600689403773245, 0.0};
constexpr double wgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                           0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                           0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                           0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double wg7[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Rule {
  Eigen::Array<double, 15, 1> x, wk, wg;
  Rule() {
    for (int k = 0; k < 7; ++k) {
      x[k] = -xgk[k];
      x[14 - k] = xgk[k];
      wk[k] = wk[14 - k] = wgk[k];
      wg[k] = wg[14 - k] = 0.0;
    }
    x[7] = 0.0;
    wk[7] = wgk[7];
    wg[7] = wg7[3];
    for (int j = 0; j < 3; ++j) {
      const int k = 2 * j + 1;
      wg[k] = wg[14 - k] = wg7[j];
    }
  }
};

const Rule& rule() {
  static const Rule r;
  return r;
}

struct PanelEval {
  cplx k, g;
  double abs_sum;
};

PanelEval eval_panel(const BatchIntegrand& f, double a, double b) {
  const auto& r = rule();
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  const Eigen::ArrayXd x = c + h * r.x;
  const Eigen::ArrayXcd v = f(x);
  PanelEval e;
  e.k = h * (v * r.wk.cast<cplx>()).sum();
  e.g = h * (v * r.wg.cast<cplx>()).sum();
  e.abs_sum = h * (v.abs() * r.wk).sum();
  return e;
}

void gk_recurse(const BatchIntegrand& f, double a, double b, const PanelEval& e, double tol, int depth,
                QuadratureResult& acc, double& abs_sum) {
  const double err = std::abs(e.k - e.g);
  if (err <= tol || depth <= 0 || (b - a) < 64 * kEps * std::max(1.0, std::abs(a))) {
    acc.value += e.k;
    acc.abs_err += err;
    abs_sum += e.abs_sum;
    return;
  }
  const double m = 0.5 * (a + b);
  const auto l = eval_panel(f, a, m);
  const auto r = eval_panel(f, m, b);
  acc.n_evals += 30;
  gk_recurse(f, a, m, l, tol / std::numbers::sqrt2, depth - 1, acc, abs_sum);
  gk_recurse(f, m, b, r, tol / std::numbers::sqrt2, depth - 1, acc, abs_sum);
}

QuadratureResult gk_adaptive(const BatchIntegrand& f, double a, double b, double tol, int max_depth,
                             double& abs_sum) {
  QuadratureResult acc;
  const auto e = eval_panel(f, a, b);
  acc.n_evals = 15;
  gk_recurse(f, a, b, e, tol, max_depth, acc, abs_sum);
  return acc;
}

struct Extrapolated {
  cplx value;
  double err;
};

// Picks the better of the two accelerators, judging each by its own error
// estimate together with the drift since the previous step.
// TODO: a power-law tail mixed with an oscillating one (w F(w)^2 of the hard
// sphere) still gets an underestimated error; capital_k subtracts that tail
// analytically instead.
class Accelerator {
 public:
  Extrapolated update(std::span<const cplx> sums) {
    double ew = 0.0, el = 0.0;
    const cplx w = wynn_epsilon(sums, &ew);
    const cplx l = levin_u(sums, &el);
    ew = std::max(ew, drift(hist_w_, w));
    el = std::max(el, drift(hist_l_, l));
    hist_w_.push_back(w);
    hist_l_.push_back(l);
    return ew <= el ? Extrapolated{w, ew} : Extrapolated{l, el};
  }

 private:
  static double drift(const std::vector<cplx>& h, cplx now) {
    if (h.size() < 2) return std::numeric_limits<double>::infinity();
    return std::max(std::abs(now - h[h.size() - 1]), std::abs(now - h[h.size() - 2]));
  }
  std::vector<cplx> hist_w_, hist_l_;
};

// Relative to the larger of the result and the largest partial sum, so that
// integrals cancelling to ~0 (outside the light cone) still have a target.
double target(const QuadratureConfig& cfg, cplx v, double scale = 0.0) {
  return std::max(cfg.tol_abs, cfg.tol_rel * std::max(std::abs(v), scale));
}

}  // namespace

const Eigen::Array<double, 15, 1>& kronrod_nodes() { return rule().x; }
const Eigen::Array<double, 15, 1>& kronrod_weights() { return rule().wk; }
const Eigen::Array<double, 15, 1>& gauss_weights_embedded() { return rule().wg; }

std::vector<Panel> make_panels(double lo, double hi, double max_phase, std::span<const double> breakpoints,
                               std::span<const double> poles) {
  std::vector<Panel> out;
  if (!(hi > lo)) return out;
  const double h = std::numbers::pi / std::max(max_phase, 1.0);
  std::vector<double> hard;
  for (double b : breakpoints)
    if (b > lo && b < hi) hard.push_back(b);
  std::vector<double> pl;
  for (double p : poles)
    if (p > lo && p < hi) pl.push_back(p);
  std::sort(pl.begin(), pl.end());
  std::vector<double> all = hard;
  all.insert(all.end(), pl.begin(), pl.end());
  all.push_back(lo);
  all.push_back(hi);
  std::sort(all.begin(), all.end());
  for (double p : pl) {
    double d = 0.5 * h;
    for (double q : all)
      if (q != p) d = std::min(d, 0.5 * std::abs(q - p));
    hard.push_back(p);
    hard.push_back(p - d);
    hard.push_back(p + d);
  }
  hard.push_back(lo);
  std::sort(hard.begin(), hard.end());
  hard.erase(std::unique(hard.begin(), hard.end()), hard.end());
  for (std::size_t i = 0; i < hard.size(); ++i) {
    const double a = hard[i];
    if (i + 1 < hard.size()) {
      const double b = hard[i + 1];
      const bool pole_pair = std::any_of(pl.begin(), pl.end(), [&](double p) { return p == a || p == b; });
      const auto n = pole_pair ? 1 : std::max<long>(1, long(std::ceil((b - a) / h - 1e-12)));
      for (long k = 0; k < n; ++k)
        out.push_back({a + (b - a) * double(k) / double(n), k + 1 == n ? b : a + (b - a) * double(k + 1) / double(n)});
    } else {
      double x = a;
      while (x < hi) {
        const double nx = std::min(hi, x + h);
        out.push_back({x, (hi - nx) < 1e-9 * h ? hi : nx});
        x = out.back().b;
      }
    }
  }
  return out;
}

QuadratureResult integrate_gk(const BatchIntegrand& f, double a, double b, double tol, int max_depth) {
  double abs_sum = 0.0;
  auto r = gk_adaptive(f, a, b, tol, max_depth, abs_sum);
  r.abs_err += 8 * kEps * abs_sum;
  return r;
}

cplx wynn_epsilon(std::span<const cplx> s, double* err) {
  std::size_t m = s.size();
  if (m == 0) {
    if (err) *err = std::numeric_limits<double>::infinity();
    return {};
  }
  if (m < 3) {
    if (err) *err = m == 2 ? std::abs(s[1] - s[0]) : std::numeric_limits<double>::infinity();
    return s[m - 1];
  }
  m = std::min<std::size_t>(m % 2 ? m : m - 1, 21);
  const auto seq = s.subspan(s.size() - m);
  // Columns are kept as full vectors; column k has m - k entries.
  std::vector<cplx> prev(m, cplx{}), cur(seq.begin(), seq.end());
  cplx best = cur.back(), best_prev = cur.size() > 1 ? cur[cur.size() - 2] : best;
  for (std::size_t k = 1; k < m; ++k) {
    std::vector<cplx> next(m - k);
    bool stalled = false;
    for (std::size_t n = 0; n + 1 < cur.size(); ++n) {
      const cplx d = cur[n + 1] - cur[n];
      if (std::abs(d) <= 1e-300 + 4 * kEps * std::abs(cur[n + 1])) {
        stalled = true;
        break;
      }
      next[n] = prev[n + 1] + 1.0 / d;
    }
    if (stalled) {
      if (err) *err = 4 * kEps * std::abs(cur.back());
      return cur.back();
    }
    prev = std::move(cur);
    cur = std::move(next);
    if (k % 2 == 0) {
      best_prev = cur.size() > 1 ? cur[cur.size() - 2] : best;
      best = cur.back();
    }
  }
  if (err) *err = std::abs(best - best_prev);
  return best;
}

cplx levin_u(std::span<const cplx> s, double* err) {
  const std::size_t len = s.size();
  if (len < 3) {
    if (err) *err = std::numeric_limits<double>::infinity();
    return len ? s[len - 1] : cplx{};
  }
  auto term = [&](std::size_t j) { return j == 0 ? s[0] : s[j] - s[j - 1]; };
  auto transform = [&](std::size_t last, std::size_t k, bool* ok) {
    const std::size_t n0 = last - k;
    cplx num{}, den{};
    double binom = 1.0;
    const double beta = 1.0;
    for (std::size_t j = 0; j <= k; ++j) {
      if (j > 0) binom *= double(k - j + 1) / double(j);
      const cplx a = term(n0 + j);
      if (std::abs(a) == 0.0) {
        *ok = false;
        return s[last];
      }
      const cplx omega = (beta + double(n0 + j)) * a;
      const double c = ((j % 2) ? -1.0 : 1.0) * binom *
                       std::pow((beta + double(n0 + j)) / (beta + double(n0 + k)), double(k) - 1.0);
      num += c * s[n0 + j] / omega;
      den += c / omega;
    }
    return num / den;
  };
  const std::size_t k = std::min<std::size_t>(len - 2, 12);
  bool ok = true;
  const cplx a = transform(len - 1, k, &ok);
  const cplx b = transform(len - 2, k, &ok);
  const cplx c = transform(len - 1, k - 1, &ok);
  if (!ok) {
    if (err) *err = std::abs(s[len - 1] - s[len - 2]);
    return s[len - 1];
  }
  if (err) *err = std::max(std::abs(a - b), std::abs(a - c));
  return a;
}

QuadratureResult integrate_osc_1d(const BatchIntegrand& f, std::span<const double> phases,
                                  const QuadratureConfig& cfg, std::span<const double> breakpoints,
                                  std::span<const double> poles) {
  double amax = 0.0;
  for (double a : phases) amax = std::max(amax, std::abs(a));
  const auto panels = make_panels(0.0, cfg.omega_max, amax, breakpoints, poles);

  double last_special = 0.0;
  for (double b : breakpoints) last_special = std::max(last_special, b);
  for (double p : poles) last_special = std::max(last_special, p);

  QuadratureResult res;
  double gk_err = 0.0, abs_sum = 0.0, scale = 0.0;
  cplx sum{};
  std::vector<cplx> sums;  // partial sums in the regular regime
  Accelerator acc;
  Extrapolated best{sum, std::numeric_limits<double>::infinity()};
  std::vector<std::pair<double, cplx>> trail;  // (panel end, estimate)
  int quiet = 0;

  for (std::size_t i = 0; i < panels.size(); ++i) {
    const auto& p = panels[i];
    const double ptol = std::max(cfg.tol_abs, 0.05 * cfg.tol_rel * scale);
    const auto e0 = eval_panel(f, p.a, p.b);
    res.n_evals += 15;
    QuadratureResult pr;
    pr.n_evals = 0;
    double dummy = 0.0;
    gk_recurse(f, p.a, p.b, e0, scale > 0 ? ptol : std::max(cfg.tol_abs, 1e-3 * cfg.tol_rel * std::abs(e0.k)),
               10, pr, dummy);
    abs_sum += dummy;
    res.n_evals += pr.n_evals;
    gk_err += pr.abs_err;
    sum += pr.value;
    scale = std::max(scale, std::abs(sum));

    if (p.a < last_special) continue;
    sums.push_back(sum);

    const double tgt = target(cfg, sum, scale);
    quiet = std::abs(pr.value) <= 1e-3 * tgt ? quiet + 1 : 0;
    if (quiet >= 4 && sums.size() >= 4) {
      best = {sum, 4 * std::abs(pr.value)};
      break;
    }
    if (sums.size() >= 6) {
      best = acc.update(sums);
      if (std::isfinite(best.err)) trail.emplace_back(p.b, best.value);
      // A slow beat under the fast panel phase looks converged for a while;
      // the estimate must also hold since half the current frequency.
      const auto half = std::find_if(trail.rbegin(), trail.rend(), [&](const auto& t) { return t.first <= 0.5 * p.b; });
      if (half != trail.rend()) {
        best.err = std::max(best.err, std::abs(best.value - half->second));
        if (sums.size() >= 10 && best.err + gk_err <= target(cfg, best.value, scale)) break;
      } else if (!trail.empty()) {
        best.err = std::max(best.err, std::abs(best.value - trail.front().second));
      }
    }
    if (res.n_evals >= cfg.max_evals) break;
  }
  if (sums.size() < 6) best = {sum, sums.size() >= 2 ? std::abs(sums.back() - sums[sums.size() - 2]) : 0.0};
  res.value = best.value;
  res.abs_err = best.err + gk_err + 16 * kEps * abs_sum;
  if (!(res.abs_err <= target(cfg, res.value, scale)))
    throw NonConvergence("integrate_osc_1d: error target missed (err " + std::to_string(res.abs_err) + ")", res);
  return res;
}

QuadratureResult integrate_osc_2d(const RowIntegrand& f, std::span<const double> phases,
                                  const QuadratureConfig& cfg, std::span<const double> breakpoints,
                                  std::span<const double> poles) {
  double amax = 0.0;
  for (double a : phases) amax = std::max(amax, std::abs(a));
  auto panels = make_panels(0.0, cfg.omega_max, amax, breakpoints, poles);
  const auto cap = static_cast<std::size_t>(std::sqrt(double(cfg.max_evals)) / 15.0);
  bool truncated = false;
  if (panels.size() > cap) {
    panels.resize(cap);
    truncated = true;
  }
  const std::size_t np = panels.size();
  const std::size_t n = 15 * np;
  const auto& r = rule();
  Eigen::ArrayXd x(n), wk(n), wg(n);
  for (std::size_t p = 0; p < np; ++p) {
    const double c = 0.5 * (panels[p].a + panels[p].b), h = 0.5 * (panels[p].b - panels[p].a);
    x.segment(15 * p, 15) = c + h * r.x;
    wk.segment(15 * p, 15) = h * r.wk;
    wg.segment(15 * p, 15) = h * r.wg;
  }

  // ring[q] accumulates the integral over the square of the first q+1 panels.
  std::vector<cplx> ring(np, cplx{});
  std::vector<cplx> strip_k(np, cplx{}), strip_g(np, cplx{});
  double abs_sum = 0.0;
  Eigen::ArrayXcd prefix(np);
  for (std::size_t i = 0; i < n; ++i) {
    const Eigen::ArrayXcd row = f(x[i], x);
    const std::size_t pi = i / 15;
    cplx run{};
    for (std::size_t q = 0; q < np; ++q) {
      run += (row.segment(15 * q, 15) * wk.segment(15 * q, 15).cast<cplx>()).sum();
      prefix[q] = run;
    }
    const cplx rg = (row * wg.cast<cplx>()).sum();
    strip_k[pi] += wk[i] * run;
    strip_g[pi] += wg[i] * rg;
    abs_sum += wk[i] * (row.abs() * wk).sum();
    // node i contributes to every square that contains its panel
    for (std::size_t q = pi; q < np; ++q) ring[q] += wk[i] * prefix[q];
  }

  QuadratureResult res;
  res.n_evals = n * n;
  double gk_err = 0.0;
  cplx total{};
  for (std::size_t p = 0; p < np; ++p) {
    gk_err += std::abs(strip_k[p] - strip_g[p]);
    total += strip_k[p];
  }
  const double round = 16 * kEps * abs_sum;

  double last_special = 0.0;
  for (double b : breakpoints) last_special = std::max(last_special, b);
  for (double p : poles) last_special = std::max(last_special, p);
  std::size_t first = 0;
  while (first < np && panels[first].a < last_special) ++first;

  if (!cfg.extrapolate || np - first < 8) {
    res.value = total;
    res.abs_err = gk_err + round;
    if (cfg.extrapolate && np >= 2) res.abs_err += std::abs(ring[np - 1] - ring[np - 2]);
  } else {
    Accelerator acc;
    Extrapolated best{total, 0.0};
    const std::span<const cplx> seq(ring.data() + first, np - first);
    // replay the accelerator so its drift check sees a history
    for (std::size_t m = std::max<std::size_t>(6, seq.size() > 24 ? seq.size() - 4 : 6); m <= seq.size(); ++m)
      best = acc.update(seq.first(m));
    res.value = best.value;
    res.abs_err = best.err + gk_err + round;
  }
  double scale = 0.0;
  for (const auto& v : ring) scale = std::max(scale, std::abs(v));
  if (truncated || !(res.abs_err <= target(cfg, res.value, scale)))
    throw NonConvergence("integrate_osc_2d: error target missed (err " + std::to_string(res.abs_err) +
                             (truncated ? ", evaluation budget hit" : "") + ")",
                         res);
  return res;
}

}  // namespace udw
