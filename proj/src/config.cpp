#include "udw/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace udw {

namespace {

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

double to_double(const std::string& s, const std::string& key) {
  const std::string t = trim(s);
  double v = 0.0;
  const char* first = t.data();
  const char* last = t.data() + t.size();
  if (!t.empty() && *first == '+') ++first;
  auto [p, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || p != last) throw ConfigError("bad number '" + s + "' for key '" + key + "'");
  return v;
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

// "name(args)" -> {name, args}; plain text -> {"", text}.
std::pair<std::string, std::string> call_form(const std::string& v) {
  const auto open = v.find('(');
  if (open == std::string::npos || v.back() != ')') return {"", v};
  return {lower(trim(v.substr(0, open))), v.substr(open + 1, v.size() - open - 2)};
}

std::vector<double> parse_list(const std::string& v, const std::string& key) {
  auto [fn, args] = call_form(trim(v));
  std::vector<double> out;
  if (fn.empty() || fn == "list") {
    if (trim(args).empty()) return out;
    for (const auto& p : split_commas(args)) out.push_back(to_double(p, key));
    return out;
  }
  const auto parts = split_commas(args);
  if (parts.size() != 3) throw ConfigError(fn + " needs (start, stop, count) for key '" + key + "'");
  const double a = to_double(parts[0], key), b = to_double(parts[1], key);
  const double nd = to_double(parts[2], key);
  if (nd < 0 || nd != std::floor(nd)) throw ConfigError("bad count in '" + v + "'");
  const auto n = static_cast<std::size_t>(nd);
  if (fn == "linspace") {
    for (std::size_t i = 0; i < n; ++i) out.push_back(n == 1 ? a : a + (b - a) * double(i) / double(n - 1));
  } else if (fn == "logspace") {
    if (!(a > 0 && b > 0)) throw ConfigError("logspace bounds must be positive");
    for (std::size_t i = 0; i < n; ++i)
      out.push_back(n == 1 ? a : a * std::pow(b / a, double(i) / double(n - 1)));
  } else {
    throw ConfigError("unknown grid generator '" + fn + "'");
  }
  return out;
}

cplx parse_complex(const std::string& v, const std::string& key) {
  const std::string t = trim(v);
  if (!t.empty() && t.front() == '(' && t.back() == ')') {
    const auto parts = split_commas(t.substr(1, t.size() - 2));
    if (parts.size() != 2) throw ConfigError("complex value must be (re,im) for key '" + key + "'");
    return {to_double(parts[0], key), to_double(parts[1], key)};
  }
  return {to_double(t, key), 0.0};
}

bool parse_bool(const std::string& v, const std::string& key) {
  const auto t = lower(trim(v));
  if (t == "true" || t == "1" || t == "yes") return true;
  if (t == "false" || t == "0" || t == "no") return false;
  throw ConfigError("bad boolean '" + v + "' for key '" + key + "'");
}

// Splits a line into key=value tokens; whitespace inside parentheses is kept.
std::vector<std::pair<std::string, std::string>> tokens(const std::string& line, int lineno) {
  std::string norm;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '=') {
      while (!norm.empty() && std::isspace(static_cast<unsigned char>(norm.back()))) norm.pop_back();
      norm += '=';
      while (i + 1 < line.size() && std::isspace(static_cast<unsigned char>(line[i + 1]))) ++i;
    } else {
      norm += line[i];
    }
  }
  std::vector<std::string> raw;
  std::string cur;
  int depth = 0;
  for (char c : norm) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (std::isspace(static_cast<unsigned char>(c)) && depth == 0) {
      if (!cur.empty()) raw.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) raw.push_back(cur);
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& r : raw) {
    const auto eq = r.find('=');
    if (eq == std::string::npos || eq == 0)
      throw ConfigError("line " + std::to_string(lineno) + ": expected key=value, got '" + r + "'");
    out.emplace_back(lower(r.substr(0, eq)), r.substr(eq + 1));
  }
  return out;
}

struct DetectorDraft {
  DetectorConfig d;
  bool have_ag = false, have_ae = false;
  bool gap_units = false;
};

void apply_detector(DetectorDraft& dd, const std::string& k, const std::string& v) {
  auto& d = dd.d;
  if (k == "gap") d.gap = to_double(v, k);
  else if (k == "radius") d.smearing.radius = to_double(v, k);
  else if (k == "lambda") d.lambda = to_double(v, k);
  else if (k == "a_e") { d.a_e = parse_complex(v, k); dd.have_ae = true; }
  else if (k == "a_g") { d.a_g = parse_complex(v, k); dd.have_ag = true; }
  else if (k == "eta") d.switching.eta = to_double(v, k);
  else if (k == "t_on") d.switching.t_on = to_double(v, k);
  else if (k == "t_off") d.switching.t_off = to_double(v, k);
  else if (k == "switching") {
    const auto s = lower(trim(v));
    if (s == "tophat") d.switching.kind = SwitchingKind::TopHat;
    else if (s == "delta") d.switching.kind = SwitchingKind::DeltaKick;
    else throw ConfigError("unknown switching '" + v + "'");
  } else if (k == "profile") {
    const auto s = lower(trim(v));
    if (s == "hard_sphere") d.smearing.kind = SmearingKind::HardSphere;
    else if (s == "tabulated") d.smearing.kind = SmearingKind::TabulatedRadial;
    else throw ConfigError("unknown profile '" + v + "'");
  } else if (k == "zeta") d.smearing.zeta = parse_list(v, k);
  else if (k == "g") d.smearing.g = parse_list(v, k);
  else if (k == "center") {
    auto c = parse_list(v, k);
    if (c.size() != 3) throw ConfigError("center needs three components");
    d.center = Eigen::Vector3d(c[0], c[1], c[2]);
  } else if (k == "window_unit") {
    const auto s = lower(trim(v));
    if (s == "absolute") dd.gap_units = false;
    else if (s == "inverse_gap") dd.gap_units = true;
    else throw ConfigError("unknown window_unit '" + v + "'");
  } else {
    throw ConfigError("unknown key '" + k + "' in detector section");
  }
}

void apply_scenario(ScenarioConfig& c, const std::string& k, const std::string& v) {
  if (k == "id") c.id = trim(v);
  else if (k == "model") {
    const auto s = lower(trim(v));
    if (s == "rwa") c.model = CouplingModel::RWA;
    else if (s == "full") c.model = CouplingModel::Full;
    else throw ConfigError("unknown model '" + v + "'");
  } else if (k == "observable") {
    const auto s = lower(trim(v));
    if (s == "t00" || s == "energy_density") c.observable = Observable::EnergyDensity;
    else if (s == "phi2") c.observable = Observable::PhiSquared;
    else if (s == "cab") c.observable = Observable::Cab;
    else throw ConfigError("unknown observable '" + v + "'");
  } else if (k == "time") c.time = to_double(v, k);
  else if (k == "grid") c.grid = parse_list(v, k);
  else if (k == "reference_radius") c.reference_radius = to_double(v, k);
  else throw ConfigError("unknown key '" + k + "' in [scenario]");
}

void apply_quadrature(QuadratureConfig& q, const std::string& k, const std::string& v) {
  if (k == "tol_rel") q.tol_rel = to_double(v, k);
  else if (k == "tol_abs") q.tol_abs = to_double(v, k);
  else if (k == "omega_max") q.omega_max = to_double(v, k);
  else if (k == "delta_pole") q.delta_pole = to_double(v, k);
  else if (k == "max_evals") {
    const double m = to_double(v, k);
    if (!(m >= 1) || m != std::floor(m)) throw ConfigError("max_evals must be a positive integer");
    q.max_evals = static_cast<std::size_t>(m);
  } else if (k == "extrapolate") q.extrapolate = parse_bool(v, k);
  else if (k == "route") {
    const auto s = lower(trim(v));
    if (s == "auto") q.route = Route::Auto;
    else if (s == "spectral") q.route = Route::Spectral;
    else if (s == "spacetime") q.route = Route::Spacetime;
    else throw ConfigError("unknown route '" + v + "'");
  } else throw ConfigError("unknown key '" + k + "' in [quadrature]");
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string cnum(cplx z) { return z.imag() == 0.0 ? num(z.real()) : "(" + num(z.real()) + "," + num(z.imag()) + ")"; }

std::string list(const std::vector<double>& xs) {
  std::string s = "list(";
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + num(xs[i]);
  return s + ")";
}

const char* route_name(Route r) {
  switch (r) {
    case Route::Auto: return "auto";
    case Route::Spectral: return "spectral";
    case Route::Spacetime: return "spacetime";
  }
  return "auto";
}

}  // namespace

ScenarioConfig parse_config(std::string_view text) {
  ScenarioConfig cfg;
  std::map<std::string, DetectorDraft> dets;
  std::string section;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      const auto close = line.find(']');
      if (close == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": unterminated section");
      section = lower(trim(line.substr(1, close - 1)));
      if (section == "detector") section = "detector.a";
      if (section != "scenario" && section != "quadrature" && section.rfind("detector.", 0) != 0)
        throw ConfigError("line " + std::to_string(lineno) + ": unknown section [" + section + "]");
      if (section.rfind("detector.", 0) == 0) {
        const auto name = section.substr(9);
        if (name != "a" && name != "b") throw ConfigError("detector sections must be named A or B");
        dets.try_emplace(name);
      }
      line = trim(line.substr(close + 1));
      if (line.empty()) continue;
    }
    if (section.empty()) throw ConfigError("line " + std::to_string(lineno) + ": key outside any section");
    for (const auto& [k, v] : tokens(line, lineno)) {
      if (section == "scenario") apply_scenario(cfg, k, v);
      else if (section == "quadrature") apply_quadrature(cfg.quad, k, v);
      else apply_detector(dets[section.substr(9)], k, v);
    }
  }
  if (dets.count("b") && !dets.count("a")) throw ConfigError("detector B given without detector A");
  for (auto& [name, dd] : dets) {
    auto& d = dd.d;
    if (dd.have_ae && !dd.have_ag) d.a_g = std::sqrt(std::max(0.0, 1.0 - std::norm(d.a_e)));
    if (dd.have_ag && !dd.have_ae) d.a_e = std::sqrt(std::max(0.0, 1.0 - std::norm(d.a_g)));
    if (dd.gap_units) {
      if (!(d.gap > 0)) throw ConfigError("window_unit=inverse_gap needs a positive gap");
      d.switching.t_on /= d.gap;
      d.switching.t_off /= d.gap;
    }
    cfg.detectors.push_back(d);
  }
  return cfg;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read config '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

std::string serialize_config(const ScenarioConfig& c) {
  std::ostringstream o;
  o << "[scenario]\n"
    << "id = " << c.id << "\n"
    << "model = " << to_string(c.model) << "\n"
    << "observable = " << to_string(c.observable) << "\n"
    << "time = " << num(c.time) << "\n"
    << "reference_radius = " << num(c.reference_radius) << "\n"
    << "grid = " << list(c.grid) << "\n\n";
  const auto& q = c.quad;
  o << "[quadrature]\n"
    << "tol_rel = " << num(q.tol_rel) << "\n"
    << "tol_abs = " << num(q.tol_abs) << "\n"
    << "omega_max = " << num(q.omega_max) << "\n"
    << "max_evals = " << q.max_evals << "\n"
    << "delta_pole = " << num(q.delta_pole) << "\n"
    << "extrapolate = " << (q.extrapolate ? "true" : "false") << "\n"
    << "route = " << route_name(q.route) << "\n";
  for (std::size_t i = 0; i < c.detectors.size(); ++i) {
    const auto& d = c.detectors[i];
    o << "\n[detector." << char('A' + i) << "]\n"
      << "gap = " << num(d.gap) << "\n"
      << "lambda = " << num(d.lambda) << "\n"
      << "radius = " << num(d.smearing.radius) << "\n"
      << "center = list(" << num(d.center.x()) << "," << num(d.center.y()) << "," << num(d.center.z()) << ")\n"
      << "a_g = " << cnum(d.a_g) << "\n"
      << "a_e = " << cnum(d.a_e) << "\n";
    if (d.smearing.kind == SmearingKind::TabulatedRadial)
      o << "profile = tabulated\nzeta = " << list(d.smearing.zeta) << "\ng = " << list(d.smearing.g) << "\n";
    else
      o << "profile = hard_sphere\n";
    if (d.switching.kind == SwitchingKind::DeltaKick) {
      o << "switching = delta\neta = " << num(d.switching.eta) << "\n";
      if (d.switching.t_on != 0.0 || d.switching.t_off != 0.0)
        o << "t_on = " << num(d.switching.t_on) << "\nt_off = " << num(d.switching.t_off) << "\n";
    } else {
      o << "switching = tophat\nt_on = " << num(d.switching.t_on) << "\nt_off = " << num(d.switching.t_off) << "\n";
      if (d.switching.eta != 1.0) o << "eta = " << num(d.switching.eta) << "\n";
    }
  }
  return o.str();
}

bool same_config(const ScenarioConfig& a, const ScenarioConfig& b) {
  auto same_det = [](const DetectorConfig& x, const DetectorConfig& y) {
    return x.gap == y.gap && x.lambda == y.lambda && x.smearing.kind == y.smearing.kind &&
           x.smearing.radius == y.smearing.radius && x.smearing.zeta == y.smearing.zeta &&
           x.smearing.g == y.smearing.g && x.center == y.center && x.switching.kind == y.switching.kind &&
           x.switching.eta == y.switching.eta && x.switching.t_on == y.switching.t_on &&
           x.switching.t_off == y.switching.t_off && x.a_g == y.a_g && x.a_e == y.a_e;
  };
  if (a.detectors.size() != b.detectors.size()) return false;
  for (std::size_t i = 0; i < a.detectors.size(); ++i)
    if (!same_det(a.detectors[i], b.detectors[i])) return false;
  const auto& p = a.quad;
  const auto& q = b.quad;
  return a.id == b.id && a.model == b.model && a.observable == b.observable && a.time == b.time &&
         a.grid == b.grid && a.reference_radius == b.reference_radius && p.tol_rel == q.tol_rel &&
         p.tol_abs == q.tol_abs && p.omega_max == q.omega_max && p.max_evals == q.max_evals &&
         p.delta_pole == q.delta_pole && p.extrapolate == q.extrapolate && p.route == q.route;
}

}  // namespace udw
