#include "udw/model.hpp"

#include <cmath>

namespace udw {

namespace {

void check_detector(const DetectorConfig& d, const std::string& tag, std::vector<std::string>& err) {
  const auto& s = d.smearing;
  if (!(s.radius > 0.0)) err.push_back(tag + ": radius must be positive");
  if (s.kind == SmearingKind::TabulatedRadial) {
    if (s.zeta.size() < 2 || s.zeta.size() != s.g.size())
      err.push_back(tag + ": tabulated profile needs matching zeta/g samples (at least 2)");
    for (std::size_t i = 1; i < s.zeta.size(); ++i)
      if (!(s.zeta[i] > s.zeta[i - 1])) {
        err.push_back(tag + ": tabulated zeta must be strictly increasing");
        break;
      }
    if (!s.zeta.empty() && s.zeta.front() < 0.0) err.push_back(tag + ": tabulated zeta must be >= 0");
  }
  if (!(d.gap >= 0.0)) err.push_back(tag + ": gap must be >= 0");
  if (!(d.lambda >= 0.0)) err.push_back(tag + ": lambda must be >= 0");
  if (d.switching.kind == SwitchingKind::TopHat) {
    if (!(d.switching.duration() > 0.0)) err.push_back(tag + ": switching duration must be positive");
  } else if (!(d.switching.eta > 0.0)) {
    err.push_back(tag + ": kick intensity eta must be positive");
  }
  const double norm = d.pg() + d.pe();
  if (!(std::abs(norm - 1.0) <= 1e-12)) err.push_back(tag + ": normalization |a_g|^2+|a_e|^2 != 1");
}

}  // namespace

ValidationReport validate_scenario(const ScenarioConfig& cfg) {
  ValidationReport r;
  auto& err = r.errors;
  const bool cab = cfg.observable == Observable::Cab;
  const std::size_t want = cab ? 2 : 1;
  if (cfg.detectors.size() != want)
    err.push_back("detector count: observable " + std::string(to_string(cfg.observable)) + " needs " +
                  std::to_string(want) + " detector(s), got " + std::to_string(cfg.detectors.size()));

  for (std::size_t i = 0; i < cfg.detectors.size(); ++i)
    check_detector(cfg.detectors[i], "detector " + std::string(1, char('A' + i)), err);

  if (!(cfg.reference_radius > 0.0)) err.push_back("reference_radius must be positive");
  if (cfg.grid.empty()) err.push_back("grid is empty");
  for (double r0 : cfg.grid)
    if (!std::isfinite(r0) || r0 < 0.0 || (!cab && r0 == 0.0)) {
      err.push_back(cab ? "grid separations must be finite and >= 0" : "grid radii must be finite and > 0");
      break;
    }

  const auto& q = cfg.quad;
  if (!(q.tol_rel > 0.0 && q.tol_rel < 1.0)) err.push_back("tol_rel must lie in (0, 1)");
  if (!(q.tol_abs >= 0.0)) err.push_back("tol_abs must be >= 0");
  if (!(q.omega_max > 0.0)) err.push_back("omega_max must be positive");
  if (!(q.delta_pole > 0.0)) err.push_back("delta_pole must be positive");
  if (q.max_evals == 0) err.push_back("max_evals must be positive");

  if (!cab && cfg.detectors.size() == 1) {
    const auto& d = cfg.detectors.front();
    if (d.switching.kind == SwitchingKind::TopHat && !(cfg.time >= d.switching.t_off))
      err.push_back("evaluation time must be >= t_off for finite switching");
    if (d.switching.kind == SwitchingKind::DeltaKick && !(cfg.time >= 0.0))
      err.push_back("evaluation time must be >= 0 after a kick");
    if (q.route == Route::Spacetime && d.smearing.kind != SmearingKind::HardSphere)
      err.push_back("spacetime route needs a hard-sphere smearing");
  }
  if (cab && cfg.detectors.size() == 2) {
    const auto& a = cfg.detectors[0].switching;
    const auto& b = cfg.detectors[1].switching;
    if (a.kind != SwitchingKind::TopHat || b.kind != SwitchingKind::TopHat)
      err.push_back("signalling needs top-hat switching for both detectors");
    else if (!(b.t_off <= a.t_on))
      err.push_back("signalling needs detector B switched off before detector A switches on");
  }
  return r;
}

ScenarioConfig normalized(const ScenarioConfig& cfg) {
  ScenarioConfig out = cfg;
  const double r = cfg.reference_radius;
  out.reference_radius = 1.0;
  out.time /= r;
  for (auto& x : out.grid) x /= r;
  for (auto& d : out.detectors) {
    d.gap *= r;
    d.smearing.radius /= r;
    d.center /= r;
    // eta is a time, so lambda~ = lambda eta carries one length
    if (d.switching.kind == SwitchingKind::DeltaKick) d.switching.eta /= r;
    d.switching.t_on /= r;
    d.switching.t_off /= r;
  }
  out.quad.omega_max *= r;
  out.quad.delta_pole *= r;
  return out;
}

const char* to_string(CouplingModel m) { return m == CouplingModel::RWA ? "rwa" : "full"; }

const char* to_string(Observable o) {
  switch (o) {
    case Observable::EnergyDensity: return "t00";
    case Observable::PhiSquared: return "phi2";
    case Observable::Cab: return "cab";
  }
  return "?";
}

}  // namespace udw
