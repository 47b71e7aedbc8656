#ifndef UDW_MODEL_HPP
#define UDW_MODEL_HPP

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Core>

// Units: c = hbar = 1. Library functions take lengths, times and gaps in any
// consistent unit; the config loader rescales everything so that the
// declared reference radius is 1.

namespace udw {

using cplx = std::complex<double>;

enum class SmearingKind { HardSphere, TabulatedRadial };

struct SmearingProfile {
  SmearingKind kind = SmearingKind::HardSphere;
  double radius = 1.0;
  // TabulatedRadial only: G sampled at increasing zeta, linear in between,
  // zero beyond the last sample.
  std::vector<double> zeta;
  std::vector<double> g;

  static SmearingProfile hard_sphere(double r) { return {SmearingKind::HardSphere, r, {}, {}}; }
};

enum class SwitchingKind { DeltaKick, TopHat };

struct SwitchingSpec {
  SwitchingKind kind = SwitchingKind::TopHat;
  double eta = 1.0;
  double t_on = 0.0;
  double t_off = 1.0;

  double duration() const { return t_off - t_on; }
  static SwitchingSpec delta(double eta) { return {SwitchingKind::DeltaKick, eta, 0.0, 0.0}; }
  static SwitchingSpec top_hat(double on, double off) { return {SwitchingKind::TopHat, 1.0, on, off}; }
};

struct DetectorConfig {
  double gap = 0.0;
  // lambda for finite switching, lambda-tilde = lambda * eta for the kick.
  double lambda = 1.0;
  SmearingProfile smearing;
  Eigen::Vector3d center = Eigen::Vector3d::Zero();
  SwitchingSpec switching;
  cplx a_g{0.0, 0.0};
  cplx a_e{1.0, 0.0};

  double pe() const { return std::norm(a_e); }
  double pg() const { return std::norm(a_g); }
};

enum class CouplingModel { RWA, Full };
enum class Observable { EnergyDensity, PhiSquared, Cab };

// Which representation evaluates the single-detector observables.
// Spectral: radial frequency integrals. Spacetime: closed-form smeared
// two-point function integrated over the switching window (hard sphere only).
enum class Route { Auto, Spectral, Spacetime };

struct QuadratureConfig {
  double tol_rel = 1e-9;
  double tol_abs = 1e-300;
  double omega_max = 400.0;
  std::size_t max_evals = 50'000'000;
  double delta_pole = 1e-4;
  // When false the 2D integrals stop at omega_max without tail extrapolation.
  bool extrapolate = true;
  Route route = Route::Auto;
};

struct ScenarioConfig {
  std::string id = "scenario";
  CouplingModel model = CouplingModel::RWA;
  std::vector<DetectorConfig> detectors;
  Observable observable = Observable::EnergyDensity;
  double time = 0.0;
  std::vector<double> grid;
  QuadratureConfig quad;
  double reference_radius = 1.0;
};

struct ValidationReport {
  std::vector<std::string> errors;
  bool ok() const { return errors.empty(); }
  bool operator==(const ValidationReport&) const = default;
};

ValidationReport validate_scenario(const ScenarioConfig& cfg);

// Copy of cfg with lengths and times divided by reference_radius and gaps
// multiplied by it.
ScenarioConfig normalized(const ScenarioConfig& cfg);

const char* to_string(CouplingModel m);
const char* to_string(Observable o);

}  // namespace udw

#endif
