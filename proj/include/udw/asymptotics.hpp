#ifndef UDW_ASYMPTOTICS_HPP
#define UDW_ASYMPTOTICS_HPP

#include <span>
#include <utility>

namespace udw {

enum class TailFormula { DeltaT00, DeltaPhi2, PertT00, PertPhi2, SignallingD2 };

struct TailParams {
  double lambda = 1.0;  // lambda, or lambda~ for the delta forms
  double gap = 1.0;
  double t = 0.0;
  double radius = 1.0;
  double r = 1.0;  // |x| or |d|
};

// Large-distance closed forms, valid for r >> max(t, R):
//   PertT00   16 l^2 sin^2(t W/2) / (9 pi^2 W^2 r^6)
//   PertPhi2   8 l^2 sin^2(t W/2) / (9 pi^2 W^2 r^4)
//   DeltaT00   4 l^2 sin^2(R^2) / (9 pi^2 R^4 r^6)   (printed argument kept as is)
//   DeltaPhi2  2 l^2 sin^2(R^2) / (9 pi^2 R^4 r^4)
//   SignallingD2  1 / r^2 (shape only)
double asymptotic_value(TailFormula f, const TailParams& p);

struct PowerLawFit {
  double slope = 0.0;
  double amplitude = 0.0;
  double residual = 0.0;  // RMS in log space
};

// Least squares in (log r, log v). Needs >= 2 points, r increasing, v > 0.
PowerLawFit fit_power_law(std::span<const std::pair<double, double>> samples);

}  // namespace udw

#endif
