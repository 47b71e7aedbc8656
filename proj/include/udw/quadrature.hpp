#ifndef UDW_QUADRATURE_HPP
#define UDW_QUADRATURE_HPP

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "udw/model.hpp"

namespace udw {

struct QuadratureResult {
  cplx value{};
  double abs_err = 0.0;
  std::size_t n_evals = 0;
};

class NonConvergence : public std::runtime_error {
 public:
  NonConvergence(const std::string& what, QuadratureResult partial)
      : std::runtime_error(what), partial_(partial) {}
  const QuadratureResult& partial() const noexcept { return partial_; }

 private:
  QuadratureResult partial_;
};

// f evaluated on a batch of abscissae.
using BatchIntegrand = std::function<Eigen::ArrayXcd(const Eigen::ArrayXd&)>;
// One row of a 2D integrand: f(w, w2[j]) for every j.
using RowIntegrand = std::function<Eigen::ArrayXcd(double w, const Eigen::ArrayXd& w2)>;

// 15-point Kronrod nodes on [-1, 1] in ascending order; the embedded
// 7-point Gauss nodes sit at the odd positions.
const Eigen::Array<double, 15, 1>& kronrod_nodes();
const Eigen::Array<double, 15, 1>& kronrod_weights();
const Eigen::Array<double, 15, 1>& gauss_weights_embedded();  // zero at Kronrod-only nodes

struct Panel {
  double a, b;
};

// Panels of width at most pi / max(max_phase, 1) covering [lo, hi]. Each
// breakpoint becomes a panel edge; a pole breakpoint additionally gets
// mirror-image neighbours so that a naive 1/(w - p) sum is a principal value.
std::vector<Panel> make_panels(double lo, double hi, double max_phase, std::span<const double> breakpoints = {},
                               std::span<const double> poles = {});

// Adaptive Gauss-Kronrod on a finite interval.
QuadratureResult integrate_gk(const BatchIntegrand& f, double a, double b, double tol, int max_depth = 12);

// Semi-infinite oscillatory integral over [0, inf): the integrand behaves
// like sum_j c_j(w) exp(i a_j w) with slowly varying c_j. Panels follow the
// fastest phase; partial sums are accelerated (Wynn epsilon and Levin u) and
// the better-converged extrapolant is returned. Integration stops at
// cfg.omega_max at the latest. Throws NonConvergence if the error target
// max(tol_abs, tol_rel |value|) is missed.
QuadratureResult integrate_osc_1d(const BatchIntegrand& f, std::span<const double> phases,
                                  const QuadratureConfig& cfg, std::span<const double> breakpoints = {},
                                  std::span<const double> poles = {});

// Tensor-panel integral over [0, L]^2, L = cfg.omega_max, with the panel grid
// shared by both axes. With cfg.extrapolate the nested-square partial sums
// are accelerated towards [0, inf)^2.
QuadratureResult integrate_osc_2d(const RowIntegrand& f, std::span<const double> phases,
                                  const QuadratureConfig& cfg, std::span<const double> breakpoints = {},
                                  std::span<const double> poles = {});

// Sequence accelerators, exposed for tests. Both return the best estimate
// from the tail of the partial-sum sequence and write an error estimate.
cplx wynn_epsilon(std::span<const cplx> partial_sums, double* err);
cplx levin_u(std::span<const cplx> partial_sums, double* err);

}  // namespace udw

#endif
