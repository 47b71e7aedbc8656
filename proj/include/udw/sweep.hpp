#ifndef UDW_SWEEP_HPP
#define UDW_SWEEP_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "udw/model.hpp"
#include "udw/quadrature.hpp"

namespace udw {

struct SweepRow {
  std::string scenario_id, model, observable;
  double r_over_R = 0.0;
  double value = 0.0, abs_err = 0.0;
  std::size_t n_evals = 0;
};

struct SweepOutput {
  std::vector<SweepRow> rows;  // ascending r_over_R, converged points only
  bool complete = true;
  std::string failure;  // first non-convergence message
};

// One grid value of a scenario already in R = 1 units: |x| for single
// detectors, the separation d for C_AB (reported as |C_AB|).
QuadratureResult evaluate_point(const ScenarioConfig& cfg, double r);

// Validates, normalizes and evaluates the grid on `threads` workers. Output
// does not depend on the worker count. Throws std::invalid_argument with the
// validation messages when the scenario is rejected.
SweepOutput run_sweep(const ScenarioConfig& cfg, unsigned threads = 1);

void write_csv(std::ostream& os, const SweepOutput& out);

}  // namespace udw

#endif
