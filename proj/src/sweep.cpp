#include "udw/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <numeric>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "udw/delta_coupling.hpp"
#include "udw/perturbative.hpp"
#include "udw/signalling.hpp"

namespace udw {

QuadratureResult evaluate_point(const ScenarioConfig& cfg, double r) {
  if (cfg.observable == Observable::Cab) {
    const TwoDetectorScenario sc{cfg.detectors.at(0), cfg.detectors.at(1), r};
    auto res = c_ab(cfg.model, sc, cfg.quad);
    res.value = std::abs(res.value);
    return res;
  }
  const auto& det = cfg.detectors.at(0);
  if (det.switching.kind == SwitchingKind::DeltaKick) {
    return cfg.model == CouplingModel::RWA ? rwa_observable_delta(cfg.observable, r, cfg.time, det, cfg.quad)
                                           : full_observable_delta(cfg.observable, r, cfg.time, det, cfg.quad);
  }
  return expectation_second_order(cfg.observable, cfg.model, r, cfg.time, det, cfg.quad);
}

SweepOutput run_sweep(const ScenarioConfig& raw, unsigned threads) {
  const auto rep = validate_scenario(raw);
  if (!rep.ok()) {
    std::string msg;
    for (const auto& e : rep.errors) msg += (msg.empty() ? "" : "; ") + e;
    throw std::invalid_argument(msg);
  }
  const ScenarioConfig cfg = normalized(raw);
  std::vector<std::size_t> order(cfg.grid.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return cfg.grid[a] < cfg.grid[b]; });

  struct Slot {
    std::optional<QuadratureResult> res;
    std::string error;
  };
  std::vector<Slot> slots(order.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < order.size();) {
      try {
        slots[i].res = evaluate_point(cfg, cfg.grid[order[i]]);
      } catch (const NonConvergence& e) {
        slots[i].error = e.what();
      }
    }
  };
  threads = std::max(1u, threads);
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < threads; ++k) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  SweepOutput out;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (!slots[i].res) {
      if (out.complete) out.failure = slots[i].error;
      out.complete = false;
      continue;
    }
    const auto& r = *slots[i].res;
    out.rows.push_back({cfg.id, to_string(cfg.model), to_string(cfg.observable), cfg.grid[order[i]],
                        r.value.real(), r.abs_err, r.n_evals});
  }
  return out;
}

void write_csv(std::ostream& os, const SweepOutput& out) {
  os << "scenario_id,model,observable,r_over_R,value,abs_err,n_evals\n";
  char buf[128];
  for (const auto& r : out.rows) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%zu", r.r_over_R, r.value, r.abs_err, r.n_evals);
    os << r.scenario_id << ',' << r.model << ',' << r.observable << ',' << buf << '\n';
  }
  if (!out.complete) os << "# INCOMPLETE: " << out.failure << '\n';
}

}  // namespace udw
