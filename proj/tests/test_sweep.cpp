#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "udw/config.hpp"
#include "udw/sweep.hpp"

using namespace udw;
namespace fs = std::filesystem;

namespace {

ScenarioConfig kick_scenario() {
  return parse_config(R"(
[scenario]
id = kick
model = full
observable = phi2
time = 2.5
grid = list(3.3, 1.7, 0.5, 2.0)
[detector.A]
gap = 1
lambda = 1
switching = delta
)");
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

int run(const std::string& args) {
  const int s = std::system((std::string(UDW_CLI) + " " + args + " >/dev/null 2>&1").c_str());
  return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
}

fs::path scratch(const std::string& name) {
  const auto d = fs::temp_directory_path() / ("udw_test_" + std::to_string(::getpid()));
  fs::create_directories(d);
  return d / name;
}

}  // namespace

TEST_CASE("sweep rows come out sorted with frozen values") {
  const auto out = run_sweep(kick_scenario());
  REQUIRE(out.complete);
  REQUIRE(out.rows.size() == 4);
  CHECK(out.rows[0].r_over_R == 0.5);
  CHECK(out.rows[3].r_over_R == 3.3);
  CHECK(out.rows[1].value == doctest::Approx(0.0028027681514228303696).epsilon(1e-10));
  CHECK(out.rows[3].value == doctest::Approx(7.4380158395526708568e-4).epsilon(1e-10));
  CHECK(out.rows[0].model == std::string("full"));
  CHECK(out.rows[0].observable == std::string("phi2"));
}

TEST_CASE("sweep does not depend on the worker count") {
  auto c = kick_scenario();
  c.model = CouplingModel::RWA;
  c.quad.route = Route::Spectral;
  const auto a = run_sweep(c, 1), b = run_sweep(c, 3);
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(a.rows[i].value == b.rows[i].value);
    CHECK(a.rows[i].abs_err == b.rows[i].abs_err);
    CHECK(a.rows[i].n_evals == b.rows[i].n_evals);
  }
}

TEST_CASE("grid is reported in units of the reference radius") {
  // lambda~ is a length too, so R = 2 halves it
  auto c = kick_scenario();
  c.reference_radius = 2;
  c.detectors[0].smearing.radius = 2;
  c.time = 5;
  c.grid = {3.4, 6.6};
  const auto out = run_sweep(c);
  REQUIRE(out.rows.size() == 2);
  CHECK(out.rows[0].r_over_R == doctest::Approx(1.7));
  CHECK(out.rows[0].value == doctest::Approx(0.0028027681514228303696 / 4).epsilon(1e-10));
}

TEST_CASE("rejected scenarios do not run") {
  auto c = kick_scenario();
  c.grid.clear();
  CHECK_THROWS_AS(run_sweep(c), std::invalid_argument);
}

TEST_CASE("CSV format") {
  std::ostringstream os;
  write_csv(os, run_sweep(kick_scenario()));
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  CHECK(line == "scenario_id,model,observable,r_over_R,value,abs_err,n_evals");
  int n = 0;
  while (std::getline(is, line)) {
    ++n;
    CHECK(line.rfind("kick,full,phi2,", 0) == 0);
    CHECK(std::count(line.begin(), line.end(), ',') == 6);
  }
  CHECK(n == 4);
}

TEST_CASE("non-convergence leaves a marked partial CSV") {
  auto c = kick_scenario();
  c.model = CouplingModel::RWA;
  c.quad.route = Route::Spectral;
  c.quad.omega_max = 3;
  const auto out = run_sweep(c);
  CHECK_FALSE(out.complete);
  CHECK_FALSE(out.failure.empty());
  std::ostringstream os;
  write_csv(os, out);
  CHECK(os.str().find("# INCOMPLETE: ") != std::string::npos);
}

TEST_CASE("command line") {
  const auto cfg = scratch("kick.cfg");
  std::ofstream(cfg) << serialize_config(kick_scenario());
  const auto csv = scratch("kick.csv");
  CHECK(run("run --config " + cfg.string() + " --out " + csv.string()) == 0);
  const auto text = slurp(csv);
  CHECK(text.rfind("scenario_id,", 0) == 0);
  CHECK(text.find("kick,full,phi2,1.7,") != std::string::npos);
  CHECK(run("fit-tail --csv " + csv.string() + " --min 1") == 0);

  auto bad = kick_scenario();
  bad.grid.clear();
  const auto bad_cfg = scratch("bad.cfg");
  std::ofstream(bad_cfg) << serialize_config(bad);
  CHECK(run("run --config " + bad_cfg.string()) == 2);
  CHECK(run("run --config /nonexistent.cfg") == 2);
  CHECK(run("run") == 2);
  CHECK(run("verify nonsense") == 2);

  CHECK(run("run --config " + cfg.string() + " --out " + csv.string() + " --omega-max 3 --route x") == 2);
  auto rwa = kick_scenario();
  rwa.model = CouplingModel::RWA;
  rwa.quad.route = Route::Spectral;
  const auto rwa_cfg = scratch("rwa.cfg");
  std::ofstream(rwa_cfg) << serialize_config(rwa);
  CHECK(run("run --config " + rwa_cfg.string() + " --out " + csv.string() + " --omega-max 3") == 3);
  CHECK(slurp(csv).find("# INCOMPLETE") != std::string::npos);

  fs::remove_all(cfg.parent_path());
}

TEST_CASE("shipped configs are accepted") {
  int n = 0;
  for (const auto& e : fs::directory_iterator(UDW_CONFIG_DIR)) {
    if (e.path().extension() != ".cfg") continue;
    ++n;
    CAPTURE(e.path().string());
    const auto c = load_config(e.path().string());
    CHECK(validate_scenario(c).ok());
    CHECK(same_config(c, parse_config(serialize_config(c))));
  }
  CHECK(n == 10);
}
