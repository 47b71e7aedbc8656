// udw: run scenario configs, verify the acceptance criteria, fit tails.
#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "udw/asymptotics.hpp"
#include "udw/config.hpp"
#include "udw/sweep.hpp"
#include "udw/verify.hpp"

namespace fs = std::filesystem;
using namespace udw;

namespace {

struct Overrides {
  unsigned threads = 0;
  double tol_rel = 0, omega_max = 0;
  long seed = 0;  // reserved, nothing is random
};

nlohmann::json to_json(const SweepOutput& out) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : out.rows)
    rows.push_back({{"scenario_id", r.scenario_id},
                    {"model", r.model},
                    {"observable", r.observable},
                    {"r_over_R", r.r_over_R},
                    {"value", r.value},
                    {"abs_err", r.abs_err},
                    {"n_evals", r.n_evals}});
  nlohmann::json j{{"rows", rows}, {"complete", out.complete}};
  if (!out.complete) j["failure"] = out.failure;
  return j;
}

// 0 ok, 2 config error, 3 non-convergence (partial output written)
int run_one(const std::string& config, const std::string& out_path, const std::string& json_path,
            const Overrides& o) {
  ScenarioConfig cfg;
  SweepOutput res;
  try {
    cfg = load_config(config);
    if (o.tol_rel > 0) cfg.quad.tol_rel = o.tol_rel;
    if (o.omega_max > 0) cfg.quad.omega_max = o.omega_max;
    const unsigned n = o.threads ? o.threads : std::max(1u, std::thread::hardware_concurrency());
    res = run_sweep(cfg, n);
  } catch (const ConfigError& e) {
    std::cerr << config << ": " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << config << ": " << e.what() << '\n';
    return 2;
  }
  if (out_path.empty() || out_path == "-") {
    write_csv(std::cout, res);
  } else {
    std::ofstream f(out_path);
    if (!f) {
      std::cerr << "cannot write " << out_path << '\n';
      return 2;
    }
    write_csv(f, res);
  }
  if (!json_path.empty()) std::ofstream(json_path) << to_json(res).dump(1) << '\n';
  if (!res.complete) {
    std::cerr << config << ": incomplete: " << res.failure << '\n';
    return 3;
  }
  return 0;
}

int fit_tail(const std::string& csv, double lo, double hi) {
  std::ifstream f(csv);
  if (!f) {
    std::cerr << "cannot read " << csv << '\n';
    return 2;
  }
  std::string line;
  std::getline(f, line);
  std::vector<std::pair<double, double>> s;
  while (std::getline(f, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<std::string> c;
    while (std::getline(ss, cell, ',')) c.push_back(cell);
    if (c.size() < 7) {
      std::cerr << "malformed row: " << line << '\n';
      return 2;
    }
    const double r = std::stod(c[3]), v = std::stod(c[4]);
    if (r >= lo && r <= hi) s.emplace_back(r, std::abs(v));
  }
  try {
    const auto fit = fit_power_law(s);
    std::printf("slope %.6f amplitude %.6e residual %.3e points %zu\n", fit.slope, fit.amplitude, fit.residual,
                s.size());
  } catch (const std::exception& e) {
    std::cerr << "fit-tail: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Unruh-DeWitt detector field observables"};
  app.require_subcommand(1);
  Overrides o;
  auto add_common = [&](CLI::App* c) {
    c->add_option("--threads", o.threads, "worker threads (default: hardware)");
    c->add_option("--tol-rel", o.tol_rel, "override quadrature tol_rel");
    c->add_option("--omega-max", o.omega_max, "override quadrature omega_max");
    c->add_option("--seed", o.seed, "reserved");
  };

  std::string config, out, json;
  auto* run = app.add_subcommand("run", "evaluate one scenario config to CSV");
  run->add_option("--config", config, "scenario config")->required();
  run->add_option("--out", out, "CSV path (default stdout)");
  run->add_option("--json", json, "also write the rows as JSON");
  add_common(run);

  std::vector<std::string> configs;
  std::string out_dir = ".";
  auto* sweep = app.add_subcommand("sweep", "evaluate several configs, one <id>.csv each");
  sweep->add_option("--config", configs, "configs or directories of *.cfg")->required();
  sweep->add_option("--out", out_dir, "output directory");
  add_common(sweep);

  std::string suite = "all";
  auto* verify = app.add_subcommand("verify", "run an acceptance suite");
  verify->add_option("suite", suite, "kernels, causality, tails, huygens, appendixC or all")
      ->check(CLI::IsMember(suite_names()));
  add_common(verify);

  std::string csv;
  double lo = 0, hi = 1e300;
  auto* fit = app.add_subcommand("fit-tail", "power-law fit of a CSV's |value| against r_over_R");
  fit->add_option("--csv", csv, "CSV written by run")->required();
  fit->add_option("--min", lo, "smallest r_over_R used");
  fit->add_option("--max", hi, "largest r_over_R used");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  if (*run) return run_one(config, out, json, o);
  if (*sweep) {
    std::vector<fs::path> files;
    for (const auto& c : configs) {
      if (fs::is_directory(c)) {
        for (const auto& e : fs::directory_iterator(c))
          if (e.path().extension() == ".cfg") files.push_back(e.path());
      } else {
        files.emplace_back(c);
      }
    }
    std::sort(files.begin(), files.end());
    fs::create_directories(out_dir);
    int code = 0;
    for (const auto& f : files) {
      std::string id;
      try {
        id = load_config(f.string()).id;
      } catch (const ConfigError& e) {
        std::cerr << f.string() << ": " << e.what() << '\n';
        code = std::max(code, 2);
        continue;
      }
      const auto dst = (fs::path(out_dir) / (id + ".csv")).string();
      const int c = run_one(f.string(), dst, "", o);
      std::cerr << f.string() << " -> " << dst << (c ? " (exit " + std::to_string(c) + ")" : "") << '\n';
      code = std::max(code, c);
    }
    return code;
  }
  if (*verify) {
    bool all = true;
    for (int id : suite_criteria(suite)) {
      const auto r = run_criterion(id);
      std::cout << format_result(r) << std::endl;
      all = all && r.pass;
    }
    return all ? 0 : 1;
  }
  if (*fit) return fit_tail(csv, lo, hi);
  return 2;
}
