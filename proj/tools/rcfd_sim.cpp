// rcfd_sim: single runs, sweeps, scenario replay and the exhaustive oracle.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "rcfd/errors.hpp"
#include "rcfd/metrics/report.hpp"
#include "rcfd/metrics/scenario.hpp"
#include "rcfd/metrics/sweep.hpp"
#include "rcfd/metrics/validate.hpp"
#include "rcfd/sim/simulator.hpp"

namespace {

struct Common {
  std::string config_path;
  std::string protocol;
  std::vector<std::size_t> nodes;
  std::size_t runs = 0;
  double duration = 0.0;
  std::uint64_t seed = 0;
  CLI::Option* seed_opt = nullptr;
  std::string out;
  std::vector<std::string> settings;
};

void add_common(CLI::App* app, Common& c, bool many_nodes) {
  app->add_option("--config", c.config_path, "key = value configuration file")
      ->check(CLI::ExistingFile);
  app->add_option("--protocol", c.protocol,
                  "rcfd, dcf, dcf-rtscts, fdmac-approx or back2f (comma list for sweep)");
  if (many_nodes) {
    app->add_option("--nodes", c.nodes, "node counts")->delimiter(',');
  } else {
    app->add_option("--nodes", c.nodes, "node count")->expected(1);
  }
  app->add_option("--runs", c.runs, "runs per point (M)");
  app->add_option("--duration", c.duration, "simulated seconds (T)");
  c.seed_opt = app->add_option("--seed", c.seed, "master seed");
  app->add_option("--out", c.out, "results CSV; per-run JSON lines go next to it (.jsonl)");
  app->add_option("--set", c.settings, "extra key=value overrides")->delimiter(';');
}

rcfd::SimConfig apply_common(const Common& c, rcfd::SimConfig base) {
  if (!c.config_path.empty()) base = rcfd::load_config(c.config_path, base);
  for (const auto& kv : c.settings) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw rcfd::ConfigInvalid("--set expects key=value: " + kv);
    rcfd::apply_setting(base, kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (c.runs) base.runs = c.runs;
  if (c.duration > 0.0) base.duration = c.duration;
  if (c.seed_opt != nullptr && c.seed_opt->count() > 0) base.seed = c.seed;
  return base;
}

std::vector<rcfd::Protocol> parse_protocols(const std::string& text) {
  std::vector<rcfd::Protocol> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(rcfd::parse_protocol(item));
  return out;
}

std::string jsonl_path(const std::string& csv) {
  const auto dot = csv.rfind('.');
  const auto slash = csv.find_last_of('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return csv + ".jsonl";
  return csv.substr(0, dot) + ".jsonl";
}

void emit(const Common& c, const std::vector<rcfd::MetricsReport>& reports) {
  const auto rows = rcfd::aggregate(reports);
  if (c.out.empty()) {
    rcfd::write_csv(std::cout, rows);
    return;
  }
  std::ofstream csv(c.out);
  if (!csv) throw rcfd::ConfigInvalid("cannot write " + c.out);
  rcfd::write_csv(csv, rows);
  std::ofstream jl(jsonl_path(c.out));
  rcfd::write_jsonl(jl, reports);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Frequency-domain full-duplex MAC simulator"};
  app.require_subcommand(1);

  Common run_opts;
  bool trace = false;
  auto* run = app.add_subcommand("run", "one configuration, M runs");
  add_common(run, run_opts, false);
  run->add_flag("--trace", trace, "print the event trace of each run to stderr");

  Common sweep_opts;
  std::string preset;
  auto* sweep = app.add_subcommand("sweep", "grid over N and protocols");
  add_common(sweep, sweep_opts, true);
  sweep->add_option("--preset", preset, "long, short, long-full or short-full");

  int scenario_id = 0;
  bool scenario_trace = false;
  auto* scenario = app.add_subcommand("scenario", "replay a three-node walkthrough");
  scenario->add_option("which", scenario_id, "1 or 2")->required()->check(CLI::Range(1, 2));
  scenario->add_flag("--trace", scenario_trace, "also run the event simulator and print its trace");

  std::size_t n_max = 3;
  std::size_t subcarriers = 6;
  std::size_t modulation = 1;
  auto* validate = app.add_subcommand("validate", "exhaustive collision-freedom check");
  validate->add_option("--nodes", n_max, "largest network size (<= 4)");
  validate->add_option("--subcarriers", subcarriers, "S");
  validate->add_option("--modulation", modulation, "m");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      rcfd::SimConfig cfg = apply_common(run_opts, {});
      if (!run_opts.protocol.empty()) cfg.protocol = rcfd::parse_protocol(run_opts.protocol);
      if (!run_opts.nodes.empty()) cfg.nodes = run_opts.nodes.front();
      cfg.validate();
      std::vector<rcfd::MetricsReport> reports;
      for (std::size_t r = 0; r < cfg.runs; ++r) {
        rcfd::RunOptions opts;
        if (trace) opts.trace = &std::cerr;
        reports.push_back(rcfd::run_simulation(cfg, rcfd::derive_seed(cfg.seed, r), opts).report);
      }
      emit(run_opts, reports);
    } else if (*sweep) {
      rcfd::SweepSpec spec = preset.empty() ? rcfd::sweep_preset("long") : rcfd::sweep_preset(preset);
      spec.base = apply_common(sweep_opts, spec.base);
      if (!sweep_opts.protocol.empty()) spec.protocols = parse_protocols(sweep_opts.protocol);
      if (!sweep_opts.nodes.empty()) spec.nodes = sweep_opts.nodes;
      const auto result = rcfd::run_sweep(spec);
      emit(sweep_opts, result.reports);
    } else if (*scenario) {
      const rcfd::Scenario s = rcfd::make_scenario(scenario_id);
      rcfd::print_contention(std::cout, s, rcfd::replay_contention(s));
      if (scenario_trace) {
        std::cout << "event trace (time_us event node detail)\n";
        rcfd::replay_simulation(s, &std::cout);
      }
    } else if (*validate) {
      const auto report = rcfd::validate_exhaustive(n_max, subcarriers, static_cast<rcfd::Symbol>(modulation));
      std::cout << "topologies " << report.topologies << ", contentions " << report.contentions
                << ", collisions " << report.collisions << ", unpaired secondaries "
                << report.unpaired << "\n";
      for (const auto& v : report.violations) std::cout << v.describe() << "\n";
      return report.violations.empty() ? 0 : 1;
    }
  } catch (const rcfd::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
