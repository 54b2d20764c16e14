#include "rcfd/metrics/sweep.hpp"

#include <fstream>

#include "rcfd/errors.hpp"
#include "rcfd/sim/simulator.hpp"

namespace rcfd {

SweepSpec sweep_preset(const std::string& name) {
  SweepSpec spec;
  spec.protocols = all_protocols();
  const bool full = name == "long-full" || name == "short-full";
  if (name == "long" || name == "long-full") {
    spec.base.payload_bits = 1000.0;
    spec.base.data_rate = 1e6;
  } else if (name == "short" || name == "short-full") {
    spec.base.payload_bits = 200.0;
    spec.base.data_rate = 54e6;
  } else {
    throw ConfigInvalid("unknown preset '" + name + "'");
  }
  if (full) {
    spec.nodes = {2, 5, 10, 20, 30, 40, 50};
    spec.base.runs = 100;
    spec.base.duration = 10.0;
  } else {
    spec.nodes = {2, 10, 30, 50};
    spec.base.runs = 10;
    spec.base.duration = 2.0;
  }
  return spec;
}

SweepResult run_sweep(const SweepSpec& spec, const SweepProgress& progress) {
  if (spec.nodes.empty()) throw ConfigInvalid("sweep needs at least one N");
  if (spec.protocols.empty()) throw ConfigInvalid("sweep needs at least one protocol");
  SweepResult out;
  for (const std::size_t n : spec.nodes) {
    for (std::size_t run = 0; run < spec.base.runs; ++run) {
      const std::uint64_t seed = derive_seed(spec.base.seed, run);
      std::uint64_t checksum = 0;
      for (const Protocol p : spec.protocols) {
        SimConfig c = spec.base;
        c.nodes = n;
        c.protocol = p;
        RunResult r = run_simulation(c, seed);
        if (p == spec.protocols.front()) {
          checksum = r.report.packet_checksum;
        } else if (checksum != r.report.packet_checksum) {
          throw Error("packet set differs between protocols for the same seed");
        }
        if (progress) progress(r.report);
        out.reports.push_back(std::move(r.report));
      }
    }
  }
  out.rows = aggregate(out.reports);
  return out;
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

SimConfig parse_config(std::istream& in, SimConfig base) {
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigInvalid("line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    try {
      apply_setting(base, key, value);
    } catch (const ConfigInvalid& e) {
      throw ConfigInvalid("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return base;
}

SimConfig load_config(const std::string& path, SimConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigInvalid("cannot open config file " + path);
  return parse_config(in, base);
}

}  // namespace rcfd
