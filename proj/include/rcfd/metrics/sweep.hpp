#pragma once

#include <functional>
#include <istream>
#include <string>
#include <vector>

#include "rcfd/metrics/report.hpp"
#include "rcfd/sim/config.hpp"

namespace rcfd {

struct SweepSpec {
  std::vector<std::size_t> nodes;
  std::vector<Protocol> protocols;
  SimConfig base;  // L, R_T, M (runs), T (duration) and the master seed live here
};

// Scaled experiment grids: N in {2,10,30,50}, M=10, T=2 s, all protocols.
// "long": L=1000 bits, R_T=1 Mbit/s. "short": L=200 bits, R_T=54 Mbit/s.
// "long-full" / "short-full" use the complete grid N in {2,5,...,50},
// M=100 and T=10 s. Throws ConfigInvalid for another name.
SweepSpec sweep_preset(const std::string& name);

struct SweepResult {
  std::vector<MetricsReport> reports;  // ordered by (N, run, protocol)
  std::vector<AggregateRow> rows;
};

using SweepProgress = std::function<void(const MetricsReport&)>;

// Run r of every (protocol, N) uses seed derive_seed(base.seed, r), so all
// protocols see the same topology and packet set; this is checked through
// the packet checksum.
SweepResult run_sweep(const SweepSpec& spec, const SweepProgress& progress = {});

// Flat `key = value` lines; '#' starts a comment. Unknown keys are errors.
SimConfig parse_config(std::istream& in, SimConfig base = {});
SimConfig load_config(const std::string& path, SimConfig base = {});

}  // namespace rcfd
