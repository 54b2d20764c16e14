#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <vector>

#include "rcfd/channel/topology.hpp"
#include "rcfd/metrics/report.hpp"
#include "rcfd/sim/config.hpp"
#include "rcfd/sim/packet.hpp"

namespace rcfd {

struct RunOptions {
  // Round-1 subcarrier forced for a node's first contention (RCFD, BACK2F).
  std::map<NodeId, Subcarrier> first_choice;
  // Fault injection: return true to suppress the ACK `sender` is about to send.
  std::function<bool(NodeId sender, SimTime now)> drop_ack;
  // Line-oriented trace: `time_us event subject detail`.
  std::ostream* trace = nullptr;
};

struct RunResult {
  MetricsReport report;
  std::vector<Packet> packets;  // final fates, ordered by id
  std::uint64_t contentions = 0;  // frequency-domain contentions started (RCFD, BACK2F)
};

// One run on an explicit topology and packet set. `seed` drives the MAC's
// random choices only.
RunResult simulate(const SimConfig& config, const Topology& topology, std::vector<Packet> packets,
                   std::uint64_t seed, const RunOptions& options = {});

// Topology and packets drawn from `seed` (identical for every protocol),
// then simulate(). Throws ConfigInvalid for an invalid config.
RunResult run_simulation(const SimConfig& config, std::uint64_t seed,
                         const RunOptions& options = {});

// Topology used by run_simulation for a seed: redrawn with derived seeds until
// connected when config.require_connected is set.
Topology run_topology(const SimConfig& config, std::uint64_t seed);

}  // namespace rcfd
