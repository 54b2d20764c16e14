#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "rcfd/channel/air.hpp"
#include "rcfd/channel/topology.hpp"
#include "rcfd/core/contention.hpp"
#include "rcfd/sim/packet.hpp"

namespace rcfd {

// Input of one synchronized contention: what each node wants to send and,
// optionally, a forced round-1 subcarrier (0 = draw from the rng).
struct ContentionIntent {
  std::optional<NodeId> dest;
  Subcarrier forced_sc = kNoSubcarrier;
};

struct RoundRecord {
  AirSnapshot emissions;
  std::vector<PerceivedView> perceived;  // index = node - 1
};

struct ContentionOutcome {
  std::vector<ContentionState> states;       // index = node - 1
  std::vector<TransmitDecision> decisions;   // index = node - 1
  std::array<RoundRecord, 3> rounds;         // filled when recording
  double elapsed_us = 0.0;                   // always t_acc
};

// All participants aligned on the same three rounds (with idle T_scan already
// observed). Executes the rounds through the rcfd-core operations, listening
// between rounds with the ideal channel.
ContentionOutcome run_contention(std::span<const ContentionIntent> intents,
                                 const Topology& topology, const SubcarrierMap& map, Rng& rng,
                                 const TimingParams& timing, bool record = true);

// One data transmission on the air.
struct Transmission {
  NodeId src = 0;
  NodeId dest = 0;
  SimTime start = 0;
  SimTime end = 0;
};

struct DeliveryReport {
  std::vector<bool> delivered;  // parallel to the input transmissions
  std::size_t collisions = 0;   // receiver-side collision episodes
};

// A transmission succeeds iff no other node adjacent to its destination
// (other than the destination itself, which may be transmitting in full
// duplex) transmits during an overlapping interval.
DeliveryReport deliver(std::span<const Transmission> transmissions, const Topology& topology);

// Data transmissions implied by contention decisions, all starting at
// `start`. durations[i] is node i+1's airtime.
std::vector<Transmission> transmissions_from(std::span<const TransmitDecision> decisions,
                                             std::span<const SimTime> durations, SimTime start);

}  // namespace rcfd
