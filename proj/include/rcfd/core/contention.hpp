#pragma once

#include <array>
#include <optional>
#include <string>
#include <variant>

#include "rcfd/core/perceived.hpp"
#include "rcfd/core/subcarrier_map.hpp"
#include "rcfd/core/types.hpp"
#include "rcfd/rng.hpp"

namespace rcfd {

enum class Role { Bystander, PrimaryTransmitter, RtsReceiver };

std::string to_string(Role role);

// One node's view of a single three-round contention.
struct ContentionState {
  NodeId node = 0;
  bool has_data = false;
  std::optional<NodeId> dest;
  Subcarrier chosen_sc = kNoSubcarrier;
  Role role = Role::Bystander;
  PerceivedSet r1_perceived;     // round 1, whole band
  PerceivedSet r2_perceived_s1;  // round 2, S1 part
  PerceivedSet r2_perceived_s2;  // round 2, S2 part
  PerceivedSet r3_perceived_s1;  // round 3, S1 part
  PerceivedSet r3_perceived_s2;  // round 3, S2 part
};

struct TransmitPrimary {
  NodeId dest;
  friend bool operator==(const TransmitPrimary&, const TransmitPrimary&) = default;
};
struct TransmitSecondary {
  NodeId dest;
  friend bool operator==(const TransmitSecondary&, const TransmitSecondary&) = default;
};
struct Silent {
  friend bool operator==(const Silent&, const Silent&) = default;
};

using TransmitDecision = std::variant<TransmitPrimary, TransmitSecondary, Silent>;

std::string to_string(const TransmitDecision& d);

inline bool transmits(const TransmitDecision& d) { return !std::holds_alternative<Silent>(d); }
std::optional<NodeId> decision_dest(const TransmitDecision& d);

// Two symbols an RTS or CTS puts on the air.
using SignalPair = std::array<ScSymbol, 2>;

// Round 1: 0 when there is nothing to send, else uniform over {1..S}.
Subcarrier round1_choose(bool has_data, Rng& rng, std::size_t subcarriers);

// A node is primary transmitter iff it picked the lowest occupied subcarrier.
bool decide_pt(Subcarrier chosen, const PerceivedSet& perceived);

// RTS from sender to dest: {f1(sender), f2(dest)}.
SignalPair rts_signal(const SubcarrierMap& map, NodeId sender, NodeId dest);

// The node's f2 identity is heard cleanly in the round-2 S2 part.
bool decide_rr(const SubcarrierMap& map, NodeId node, const PerceivedSet& perceived_s2);

// RTS sender with the lowest clean f1 identity, ordered by (subcarrier, symbol).
// Throws NoCandidate when no clean mapped entry exists.
NodeId cts_target(const SubcarrierMap& map, const PerceivedSet& perceived_s1);
std::optional<NodeId> find_cts_target(const SubcarrierMap& map, const PerceivedSet& perceived_s1);

// CTS from an RTS receiver to the cleared transmitter: {f1(sender), f2(target)}.
SignalPair cts_signal(const SubcarrierMap& map, NodeId sender, NodeId target);

// Transmit-or-not decision at the end of round 3.
TransmitDecision final_decision(const SubcarrierMap& map, const ContentionState& state);

// Durations in microseconds.
struct TimingParams {
  double t_scan = 28.0;
  double t_sym = 4.0;
  double t_p = 1.0;

  // Throws ConfigInvalid unless t_sym > 0, t_p >= 0 and t_scan >= 0.
  void validate() const;
};

struct AccessTiming {
  double t_round;
  double t_acc;
};

AccessTiming access_timing(const TimingParams& t);

}  // namespace rcfd
