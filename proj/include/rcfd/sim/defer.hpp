#pragma once

#include <map>
#include <optional>
#include <vector>

#include "rcfd/core/perceived.hpp"
#include "rcfd/core/subcarrier_map.hpp"
#include "rcfd/sim/packet.hpp"

namespace rcfd {

// What a node does after the third round when CTS symbols were heard.
struct DeferAction {
  std::vector<NodeId> senders;  // CTS senders to wait for
  bool unidentified = false;    // some CTS sender could not be decoded

  bool defers() const { return unidentified || !senders.empty(); }
};

// A node that heard a CTS not addressed to it refrains from contending. No
// deferral while transmitting, or when every CTS heard names this node
// (S2 part exactly {f2(self)}). `r3_s1`/`r3_s2` include the node's own CTS.
DeferAction rcfd_defer(const SubcarrierMap& map, NodeId self, bool transmitting,
                       const PerceivedSet& r3_s1, const PerceivedSet& r3_s2);

// Pending deferrals of one node, keyed by CTS sender (0 = unidentified).
// Each entry ends at that sender's ACK or at its own deadline.
class DeferTable {
 public:
  void add(NodeId sender, SimTime deadline);
  // Returns true when an entry was removed.
  bool lift_on_ack(NodeId sender);
  // Removes entries whose deadline is <= now; returns true when any went.
  bool expire(SimTime now);
  bool active() const { return !entries_.empty(); }
  std::optional<SimTime> deadline(NodeId sender) const;
  const std::map<NodeId, SimTime>& entries() const { return entries_; }

 private:
  std::map<NodeId, SimTime> entries_;
};

}  // namespace rcfd
