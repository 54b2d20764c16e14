#include "rcfd/sim/defer.hpp"

#include <algorithm>

namespace rcfd {

DeferAction rcfd_defer(const SubcarrierMap& map, NodeId self, bool transmitting,
                       const PerceivedSet& r3_s1, const PerceivedSet& r3_s2) {
  DeferAction action;
  if (transmitting || r3_s2.empty()) return action;
  if (r3_s2.is_clean_singleton(map.f2(self))) return action;
  const ScSymbol own = map.f1(self);
  for (const auto& e : r3_s1.entries()) {
    if (e.ambiguous()) {
      action.unidentified = true;
      continue;
    }
    const ScSymbol p{e.sc, e.symbol()};
    if (p == own) continue;
    if (auto n = map.node_for_f1(p)) {
      action.senders.push_back(*n);
    } else {
      action.unidentified = true;
    }
  }
  return action;
}

void DeferTable::add(NodeId sender, SimTime deadline) {
  auto [it, inserted] = entries_.emplace(sender, deadline);
  if (!inserted) it->second = std::max(it->second, deadline);
}

bool DeferTable::lift_on_ack(NodeId sender) { return entries_.erase(sender) > 0; }

bool DeferTable::expire(SimTime now) {
  return std::erase_if(entries_, [now](const auto& kv) { return kv.second <= now; }) > 0;
}

std::optional<SimTime> DeferTable::deadline(NodeId sender) const {
  auto it = entries_.find(sender);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

}  // namespace rcfd
