#pragma once

#include <map>
#include <span>
#include <vector>

#include "rcfd/channel/topology.hpp"
#include "rcfd/core/perceived.hpp"
#include "rcfd/core/subcarrier_map.hpp"

namespace rcfd {

// Who emits which (subcarrier, symbol) pairs during one contention round.
class AirSnapshot {
 public:
  void emit(NodeId node, ScSymbol p) { emissions_[node].push_back(p); }
  template <typename Pairs>
  void emit_all(NodeId node, const Pairs& pairs) {
    for (const auto& p : pairs) emit(node, p);
  }

  bool empty() const { return emissions_.empty(); }
  const std::vector<ScSymbol>* of(NodeId node) const {
    auto it = emissions_.find(node);
    return it == emissions_.end() ? nullptr : &it->second;
  }
  const std::map<NodeId, std::vector<ScSymbol>>& all() const { return emissions_; }
  void clear() { emissions_.clear(); }

 private:
  std::map<NodeId, std::vector<ScSymbol>> emissions_;
};

struct PerceivedView {
  PerceivedSet all;  // whole band
  PerceivedSet s1;   // S1 part
  PerceivedSet s2;   // S2 part
};

// Union of the listener's own emissions and those of its neighbours, split
// by half of the band. Ideal channel: nothing beyond the coverage radius is
// heard and nothing inside it is lost.
PerceivedView perceive(const AirSnapshot& snapshot, const Topology& topology,
                       const SubcarrierMap& map, NodeId node);

// Same rule on a flat emitter list; used by the simulator's signalling plane.
void accumulate(PerceivedView& view, const SubcarrierMap& map, std::span<const ScSymbol> pairs);

}  // namespace rcfd
