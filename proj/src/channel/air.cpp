#include "rcfd/channel/air.hpp"

namespace rcfd {

void accumulate(PerceivedView& view, const SubcarrierMap& map, std::span<const ScSymbol> pairs) {
  for (const auto& p : pairs) {
    view.all.add(p);
    if (map.in_s1(p.sc)) {
      view.s1.add(p);
    } else if (map.in_s2(p.sc)) {
      view.s2.add(p);
    }
  }
}

PerceivedView perceive(const AirSnapshot& snapshot, const Topology& topology,
                       const SubcarrierMap& map, NodeId node) {
  PerceivedView view;
  if (const auto* own = snapshot.of(node)) accumulate(view, map, *own);
  for (const NodeId nb : topology.neighbors(node)) {
    if (const auto* em = snapshot.of(nb)) accumulate(view, map, *em);
  }
  return view;
}

}  // namespace rcfd
