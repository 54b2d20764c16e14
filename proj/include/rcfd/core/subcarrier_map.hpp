#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "rcfd/core/types.hpp"

namespace rcfd {

// Fixed association between nodes and two (subcarrier, symbol) identities:
// f1 into the first half S1 (node identity), f2 into S2 (receiver identity).
//
// Invariants, checked on construction:
//   S1 and S2 partition {1..S};
//   f1 maps into S1, f2 into S2;
//   f1 and f2 are each injective over (subcarrier, symbol);
//   every symbol is below the modulation order m.
class SubcarrierMap {
 public:
  SubcarrierMap(std::size_t subcarriers, Symbol modulation, std::vector<Subcarrier> s1,
                std::vector<Subcarrier> s2, std::vector<ScSymbol> f1, std::vector<ScSymbol> f2);

  std::size_t subcarrier_count() const { return subcarriers_; }
  Symbol modulation() const { return modulation_; }
  std::size_t node_count() const { return f1_.size(); }

  const std::vector<Subcarrier>& s1() const { return s1_; }
  const std::vector<Subcarrier>& s2() const { return s2_; }
  bool in_s1(Subcarrier sc) const;
  bool in_s2(Subcarrier sc) const;

  bool is_mapped(NodeId node) const { return node >= 1 && node <= f1_.size(); }

  // Throw UnmappedNode for an unknown node.
  ScSymbol f1(NodeId node) const;
  ScSymbol f2(NodeId node) const;

  std::optional<NodeId> node_for_f1(ScSymbol p) const;
  std::optional<NodeId> node_for_f2(ScSymbol p) const;

 private:
  std::size_t subcarriers_;
  Symbol modulation_;
  std::vector<Subcarrier> s1_;
  std::vector<Subcarrier> s2_;
  std::vector<ScSymbol> f1_;
  std::vector<ScSymbol> f2_;
  // side_[sc] = 1 for S1, 2 for S2; index 0 unused.
  std::vector<unsigned char> side_;
  // Reverse lookups indexed by sc * m + symbol; 0 = unmapped.
  std::vector<NodeId> f1_inverse_;
  std::vector<NodeId> f2_inverse_;
};

// Canonical mapping: S1 = {1..S/2}, S2 = {S/2+1..S}. Node n_i uses
// subcarrier ((i-1) mod S/2) + 1 of each half with symbol floor((i-1) / (S/2)).
// Throws CapacityExceeded when nodes > m*S/2, ConfigInvalid for odd S,
// nodes == 0 or m == 0.
SubcarrierMap build_map(std::size_t nodes, std::size_t subcarriers, Symbol modulation);

}  // namespace rcfd
