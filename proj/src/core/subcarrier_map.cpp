#include "rcfd/core/subcarrier_map.hpp"

#include <string>

#include "rcfd/errors.hpp"

namespace rcfd {

namespace {

constexpr Symbol kMaxModulation = 64;

void index_pairs(const std::vector<ScSymbol>& f, std::vector<NodeId>& inverse,
                 std::size_t subcarriers, Symbol m, const char* name) {
  inverse.assign((subcarriers + 1) * m, 0);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto [sc, sym] = f[i];
    if (sc < 1 || sc > subcarriers || sym >= m) {
      throw ConfigInvalid(std::string(name) + " entry out of range for node " +
                          std::to_string(i + 1));
    }
    NodeId& slot = inverse[sc * m + sym];
    if (slot != 0) {
      throw ConfigInvalid(std::string(name) + " is not injective: nodes " +
                          std::to_string(slot) + " and " + std::to_string(i + 1) +
                          " share " + to_string(f[i]));
    }
    slot = static_cast<NodeId>(i + 1);
  }
}

}  // namespace

SubcarrierMap::SubcarrierMap(std::size_t subcarriers, Symbol modulation,
                             std::vector<Subcarrier> s1, std::vector<Subcarrier> s2,
                             std::vector<ScSymbol> f1, std::vector<ScSymbol> f2)
    : subcarriers_(subcarriers),
      modulation_(modulation),
      s1_(std::move(s1)),
      s2_(std::move(s2)),
      f1_(std::move(f1)),
      f2_(std::move(f2)) {
  if (subcarriers_ == 0) throw ConfigInvalid("subcarrier count must be positive");
  if (modulation_ < 1 || modulation_ > kMaxModulation) {
    throw ConfigInvalid("modulation order must be in 1..64");
  }
  if (f1_.size() != f2_.size()) throw ConfigInvalid("f1 and f2 must cover the same nodes");

  side_.assign(subcarriers_ + 1, 0);
  for (const Subcarrier sc : s1_) {
    if (sc < 1 || sc > subcarriers_ || side_[sc] != 0) throw ConfigInvalid("bad S1 entry");
    side_[sc] = 1;
  }
  for (const Subcarrier sc : s2_) {
    if (sc < 1 || sc > subcarriers_ || side_[sc] != 0) throw ConfigInvalid("bad S2 entry");
    side_[sc] = 2;
  }
  if (s1_.size() + s2_.size() != subcarriers_) {
    throw ConfigInvalid("S1 and S2 must partition all subcarriers");
  }
  for (const auto& p : f1_) {
    if (p.sc < 1 || p.sc > subcarriers_ || side_[p.sc] != 1) throw ConfigInvalid("f1 outside S1");
  }
  for (const auto& p : f2_) {
    if (p.sc < 1 || p.sc > subcarriers_ || side_[p.sc] != 2) throw ConfigInvalid("f2 outside S2");
  }
  index_pairs(f1_, f1_inverse_, subcarriers_, modulation_, "f1");
  index_pairs(f2_, f2_inverse_, subcarriers_, modulation_, "f2");
}

bool SubcarrierMap::in_s1(Subcarrier sc) const {
  return sc >= 1 && sc <= subcarriers_ && side_[sc] == 1;
}

bool SubcarrierMap::in_s2(Subcarrier sc) const {
  return sc >= 1 && sc <= subcarriers_ && side_[sc] == 2;
}

ScSymbol SubcarrierMap::f1(NodeId node) const {
  if (!is_mapped(node)) throw UnmappedNode("node " + std::to_string(node) + " has no f1 entry");
  return f1_[node - 1];
}

ScSymbol SubcarrierMap::f2(NodeId node) const {
  if (!is_mapped(node)) throw UnmappedNode("node " + std::to_string(node) + " has no f2 entry");
  return f2_[node - 1];
}

std::optional<NodeId> SubcarrierMap::node_for_f1(ScSymbol p) const {
  if (p.sc < 1 || p.sc > subcarriers_ || p.symbol >= modulation_) return std::nullopt;
  const NodeId n = f1_inverse_[p.sc * modulation_ + p.symbol];
  if (n == 0) return std::nullopt;
  return n;
}

std::optional<NodeId> SubcarrierMap::node_for_f2(ScSymbol p) const {
  if (p.sc < 1 || p.sc > subcarriers_ || p.symbol >= modulation_) return std::nullopt;
  const NodeId n = f2_inverse_[p.sc * modulation_ + p.symbol];
  if (n == 0) return std::nullopt;
  return n;
}

SubcarrierMap build_map(std::size_t nodes, std::size_t subcarriers, Symbol modulation) {
  if (nodes == 0) throw ConfigInvalid("build_map needs at least one node");
  if (subcarriers == 0 || subcarriers % 2 != 0) {
    throw ConfigInvalid("subcarrier count must be positive and even");
  }
  if (modulation < 1) throw ConfigInvalid("modulation order must be at least 1");
  const std::size_t half = subcarriers / 2;
  if (nodes > static_cast<std::size_t>(modulation) * half) {
    throw CapacityExceeded(std::to_string(nodes) + " nodes exceed capacity m*S/2 = " +
                           std::to_string(modulation * half));
  }

  std::vector<Subcarrier> s1(half), s2(half);
  for (std::size_t k = 0; k < half; ++k) {
    s1[k] = static_cast<Subcarrier>(k + 1);
    s2[k] = static_cast<Subcarrier>(half + k + 1);
  }
  std::vector<ScSymbol> f1(nodes), f2(nodes);
  for (std::size_t i = 0; i < nodes; ++i) {
    const auto sc = static_cast<Subcarrier>(i % half + 1);
    const auto sym = static_cast<Symbol>(i / half);
    f1[i] = {sc, sym};
    f2[i] = {static_cast<Subcarrier>(sc + half), sym};
  }
  return SubcarrierMap(subcarriers, modulation, std::move(s1), std::move(s2), std::move(f1),
                       std::move(f2));
}

}  // namespace rcfd
