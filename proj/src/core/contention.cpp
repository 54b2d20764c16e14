#include "rcfd/core/contention.hpp"

#include <cmath>

#include "rcfd/errors.hpp"

namespace rcfd {

std::string to_string(Role role) {
  switch (role) {
    case Role::Bystander:
      return "bystander";
    case Role::PrimaryTransmitter:
      return "PT";
    case Role::RtsReceiver:
      return "RR";
  }
  return "?";
}

std::string to_string(const TransmitDecision& d) {
  if (const auto* p = std::get_if<TransmitPrimary>(&d)) return "primary->n" + std::to_string(p->dest);
  if (const auto* s = std::get_if<TransmitSecondary>(&d)) {
    return "secondary->n" + std::to_string(s->dest);
  }
  return "silent";
}

std::optional<NodeId> decision_dest(const TransmitDecision& d) {
  if (const auto* p = std::get_if<TransmitPrimary>(&d)) return p->dest;
  if (const auto* s = std::get_if<TransmitSecondary>(&d)) return s->dest;
  return std::nullopt;
}

Subcarrier round1_choose(bool has_data, Rng& rng, std::size_t subcarriers) {
  if (!has_data) return kNoSubcarrier;
  return static_cast<Subcarrier>(rng.uniform_index(subcarriers) + 1);
}

bool decide_pt(Subcarrier chosen, const PerceivedSet& perceived) {
  if (chosen == kNoSubcarrier) return false;
  const auto lowest = perceived.min_sc();
  return lowest && *lowest == chosen;
}

SignalPair rts_signal(const SubcarrierMap& map, NodeId sender, NodeId dest) {
  return {map.f1(sender), map.f2(dest)};
}

bool decide_rr(const SubcarrierMap& map, NodeId node, const PerceivedSet& perceived_s2) {
  return perceived_s2.contains_clean(map.f2(node));
}

std::optional<NodeId> find_cts_target(const SubcarrierMap& map,
                                      const PerceivedSet& perceived_s1) {
  // Entries are ordered by subcarrier; a clean entry has one symbol, so the
  // first mapped clean entry is the lexicographic minimum.
  for (const auto& e : perceived_s1.entries()) {
    if (e.ambiguous()) continue;
    if (auto n = map.node_for_f1({e.sc, e.symbol()})) return n;
  }
  return std::nullopt;
}

NodeId cts_target(const SubcarrierMap& map, const PerceivedSet& perceived_s1) {
  if (auto n = find_cts_target(map, perceived_s1)) return *n;
  throw NoCandidate("no clean RTS identity in round-2 S1 set");
}

SignalPair cts_signal(const SubcarrierMap& map, NodeId sender, NodeId target) {
  return {map.f1(sender), map.f2(target)};
}

TransmitDecision final_decision(const SubcarrierMap& map, const ContentionState& state) {
  if (!state.dest) return Silent{};
  const NodeId j = *state.dest;
  const NodeId i = state.node;
  switch (state.role) {
    case Role::PrimaryTransmitter:
      // Intended receiver answered, and it is the only CTS around.
      if (state.r3_perceived_s1.contains_clean(map.f1(j)) &&
          state.r3_perceived_s2.is_clean_singleton(map.f2(i))) {
        return TransmitPrimary{j};
      }
      return Silent{};
    case Role::RtsReceiver:
      // Only the intended receiver sent an RTS, and only this node sent a CTS.
      if (state.r2_perceived_s1.is_clean_singleton(map.f1(j)) &&
          state.r3_perceived_s1.is_clean_singleton(map.f1(i))) {
        return TransmitSecondary{j};
      }
      return Silent{};
    case Role::Bystander:
      return Silent{};
  }
  return Silent{};
}

void TimingParams::validate() const {
  if (!(t_sym > 0.0) || !std::isfinite(t_sym)) throw ConfigInvalid("t_sym must be positive");
  if (!(t_p >= 0.0) || !std::isfinite(t_p)) throw ConfigInvalid("t_p must be non-negative");
  if (!(t_scan >= 0.0) || !std::isfinite(t_scan)) {
    throw ConfigInvalid("t_scan must be non-negative");
  }
}

AccessTiming access_timing(const TimingParams& t) {
  t.validate();
  const double t_round = t.t_sym + 2.0 * t.t_p;
  return {t_round, t.t_scan + 3.0 * t_round};
}

}  // namespace rcfd
