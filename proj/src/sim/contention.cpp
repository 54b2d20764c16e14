#include "rcfd/sim/contention.hpp"

#include <algorithm>
#include <map>

#include "rcfd/errors.hpp"

namespace rcfd {

ContentionOutcome run_contention(std::span<const ContentionIntent> intents,
                                 const Topology& topology, const SubcarrierMap& map, Rng& rng,
                                 const TimingParams& timing, bool record) {
  const std::size_t n = topology.node_count();
  if (intents.size() != n) throw ConfigInvalid("one intent per node required");

  ContentionOutcome out;
  out.elapsed_us = access_timing(timing).t_acc;
  out.states.resize(n);
  out.decisions.assign(n, Silent{});
  std::vector<NodeId> cts_to(n, 0);

  for (NodeId i = 1; i <= n; ++i) {
    auto& st = out.states[i - 1];
    st.node = i;
    st.dest = intents[i - 1].dest;
    st.has_data = st.dest.has_value();
  }

  std::array<AirSnapshot, 3> air;

  // Round 1: randomized contention over the whole band.
  for (auto& st : out.states) {
    const auto& in = intents[st.node - 1];
    st.chosen_sc = st.has_data && in.forced_sc != kNoSubcarrier
                       ? in.forced_sc
                       : round1_choose(st.has_data, rng, map.subcarrier_count());
    if (st.chosen_sc != kNoSubcarrier) air[0].emit(st.node, {st.chosen_sc, 0});
  }
  for (auto& st : out.states) {
    st.r1_perceived = perceive(air[0], topology, map, st.node).all;
    if (decide_pt(st.chosen_sc, st.r1_perceived)) st.role = Role::PrimaryTransmitter;
  }

  // Round 2: primary transmitters advertise {f1(self), f2(dest)}.
  for (const auto& st : out.states) {
    if (st.role == Role::PrimaryTransmitter) {
      air[1].emit_all(st.node, rts_signal(map, st.node, *st.dest));
    }
  }
  for (auto& st : out.states) {
    auto view = perceive(air[1], topology, map, st.node);
    st.r2_perceived_s1 = std::move(view.s1);
    st.r2_perceived_s2 = std::move(view.s2);
    if (st.role != Role::PrimaryTransmitter && decide_rr(map, st.node, st.r2_perceived_s2)) {
      if (auto target = find_cts_target(map, st.r2_perceived_s1)) {
        st.role = Role::RtsReceiver;
        cts_to[st.node - 1] = *target;
      }
    }
  }

  // Round 3: RTS receivers clear one transmitter with {f1(self), f2(target)}.
  for (const auto& st : out.states) {
    if (st.role == Role::RtsReceiver) {
      air[2].emit_all(st.node, cts_signal(map, st.node, cts_to[st.node - 1]));
    }
  }
  for (auto& st : out.states) {
    auto view = perceive(air[2], topology, map, st.node);
    st.r3_perceived_s1 = std::move(view.s1);
    st.r3_perceived_s2 = std::move(view.s2);
    out.decisions[st.node - 1] = final_decision(map, st);
  }

  if (record) {
    for (std::size_t r = 0; r < 3; ++r) {
      out.rounds[r].emissions = air[r];
      out.rounds[r].perceived.reserve(n);
      for (NodeId i = 1; i <= n; ++i) {
        out.rounds[r].perceived.push_back(perceive(air[r], topology, map, i));
      }
    }
  }
  return out;
}

DeliveryReport deliver(std::span<const Transmission> transmissions, const Topology& topology) {
  DeliveryReport report;
  report.delivered.assign(transmissions.size(), true);
  for (std::size_t a = 0; a < transmissions.size(); ++a) {
    const auto& t = transmissions[a];
    for (std::size_t b = 0; b < transmissions.size(); ++b) {
      if (a == b) continue;
      const auto& u = transmissions[b];
      const bool overlap = u.start < t.end && t.start < u.end;
      if (overlap && u.src != t.dest && topology.adjacent(u.src, t.dest)) {
        report.delivered[a] = false;
        break;
      }
    }
  }

  // Overlapping failures at one receiver form one episode.
  std::map<NodeId, std::vector<std::pair<SimTime, SimTime>>> failed;
  for (std::size_t a = 0; a < transmissions.size(); ++a) {
    if (!report.delivered[a]) {
      failed[transmissions[a].dest].emplace_back(transmissions[a].start, transmissions[a].end);
    }
  }
  for (auto& [dest, spans] : failed) {
    std::sort(spans.begin(), spans.end());
    SimTime episode_end = spans.front().second;
    ++report.collisions;
    for (std::size_t k = 1; k < spans.size(); ++k) {
      if (spans[k].first >= episode_end) ++report.collisions;
      episode_end = std::max(episode_end, spans[k].second);
    }
  }
  return report;
}

std::vector<Transmission> transmissions_from(std::span<const TransmitDecision> decisions,
                                             std::span<const SimTime> durations, SimTime start) {
  std::vector<Transmission> out;
  for (std::size_t i = 0; i < decisions.size(); ++i) {
    if (auto dest = decision_dest(decisions[i])) {
      out.push_back({static_cast<NodeId>(i + 1), *dest, start, start + durations[i]});
    }
  }
  return out;
}

}  // namespace rcfd
