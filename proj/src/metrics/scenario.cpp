#include "rcfd/metrics/scenario.hpp"

#include <ostream>
#include <utility>

#include "rcfd/errors.hpp"

namespace rcfd {

Scenario make_scenario(int which) {
  if (which != 1 && which != 2) throw ConfigInvalid("scenario must be 1 or 2");
  const std::pair<NodeId, NodeId> edges[] = {{1, 2}, {2, 3}};
  Scenario s{which, Topology::from_edges(3, edges), {}, {}};
  if (which == 1) {
    s.intents = {{NodeId{2}, 4}, {std::nullopt, 0}, {NodeId{2}, 5}};
  } else {
    s.intents = {{NodeId{2}, 3}, {NodeId{1}, 5}, {std::nullopt, 0}};
  }
  auto& c = s.config;
  c.nodes = 3;
  c.subcarriers = 6;
  c.modulation = 1;
  c.payload_bits = 1000.0;
  c.data_rate = 1e6;
  c.duration = 0.01;
  c.protocol = Protocol::Rcfd;
  return s;
}

ContentionOutcome replay_contention(const Scenario& s) {
  const SubcarrierMap map = build_map(s.config.nodes, s.config.subcarriers, s.config.modulation);
  Rng rng(s.config.seed);
  return run_contention(s.intents, s.topology, map, rng, s.config.timing, true);
}

RunResult replay_simulation(const Scenario& s, std::ostream* trace) {
  std::vector<Packet> packets;
  RunOptions opts;
  opts.trace = trace;
  for (NodeId n = 1; n <= s.intents.size(); ++n) {
    const auto& in = s.intents[n - 1];
    if (!in.dest) continue;
    Packet p;
    p.id = packets.size() + 1;
    p.src = n;
    p.dest = *in.dest;
    p.size_bits = static_cast<std::uint32_t>(s.config.payload_bits);
    p.t_gen = 0;
    packets.push_back(p);
    opts.first_choice[n] = in.forced_sc;
  }
  return simulate(s.config, s.topology, std::move(packets), s.config.seed, opts);
}

namespace {

std::string set_text(const std::vector<ScSymbol>& pairs) {
  std::string out = "{";
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (i) out += ",";
    out += to_string(pairs[i]);
  }
  return out + "}";
}

std::string set_text(const PerceivedSet& set) {
  std::string out = "{";
  bool first = true;
  for (const auto& e : set.entries()) {
    if (!first) out += ",";
    first = false;
    if (e.ambiguous()) {
      out += "s" + std::to_string(e.sc) + "?";
    } else {
      out += to_string(ScSymbol{e.sc, e.symbol()});
    }
  }
  return out + "}";
}

}  // namespace

void print_contention(std::ostream& out, const Scenario& s, const ContentionOutcome& outcome) {
  out << "scenario " << s.id << ": links";
  for (const auto& [a, b] : s.topology.edges()) out << " n" << a << "-n" << b;
  out << "\n";
  for (NodeId n = 1; n <= s.intents.size(); ++n) {
    const auto& in = s.intents[n - 1];
    out << "  n" << n << ": ";
    if (in.dest) {
      out << "data for n" << *in.dest << ", round 1 on s" << in.forced_sc << "\n";
    } else {
      out << "idle\n";
    }
  }
  static const char* names[] = {"round 1 (contention)", "round 2 (RTS)", "round 3 (CTS)"};
  for (std::size_t r = 0; r < outcome.rounds.size(); ++r) {
    const auto& rec = outcome.rounds[r];
    out << names[r] << "\n  emits:";
    if (rec.emissions.empty()) out << " none";
    for (const auto& [node, pairs] : rec.emissions.all()) {
      out << " n" << node << "->" << set_text(pairs);
    }
    out << "\n  hears:";
    for (std::size_t i = 0; i < rec.perceived.size(); ++i) {
      const auto& v = rec.perceived[i];
      out << " n" << i + 1 << "=";
      if (r == 0) {
        out << set_text(v.all);
      } else {
        out << set_text(v.s1) << "|" << set_text(v.s2);
      }
    }
    out << "\n";
  }
  out << "roles:";
  for (const auto& st : outcome.states) out << " n" << st.node << "=" << to_string(st.role);
  out << "\ndecisions:";
  for (std::size_t i = 0; i < outcome.decisions.size(); ++i) {
    out << " n" << i + 1 << "=" << to_string(outcome.decisions[i]);
  }
  out << "\naccess time: " << outcome.elapsed_us << " us\n";
}

}  // namespace rcfd
