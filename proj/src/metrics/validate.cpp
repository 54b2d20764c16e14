#include "rcfd/metrics/validate.hpp"

#include <algorithm>
#include <sstream>

#include "rcfd/errors.hpp"

namespace rcfd {

std::string to_string(ViolationKind kind) {
  return kind == ViolationKind::Collision ? "collision" : "unpaired-secondary";
}

std::string Violation::describe() const {
  std::ostringstream out;
  out << to_string(kind) << " at n" << receiver << "; N=" << nodes << " edges=";
  for (const auto& [a, b] : edges) out << a << '-' << b << ' ';
  out << "intents=";
  for (std::size_t i = 0; i < intents.size(); ++i) {
    out << 'n' << i + 1 << ':';
    if (intents[i].dest) {
      out << "->n" << *intents[i].dest << "@s" << intents[i].forced_sc;
    } else {
      out << "idle";
    }
    out << ' ';
  }
  out << "decisions=";
  for (std::size_t i = 0; i < decisions.size(); ++i) {
    out << 'n' << i + 1 << ':' << to_string(decisions[i]) << ' ';
  }
  std::string s = out.str();
  if (!s.empty() && s.back() == ' ') s.pop_back();
  return s;
}

namespace {

struct Option {
  std::optional<NodeId> dest;
  Subcarrier sc = kNoSubcarrier;
};

}  // namespace

ValidationReport validate_exhaustive(std::size_t n_max, std::size_t subcarriers, Symbol modulation,
                                     const ValidationOptions& options) {
  if (n_max > 4) throw StateSpaceTooLarge("exhaustive validation supports at most 4 nodes");
  if (modulation != 1) throw ConfigInvalid("exhaustive validation requires m = 1");
  if (n_max == 0) throw ConfigInvalid("need at least one node");

  ValidationReport report;
  const TimingParams timing;
  Rng unused(0);
  const bool record = static_cast<bool>(options.visitor);
  std::size_t recorded_collisions = 0;
  std::size_t recorded_unpaired = 0;

  for (std::size_t n = 1; n <= n_max; ++n) {
    const SubcarrierMap map = build_map(n, subcarriers, modulation);

    std::vector<std::pair<NodeId, NodeId>> pairs;
    for (NodeId a = 1; a <= n; ++a) {
      for (NodeId b = a + 1; b <= n; ++b) pairs.emplace_back(a, b);
    }

    for (std::uint32_t mask = 0; mask < (1U << pairs.size()); ++mask) {
      std::vector<std::pair<NodeId, NodeId>> edges;
      for (std::size_t k = 0; k < pairs.size(); ++k) {
        if ((mask >> k) & 1U) edges.push_back(pairs[k]);
      }
      const Topology topo = Topology::from_edges(n, edges);
      ++report.topologies;

      std::vector<std::vector<Option>> choices(n);
      for (NodeId i = 1; i <= n; ++i) {
        choices[i - 1].push_back({});
        for (const NodeId d : topo.neighbors(i)) {
          for (Subcarrier sc = 1; sc <= subcarriers; ++sc) choices[i - 1].push_back({d, sc});
        }
      }

      std::vector<std::size_t> digit(n, 0);
      std::vector<ContentionIntent> intents(n);
      std::vector<NodeId> sending_to(n);
      for (;;) {
        for (std::size_t i = 0; i < n; ++i) {
          intents[i] = {choices[i][digit[i]].dest, choices[i][digit[i]].sc};
        }
        const auto outcome = run_contention(intents, topo, map, unused, timing, record);
        ++report.contentions;
        if (record) options.visitor(topo, intents, outcome);

        std::fill(sending_to.begin(), sending_to.end(), 0);
        for (std::size_t i = 0; i < n; ++i) {
          if (auto d = decision_dest(outcome.decisions[i])) sending_to[i] = *d;
        }

        auto note = [&](ViolationKind kind, NodeId where) {
          auto& recorded = kind == ViolationKind::Collision ? recorded_collisions : recorded_unpaired;
          (kind == ViolationKind::Collision ? report.collisions : report.unpaired) += 1;
          if (recorded >= options.max_recorded) return;
          ++recorded;
          report.violations.push_back({kind, n, edges, intents, outcome.decisions, where});
        };

        for (std::size_t i = 0; i < n; ++i) {
          const NodeId dest = sending_to[i];
          if (dest == 0) continue;
          for (std::size_t k = 0; k < n; ++k) {
            const auto other = static_cast<NodeId>(k + 1);
            if (k == i || sending_to[k] == 0 || other == dest) continue;
            if (topo.adjacent(other, dest)) {
              note(ViolationKind::Collision, dest);
              break;
            }
          }
          if (std::holds_alternative<TransmitSecondary>(outcome.decisions[i])) {
            const auto& back = outcome.decisions[dest - 1];
            const auto* p = std::get_if<TransmitPrimary>(&back);
            if (p == nullptr || p->dest != i + 1) note(ViolationKind::UnpairedSecondary, dest);
          }
        }

        std::size_t pos = 0;
        while (pos < n && ++digit[pos] == choices[pos].size()) digit[pos++] = 0;
        if (pos == n) break;
      }
    }
  }
  return report;
}

}  // namespace rcfd
