#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "rcfd/sim/contention.hpp"

namespace rcfd {

enum class ViolationKind {
  Collision,          // two audible data transmissions at an intended receiver
  UnpairedSecondary,  // secondary sent to a node that is not sending back
};

std::string to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind = ViolationKind::Collision;
  std::size_t nodes = 0;
  std::vector<std::pair<NodeId, NodeId>> edges;
  std::vector<ContentionIntent> intents;  // forced_sc holds the round-1 pick
  std::vector<TransmitDecision> decisions;
  NodeId receiver = 0;  // where it went wrong

  // One-line human readable description.
  std::string describe() const;
};

struct ValidationReport {
  std::vector<Violation> violations;  // first few of each kind
  std::size_t collisions = 0;
  std::size_t unpaired = 0;
  std::size_t topologies = 0;
  std::size_t contentions = 0;
};

// Called for every enumerated case after the contention ran.
using CaseVisitor = std::function<void(const Topology&, std::span<const ContentionIntent>,
                                       const ContentionOutcome&)>;

struct ValidationOptions {
  std::size_t max_recorded = 64;  // per kind, further violations are only counted
  CaseVisitor visitor;            // optional; forces full round records
};

// Enumerates every labelled graph on 1..N_max nodes, every traffic intent (idle
// or a packet for one neighbour) and every joint round-1 choice in 1..S, runs
// the synchronized contention and checks the outcome. Requires N_max <= 4 and
// m == 1, else StateSpaceTooLarge / ConfigInvalid.
ValidationReport validate_exhaustive(std::size_t n_max, std::size_t subcarriers, Symbol modulation,
                                     const ValidationOptions& options = {});

}  // namespace rcfd
