#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "rcfd/core/types.hpp"

namespace rcfd {

struct Position {
  double x = 0.0;
  double y = 0.0;
};

// Nodes on the unit square with an ideal disc coverage model. Adjacency is
// symmetric and has no self-loops. Node ids are 1-based.
class Topology {
 public:
  // Adjacent iff Euclidean distance <= radius.
  static Topology from_positions(std::vector<Position> positions, double radius);
  // Explicit graph (used for hand-built scenarios); positions are left at 0.
  static Topology from_edges(std::size_t nodes, std::span<const std::pair<NodeId, NodeId>> edges);

  std::size_t node_count() const { return neighbors_.size(); }
  double radius() const { return radius_; }
  const std::vector<Position>& positions() const { return positions_; }

  bool adjacent(NodeId a, NodeId b) const {
    return a != b && matrix_[(a - 1) * node_count() + (b - 1)] != 0;
  }
  const std::vector<NodeId>& neighbors(NodeId n) const { return neighbors_[n - 1]; }

  bool connected() const;
  std::vector<std::pair<NodeId, NodeId>> edges() const;

  // One "id x y" line per node.
  void write_positions(std::ostream& out) const;

 private:
  Topology() = default;
  void add_edge(NodeId a, NodeId b);

  std::vector<Position> positions_;
  double radius_ = 0.0;
  std::vector<std::vector<NodeId>> neighbors_;
  std::vector<unsigned char> matrix_;
};

// Connectivity radius sqrt((2/N) ln N). Throws DegenerateNetwork for N < 2.
double coverage_radius(std::size_t nodes);

// i.i.d. uniform positions on [0,1]^2 with radius coverage_radius(N).
Topology generate_topology(std::size_t nodes, std::uint64_t seed);

}  // namespace rcfd
