#include "rcfd/channel/topology.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include "rcfd/errors.hpp"
#include "rcfd/rng.hpp"

namespace rcfd {

Topology Topology::from_positions(std::vector<Position> positions, double radius) {
  Topology t;
  const std::size_t n = positions.size();
  t.positions_ = std::move(positions);
  t.radius_ = radius;
  t.neighbors_.assign(n, {});
  t.matrix_.assign(n * n, 0);
  const double r2 = radius * radius;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dx = t.positions_[i].x - t.positions_[j].x;
      const double dy = t.positions_[i].y - t.positions_[j].y;
      if (dx * dx + dy * dy <= r2) {
        t.add_edge(static_cast<NodeId>(i + 1), static_cast<NodeId>(j + 1));
      }
    }
  }
  return t;
}

Topology Topology::from_edges(std::size_t nodes,
                              std::span<const std::pair<NodeId, NodeId>> edges) {
  Topology t;
  t.positions_.assign(nodes, {});
  t.neighbors_.assign(nodes, {});
  t.matrix_.assign(nodes * nodes, 0);
  for (const auto& [a, b] : edges) {
    if (a < 1 || b < 1 || a > nodes || b > nodes || a == b) {
      throw ConfigInvalid("bad edge " + std::to_string(a) + "-" + std::to_string(b));
    }
    if (!t.adjacent(a, b)) t.add_edge(a, b);
  }
  for (auto& list : t.neighbors_) std::sort(list.begin(), list.end());
  return t;
}

void Topology::add_edge(NodeId a, NodeId b) {
  const std::size_t n = node_count();
  matrix_[(a - 1) * n + (b - 1)] = 1;
  matrix_[(b - 1) * n + (a - 1)] = 1;
  neighbors_[a - 1].push_back(b);
  neighbors_[b - 1].push_back(a);
}

bool Topology::connected() const {
  const std::size_t n = node_count();
  if (n == 0) return true;
  std::vector<unsigned char> seen(n, 0);
  std::vector<NodeId> stack{1};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const NodeId u = stack.back();
    stack.pop_back();
    for (const NodeId v : neighbors(u)) {
      if (!seen[v - 1]) {
        seen[v - 1] = 1;
        ++reached;
        stack.push_back(v);
      }
    }
  }
  return reached == n;
}

std::vector<std::pair<NodeId, NodeId>> Topology::edges() const {
  std::vector<std::pair<NodeId, NodeId>> out;
  for (NodeId a = 1; a <= node_count(); ++a) {
    for (const NodeId b : neighbors(a)) {
      if (a < b) out.emplace_back(a, b);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

void Topology::write_positions(std::ostream& out) const {
  char line[96];
  for (std::size_t i = 0; i < positions_.size(); ++i) {
    std::snprintf(line, sizeof line, "%zu %.9f %.9f\n", i + 1, positions_[i].x, positions_[i].y);
    out << line;
  }
}

double coverage_radius(std::size_t nodes) {
  if (nodes < 2) throw DegenerateNetwork("coverage radius needs at least two nodes");
  const double n = static_cast<double>(nodes);
  return std::sqrt(2.0 / n * std::log(n));
}

Topology generate_topology(std::size_t nodes, std::uint64_t seed) {
  const double radius = coverage_radius(nodes);
  Rng rng(seed);
  std::vector<Position> positions(nodes);
  for (auto& p : positions) {
    p.x = rng.uniform01();
    p.y = rng.uniform01();
  }
  return Topology::from_positions(std::move(positions), radius);
}

}  // namespace rcfd
