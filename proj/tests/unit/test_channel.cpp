#include <doctest.h>

#include <cmath>
#include <sstream>
#include <utility>

#include "rcfd/channel/air.hpp"
#include "rcfd/channel/topology.hpp"
#include "rcfd/errors.hpp"
#include "rcfd/rng.hpp"

using namespace rcfd;

namespace {

Topology path3() {
  const std::pair<NodeId, NodeId> e[] = {{1, 2}, {2, 3}};
  return Topology::from_edges(3, e);
}

}  // namespace

TEST_CASE("coverage radius") {
  CHECK(coverage_radius(10) == doctest::Approx(0.67861).epsilon(1e-5));
  CHECK(coverage_radius(2) == doctest::Approx(0.83255).epsilon(1e-5));
  CHECK(coverage_radius(2) == doctest::Approx(std::sqrt(std::log(2.0))));
  CHECK_THROWS_AS(coverage_radius(1), DegenerateNetwork);
  CHECK_THROWS_AS(generate_topology(1, 3), DegenerateNetwork);
}

TEST_CASE("adjacency follows the radius") {
  auto t = Topology::from_positions({{0.1, 0.1}, {0.5, 0.5}, {0.95, 0.95}}, 0.65);
  CHECK(t.adjacent(1, 2));
  CHECK(t.adjacent(2, 1));
  CHECK(t.adjacent(2, 3));
  CHECK_FALSE(t.adjacent(1, 3));
  CHECK_FALSE(t.adjacent(1, 1));
  CHECK(t.connected());
}

TEST_CASE("two close nodes are neighbours") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto t = generate_topology(2, seed);
    const auto& p = t.positions();
    const double d = std::hypot(p[0].x - p[1].x, p[0].y - p[1].y);
    CHECK(t.adjacent(1, 2) == (d <= coverage_radius(2)));
  }
}

TEST_CASE("generated topologies are reproducible and well formed") {
  const auto a = generate_topology(10, 42);
  const auto b = generate_topology(10, 42);
  REQUIRE(a.node_count() == 10);
  for (std::size_t i = 0; i < 10; ++i) {
    CHECK(a.positions()[i].x == b.positions()[i].x);
    CHECK(a.positions()[i].y == b.positions()[i].y);
    CHECK(a.positions()[i].x >= 0.0);
    CHECK(a.positions()[i].x < 1.0);
  }
  CHECK(a.edges() == b.edges());
  for (NodeId i = 1; i <= 10; ++i) {
    for (NodeId j = 1; j <= 10; ++j) {
      const auto& pi = a.positions()[i - 1];
      const auto& pj = a.positions()[j - 1];
      const bool close = std::hypot(pi.x - pj.x, pi.y - pj.y) <= a.radius();
      CHECK(a.adjacent(i, j) == (i != j && close));
      CHECK(a.adjacent(i, j) == a.adjacent(j, i));
    }
  }
}

TEST_CASE("fifty-node topologies are connected with high probability") {
  int connected = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) connected += generate_topology(50, seed).connected();
  CHECK(connected >= 900);
}

TEST_CASE("position dump") {
  auto t = Topology::from_positions({{0.25, 0.5}, {0.75, 0.125}}, 0.9);
  std::ostringstream out;
  t.write_positions(out);
  CHECK(out.str() == "1 0.250000000 0.500000000\n2 0.750000000 0.125000000\n");
}

TEST_CASE("perception of the hidden-terminal round") {
  const auto topo = path3();
  const auto map = build_map(3, 6, 1);
  AirSnapshot air;
  air.emit_all(1, std::array{ScSymbol{1, 0}, ScSymbol{5, 0}});
  air.emit_all(3, std::array{ScSymbol{3, 0}, ScSymbol{5, 0}});

  const auto n2 = perceive(air, topo, map, 2);
  CHECK(n2.all == PerceivedSet::of_subcarriers({1, 3, 5}));
  CHECK(n2.s1 == PerceivedSet::of_subcarriers({1, 3}));
  CHECK(n2.s2 == PerceivedSet::of_subcarriers({5}));

  const auto n1 = perceive(air, topo, map, 1);
  CHECK(n1.all == PerceivedSet::of_subcarriers({1, 5}));
}

TEST_CASE("empty air is silent") {
  const auto topo = path3();
  const auto map = build_map(3, 6, 1);
  const auto v = perceive(AirSnapshot{}, topo, map, 2);
  CHECK(v.all.empty());
  CHECK(v.s1.empty());
  CHECK(v.s2.empty());
}

TEST_CASE("superposition of symbols") {
  const std::pair<NodeId, NodeId> e[] = {{1, 2}, {1, 3}};
  const auto topo = Topology::from_edges(3, e);
  const auto map = build_map(3, 4, 2);
  AirSnapshot same;
  same.emit(2, {1, 1});
  same.emit(3, {1, 1});
  const auto clean = perceive(same, topo, map, 1);
  CHECK(clean.all.contains_clean({1, 1}));

  AirSnapshot mixed;
  mixed.emit(2, {1, 0});
  mixed.emit(3, {1, 1});
  const auto amb = perceive(mixed, topo, map, 1);
  REQUIRE(amb.all.find(1) != nullptr);
  CHECK(amb.all.find(1)->ambiguous());
  CHECK_FALSE(amb.all.contains_clean({1, 0}));
}

TEST_CASE("perception is local, monotone and symmetric") {
  const auto map = build_map(8, 16, 1);
  Rng rng(5);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto topo = generate_topology(8, seed);
    AirSnapshot air;
    for (NodeId n = 1; n <= 8; ++n) {
      if (rng.uniform_index(2)) air.emit(n, ScSymbol{1 + static_cast<Subcarrier>(rng.uniform_index(16)), 0});
    }
    AirSnapshot more = air;
    const NodeId extra = 1 + static_cast<NodeId>(rng.uniform_index(8));
    more.emit(extra, ScSymbol{1 + static_cast<Subcarrier>(rng.uniform_index(16)), 0});
    for (NodeId l = 1; l <= 8; ++l) {
      const auto before = perceive(air, topo, map, l);
      const auto after = perceive(more, topo, map, l);
      for (const auto& e : before.all.entries()) CHECK(after.all.contains_sc(e.sc));
      for (NodeId j = 1; j <= 8; ++j) {
        AirSnapshot solo;
        solo.emit(j, {16, 0});
        const bool heard = perceive(solo, topo, map, l).all.contains_sc(16);
        CHECK(heard == (j == l || topo.adjacent(j, l)));
        AirSnapshot back;
        back.emit(l, {16, 0});
        if (j != l) CHECK(heard == perceive(back, topo, map, j).all.contains_sc(16));
      }
    }
  }
}
