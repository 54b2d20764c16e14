#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "rcfd/sim/traffic.hpp"

using namespace rcfd;

TEST_CASE("Poisson arrival counts concentrate around the mean") {
  for (auto [rs, l, expected] : {std::tuple{1e4, 1000.0, 100.0}, std::tuple{1e4, 200.0, 500.0}}) {
    int within = 0;
    double total = 0.0;
    const int seeds = 200;
    for (int s = 0; s < seeds; ++s) {
      Rng rng(derive_seed(77, s));
      const auto a = poisson_arrivals(rs, l, 10.0, rng);
      CHECK(std::is_sorted(a.begin(), a.end()));
      if (!a.empty()) {
        CHECK(a.front() >= 0);
        CHECK(a.back() < from_seconds(10.0));
      }
      total += static_cast<double>(a.size());
      within += std::abs(static_cast<double>(a.size()) - expected) <= 3.0 * std::sqrt(expected);
    }
    CHECK(within >= seeds * 95 / 100);
    CHECK(total / seeds == doctest::Approx(expected).epsilon(0.05));
  }
}

TEST_CASE("no arrivals in an empty window") {
  Rng rng(1);
  CHECK(poisson_arrivals(1e4, 1000.0, 0.0, rng).empty());
}

TEST_CASE("packet sets") {
  SimConfig c;
  c.nodes = 10;
  c.duration = 1.0;
  const auto topo = generate_topology(10, 3);
  const auto a = generate_packets(topo, c, 11);
  const auto b = generate_packets(topo, c, 11);
  REQUIRE(!a.packets.empty());
  CHECK(a.checksum == b.checksum);
  CHECK(a.checksum == packet_checksum(a.packets));
  CHECK(a.checksum != generate_packets(topo, c, 12).checksum);
  for (std::size_t i = 0; i < a.packets.size(); ++i) {
    const auto& p = a.packets[i];
    CHECK(p.id == i + 1);
    CHECK(p.size_bits == 1000);
    CHECK(p.pending());
    if (topo.neighbors(p.src).empty()) {
      CHECK(p.dest == 0);
    } else {
      CHECK(topo.adjacent(p.src, p.dest));
    }
    if (i) CHECK(a.packets[i - 1].t_gen <= p.t_gen);
  }
}

TEST_CASE("exponential sizes keep the configured mean") {
  SimConfig c;
  c.nodes = 10;
  c.duration = 20.0;
  c.size_model = SizeModel::Exponential;
  const auto topo = generate_topology(10, 8);
  const auto set = generate_packets(topo, c, 5);
  double bits = 0.0;
  bool varied = false;
  for (const auto& p : set.packets) {
    bits += p.size_bits;
    CHECK(p.size_bits >= 1);
    varied |= p.size_bits != set.packets.front().size_bits;
  }
  CHECK(varied);
  CHECK(bits / set.packets.size() == doctest::Approx(1000.0).epsilon(0.06));
}

TEST_CASE("fates and retry limit") {
  Packet p;
  p.t_gen = 10;
  CHECK_FALSE(apply_outcome(p, false, 20, 2));
  CHECK(p.attempts == 1);
  CHECK(apply_outcome(p, false, 30, 2));
  CHECK(p.discarded());
  CHECK(p.t_done() == 30);
  Packet q;
  CHECK(apply_outcome(q, true, 40, 7));
  CHECK(q.delivered());
  CHECK(q.t_done() == 40);
}

TEST_CASE("airtime rounds up to whole nanoseconds") {
  CHECK(airtime(1000, 1e6) == 1'000'000);
  CHECK(airtime(200, 54e6) == 3704);
  CHECK(airtime(304, 1e6) == 304'000);
}
