#include <doctest.h>

#include <sstream>
#include <utility>

#include "rcfd/sim/simulator.hpp"
#include "rcfd/sim/traffic.hpp"
#include "trace_util.hpp"

using namespace rcfd;

namespace {

Topology from(std::size_t n, std::initializer_list<std::pair<NodeId, NodeId>> e) {
  const std::vector<std::pair<NodeId, NodeId>> edges(e);
  return Topology::from_edges(n, edges);
}

Packet make(PacketId id, NodeId src, NodeId dest, SimTime t_gen, std::uint32_t bits = 1000) {
  Packet p;
  p.id = id;
  p.src = src;
  p.dest = dest;
  p.size_bits = bits;
  p.t_gen = t_gen;
  return p;
}

SimConfig config(Protocol p, std::size_t n, double duration = 0.5) {
  SimConfig c;
  c.protocol = p;
  c.nodes = n;
  c.subcarriers = 8;
  c.modulation = 1;
  c.duration = duration;
  return c;
}

// Largest number of data frames on the air at once.
int max_concurrent_data(const std::vector<TraceLine>& t) {
  int on = 0, peak = 0;
  for (const auto& l : t) {
    if (!starts_with(l.detail, "data")) continue;
    if (l.event == "tx-start") peak = std::max(peak, ++on);
    if (l.event == "tx-end") --on;
  }
  return peak;
}

std::vector<Packet> saturated_pair(int count) {
  std::vector<Packet> p;
  for (int i = 0; i < count; ++i) {
    p.push_back(make(p.size() + 1, 1, 2, from_us(i * 100)));
    p.push_back(make(p.size() + 1, 2, 1, from_us(i * 100)));
  }
  return p;
}

}  // namespace

TEST_CASE("carrier sense keeps two saturated nodes apart") {
  const auto topo = from(2, {{1, 2}});
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    std::ostringstream out;
    RunOptions opts;
    opts.trace = &out;
    const auto r = simulate(config(Protocol::Dcf, 2), topo, saturated_pair(100), seed, opts);
    CHECK(max_concurrent_data(parse_trace(out.str())) == 1);
    CHECK(r.report.collisions == 0);
    CHECK(r.report.delivered > 100);
  }
}

TEST_CASE("hidden terminals collide under plain DCF") {
  const auto topo = from(3, {{1, 2}, {2, 3}});
  const std::vector<Packet> p = {make(1, 1, 2, 0), make(2, 3, 2, 0)};
  const auto r = simulate(config(Protocol::Dcf, 3), topo, p, 1);
  CHECK(r.report.collisions > 0);
}

TEST_CASE("RTS/CTS lowers hidden-terminal collisions") {
  const auto topo = from(3, {{1, 2}, {2, 3}});
  std::uint64_t dcf = 0, rts = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    SimConfig c = config(Protocol::Dcf, 3, 0.2);
    c.source_rate = 1e5;
    const auto packets = generate_packets(topo, c, seed).packets;
    dcf += simulate(c, topo, packets, seed).report.collisions;
    c.protocol = Protocol::DcfRtsCts;
    rts += simulate(c, topo, packets, seed).report.collisions;
  }
  CHECK(dcf > 0);
  CHECK(rts < dcf);
}

TEST_CASE("frequency backoff: the lowest subcarrier wins a single domain") {
  const auto topo = from(3, {{1, 2}, {1, 3}, {2, 3}});
  std::ostringstream out;
  RunOptions opts;
  opts.trace = &out;
  opts.first_choice = {{1, 6}, {2, 2}, {3, 7}};
  const std::vector<Packet> p = {make(1, 1, 2, 0), make(2, 2, 3, 0), make(3, 3, 1, 0)};
  const auto r = simulate(config(Protocol::Back2f, 3), topo, p, 1, opts);
  const auto t = parse_trace(out.str());
  const TraceLine* first = nullptr;
  for (const auto& l : t)
    if (l.event == "tx-start" && starts_with(l.detail, "data")) {
      first = &l;
      break;
    }
  REQUIRE(first != nullptr);
  CHECK(first->node == 2);
  CHECK(max_concurrent_data(t) == 1);
  CHECK(r.report.delivered == 3);
  CHECK(r.report.collisions == 0);
}

TEST_CASE("frequency backoff: hidden winners collide") {
  const auto topo = from(3, {{1, 2}, {2, 3}});
  RunOptions opts;
  opts.first_choice = {{1, 4}, {3, 5}};
  const std::vector<Packet> p = {make(1, 1, 2, 0), make(2, 3, 2, 0)};
  const auto r = simulate(config(Protocol::Back2f, 3), topo, p, 1, opts);
  CHECK(r.report.collisions > 0);
}

TEST_CASE("frequency backoff: a lone contender always wins") {
  const auto topo = from(2, {{1, 2}});
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const std::vector<Packet> p = {make(1, 1, 2, 0)};
    const auto r = simulate(config(Protocol::Back2f, 2), topo, p, seed);
    CHECK(r.report.delivered == 1);
    CHECK(r.packets[0].attempts == 0);
  }
}

TEST_CASE("FD exchange answers an RTS with reverse data") {
  const auto topo = from(3, {{1, 2}, {2, 3}});
  std::ostringstream out;
  RunOptions opts;
  opts.trace = &out;
  const std::vector<Packet> p = {make(1, 1, 2, 0), make(2, 2, 1, 0)};
  const auto r = simulate(config(Protocol::FdmacApprox, 3), topo, p, 1, opts);
  CHECK(r.report.delivered == 2);
  CHECK(r.report.fd_transmissions == 1);
  CHECK(max_concurrent_data(parse_trace(out.str())) == 2);
}

TEST_CASE("FD exchange without reverse traffic is plain RTS/CTS") {
  const auto topo = from(3, {{1, 2}, {2, 3}});
  std::vector<Packet> p;
  for (int i = 0; i < 40; ++i) p.push_back(make(p.size() + 1, 1 + 2 * (i % 2), 2, from_us(i * 3000 + 7 * (i % 3))));
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto fd = simulate(config(Protocol::FdmacApprox, 3), topo, p, seed).report;
    auto plain = simulate(config(Protocol::DcfRtsCts, 3), topo, p, seed).report;
    CHECK(fd.fd_transmissions == 0);
    fd.protocol = plain.protocol;
    CHECK(fd == plain);
  }
}

TEST_CASE("FD exchange helps a mutual-traffic pair") {
  const auto topo = from(2, {{1, 2}});
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    SimConfig c = config(Protocol::DcfRtsCts, 2, 0.3);
    c.source_rate = 4e5;
    const auto packets = generate_packets(topo, c, seed).packets;
    const auto plain = simulate(c, topo, packets, seed).report;
    c.protocol = Protocol::FdmacApprox;
    const auto fd = simulate(c, topo, packets, seed).report;
    CHECK(fd.throughput >= plain.throughput);
    CHECK(fd.fd_transmissions > 0);
  }
}

TEST_CASE("RCFD pairs a saturated two-node network in full duplex") {
  SimConfig c = config(Protocol::Rcfd, 2, 1.0);
  c.source_rate = 8e5;
  const auto r = run_simulation(c, 3);
  CHECK(r.report.fd_transmissions > 0);
  CHECK(r.report.collisions == 0);
}

TEST_CASE("one-way light traffic is fully delivered by every MAC") {
  const auto topo = from(2, {{1, 2}});
  std::vector<Packet> p;
  for (int i = 0; i < 40; ++i) p.push_back(make(i + 1, 1, 2, from_us(10'000.0 * i)));
  for (const Protocol proto : all_protocols()) {
    CAPTURE(protocol_name(proto));
    const auto r = simulate(config(proto, 2), topo, p, 4);
    CHECK(r.report.normalized_throughput == 1.0);
    CHECK(r.report.delivered == 40);
    CHECK(r.report.collisions == 0);
  }
}

TEST_CASE("packets without a destination are discarded on arrival") {
  const auto topo = from(3, {{1, 2}});
  const std::vector<Packet> p = {make(1, 3, 0, 0), make(2, 1, 2, 0)};
  for (const Protocol proto : all_protocols()) {
    const auto r = simulate(config(proto, 3), topo, p, 1);
    CHECK(r.packets[0].discarded());
    CHECK(r.packets[0].t_done() == 0);
    CHECK(r.packets[1].delivered());
  }
}
