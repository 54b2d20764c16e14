#include <doctest.h>

#include <sstream>

#include "rcfd/metrics/scenario.hpp"
#include "rcfd/sim/defer.hpp"
#include "trace_util.hpp"

using namespace rcfd;

TEST_CASE("CTS for somebody else defers, own CTS or CTS to self does not") {
  const auto map = build_map(3, 6, 1);
  const auto s1 = PerceivedSet::of_subcarriers({2});
  const auto s2 = PerceivedSet::of_subcarriers({4});

  const auto third = rcfd_defer(map, 3, false, s1, s2);
  CHECK(third.defers());
  CHECK(third.senders == std::vector<NodeId>{2});

  CHECK_FALSE(rcfd_defer(map, 1, false, s1, s2).defers());  // addressed to n1
  CHECK_FALSE(rcfd_defer(map, 3, true, s1, s2).defers());   // transmitting
  CHECK_FALSE(rcfd_defer(map, 3, false, {}, {}).defers());
  // n2 hears its own CTS only.
  CHECK_FALSE(rcfd_defer(map, 2, false, s1, s2).defers());
}

TEST_CASE("unidentifiable CTS sender still defers") {
  const auto map = build_map(3, 6, 1);
  const auto d = rcfd_defer(map, 3, false, PerceivedSet::of_subcarriers({1, 2}),
                            PerceivedSet::of_subcarriers({4, 5}));
  CHECK(d.defers());
  CHECK(d.senders == std::vector<NodeId>{1, 2});
  const auto two = build_map(4, 4, 2);
  PerceivedSet amb;
  amb.add({1, 0});
  amb.add({1, 1});
  const auto u = rcfd_defer(two, 4, false, amb, PerceivedSet{ScSymbol{3, 0}});
  CHECK(u.unidentified);
}

TEST_CASE("defer table") {
  DeferTable t;
  CHECK_FALSE(t.active());
  t.add(2, 500);
  t.add(2, 400);
  CHECK(t.deadline(2) == 500);
  t.add(5, 300);
  CHECK_FALSE(t.expire(299));
  CHECK(t.expire(300));
  CHECK_FALSE(t.deadline(5));
  CHECK(t.lift_on_ack(2));
  CHECK_FALSE(t.lift_on_ack(2));
  CHECK_FALSE(t.active());
}

namespace {

std::vector<TraceLine> scenario2_trace(const RunOptions& extra, std::uint32_t retry_limit = 7) {
  Scenario s = make_scenario(2);
  s.config.retry_limit = retry_limit;
  std::ostringstream out;
  RunOptions opts = extra;
  opts.trace = &out;
  std::vector<Packet> packets;
  for (NodeId n : {1U, 2U}) {
    Packet p;
    p.id = packets.size() + 1;
    p.src = n;
    p.dest = 3 - n;
    p.size_bits = 1000;
    packets.push_back(p);
    opts.first_choice[n] = s.intents[n - 1].forced_sc;
  }
  simulate(s.config, s.topology, packets, 1, opts);
  return parse_trace(out.str());
}

const TraceLine* find(const std::vector<TraceLine>& t, const std::string& ev, NodeId n) {
  for (const auto& l : t)
    if (l.event == ev && l.node == n) return &l;
  return nullptr;
}

}  // namespace

TEST_CASE("idle bystander waits for the ACK") {
  const auto t = scenario2_trace({});
  const auto* defer = find(t, "defer", 3);
  const auto* lift = find(t, "defer-lift", 3);
  REQUIRE(defer != nullptr);
  REQUIRE(lift != nullptr);
  CHECK(lift->detail == "ack from n2");
  // Data 1000 us after the 46 us access (2 us grid offset), SIFS, ACK 304 us.
  CHECK(defer->time_us == 48.0);
  CHECK(lift->time_us == 48.0 + 1000.0 + 10.0 + 304.0);
}

TEST_CASE("lost ACK: the bystander resumes at the timeout") {
  RunOptions opts;
  opts.drop_ack = [](NodeId sender, SimTime) { return sender == 2; };
  // No retry, so no fresh CTS extends the deferral.
  const auto t = scenario2_trace(opts, 1);
  const auto* lift = find(t, "defer-lift", 3);
  REQUIRE(lift != nullptr);
  CHECK(lift->detail == "timeout");
  // 2 * (L/R_T + ACK + 2 SIFS) after the CTS.
  CHECK(lift->time_us == 48.0 + 2.0 * (1000.0 + 304.0 + 20.0));
}
