#pragma once

#include <iosfwd>
#include <vector>

#include "rcfd/sim/contention.hpp"
#include "rcfd/sim/config.hpp"
#include "rcfd/sim/simulator.hpp"

namespace rcfd {

// The two three-node walkthroughs: path n1 - n2 - n3 (n1 and n3 hidden from
// each other), S = 6, m = 1.
//   1: n1 -> n2 on s4, n3 -> n2 on s5 (hidden terminals, n1 wins)
//   2: n1 -> n2 on s3, n2 -> n1 on s5 (full-duplex pair), n3 idle
struct Scenario {
  int id = 0;
  Topology topology;
  std::vector<ContentionIntent> intents;  // index = node - 1
  SimConfig config;                       // RCFD, L = 1000, R_T = 1 Mbit/s
};

// Throws ConfigInvalid unless which is 1 or 2.
Scenario make_scenario(int which);

ContentionOutcome replay_contention(const Scenario& s);

// One packet per sender generated at t = 0, run through the event simulator
// with the same forced round-1 choices.
RunResult replay_simulation(const Scenario& s, std::ostream* trace = nullptr);

void print_contention(std::ostream& out, const Scenario& s, const ContentionOutcome& outcome);

}  // namespace rcfd
