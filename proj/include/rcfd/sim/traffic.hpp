#pragma once

#include <cstdint>
#include <vector>

#include "rcfd/channel/topology.hpp"
#include "rcfd/rng.hpp"
#include "rcfd/sim/config.hpp"
#include "rcfd/sim/packet.hpp"

namespace rcfd {

// Homogeneous Poisson process of rate R_S / L packets per second on [0, T).
std::vector<SimTime> poisson_arrivals(double source_rate, double payload_bits, double duration,
                                      Rng& rng);

// Every packet of one run, ordered by (t_gen, src) with ids 1..n. Depends on
// the topology, the traffic parameters and the seed only, never on the MAC.
struct PacketSet {
  std::vector<Packet> packets;
  std::uint64_t checksum = 0;
};

PacketSet generate_packets(const Topology& topology, const SimConfig& config, std::uint64_t seed);

// FNV-1a over (src, dest, size, t_gen) of every packet.
std::uint64_t packet_checksum(const std::vector<Packet>& packets);

}  // namespace rcfd
