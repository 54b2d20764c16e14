#include "rcfd/sim/traffic.hpp"

#include <algorithm>
#include <cmath>

namespace rcfd {

std::vector<SimTime> poisson_arrivals(double source_rate, double payload_bits, double duration,
                                      Rng& rng) {
  std::vector<SimTime> out;
  const double lambda = source_rate / payload_bits;
  double t = rng.exponential(lambda);
  while (t < duration) {
    out.push_back(from_seconds(t));
    t += rng.exponential(lambda);
  }
  return out;
}

PacketSet generate_packets(const Topology& topology, const SimConfig& config, std::uint64_t seed) {
  PacketSet set;
  for (NodeId i = 1; i <= topology.node_count(); ++i) {
    Rng rng(derive_seed(seed, 100 + i));
    const auto& nbrs = topology.neighbors(i);
    for (const SimTime t : poisson_arrivals(config.source_rate, config.payload_bits,
                                            config.duration, rng)) {
      Packet p;
      p.src = i;
      p.t_gen = t;
      p.dest = nbrs.empty() ? 0 : nbrs[rng.uniform_index(nbrs.size())];
      if (config.size_model == SizeModel::Fixed) {
        p.size_bits = static_cast<std::uint32_t>(std::llround(config.payload_bits));
      } else {
        const double bits = std::ceil(rng.exponential(1.0 / config.payload_bits));
        p.size_bits = static_cast<std::uint32_t>(std::max(1.0, bits));
      }
      set.packets.push_back(p);
    }
  }
  std::sort(set.packets.begin(), set.packets.end(), [](const Packet& a, const Packet& b) {
    return a.t_gen != b.t_gen ? a.t_gen < b.t_gen : a.src < b.src;
  });
  for (std::size_t k = 0; k < set.packets.size(); ++k) {
    set.packets[k].id = static_cast<PacketId>(k + 1);
  }
  set.checksum = packet_checksum(set.packets);
  return set;
}

std::uint64_t packet_checksum(const std::vector<Packet>& packets) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::uint64_t v) {
    for (int b = 0; b < 8; ++b) {
      h ^= (v >> (8 * b)) & 0xFF;
      h *= 0x100000001b3ULL;
    }
  };
  for (const auto& p : packets) {
    mix(p.src);
    mix(p.dest);
    mix(p.size_bits);
    mix(static_cast<std::uint64_t>(p.t_gen));
  }
  return h;
}

}  // namespace rcfd
