#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <variant>

#include "rcfd/core/types.hpp"

namespace rcfd {

// Simulation clock in integer nanoseconds so event ordering is exact.
using SimTime = std::int64_t;

inline constexpr SimTime kNsPerUs = 1000;
inline constexpr SimTime kNsPerSecond = 1'000'000'000;

inline SimTime from_us(double us) { return static_cast<SimTime>(std::llround(us * 1e3)); }
inline SimTime from_seconds(double s) { return static_cast<SimTime>(std::llround(s * 1e9)); }
inline double to_seconds(SimTime t) { return static_cast<double>(t) * 1e-9; }
inline double to_us(SimTime t) { return static_cast<double>(t) * 1e-3; }

// Airtime of `bits` at `rate` bit/s, rounded up to the next nanosecond.
inline SimTime airtime(double bits, double rate) {
  return static_cast<SimTime>(std::ceil(bits / rate * 1e9 - 1e-6));
}

using PacketId = std::uint32_t;

struct Pending {
  friend bool operator==(const Pending&, const Pending&) = default;
};
struct Delivered {
  SimTime t_done;
  friend bool operator==(const Delivered&, const Delivered&) = default;
};
struct Discarded {
  SimTime t_done;
  friend bool operator==(const Discarded&, const Discarded&) = default;
};
using PacketFate = std::variant<Pending, Delivered, Discarded>;

struct Packet {
  PacketId id = 0;
  NodeId src = 0;
  NodeId dest = 0;  // 0 when the source has no neighbour
  std::uint32_t size_bits = 0;
  SimTime t_gen = 0;
  std::uint32_t attempts = 0;  // failed transmissions so far
  PacketFate fate = Pending{};

  bool pending() const { return std::holds_alternative<Pending>(fate); }
  bool delivered() const { return std::holds_alternative<Delivered>(fate); }
  bool discarded() const { return std::holds_alternative<Discarded>(fate); }
  // Completion instant for a terminal packet, t_gen otherwise.
  SimTime t_done() const;
};

// Records one transmission outcome. Success marks the packet Delivered; a
// failure increments attempts and discards it once attempts reaches
// retry_limit. A terminal packet keeps its first fate. Returns true when the
// packet is terminal afterwards.
bool apply_outcome(Packet& packet, bool success, SimTime now, std::uint32_t retry_limit);

}  // namespace rcfd
