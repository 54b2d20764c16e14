#include "rcfd/sim/packet.hpp"

namespace rcfd {

SimTime Packet::t_done() const {
  if (const auto* d = std::get_if<Delivered>(&fate)) return d->t_done;
  if (const auto* d = std::get_if<Discarded>(&fate)) return d->t_done;
  return t_gen;
}

bool apply_outcome(Packet& packet, bool success, SimTime now, std::uint32_t retry_limit) {
  if (!packet.pending()) return true;
  if (success) {
    packet.fate = Delivered{now};
    return true;
  }
  ++packet.attempts;
  if (packet.attempts >= retry_limit) {
    packet.fate = Discarded{now};
    return true;
  }
  return false;
}

}  // namespace rcfd
