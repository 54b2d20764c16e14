// IEEE 802.11 DCF with binary exponential backoff, optionally preceded by a
// time-domain RTS/CTS exchange, plus the FD-MAC approximation where the RTS
// receiver piggybacks a reverse data frame on the exchange.

#include <algorithm>

#include "engine.hpp"

namespace rcfd::detail {
namespace {

class CsmaMac final : public Mac {
 public:
  explicit CsmaMac(Engine& engine)
      : e_(engine),
        rts_cts_(engine.config().protocol != Protocol::Dcf),
        fd_(engine.config().protocol == Protocol::FdmacApprox),
        state_(engine.topology().node_count()) {
    const auto& c = engine.config();
    slot_ = from_us(c.slot_us);
    difs_ = from_us(c.difs_us);
    for (auto& s : state_) s.cw = c.cw_min;
  }

  void on_arrival(NodeId n) override {
    auto& s = st(n);
    if (s.phase == Phase::Idle) new_backoff(n);
  }

  void on_energy(NodeId n, bool) override { reevaluate(n); }

  void on_frame_end(const Frame& f, bool ok) override {
    const SimTime now = e_.now();
    switch (f.kind) {
      case FrameKind::Rts: {
        auto& r = st(f.dest);
        if (ok && r.nav_until <= now && !e_.tx_busy(f.dest) &&
            (r.phase == Phase::Idle || r.phase == Phase::Backoff)) {
          Frame cts;
          cts.kind = FrameKind::Cts;
          cts.src = f.dest;
          cts.dest = f.src;
          cts.packet = f.packet;
          SimTime data = e_.data_airtime(e_.packet(f.packet));
          if (fd_) {
            if (const PacketId back = reverse_packet(f.dest, f.src)) {
              cts.fd_flag = true;
              r.reverse = back;
              data = std::max(data, e_.data_airtime(e_.packet(back)));
            }
          }
          const SimTime start = now + e_.sifs();
          cts.nav_end = start + e_.cts_airtime() + e_.sifs() + data + e_.sifs() + e_.ack_airtime();
          freeze(f.dest);
          e_.schedule_frame(start, std::move(cts), e_.cts_airtime());
        }
        break;
      }
      case FrameKind::Cts: {
        auto& s = st(f.dest);
        if (f.fd_flag) {
          // The CTS sender transmits its reverse frame alongside the primary.
          auto& r = st(f.src);
          if (r.reverse != 0) {
            send_data(f.src, f.dest, r.reverse, now + e_.sifs(), true);
            r.reverse = 0;
          }
        }
        if (ok && s.phase == Phase::WaitCts && s.current == f.packet) {
          ++s.token;
          send_data(f.dest, f.src, s.current, now + e_.sifs(), false);
          s.phase = Phase::WaitAck;
        }
        break;
      }
      case FrameKind::Data:
        if (ok) {
          const auto& drop = e_.options().drop_ack;
          if (drop && drop(f.dest, now)) {
            if (e_.tracing()) e_.trace("ack-suppressed", f.dest, "p" + std::to_string(f.packet));
          } else {
            Frame ack;
            ack.kind = FrameKind::Ack;
            ack.src = f.dest;
            ack.dest = f.src;
            ack.packet = f.packet;
            freeze(f.dest);
            e_.schedule_frame(now + e_.sifs(), std::move(ack), e_.ack_airtime());
          }
        }
        break;
      case FrameKind::Ack: {
        auto& s = st(f.dest);
        if (s.phase == Phase::WaitAck && s.current == f.packet) {
          ++s.token;
          finish(f.dest, true);
        } else if (s.reverse_wait == f.packet && f.packet != 0) {
          s.reverse_wait = 0;
          ++s.rev_token;
          e_.complete(f.packet, true);
          after_reverse(f.dest);
        }
        break;
      }
    }
    reevaluate(f.src);
  }

  void on_overhear(NodeId l, const Frame& f, bool ok) override {
    if (!ok) return;
    SimTime nav = 0;
    switch (f.kind) {
      case FrameKind::Rts:
      case FrameKind::Cts:
        nav = f.nav_end;
        break;
      case FrameKind::Data:
        nav = f.end + e_.sifs() + e_.ack_airtime();
        break;
      case FrameKind::Ack:
        return;
    }
    auto& s = st(l);
    if (nav > s.nav_until) {
      s.nav_until = nav;
      e_.schedule(nav, EventKind::NavEnd, l);
      reevaluate(l);
    }
  }

  void on_event(const Event& ev) override {
    const NodeId n = ev.node;
    auto& s = st(n);
    switch (ev.kind) {
      case EventKind::BackoffDone:
        if (s.phase == Phase::Backoff && s.token == ev.token) {
          s.counting = false;
          s.remaining = 0;
          transmit(n);
        }
        return;
      case EventKind::CtsTimeout:
      case EventKind::AckTimeout:
        if (ev.arg == 0) {
          if (s.token == ev.token && (s.phase == Phase::WaitCts || s.phase == Phase::WaitAck)) {
            finish(n, false);
          }
        } else if (s.reverse_wait == ev.arg && s.rev_token == ev.token) {
          // Reverse frame of an FD exchange went unacknowledged.
          const auto id = static_cast<PacketId>(ev.arg);
          s.reverse_wait = 0;
          e_.complete(id, false);
          after_reverse(n);
        }
        return;
      case EventKind::NavEnd:
        reevaluate(n);
        return;
      default:
        return;
    }
  }

 private:
  enum class Phase { Idle, Backoff, WaitCts, WaitAck };

  struct NodeState {
    Phase phase = Phase::Idle;
    std::uint32_t cw = 15;
    std::uint64_t remaining = 0;  // backoff slots left
    bool counting = false;
    SimTime count_from = 0;  // first slot boundary of the running countdown
    std::uint64_t token = 0;
    SimTime nav_until = 0;
    PacketId current = 0;       // packet of the ongoing exchange
    PacketId reverse = 0;       // reverse frame promised in a CTS
    PacketId reverse_wait = 0;  // reverse frame awaiting its ACK
    std::uint64_t rev_token = 0;
  };

  NodeState& st(NodeId n) { return state_[n - 1]; }

  bool busy(NodeId n) { return e_.energy(n) || st(n).nav_until > e_.now() || e_.tx_busy(n); }

  PacketId reverse_packet(NodeId n, NodeId peer) {
    for (const PacketId id : e_.queue(n)) {
      if (e_.packet(id).dest == peer) return id;
    }
    return 0;
  }

  void new_backoff(NodeId n) {
    auto& s = st(n);
    if (e_.queue(n).empty()) {
      s.phase = Phase::Idle;
      return;
    }
    s.phase = Phase::Backoff;
    s.remaining = e_.rng().uniform_index(std::uint64_t{s.cw} + 1);
    s.counting = false;
    ++s.token;
    reevaluate(n);
  }

  // Stops a running countdown, keeping the slots already consumed.
  void freeze(NodeId n) {
    auto& s = st(n);
    if (s.phase != Phase::Backoff || !s.counting) return;
    const SimTime now = e_.now();
    if (now > s.count_from) {
      const auto done = static_cast<std::uint64_t>((now - s.count_from) / slot_);
      s.remaining -= std::min(done, s.remaining);
    }
    s.counting = false;
    ++s.token;
  }

  void reevaluate(NodeId n) {
    auto& s = st(n);
    if (s.phase != Phase::Backoff) return;
    if (busy(n)) {
      freeze(n);
      return;
    }
    if (s.counting) return;
    s.counting = true;
    s.count_from = e_.now() + difs_;
    ++s.token;
    e_.schedule(s.count_from + static_cast<SimTime>(s.remaining) * slot_, EventKind::BackoffDone,
                n, 0, s.token);
  }

  void transmit(NodeId n) {
    auto& s = st(n);
    const Packet* head = e_.head(n);
    if (head == nullptr) {
      s.phase = Phase::Idle;
      return;
    }
    s.current = head->id;
    const SimTime now = e_.now();
    const SimTime data = e_.data_airtime(*head);
    if (rts_cts_) {
      Frame rts;
      rts.kind = FrameKind::Rts;
      rts.src = n;
      rts.dest = head->dest;
      rts.packet = head->id;
      const SimTime end = now + e_.rts_airtime();
      rts.nav_end = end + e_.sifs() + e_.cts_airtime() + e_.sifs() + data + e_.sifs() +
                    e_.ack_airtime();
      s.phase = Phase::WaitCts;
      ++s.token;
      e_.schedule(end + e_.sifs() + e_.cts_airtime() + 1, EventKind::CtsTimeout, n, 0, s.token);
      e_.start_frame(std::move(rts), e_.rts_airtime());
    } else {
      s.phase = Phase::WaitAck;
      send_data(n, head->dest, head->id, now, false);
    }
  }

  void send_data(NodeId n, NodeId dest, PacketId id, SimTime at, bool reverse) {
    auto& s = st(n);
    const SimTime dur = e_.data_airtime(e_.packet(id));
    const SimTime ack_due = at + dur + e_.sifs() + e_.ack_airtime() + 1;
    Frame f;
    f.kind = FrameKind::Data;
    f.src = n;
    f.dest = dest;
    f.packet = id;
    f.secondary = reverse;
    if (reverse) {
      freeze(n);
      s.reverse_wait = id;
      ++s.rev_token;
      e_.schedule(ack_due, EventKind::AckTimeout, n, id, s.rev_token);
      e_.count_fd();
    } else {
      ++s.token;
      e_.schedule(ack_due, EventKind::AckTimeout, n, 0, s.token);
    }
    if (at == e_.now()) {
      e_.start_frame(std::move(f), dur);
    } else {
      e_.schedule_frame(at, std::move(f), dur);
    }
  }

  void finish(NodeId n, bool success) {
    auto& s = st(n);
    const bool terminal = e_.complete(s.current, success);
    s.current = 0;
    const auto& c = e_.config();
    if (success || terminal) {
      s.cw = c.cw_min;
    } else {
      s.cw = std::min(2 * s.cw + 1, c.cw_max);
    }
    new_backoff(n);
  }

  // A reverse frame may have been the head packet the node was backing off for.
  void after_reverse(NodeId n) {
    auto& s = st(n);
    if (s.phase == Phase::Backoff && e_.queue(n).empty()) {
      s.phase = Phase::Idle;
      ++s.token;
    } else if (s.phase == Phase::Idle && !e_.queue(n).empty()) {
      new_backoff(n);
    } else {
      reevaluate(n);
    }
  }

  Engine& e_;
  bool rts_cts_;
  bool fd_;
  std::vector<NodeState> state_;
  SimTime slot_ = 0;
  SimTime difs_ = 0;
};

}  // namespace

std::unique_ptr<Mac> make_csma_mac(Engine& engine) { return std::make_unique<CsmaMac>(engine); }

}  // namespace rcfd::detail
