// RCFD (three frequency-domain rounds with CTS deferral) and BACK2F (one
// round, winner grabs the channel). Both align contentions to a global grid
// of period t_round after an idle T_scan.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <set>

#include "engine.hpp"
#include "rcfd/channel/air.hpp"
#include "rcfd/sim/defer.hpp"

namespace rcfd::detail {
namespace {

std::string pairs_str(const std::vector<ScSymbol>& pairs) {
  std::string out;
  for (const auto& p : pairs) {
    if (!out.empty()) out += ',';
    out += to_string(p);
  }
  return out;
}

class FrequencyMac final : public Mac {
 public:
  explicit FrequencyMac(Engine& engine)
      : e_(engine),
        rcfd_(engine.config().protocol == Protocol::Rcfd),
        nodes_(engine.topology().node_count()) {
    const auto at = access_timing(engine.config().timing);
    t_round_ = from_us(at.t_round);
    t_scan_ = from_us(engine.config().timing.t_scan);
    SimTime longest = 0;
    for (PacketId id = 1; id <= e_.packet_count(); ++id) {
      longest = std::max(longest, e_.data_airtime(e_.packet(id)));
    }
    if (longest == 0) {
      Packet nominal;
      nominal.size_bits = static_cast<std::uint32_t>(std::llround(e_.config().payload_bits));
      longest = e_.data_airtime(nominal);
    }
    defer_timeout_ = e_.config().defer_timeout_us > 0.0
                         ? from_us(e_.config().defer_timeout_us)
                         : 2 * (longest + e_.ack_airtime() + 2 * e_.sifs());
  }

  void on_arrival(NodeId n) override { try_start(n); }

  void on_energy(NodeId n, bool busy) override {
    auto& s = st(n);
    if (s.stage != Stage::Scanning) return;
    ++s.token;
    if (!busy) e_.schedule(e_.now() + t_scan_, EventKind::ScanComplete, n, 0, s.token);
  }

  void on_frame_start(const Frame& f) override {
    for (const NodeId nb : e_.topology().neighbors(f.src)) {
      auto& s = st(nb);
      if (s.stage == Stage::Waiting || s.stage == Stage::R1 || s.stage == Stage::R2 ||
          s.stage == Stage::R3) {
        if (e_.tracing()) e_.trace("abort", nb, "frame from n" + std::to_string(f.src));
        s.stage = Stage::Idle;
        ++s.token;
        try_start(nb);
      }
    }
  }

  void on_frame_end(const Frame& f, bool ok) override {
    if (f.kind == FrameKind::Data) {
      if (ok) send_ack(f.dest, f.src, f.packet);
    } else if (f.kind == FrameKind::Ack) {
      auto& s = st(f.dest);
      if (s.awaiting == f.packet && s.awaiting != 0) {
        s.awaiting = 0;
        ++s.ack_token;
        e_.complete(f.packet, true);
        try_start(f.dest);
      }
      for (const NodeId nb : e_.topology().neighbors(f.src)) {
        if (st(nb).defers.lift_on_ack(f.src)) {
          if (e_.tracing()) e_.trace("defer-lift", nb, "ack from n" + std::to_string(f.src));
          try_start(nb);
        }
      }
    }
    try_start(f.src);
  }

  void on_event(const Event& ev) override {
    if (ev.kind == EventKind::Boundary) {
      boundaries_.erase(e_.now());
      boundary();
      return;
    }
    auto& s = st(ev.node);
    switch (ev.kind) {
      case EventKind::ScanComplete:
        if (s.stage == Stage::Scanning && s.token == ev.token) {
          s.stage = Stage::Waiting;
          s.start = ((e_.now() + t_round_ - 1) / t_round_) * t_round_;
          ensure_boundary(s.start);
          if (e_.tracing()) e_.trace("scan-done", ev.node, "join " + time_str(s.start));
        }
        return;
      case EventKind::AckTimeout:
        if (s.awaiting == ev.arg && s.ack_token == ev.token && s.awaiting != 0) {
          const auto id = static_cast<PacketId>(ev.arg);
          s.awaiting = 0;
          e_.complete(id, false);
          try_start(ev.node);
        }
        return;
      case EventKind::DeferTimeout:
        if (s.defers.expire(e_.now())) {
          if (e_.tracing()) e_.trace("defer-lift", ev.node, "timeout");
          try_start(ev.node);
        }
        return;
      default:
        return;
    }
  }

 private:
  enum class Stage { Idle, Scanning, Waiting, R1, R2, R3 };

  struct NodeState {
    Stage stage = Stage::Idle;
    std::uint64_t token = 0;
    SimTime start = 0;  // round-1 boundary of the current contention
    ContentionState cs;
    NodeId cts_to = 0;
    PacketId pkt = 0;  // packet advertised as PT
    bool first_used = false;
    PacketId awaiting = 0;
    std::uint64_t ack_token = 0;
    DeferTable defers;
  };

  struct Emission {
    NodeId node;
    int round;  // 0, 1, 2
    std::vector<ScSymbol> pairs;
  };

  NodeState& st(NodeId n) { return state_[n - 1]; }

  std::string time_str(SimTime t) const {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", to_us(t));
    return buf;
  }

  void ensure_boundary(SimTime t) {
    if (boundaries_.insert(t).second) e_.schedule(t, EventKind::Boundary, 0);
  }

  void try_start(NodeId n) {
    auto& s = st(n);
    if (s.stage != Stage::Idle) return;
    if (e_.queue(n).empty() || s.defers.active() || s.awaiting != 0 || e_.tx_busy(n)) return;
    s.stage = Stage::Scanning;
    ++s.token;
    if (!e_.energy(n)) e_.schedule(e_.now() + t_scan_, EventKind::ScanComplete, n, 0, s.token);
  }

  void send_ack(NodeId from, NodeId to, PacketId pkt) {
    const auto& drop = e_.options().drop_ack;
    if (drop && drop(from, e_.now())) {
      if (e_.tracing()) e_.trace("ack-suppressed", from, "p" + std::to_string(pkt));
      return;
    }
    auto& s = st(from);
    if (s.stage == Stage::Scanning) {
      s.stage = Stage::Idle;
      ++s.token;
    }
    Frame ack;
    ack.kind = FrameKind::Ack;
    ack.src = from;
    ack.dest = to;
    ack.packet = pkt;
    e_.schedule_frame(e_.now() + e_.sifs(), std::move(ack), e_.ack_airtime());
  }

  PacketId secondary_candidate(NodeId n, NodeId target, SimTime contention_start) {
    for (const PacketId id : e_.queue(n)) {
      const Packet& p = e_.packet(id);
      if (p.dest == target && p.t_gen + t_scan_ <= contention_start) return id;
    }
    return 0;
  }

  void boundary();

  Engine& e_;
  bool rcfd_;
  std::size_t nodes_;
  std::vector<NodeState> state_ = std::vector<NodeState>(nodes_);
  std::vector<Emission> on_air_;
  std::set<SimTime> boundaries_;
  SimTime t_round_ = 0;
  SimTime t_scan_ = 0;
  SimTime defer_timeout_ = 0;
};

void FrequencyMac::boundary() {
  const SimTime t = e_.now();
  const auto& map = e_.map();
  const auto& topo = e_.topology();

  // What every node heard during the slot that just ended, per round tag.
  std::vector<std::array<PerceivedView, 3>> heard(nodes_);
  for (const auto& em : on_air_) {
    accumulate(heard[em.node - 1][em.round], map, em.pairs);
    for (const NodeId nb : topo.neighbors(em.node)) {
      accumulate(heard[nb - 1][em.round], map, em.pairs);
    }
  }
  for (const auto& em : on_air_) e_.set_signal(em.node, false);
  on_air_.clear();

  struct Tx {
    NodeId node;
    TransmitDecision decision;
    PacketId pkt;
  };
  std::vector<Tx> tx;
  std::vector<NodeId> finished;
  std::vector<Stage> before(nodes_);
  for (NodeId n = 1; n <= nodes_; ++n) before[n - 1] = st(n).stage;

  for (NodeId n = 1; n <= nodes_; ++n) {
    auto& s = st(n);
    auto& h = heard[n - 1];
    switch (before[n - 1]) {
      case Stage::R1: {
        s.cs.r1_perceived = h[0].all;
        const bool won = decide_pt(s.cs.chosen_sc, s.cs.r1_perceived);
        if (!rcfd_) {
          if (won) tx.push_back({n, TransmitPrimary{*s.cs.dest}, s.pkt});
          if (e_.tracing()) e_.trace("decide", n, won ? "win" : "lose");
          s.stage = Stage::Idle;
          finished.push_back(n);
        } else {
          if (won) s.cs.role = Role::PrimaryTransmitter;
          s.stage = Stage::R2;
        }
        break;
      }
      case Stage::R2: {
        s.cs.r2_perceived_s1 = h[1].s1;
        s.cs.r2_perceived_s2 = h[1].s2;
        if (s.cs.role != Role::PrimaryTransmitter && decide_rr(map, n, s.cs.r2_perceived_s2)) {
          if (auto target = find_cts_target(map, s.cs.r2_perceived_s1)) {
            s.cs.role = Role::RtsReceiver;
            s.cts_to = *target;
          }
        }
        s.stage = Stage::R3;
        break;
      }
      case Stage::R3: {
        s.cs.r3_perceived_s1 = h[2].s1;
        s.cs.r3_perceived_s2 = h[2].s2;
        PacketId pkt = s.pkt;
        ContentionState judged = s.cs;
        if (s.cs.role == Role::RtsReceiver) {
          pkt = secondary_candidate(n, s.cts_to, s.start);
          judged.has_data = pkt != 0;
          judged.dest = pkt != 0 ? std::optional<NodeId>(s.cts_to) : std::nullopt;
        }
        const TransmitDecision d = final_decision(map, judged);
        if (e_.tracing()) e_.trace("decide", n, to_string(s.cs.role) + " " + to_string(d));
        if (transmits(d)) tx.push_back({n, d, pkt});
        s.stage = Stage::Idle;
        finished.push_back(n);
        break;
      }
      case Stage::Idle:
      case Stage::Scanning:
        // Not contending: may still be addressed by a round-2 RTS.
        if (rcfd_ && !h[1].s2.empty() && !s.defers.active() && s.awaiting == 0 &&
            !e_.tx_busy(n) && decide_rr(map, n, h[1].s2)) {
          if (auto target = find_cts_target(map, h[1].s1)) {
            s.cs = ContentionState{};
            s.cs.node = n;
            s.cs.role = Role::RtsReceiver;
            s.cs.r2_perceived_s1 = h[1].s1;
            s.cs.r2_perceived_s2 = h[1].s2;
            s.cts_to = *target;
            s.start = t - 2 * t_round_;
            s.stage = Stage::R3;
            ++s.token;
          }
        }
        break;
      case Stage::Waiting:
        break;
    }
  }

  if (rcfd_) {
    for (NodeId n = 1; n <= nodes_; ++n) {
      const auto& h = heard[n - 1][2];
      if (h.s1.empty() && h.s2.empty()) continue;
      const bool sending = std::any_of(tx.begin(), tx.end(), [n](const Tx& x) { return x.node == n; });
      const DeferAction act = rcfd_defer(map, n, sending, h.s1, h.s2);
      if (!act.defers()) continue;
      auto& s = st(n);
      const SimTime deadline = t + defer_timeout_;
      for (const NodeId h_id : act.senders) s.defers.add(h_id, deadline);
      if (act.unidentified) s.defers.add(0, deadline);
      e_.schedule(deadline, EventKind::DeferTimeout, n);
      if (e_.tracing()) {
        std::string who;
        for (const NodeId h_id : act.senders) who += " n" + std::to_string(h_id);
        if (act.unidentified) who += " ?";
        e_.trace("defer", n, "on" + who + " until " + time_str(deadline));
      }
      if (s.stage == Stage::Scanning || s.stage == Stage::Waiting || s.stage == Stage::R1 ||
          s.stage == Stage::R2) {
        s.stage = Stage::Idle;
        ++s.token;
      }
    }
  }

  for (const auto& x : tx) {
    const NodeId dest = *decision_dest(x.decision);
    const bool secondary = std::holds_alternative<TransmitSecondary>(x.decision);
    Frame f;
    f.kind = FrameKind::Data;
    f.src = x.node;
    f.dest = dest;
    f.packet = x.pkt;
    f.secondary = secondary;
    const SimTime dur = e_.data_airtime(e_.packet(x.pkt));
    auto& s = st(x.node);
    s.awaiting = x.pkt;
    ++s.ack_token;
    e_.schedule(t + dur + e_.sifs() + e_.ack_airtime() + 1, EventKind::AckTimeout, x.node, x.pkt,
                s.ack_token);
    if (secondary) e_.count_fd();
    e_.start_frame(std::move(f), dur);
  }

  bool more = false;
  for (NodeId n = 1; n <= nodes_; ++n) {
    auto& s = st(n);
    Emission em{n, 0, {}};
    if (s.stage == Stage::Waiting && s.start == t) {
      const Packet* head = e_.head(n);
      if (head == nullptr) {
        s.stage = Stage::Idle;
        continue;
      }
      s.cs = ContentionState{};
      s.cs.node = n;
      s.cs.has_data = true;
      s.cs.dest = head->dest;
      s.pkt = head->id;
      s.cts_to = 0;
      auto forced = e_.options().first_choice.find(n);
      if (!s.first_used && forced != e_.options().first_choice.end()) {
        s.cs.chosen_sc = forced->second;
      } else {
        s.cs.chosen_sc = round1_choose(true, e_.rng(), map.subcarrier_count());
      }
      s.first_used = true;
      s.stage = Stage::R1;
      e_.count_contention();
      em.round = 0;
      em.pairs = {{s.cs.chosen_sc, 0}};
    } else if (s.stage == Stage::R2 && s.cs.role == Role::PrimaryTransmitter) {
      em.round = 1;
      const auto sig = rts_signal(map, n, *s.cs.dest);
      em.pairs.assign(sig.begin(), sig.end());
    } else if (s.stage == Stage::R3 && s.cs.role == Role::RtsReceiver) {
      em.round = 2;
      const auto sig = cts_signal(map, n, s.cts_to);
      em.pairs.assign(sig.begin(), sig.end());
    }
    if (s.stage == Stage::R1 || s.stage == Stage::R2 || s.stage == Stage::R3) more = true;
    if (em.pairs.empty()) continue;
    if (e_.tracing()) e_.trace(em.round == 0 ? "r1" : em.round == 1 ? "r2" : "r3", n, pairs_str(em.pairs));
    e_.set_signal(n, true);
    on_air_.push_back(std::move(em));
  }
  if (more) ensure_boundary(t + t_round_);

  for (const NodeId n : finished) try_start(n);
}

}  // namespace

std::unique_ptr<Mac> make_frequency_mac(Engine& engine) {
  return std::make_unique<FrequencyMac>(engine);
}

}  // namespace rcfd::detail
