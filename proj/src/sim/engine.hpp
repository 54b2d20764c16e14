#pragma once

// Internal to the simulator: event queue, shared medium and the MAC hooks.

#include <deque>
#include <memory>
#include <queue>
#include <string>
#include <map>
#include <vector>

#include "rcfd/core/subcarrier_map.hpp"
#include "rcfd/rng.hpp"
#include "rcfd/sim/simulator.hpp"

namespace rcfd::detail {

// Tie-break rank is the enumerator order.
enum class EventKind {
  FrameEnd,
  TxStart,
  AckTimeout,
  CtsTimeout,
  DeferTimeout,
  NavEnd,
  BackoffDone,
  ScanComplete,
  Arrival,
  Boundary,
};

struct Event {
  SimTime time = 0;
  EventKind kind = EventKind::Arrival;
  NodeId node = 0;
  std::uint64_t seq = 0;
  std::uint64_t arg = 0;
  std::uint64_t token = 0;
};

struct EventAfter {
  bool operator()(const Event& a, const Event& b) const {
    if (a.time != b.time) return a.time > b.time;
    if (a.kind != b.kind) return a.kind > b.kind;
    if (a.node != b.node) return a.node > b.node;
    return a.seq > b.seq;
  }
};

enum class FrameKind { Data, Rts, Cts, Ack };
const char* to_string(FrameKind k);

struct Frame {
  std::uint64_t id = 0;
  FrameKind kind = FrameKind::Data;
  NodeId src = 0;
  NodeId dest = 0;
  SimTime start = 0;
  SimTime end = 0;
  PacketId packet = 0;
  SimTime nav_end = 0;     // reservation advertised to overhearing nodes
  bool secondary = false;  // full-duplex answer to a primary
  bool fd_flag = false;    // CTS announcing a reverse data frame
  std::vector<NodeId> overlap_srcs;  // senders of interfering frames that overlapped
};

class Engine;

class Mac {
 public:
  virtual ~Mac() = default;
  virtual void on_arrival(NodeId node) = 0;
  virtual void on_energy(NodeId node, bool busy) = 0;
  virtual void on_frame_start(const Frame&) {}
  // At the frame's end: the addressee learns whether it decoded the frame,
  // every other neighbour of the sender is told whether it could.
  virtual void on_frame_end(const Frame& f, bool ok_at_dest) = 0;
  virtual void on_overhear(NodeId, const Frame&, bool) {}
  virtual void on_event(const Event& e) = 0;
};

class Engine {
 public:
  Engine(const SimConfig& config, const Topology& topology, std::vector<Packet> packets,
         std::uint64_t seed, const RunOptions& options);

  RunResult run();

  // ---- services for MAC implementations ----
  SimTime now() const { return now_; }
  const SimConfig& config() const { return config_; }
  const Topology& topology() const { return topology_; }
  const SubcarrierMap& map() const { return *map_; }
  const RunOptions& options() const { return options_; }
  Rng& rng() { return rng_; }

  void schedule(SimTime t, EventKind kind, NodeId node, std::uint64_t arg = 0,
                std::uint64_t token = 0);

  // Starts a frame now. Returns its id.
  std::uint64_t start_frame(Frame f, SimTime duration);
  // Starts a frame at t (>= now); counts as the sender's own traffic already.
  void schedule_frame(SimTime t, Frame f, SimTime duration);
  // Own frames on the air or scheduled.
  bool tx_busy(NodeId n) const { return own_tx_[n - 1] > 0; }
  bool energy(NodeId n) const { return energy_[n - 1] > 0; }
  // Frequency-domain signalling symbols emitted by `node` (energy only).
  void set_signal(NodeId node, bool on);

  std::deque<PacketId>& queue(NodeId n) { return queues_[n - 1]; }
  Packet& packet(PacketId id) { return packets_[id - 1]; }
  std::size_t packet_count() const { return packets_.size(); }
  Packet* head(NodeId n) {
    return queues_[n - 1].empty() ? nullptr : &packets_[queues_[n - 1].front() - 1];
  }
  // Applies a transmission outcome; removes the packet from its queue once
  // terminal. Returns true when terminal.
  bool complete(PacketId id, bool success);
  void count_fd() { ++fd_transmissions_; }
  void count_contention() { ++contentions_; }

  SimTime data_airtime(const Packet& p) const;
  SimTime ack_airtime() const { return ack_; }
  SimTime rts_airtime() const { return rts_; }
  SimTime cts_airtime() const { return cts_; }
  SimTime sifs() const { return sifs_; }

  bool tracing() const { return options_.trace != nullptr; }
  void trace(const char* event, NodeId subject, const std::string& detail);

 private:
  void dispatch(const Event& e);
  void finish_frame(std::uint64_t id);
  void flush_energy();
  void bump_energy(NodeId src, int delta);

  SimConfig config_;
  const Topology& topology_;
  std::vector<Packet> packets_;
  RunOptions options_;
  std::unique_ptr<SubcarrierMap> map_;
  Rng rng_;
  std::unique_ptr<Mac> mac_;

  SimTime now_ = 0;
  SimTime end_ = 0;
  std::uint64_t seq_ = 0;
  std::priority_queue<Event, std::vector<Event>, EventAfter> events_;

  std::vector<std::deque<PacketId>> queues_;
  std::vector<int> energy_;
  std::vector<unsigned char> reported_busy_;
  std::vector<unsigned char> signalling_;
  std::vector<int> own_tx_;
  std::map<std::uint64_t, Frame> active_;
  std::map<std::uint64_t, Frame> scheduled_;
  std::uint64_t next_frame_ = 1;
  std::vector<SimTime> episode_until_;  // per receiver, for collision episodes

  SimTime ack_ = 0, rts_ = 0, cts_ = 0, sifs_ = 0;
  std::uint64_t collisions_ = 0;
  std::uint64_t fd_transmissions_ = 0;
  std::uint64_t contentions_ = 0;
};

std::unique_ptr<Mac> make_frequency_mac(Engine& engine);
std::unique_ptr<Mac> make_csma_mac(Engine& engine);

}  // namespace rcfd::detail
