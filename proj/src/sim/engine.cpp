#include "engine.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>

#include "rcfd/errors.hpp"
#include "rcfd/sim/traffic.hpp"

namespace rcfd {
namespace detail {

const char* to_string(FrameKind k) {
  switch (k) {
    case FrameKind::Data:
      return "data";
    case FrameKind::Rts:
      return "rts";
    case FrameKind::Cts:
      return "cts";
    case FrameKind::Ack:
      return "ack";
  }
  return "?";
}

namespace {

bool interferes(FrameKind k) { return k != FrameKind::Ack; }

}  // namespace

Engine::Engine(const SimConfig& config, const Topology& topology, std::vector<Packet> packets,
               std::uint64_t seed, const RunOptions& options)
    : config_(config), topology_(topology), packets_(std::move(packets)), options_(options),
      rng_(seed) {
  const std::size_t n = topology_.node_count();
  if (n != config_.nodes) throw ConfigInvalid("topology size differs from N");
  map_ = std::make_unique<SubcarrierMap>(build_map(n, config_.subcarriers, config_.modulation));
  queues_.resize(n);
  energy_.assign(n, 0);
  reported_busy_.assign(n, 0);
  signalling_.assign(n, 0);
  own_tx_.assign(n, 0);
  episode_until_.assign(n, 0);

  ack_ = airtime(config_.ack_bits, config_.control_rate);
  rts_ = airtime(config_.rts_bits, config_.control_rate);
  cts_ = airtime(config_.cts_bits, config_.control_rate);
  sifs_ = from_us(config_.sifs_us);
  end_ = from_seconds(config_.duration);

  for (std::size_t k = 0; k < packets_.size(); ++k) {
    auto& p = packets_[k];
    if (p.id != k + 1) throw ConfigInvalid("packet ids must be 1..n in order");
    if (p.src < 1 || p.src > n || p.dest > n || p.dest == p.src) {
      throw ConfigInvalid("packet endpoints out of range");
    }
    schedule(p.t_gen, EventKind::Arrival, p.src, p.id);
  }

  const bool frequency =
      config_.protocol == Protocol::Rcfd || config_.protocol == Protocol::Back2f;
  mac_ = frequency ? make_frequency_mac(*this) : make_csma_mac(*this);
}

void Engine::schedule(SimTime t, EventKind kind, NodeId node, std::uint64_t arg,
                      std::uint64_t token) {
  events_.push(Event{t, kind, node, seq_++, arg, token});
}

void Engine::trace(const char* event, NodeId subject, const std::string& detail) {
  if (options_.trace == nullptr) return;
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.3f", to_us(now_));
  *options_.trace << buf << ' ' << event << " n" << subject;
  if (!detail.empty()) *options_.trace << ' ' << detail;
  *options_.trace << '\n';
}

SimTime Engine::data_airtime(const Packet& p) const {
  return airtime(static_cast<double>(p.size_bits) + config_.header_bits, config_.data_rate);
}

void Engine::bump_energy(NodeId src, int delta) {
  for (const NodeId nb : topology_.neighbors(src)) energy_[nb - 1] += delta;
}

void Engine::set_signal(NodeId node, bool on) {
  if ((signalling_[node - 1] != 0) == on) return;
  signalling_[node - 1] = on ? 1 : 0;
  bump_energy(node, on ? 1 : -1);
}

std::uint64_t Engine::start_frame(Frame f, SimTime duration) {
  f.id = next_frame_++;
  f.start = now_;
  f.end = now_ + duration;
  f.overlap_srcs.clear();
  if (interferes(f.kind)) {
    for (auto& [id, g] : active_) {
      if (!interferes(g.kind)) continue;
      g.overlap_srcs.push_back(f.src);
      f.overlap_srcs.push_back(g.src);
    }
  }
  bump_energy(f.src, 1);
  ++own_tx_[f.src - 1];
  schedule(f.end, EventKind::FrameEnd, f.src, f.id);
  if (tracing()) {
    trace("tx-start", f.src,
          std::string(to_string(f.kind)) + "->n" + std::to_string(f.dest) +
              (f.packet ? " p" + std::to_string(f.packet) : "") + (f.secondary ? " fd" : ""));
  }
  const auto id = f.id;
  const auto& stored = active_.emplace(id, std::move(f)).first->second;
  mac_->on_frame_start(stored);
  return id;
}

void Engine::schedule_frame(SimTime t, Frame f, SimTime duration) {
  const std::uint64_t key = next_frame_++;
  f.end = duration;  // carried until the start
  ++own_tx_[f.src - 1];
  const NodeId src = f.src;
  scheduled_.emplace(key, std::move(f));
  schedule(t, EventKind::TxStart, src, key);
}

void Engine::finish_frame(std::uint64_t id) {
  auto it = active_.find(id);
  Frame f = std::move(it->second);
  active_.erase(it);
  bump_energy(f.src, -1);
  --own_tx_[f.src - 1];

  auto decodable_at = [&](NodeId listener) {
    if (!topology_.adjacent(f.src, listener)) return false;
    return std::none_of(f.overlap_srcs.begin(), f.overlap_srcs.end(), [&](NodeId s) {
      return s != listener && topology_.adjacent(s, listener);
    });
  };
  const bool ok = decodable_at(f.dest);
  if (f.kind == FrameKind::Data && !ok) {
    auto& until = episode_until_[f.dest - 1];
    if (f.start >= until) ++collisions_;
    until = std::max(until, f.end);
  }
  if (tracing()) {
    trace("tx-end", f.src,
          std::string(to_string(f.kind)) + "->n" + std::to_string(f.dest) +
              (ok ? " ok" : " lost"));
  }
  mac_->on_frame_end(f, ok);
  for (const NodeId l : topology_.neighbors(f.src)) {
    if (l != f.dest) mac_->on_overhear(l, f, decodable_at(l));
  }
}

bool Engine::complete(PacketId id, bool success) {
  Packet& p = packet(id);
  const bool was_pending = p.pending();
  const bool terminal = apply_outcome(p, success, now_, config_.retry_limit);
  if (terminal && was_pending) {
    auto& q = queues_[p.src - 1];
    q.erase(std::remove(q.begin(), q.end(), id), q.end());
    if (tracing()) trace(p.delivered() ? "delivered" : "discarded", p.src, "p" + std::to_string(id));
  } else if (tracing() && !terminal) {
    trace("retry", p.src, "p" + std::to_string(id) + " attempts=" + std::to_string(p.attempts));
  }
  return terminal;
}

void Engine::flush_energy() {
  // Handlers may start frames and change energy again; repeat until stable.
  for (int pass = 0; pass < 64; ++pass) {
    bool changed = false;
    for (NodeId n = 1; n <= energy_.size(); ++n) {
      const unsigned char busy = energy_[n - 1] > 0 ? 1 : 0;
      if (busy == reported_busy_[n - 1]) continue;
      reported_busy_[n - 1] = busy;
      changed = true;
      mac_->on_energy(n, busy != 0);
    }
    if (!changed) return;
  }
}

void Engine::dispatch(const Event& e) {
  switch (e.kind) {
    case EventKind::Arrival: {
      Packet& p = packet(static_cast<PacketId>(e.arg));
      if (tracing()) {
        trace("arrival", p.src, "p" + std::to_string(p.id) + "->n" + std::to_string(p.dest));
      }
      if (p.dest == 0 || queues_[p.src - 1].size() >= config_.queue_cap) {
        p.fate = Discarded{now_};
        if (tracing()) trace("discarded", p.src, "p" + std::to_string(p.id) + " at-arrival");
        return;
      }
      queues_[p.src - 1].push_back(p.id);
      mac_->on_arrival(p.src);
      return;
    }
    case EventKind::FrameEnd:
      finish_frame(e.arg);
      return;
    case EventKind::TxStart: {
      auto it = scheduled_.find(e.arg);
      Frame f = std::move(it->second);
      scheduled_.erase(it);
      const SimTime duration = f.end;
      --own_tx_[f.src - 1];
      start_frame(std::move(f), duration);
      return;
    }
    default:
      mac_->on_event(e);
      return;
  }
}

RunResult Engine::run() {
  flush_energy();
  while (!events_.empty()) {
    const Event e = events_.top();
    if (e.time >= end_) break;
    events_.pop();
    now_ = e.time;
    dispatch(e);
    flush_energy();
  }
  now_ = end_;

  RunResult result;
  MetricsReport& r = result.report;
  r.protocol = protocol_name(config_.protocol);
  r.nodes = config_.nodes;
  double generated_bits = 0.0;
  double delivered_bits = 0.0;
  for (const auto& p : packets_) {
    ++r.generated;
    generated_bits += p.size_bits;
    if (p.delivered()) {
      ++r.delivered;
      delivered_bits += p.size_bits;
    } else if (p.discarded()) {
      ++r.discarded;
    } else {
      ++r.pending;
    }
  }
  // G0 is normalised by the traffic actually offered in this run.
  const double nodes = static_cast<double>(config_.nodes);
  const double offered_rate =
      generated_bits > 0.0 ? generated_bits / (nodes * config_.duration) : config_.source_rate;
  const Throughput t =
      normalized_throughput(delivered_bits, config_.duration, config_.nodes, offered_rate);
  r.throughput = t.g;
  r.normalized_throughput = t.g0;
  try {
    r.avg_delay = average_delay(packets_);
  } catch (const NoTerminalPackets&) {
    r.avg_delay = 0.0;
  }
  r.collisions = collisions_;
  r.fd_transmissions = fd_transmissions_;
  r.packet_checksum = packet_checksum(packets_);
  result.contentions = contentions_;
  result.packets = std::move(packets_);
  return result;
}

}  // namespace detail

RunResult simulate(const SimConfig& config, const Topology& topology, std::vector<Packet> packets,
                   std::uint64_t seed, const RunOptions& options) {
  config.validate();
  detail::Engine engine(config, topology, std::move(packets), seed, options);
  RunResult r = engine.run();
  r.report.seed = seed;
  return r;
}

Topology run_topology(const SimConfig& config, std::uint64_t seed) {
  if (config.nodes < 2) throw ConfigInvalid("random topologies need N >= 2");
  for (std::uint64_t k = 0; k < 100000; ++k) {
    Topology t = generate_topology(config.nodes, derive_seed(seed, k));
    if (!config.require_connected || t.connected()) return t;
  }
  throw DegenerateNetwork("no connected topology found");
}

RunResult run_simulation(const SimConfig& config, std::uint64_t seed, const RunOptions& options) {
  config.validate();
  const Topology topo = run_topology(config, seed);
  PacketSet set = generate_packets(topo, config, derive_seed(seed, 1));
  RunResult r = simulate(config, topo, std::move(set.packets), derive_seed(seed, 2), options);
  r.report.seed = seed;
  return r;
}

}  // namespace rcfd
