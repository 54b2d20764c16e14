#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "rcfd/sim/packet.hpp"

namespace rcfd {

struct MetricsReport {
  std::string protocol;
  std::size_t nodes = 0;
  std::uint64_t seed = 0;
  double throughput = 0.0;             // G, bit/s
  double normalized_throughput = 0.0;  // G0
  double avg_delay = 0.0;              // seconds; 0 when nothing terminated
  std::uint64_t generated = 0;
  std::uint64_t delivered = 0;
  std::uint64_t discarded = 0;
  std::uint64_t pending = 0;  // still queued or in flight at T
  std::uint64_t collisions = 0;
  std::uint64_t fd_transmissions = 0;
  std::uint64_t packet_checksum = 0;

  friend bool operator==(const MetricsReport&, const MetricsReport&) = default;
};

struct Throughput {
  double g = 0.0;
  double g0 = 0.0;
};

// G = bits / elapsed and G0 = G / (N * R_S). Throws ZeroDuration unless
// elapsed > 0.
Throughput normalized_throughput(double delivered_bits, double elapsed, std::size_t nodes,
                                 double source_rate);

// Mean of t_done - t_gen over Delivered and Discarded packets, in seconds.
// Throws NoTerminalPackets when every packet is pending.
double average_delay(std::span<const Packet> packets);

// Metric names in output order.
const std::vector<std::string>& metric_names();
double metric_value(const MetricsReport& r, const std::string& name);

struct AggregateRow {
  std::string protocol;
  std::size_t nodes = 0;
  std::string metric;
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation, 0 for a single run
  std::size_t runs = 0;
};

// Groups by (protocol, N); rows are sorted by protocol name, then N, then
// metric in metric_names() order. Input order does not matter.
std::vector<AggregateRow> aggregate(std::span<const MetricsReport> reports);

// Header `protocol,N,metric,mean,stddev,runs`, numbers printed with %.6g.
void write_csv(std::ostream& out, std::span<const AggregateRow> rows);
// One JSON object per report.
void write_jsonl(std::ostream& out, std::span<const MetricsReport> reports);

}  // namespace rcfd
