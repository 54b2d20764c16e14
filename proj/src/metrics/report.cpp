#include "rcfd/metrics/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>

#include <json.hpp>

#include "rcfd/errors.hpp"

namespace rcfd {

Throughput normalized_throughput(double delivered_bits, double elapsed, std::size_t nodes,
                                 double source_rate) {
  if (!(elapsed > 0.0)) throw ZeroDuration("elapsed time must be positive");
  Throughput t;
  t.g = delivered_bits / elapsed;
  t.g0 = t.g / (static_cast<double>(nodes) * source_rate);
  return t;
}

double average_delay(std::span<const Packet> packets) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& p : packets) {
    if (p.pending()) continue;
    sum += to_seconds(p.t_done() - p.t_gen);
    ++n;
  }
  if (n == 0) throw NoTerminalPackets("no delivered or discarded packet");
  return sum / static_cast<double>(n);
}

const std::vector<std::string>& metric_names() {
  static const std::vector<std::string> names = {
      "G",         "G0",      "avg_delay",  "delivered",       "discarded",
      "pending",   "generated", "collisions", "fd_transmissions"};
  return names;
}

double metric_value(const MetricsReport& r, const std::string& name) {
  if (name == "G") return r.throughput;
  if (name == "G0") return r.normalized_throughput;
  if (name == "avg_delay") return r.avg_delay;
  if (name == "delivered") return static_cast<double>(r.delivered);
  if (name == "discarded") return static_cast<double>(r.discarded);
  if (name == "pending") return static_cast<double>(r.pending);
  if (name == "generated") return static_cast<double>(r.generated);
  if (name == "collisions") return static_cast<double>(r.collisions);
  if (name == "fd_transmissions") return static_cast<double>(r.fd_transmissions);
  throw ConfigInvalid("unknown metric " + name);
}

std::vector<AggregateRow> aggregate(std::span<const MetricsReport> reports) {
  std::vector<const MetricsReport*> sorted;
  for (const auto& r : reports) sorted.push_back(&r);
  std::sort(sorted.begin(), sorted.end(), [](const MetricsReport* a, const MetricsReport* b) {
    if (a->protocol != b->protocol) return a->protocol < b->protocol;
    if (a->nodes != b->nodes) return a->nodes < b->nodes;
    return a->seed < b->seed;
  });

  std::map<std::pair<std::string, std::size_t>, std::vector<const MetricsReport*>> groups;
  for (const auto* r : sorted) groups[{r->protocol, r->nodes}].push_back(r);

  std::vector<AggregateRow> rows;
  for (const auto& [key, group] : groups) {
    for (const auto& metric : metric_names()) {
      double sum = 0.0;
      for (const auto* r : group) sum += metric_value(*r, metric);
      const double k = static_cast<double>(group.size());
      const double mean = sum / k;
      double var = 0.0;
      if (group.size() > 1) {
        for (const auto* r : group) {
          const double d = metric_value(*r, metric) - mean;
          var += d * d;
        }
        var /= k - 1.0;
      }
      // Identical inputs must give their own value back, not a rounded mean.
      const bool all_same = std::all_of(group.begin(), group.end(), [&](const MetricsReport* r) {
        return metric_value(*r, metric) == metric_value(*group.front(), metric);
      });
      rows.push_back({key.first, key.second, metric,
                      all_same ? metric_value(*group.front(), metric) : mean,
                      all_same ? 0.0 : std::sqrt(var), group.size()});
    }
  }
  return rows;
}

namespace {

std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

void write_csv(std::ostream& out, std::span<const AggregateRow> rows) {
  out << "protocol,N,metric,mean,stddev,runs\n";
  for (const auto& r : rows) {
    out << r.protocol << ',' << r.nodes << ',' << r.metric << ',' << fmt6(r.mean) << ','
        << fmt6(r.stddev) << ',' << r.runs << '\n';
  }
}

void write_jsonl(std::ostream& out, std::span<const MetricsReport> reports) {
  for (const auto& r : reports) {
    nlohmann::ordered_json j;
    j["protocol"] = r.protocol;
    j["N"] = r.nodes;
    j["seed"] = r.seed;
    j["G"] = r.throughput;
    j["G0"] = r.normalized_throughput;
    j["avg_delay"] = r.avg_delay;
    j["generated"] = r.generated;
    j["delivered"] = r.delivered;
    j["discarded"] = r.discarded;
    j["pending"] = r.pending;
    j["collisions"] = r.collisions;
    j["fd_transmissions"] = r.fd_transmissions;
    j["packet_checksum"] = r.packet_checksum;
    out << j.dump() << '\n';
  }
}

}  // namespace rcfd
