#include "rcfd/sim/config.hpp"

#include <charconv>
#include <cmath>
#include <functional>

#include "rcfd/errors.hpp"

namespace rcfd {

std::string protocol_name(Protocol p) {
  switch (p) {
    case Protocol::Rcfd:
      return "rcfd";
    case Protocol::Dcf:
      return "dcf";
    case Protocol::DcfRtsCts:
      return "dcf-rtscts";
    case Protocol::FdmacApprox:
      return "fdmac-approx";
    case Protocol::Back2f:
      return "back2f";
  }
  return "?";
}

Protocol parse_protocol(std::string_view name) {
  for (const Protocol p : all_protocols()) {
    if (protocol_name(p) == name) return p;
  }
  throw ConfigInvalid("unknown protocol '" + std::string(name) + "'");
}

const std::vector<Protocol>& all_protocols() {
  static const std::vector<Protocol> list = {Protocol::Back2f, Protocol::Dcf, Protocol::DcfRtsCts,
                                             Protocol::FdmacApprox, Protocol::Rcfd};
  return list;
}

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw ConfigInvalid(what);
}

bool positive(double v) { return std::isfinite(v) && v > 0.0; }

double to_double(std::string_view key, std::string_view v) {
  double out = 0.0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw ConfigInvalid("bad number for " + std::string(key) + ": '" + std::string(v) + "'");
  }
  return out;
}

std::uint64_t to_uint(std::string_view key, std::string_view v) {
  std::uint64_t out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw ConfigInvalid("bad integer for " + std::string(key) + ": '" + std::string(v) + "'");
  }
  return out;
}

bool to_bool(std::string_view key, std::string_view v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigInvalid("bad boolean for " + std::string(key) + ": '" + std::string(v) + "'");
}

using Setter = std::function<void(SimConfig&, std::string_view, std::string_view)>;

const std::vector<std::pair<std::string, Setter>>& setters() {
  static const std::vector<std::pair<std::string, Setter>> table = {
      {"N", [](SimConfig& c, auto k, auto v) { c.nodes = to_uint(k, v); }},
      {"R_S", [](SimConfig& c, auto k, auto v) { c.source_rate = to_double(k, v); }},
      {"L", [](SimConfig& c, auto k, auto v) { c.payload_bits = to_double(k, v); }},
      {"R_T", [](SimConfig& c, auto k, auto v) { c.data_rate = to_double(k, v); }},
      {"S", [](SimConfig& c, auto k, auto v) { c.subcarriers = to_uint(k, v); }},
      {"m", [](SimConfig& c, auto k, auto v) { c.modulation = static_cast<Symbol>(to_uint(k, v)); }},
      {"M", [](SimConfig& c, auto k, auto v) { c.runs = to_uint(k, v); }},
      {"T", [](SimConfig& c, auto k, auto v) { c.duration = to_double(k, v); }},
      {"t_scan", [](SimConfig& c, auto k, auto v) { c.timing.t_scan = to_double(k, v); }},
      {"t_sym", [](SimConfig& c, auto k, auto v) { c.timing.t_sym = to_double(k, v); }},
      {"t_p", [](SimConfig& c, auto k, auto v) { c.timing.t_p = to_double(k, v); }},
      {"mac", [](SimConfig& c, auto, auto v) { c.protocol = parse_protocol(v); }},
      {"seed", [](SimConfig& c, auto k, auto v) { c.seed = to_uint(k, v); }},
      {"retry_limit",
       [](SimConfig& c, auto k, auto v) { c.retry_limit = static_cast<std::uint32_t>(to_uint(k, v)); }},
      {"queue_cap", [](SimConfig& c, auto k, auto v) { c.queue_cap = to_uint(k, v); }},
      {"size_model",
       [](SimConfig& c, auto, auto v) {
         if (v == "fixed") {
           c.size_model = SizeModel::Fixed;
         } else if (v == "exponential") {
           c.size_model = SizeModel::Exponential;
         } else {
           throw ConfigInvalid("size_model must be fixed or exponential");
         }
       }},
      {"control_rate", [](SimConfig& c, auto k, auto v) { c.control_rate = to_double(k, v); }},
      {"ack_bits", [](SimConfig& c, auto k, auto v) { c.ack_bits = to_double(k, v); }},
      {"rts_bits", [](SimConfig& c, auto k, auto v) { c.rts_bits = to_double(k, v); }},
      {"cts_bits", [](SimConfig& c, auto k, auto v) { c.cts_bits = to_double(k, v); }},
      {"header_bits", [](SimConfig& c, auto k, auto v) { c.header_bits = to_double(k, v); }},
      {"slot", [](SimConfig& c, auto k, auto v) { c.slot_us = to_double(k, v); }},
      {"sifs", [](SimConfig& c, auto k, auto v) { c.sifs_us = to_double(k, v); }},
      {"difs", [](SimConfig& c, auto k, auto v) { c.difs_us = to_double(k, v); }},
      {"cw_min",
       [](SimConfig& c, auto k, auto v) { c.cw_min = static_cast<std::uint32_t>(to_uint(k, v)); }},
      {"cw_max",
       [](SimConfig& c, auto k, auto v) { c.cw_max = static_cast<std::uint32_t>(to_uint(k, v)); }},
      {"defer_timeout", [](SimConfig& c, auto k, auto v) { c.defer_timeout_us = to_double(k, v); }},
      {"require_connected",
       [](SimConfig& c, auto k, auto v) { c.require_connected = to_bool(k, v); }},
  };
  return table;
}

}  // namespace

void SimConfig::validate() const {
  require(nodes >= 1, "N must be at least 1");
  require(positive(source_rate), "R_S must be positive");
  require(positive(payload_bits), "L must be positive");
  require(positive(data_rate), "R_T must be positive");
  require(subcarriers >= 2 && subcarriers % 2 == 0, "S must be even and at least 2");
  require(modulation >= 1 && modulation <= 64, "m must be in 1..64");
  require(nodes <= modulation * subcarriers / 2, "N exceeds the m*S/2 subcarrier capacity");
  require(runs >= 1, "M must be at least 1");
  require(positive(duration), "T must be positive");
  timing.validate();
  require(retry_limit >= 1, "retry_limit must be at least 1");
  require(queue_cap >= 1, "queue_cap must be at least 1");
  require(positive(control_rate), "control_rate must be positive");
  require(positive(ack_bits) && positive(rts_bits) && positive(cts_bits),
          "control frame sizes must be positive");
  require(std::isfinite(header_bits) && header_bits >= 0.0, "header_bits must be non-negative");
  require(positive(slot_us), "slot must be positive");
  require(std::isfinite(sifs_us) && sifs_us >= 0.0, "sifs must be non-negative");
  require(std::isfinite(difs_us) && difs_us >= 0.0, "difs must be non-negative");
  require(cw_min >= 1 && cw_max >= cw_min, "need 1 <= cw_min <= cw_max");
  require(std::isfinite(defer_timeout_us) && defer_timeout_us >= 0.0,
          "defer_timeout must be non-negative");
}

void apply_setting(SimConfig& config, std::string_view key, std::string_view value) {
  for (const auto& [name, set] : setters()) {
    if (name == key) {
      set(config, key, value);
      return;
    }
  }
  throw ConfigInvalid("unknown config key '" + std::string(key) + "'");
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> out;
    for (const auto& [name, set] : setters()) out.push_back(name);
    return out;
  }();
  return keys;
}

}  // namespace rcfd
