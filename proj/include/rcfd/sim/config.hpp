#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "rcfd/core/contention.hpp"

namespace rcfd {

enum class Protocol { Rcfd, Dcf, DcfRtsCts, FdmacApprox, Back2f };

std::string protocol_name(Protocol p);
// Throws ConfigInvalid for an unknown name.
Protocol parse_protocol(std::string_view name);
// All protocols in output order.
const std::vector<Protocol>& all_protocols();

enum class SizeModel { Fixed, Exponential };

struct SimConfig {
  std::size_t nodes = 10;         // N
  double source_rate = 10'000.0;  // R_S, bit/s per node
  double payload_bits = 1000.0;   // L, mean
  double data_rate = 1e6;         // R_T, bit/s
  std::size_t subcarriers = 64;   // S
  Symbol modulation = 2;          // m
  std::size_t runs = 10;          // M
  double duration = 10.0;         // T, seconds
  TimingParams timing;
  Protocol protocol = Protocol::Rcfd;
  std::uint64_t seed = 1;
  std::uint32_t retry_limit = 7;
  std::size_t queue_cap = 1000;
  SizeModel size_model = SizeModel::Fixed;

  // Baseline (802.11g) constants; control frames go out at control_rate.
  double control_rate = 1e6;
  double ack_bits = 304.0;
  double rts_bits = 352.0;
  double cts_bits = 304.0;
  double header_bits = 0.0;  // added to every data frame when nonzero
  double slot_us = 9.0;
  double sifs_us = 10.0;
  double difs_us = 28.0;
  std::uint32_t cw_min = 15;
  std::uint32_t cw_max = 1023;

  double defer_timeout_us = 0.0;  // 0 = 2 * (L_max/R_T + ACK + 2 SIFS)
  bool require_connected = true;  // redraw disconnected topologies

  // Throws ConfigInvalid when an invariant is broken.
  void validate() const;
};

// Applies one `key = value` setting. Throws ConfigInvalid for unknown keys or
// unparsable values.
void apply_setting(SimConfig& config, std::string_view key, std::string_view value);

// Names accepted by apply_setting, in documentation order.
const std::vector<std::string>& config_keys();

}  // namespace rcfd
