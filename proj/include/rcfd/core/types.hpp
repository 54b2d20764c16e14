#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace rcfd {

// Nodes and subcarriers are numbered from 1, as in n_1..n_N and s_1..s_S.
// Subcarrier 0 means "no subcarrier chosen".
using NodeId = std::uint32_t;
using Subcarrier = std::uint32_t;
using Symbol = std::uint32_t;

inline constexpr Subcarrier kNoSubcarrier = 0;

// One (subcarrier, symbol) pair. With m = 1 the symbol is always 0.
struct ScSymbol {
  Subcarrier sc = kNoSubcarrier;
  Symbol symbol = 0;

  friend auto operator<=>(const ScSymbol&, const ScSymbol&) = default;
};

inline std::string to_string(const ScSymbol& p) {
  std::string out = "s" + std::to_string(p.sc);
  if (p.symbol != 0) out += ":" + std::to_string(p.symbol);
  return out;
}

}  // namespace rcfd
