#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rcfd/core/types.hpp"

namespace rcfd {

// What a listener observed on one subcarrier during a round. Superposed
// distinct symbols leave the subcarrier occupied but its identity ambiguous;
// identical symbols superpose into one clean observation.
struct PerceivedEntry {
  Subcarrier sc = kNoSubcarrier;
  std::uint64_t symbols = 0;  // bit k set <=> symbol k observed

  bool ambiguous() const { return std::popcount(symbols) > 1; }
  bool has(Symbol s) const { return (symbols >> s) & 1U; }
  // Only meaningful when !ambiguous().
  Symbol symbol() const { return static_cast<Symbol>(std::countr_zero(symbols)); }
  bool clean(ScSymbol p) const { return sc == p.sc && symbols == (std::uint64_t{1} << p.symbol); }

  friend bool operator==(const PerceivedEntry&, const PerceivedEntry&) = default;
};

// Set of occupied subcarriers as perceived by one node in one round,
// ordered by subcarrier index.
class PerceivedSet {
 public:
  PerceivedSet() = default;
  PerceivedSet(std::initializer_list<ScSymbol> pairs) {
    for (const auto& p : pairs) add(p);
  }
  // Convenience for m = 1: every listed subcarrier with symbol 0.
  static PerceivedSet of_subcarriers(std::initializer_list<Subcarrier> scs) {
    PerceivedSet s;
    for (const auto sc : scs) s.add({sc, 0});
    return s;
  }

  void add(ScSymbol p);
  void merge(const PerceivedSet& other);

  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  std::span<const PerceivedEntry> entries() const { return entries_; }

  const PerceivedEntry* find(Subcarrier sc) const;
  bool contains_sc(Subcarrier sc) const { return find(sc) != nullptr; }
  // The pair is present and its subcarrier is not ambiguous.
  bool contains_clean(ScSymbol p) const;
  // The set is exactly {p}, unambiguous.
  bool is_clean_singleton(ScSymbol p) const;
  bool any_ambiguous() const;

  std::optional<Subcarrier> min_sc() const;

  // Subcarriers only, in ascending order.
  std::vector<Subcarrier> subcarriers() const;

  void clear() { entries_.clear(); }

  friend bool operator==(const PerceivedSet&, const PerceivedSet&) = default;

 private:
  std::vector<PerceivedEntry> entries_;
};

}  // namespace rcfd
