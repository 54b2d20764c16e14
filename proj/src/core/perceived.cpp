#include "rcfd/core/perceived.hpp"

#include <algorithm>

namespace rcfd {

void PerceivedSet::add(ScSymbol p) {
  const std::uint64_t bit = std::uint64_t{1} << p.symbol;
  auto it = std::lower_bound(entries_.begin(), entries_.end(), p.sc,
                             [](const PerceivedEntry& e, Subcarrier sc) { return e.sc < sc; });
  if (it != entries_.end() && it->sc == p.sc) {
    it->symbols |= bit;
  } else {
    entries_.insert(it, PerceivedEntry{p.sc, bit});
  }
}

void PerceivedSet::merge(const PerceivedSet& other) {
  for (const auto& e : other.entries_) {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), e.sc,
                               [](const PerceivedEntry& x, Subcarrier sc) { return x.sc < sc; });
    if (it != entries_.end() && it->sc == e.sc) {
      it->symbols |= e.symbols;
    } else {
      entries_.insert(it, e);
    }
  }
}

const PerceivedEntry* PerceivedSet::find(Subcarrier sc) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), sc,
                             [](const PerceivedEntry& e, Subcarrier s) { return e.sc < s; });
  if (it == entries_.end() || it->sc != sc) return nullptr;
  return &*it;
}

bool PerceivedSet::contains_clean(ScSymbol p) const {
  const PerceivedEntry* e = find(p.sc);
  return e != nullptr && e->clean(p);
}

bool PerceivedSet::is_clean_singleton(ScSymbol p) const {
  return entries_.size() == 1 && entries_.front().clean(p);
}

bool PerceivedSet::any_ambiguous() const {
  return std::any_of(entries_.begin(), entries_.end(),
                     [](const PerceivedEntry& e) { return e.ambiguous(); });
}

std::optional<Subcarrier> PerceivedSet::min_sc() const {
  if (entries_.empty()) return std::nullopt;
  return entries_.front().sc;
}

std::vector<Subcarrier> PerceivedSet::subcarriers() const {
  std::vector<Subcarrier> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.sc);
  return out;
}

}  // namespace rcfd
