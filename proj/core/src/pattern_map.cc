//
// Kaleido - Copyright 2026 The Kaleido Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "kaleido/pattern_map.h"

#include <algorithm>

namespace kaleido {

void PatternMap::Add(std::uint64_t hash, const Pattern& pattern, std::uint64_t value) {
  auto [it, inserted] = entries_.try_emplace(hash);
  if (inserted) it->second.pattern = pattern;
  it->second.value += value;
}

void PatternMap::Merge(const PatternMap& other) {
  for (const auto& [hash, entry] : other.entries_) Add(hash, entry.pattern, entry.value);
}

void PatternMap::Filter(const std::function<bool(const PatternEntry&)>& keep) {
  std::erase_if(entries_, [&](const auto& kv) { return !keep(kv.second); });
}

const PatternEntry* PatternMap::Find(std::uint64_t hash) const {
  auto it = entries_.find(hash);
  return it == entries_.end() ? nullptr : &it->second;
}

std::uint64_t PatternMap::Total() const {
  std::uint64_t total = 0;
  for (const auto& [hash, entry] : entries_) total += entry.value;
  return total;
}

bool PatternMap::operator==(const PatternMap& other) const {
  if (entries_.size() != other.entries_.size()) return false;
  auto a = entries_.begin();
  auto b = other.entries_.begin();
  for (; a != entries_.end(); ++a, ++b) {
    if (a->first != b->first || a->second.value != b->second.value ||
        !(a->second.pattern == b->second.pattern)) {
      return false;
    }
  }
  return true;
}

MniState::MniState(int orbit_count, std::uint64_t threshold)
    : orbit_count_(orbit_count), threshold_(std::max<std::uint64_t>(1, threshold)),
      domains_(orbit_count) {}

void MniState::AddImage(int orbit, VertexId v) {
  if (frequent_) return;
  auto& domain = domains_[orbit];
  if (domain.size() >= threshold_) return;
  domain.insert(v);
  if (domain.size() == threshold_) CheckFrequent();
}

void MniState::Merge(const MniState& other) {
  if (frequent_) return;
  if (other.frequent_) {
    frequent_ = true;
    domains_.clear();
    return;
  }
  for (int o = 0; o < orbit_count_; ++o) {
    auto& domain = domains_[o];
    for (VertexId v : other.domains_[o]) {
      if (domain.size() >= threshold_) break;
      domain.insert(v);
    }
  }
  CheckFrequent();
}

void MniState::CheckFrequent() {
  for (const auto& d : domains_) {
    if (d.size() < threshold_) return;
  }
  frequent_ = true;
  std::vector<std::unordered_set<VertexId>>().swap(domains_);
}

std::uint64_t MniState::support() const {
  if (frequent_) return threshold_;
  std::uint64_t s = threshold_;
  for (const auto& d : domains_) s = std::min<std::uint64_t>(s, d.size());
  return s;
}

void MergeMni(MniMap* into, const MniMap& from) {
  for (const auto& [hash, entry] : from) {
    auto it = into->find(hash);
    if (it == into->end()) {
      into->emplace(hash, entry);
    } else {
      it->second.state.Merge(entry.state);
    }
  }
}

}  // namespace kaleido
