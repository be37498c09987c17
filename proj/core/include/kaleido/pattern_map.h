//
// Kaleido - Copyright 2026 The Kaleido Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef KALEIDO_PATTERN_MAP_H_
#define KALEIDO_PATTERN_MAP_H_

#include <cstdint>
#include <functional>
#include <map>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "kaleido/isomorphism.h"

namespace kaleido {

struct PatternEntry {
  Pattern pattern;  // canonical form
  std::uint64_t value = 0;
};

// Pattern hash -> (canonical pattern, aggregate), ordered by hash so that
// iteration and serialization are deterministic.
class PatternMap {
 public:
  using Entries = std::map<std::uint64_t, PatternEntry>;

  // Adds `value` to the entry for `hash`, creating it with `pattern`.
  void Add(std::uint64_t hash, const Pattern& pattern, std::uint64_t value);
  void Merge(const PatternMap& other);
  // Keeps only entries for which keep(entry) holds.
  void Filter(const std::function<bool(const PatternEntry&)>& keep);

  const Entries& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  bool contains(std::uint64_t hash) const { return entries_.count(hash) != 0; }
  const PatternEntry* Find(std::uint64_t hash) const;
  std::uint64_t Total() const;

  bool operator==(const PatternMap& other) const;

 private:
  Entries entries_;
};

// Minimum-image support of one pattern. Each automorphism orbit of the
// pattern keeps the distinct graph vertices mapped onto it, capped at the
// threshold; once every orbit reaches the threshold the pattern is frequent
// and the sets are released.
class MniState {
 public:
  MniState() = default;
  MniState(int orbit_count, std::uint64_t threshold);

  void AddImage(int orbit, VertexId v);
  void Merge(const MniState& other);

  bool frequent() const { return frequent_; }
  // min(true support, threshold).
  std::uint64_t support() const;
  int orbit_count() const { return orbit_count_; }

 private:
  void CheckFrequent();

  int orbit_count_ = 0;
  std::uint64_t threshold_ = 1;
  bool frequent_ = false;
  std::vector<std::unordered_set<VertexId>> domains_;
};

struct MniEntry {
  Pattern pattern;  // canonical form
  MniState state;
};

using MniMap = std::unordered_map<std::uint64_t, MniEntry>;

// Merges `from` into `into`; both must use the same threshold.
void MergeMni(MniMap* into, const MniMap& from);

}  // namespace kaleido

#endif  // KALEIDO_PATTERN_MAP_H_
