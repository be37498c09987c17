//
// Kaleido - Copyright 2026 The Kaleido Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef KALEIDO_CSE_H_
#define KALEIDO_CSE_H_

#include <filesystem>
#include <span>
#include <vector>

#include "kaleido/common.h"

namespace kaleido {

enum class Residency : std::uint8_t { kMemory, kDisk };

// Location of one on-disk part of a spilled level.
//
// Parts nest: every embedding of a part has its parent inside a single part
// of the level below (or inside the resident level below). `parent_begin` is
// the global index, at the level below, of the parent that the part's local
// offset array is relative to.
struct PartInfo {
  std::filesystem::path path;
  std::uint64_t vert_begin = 0;    // global index of the first embedding
  std::uint64_t vert_count = 0;
  std::uint64_t parent_begin = 0;  // global index at the level below
  std::uint64_t parent_count = 0;  // local off array length minus one
  std::int64_t parent_part = -1;   // part index at the level below, -1 if resident
  std::uint64_t file_bytes = 0;
};

// One level of the compressed sparse embedding forest.
//
// vert holds the last element (vertex id or edge id) of every embedding at
// this level. off has one entry per embedding of the level below plus one;
// the children of parent i are vert[off[i]..off[i+1]). Level 1 has no off
// array and, when it is the full vertex set, no vert array either.
struct CseLevel {
  std::uint32_t index = 0;
  Residency residency = Residency::kMemory;
  bool implicit_identity = false;
  std::uint64_t count = 0;
  std::vector<ElementId> vert;
  std::vector<Offset> off;
  std::vector<PartInfo> parts;  // only for on-disk levels

  std::uint64_t size() const { return count; }
  ElementId VertAt(std::uint64_t i) const {
    return implicit_identity ? static_cast<ElementId>(i) : vert[i];
  }
};

// Payload bytes of the vert and off arrays currently held in memory.
std::uint64_t LevelPayloadBytes(const CseLevel& level);
// Payload plus the two array headers.
std::uint64_t LevelSizeBytes(const CseLevel& level);

class Cse {
 public:
  explicit Cse(EmbeddingKind kind = EmbeddingKind::kVertexInduced) : kind_(kind) {}

  EmbeddingKind kind() const { return kind_; }
  std::size_t depth() const { return levels_.size(); }
  bool empty() const { return levels_.empty(); }

  // Level 1 as the identity 0..n-1 (not materialized).
  void InitIdentity(std::uint64_t n);
  // Level 1 from an explicit ascending element list.
  void InitBase(std::vector<ElementId> elements);

  // Seals a new resident top level. Throws InvariantError when the arrays do
  // not chain onto the current top level.
  void AppendLevel(std::vector<ElementId> vert, std::vector<Offset> off);
  // Seals a new on-disk top level described by its parts.
  void AppendSpilledLevel(std::vector<PartInfo> parts);
  // Moves an existing resident level to disk. The level's arrays are freed.
  void MarkSpilled(std::size_t level, std::vector<PartInfo> parts);

  const CseLevel& level(std::size_t k) const { return levels_.at(k - 1); }
  const CseLevel& top() const { return levels_.back(); }

  // The k-embedding whose last element is vert_k[offset]; every level 1..k
  // must be resident.
  std::vector<ElementId> ExtractEmbedding(std::size_t level, std::uint64_t offset) const;
  // Writes elements 0..level-1 of the embedding into out[0..level).
  void ExtractInto(std::size_t level, std::uint64_t offset, std::span<ElementId> out) const;

  // Index of the parent (at level k-1) of embedding `offset` at resident level k.
  std::uint64_t ParentIndex(std::size_t level, std::uint64_t offset) const;

  std::uint64_t ResidentPayloadBytes() const;

 private:
  EmbeddingKind kind_;
  std::vector<CseLevel> levels_;
};

// Index of the slice of `off` that contains position `x`, i.e. the largest i
// with off[i] <= x. Empty slices are skipped.
inline std::uint64_t OwningSlice(std::span<const Offset> off, std::uint64_t x);

// On-disk part format, little-endian:
//   "CSE1" | level u32 | id_width u8 | vert_count u64 | off_count u64 |
//   vert[vert_count] | off[off_count] (u64) | checksum u64
// The checksum is the wrapping sum of every preceding byte.
inline constexpr char kPartMagic[4] = {'C', 'S', 'E', '1'};
inline constexpr std::size_t kPartHeaderBytes = 4 + 4 + 1 + 8 + 8;

struct PartData {
  std::uint32_t level = 0;
  std::vector<ElementId> vert;
  std::vector<Offset> off;
};

// Writes a part assembled from consecutive pieces. Returns bytes written.
std::uint64_t WritePartFile(const std::filesystem::path& path, std::uint32_t level,
                            std::span<const std::span<const ElementId>> vert_pieces,
                            std::span<const Offset> off);
// Reads and validates a part. Throws StorageError on any format or checksum
// mismatch.
PartData ReadPartFile(const std::filesystem::path& path);

inline std::uint64_t OwningSlice(std::span<const Offset> off, std::uint64_t x) {
  std::size_t lo = 0;
  std::size_t hi = off.size();
  // upper_bound(off, x) - 1
  while (lo < hi) {
    std::size_t mid = lo + (hi - lo) / 2;
    if (off[mid] <= x) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  return lo - 1;
}

}  // namespace kaleido

#endif  // KALEIDO_CSE_H_
