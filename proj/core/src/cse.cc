//
// Kaleido - Copyright 2026 The Kaleido Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "kaleido/cse.h"

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>

namespace kaleido {

std::uint64_t LevelPayloadBytes(const CseLevel& level) {
  return level.vert.size() * sizeof(ElementId) + level.off.size() * sizeof(Offset);
}

std::uint64_t LevelSizeBytes(const CseLevel& level) {
  return LevelPayloadBytes(level) + sizeof(level.vert) + sizeof(level.off);
}

void Cse::InitIdentity(std::uint64_t n) {
  levels_.clear();
  CseLevel base;
  base.index = 1;
  base.implicit_identity = true;
  base.count = n;
  levels_.push_back(std::move(base));
}

void Cse::InitBase(std::vector<ElementId> elements) {
  if (!std::is_sorted(elements.begin(), elements.end()) ||
      std::adjacent_find(elements.begin(), elements.end()) != elements.end()) {
    throw InvariantError("base level must be strictly ascending");
  }
  levels_.clear();
  CseLevel base;
  base.index = 1;
  base.count = elements.size();
  base.vert = std::move(elements);
  levels_.push_back(std::move(base));
}

void Cse::AppendLevel(std::vector<ElementId> vert, std::vector<Offset> off) {
  if (levels_.empty()) throw InvariantError("AppendLevel on an uninitialized CSE");
  const CseLevel& parent = levels_.back();
  if (parent.residency != Residency::kMemory) {
    throw InvariantError("cannot append a resident level above an on-disk level");
  }
  if (off.size() != parent.count + 1) {
    throw InvariantError("level " + std::to_string(levels_.size() + 1) + ": off has " +
                         std::to_string(off.size()) + " entries, expected " +
                         std::to_string(parent.count + 1));
  }
  if (off.front() != 0 || off.back() != vert.size()) {
    throw InvariantError("level " + std::to_string(levels_.size() + 1) +
                         ": off must start at 0 and end at len(vert)");
  }
  for (std::size_t i = 0; i + 1 < off.size(); ++i) {
    if (off[i] > off[i + 1]) throw InvariantError("off array is not monotone");
    for (Offset j = off[i]; j + 1 < off[i + 1]; ++j) {
      if (vert[j] >= vert[j + 1]) throw InvariantError("children are not strictly ascending");
    }
  }
  CseLevel level;
  level.index = static_cast<std::uint32_t>(levels_.size() + 1);
  level.count = vert.size();
  level.vert = std::move(vert);
  level.off = std::move(off);
  levels_.push_back(std::move(level));
}

void Cse::AppendSpilledLevel(std::vector<PartInfo> parts) {
  if (levels_.empty()) throw InvariantError("AppendSpilledLevel on an uninitialized CSE");
  CseLevel level;
  level.index = static_cast<std::uint32_t>(levels_.size() + 1);
  level.residency = Residency::kDisk;
  std::uint64_t total = 0;
  for (const auto& p : parts) {
    if (p.vert_begin != total) throw InvariantError("parts must be contiguous");
    total += p.vert_count;
  }
  level.count = total;
  level.parts = std::move(parts);
  levels_.push_back(std::move(level));
}

void Cse::MarkSpilled(std::size_t k, std::vector<PartInfo> parts) {
  CseLevel& level = levels_.at(k - 1);
  if (k < levels_.size() && levels_[k].residency == Residency::kMemory) {
    throw InvariantError("spilled levels must form a suffix");
  }
  std::uint64_t total = 0;
  for (const auto& p : parts) total += p.vert_count;
  if (total != level.count) throw InvariantError("spilled parts do not cover the level");
  level.residency = Residency::kDisk;
  level.parts = std::move(parts);
  std::vector<ElementId>().swap(level.vert);
  std::vector<Offset>().swap(level.off);
}

std::uint64_t Cse::ParentIndex(std::size_t k, std::uint64_t offset) const {
  const CseLevel& level = levels_[k - 1];
  return OwningSlice(level.off, offset);
}

void Cse::ExtractInto(std::size_t k, std::uint64_t offset, std::span<ElementId> out) const {
  if (k == 0 || k > levels_.size()) throw std::out_of_range("no such level");
  if (offset >= levels_[k - 1].count) {
    throw std::out_of_range("offset " + std::to_string(offset) + " out of range at level " +
                            std::to_string(k));
  }
  std::uint64_t idx = offset;
  for (std::size_t j = k; j >= 1; --j) {
    const CseLevel& level = levels_[j - 1];
    if (level.residency != Residency::kMemory) {
      throw StorageError("level " + std::to_string(j) + " is on disk");
    }
    out[j - 1] = level.VertAt(idx);
    if (j == 1) break;
    idx = OwningSlice(level.off, idx);
  }
}

std::vector<ElementId> Cse::ExtractEmbedding(std::size_t k, std::uint64_t offset) const {
  std::vector<ElementId> out(k);
  ExtractInto(k, offset, out);
  return out;
}

std::uint64_t Cse::ResidentPayloadBytes() const {
  std::uint64_t total = 0;
  for (const auto& level : levels_) total += LevelPayloadBytes(level);
  return total;
}

namespace {

template <typename T>
void AppendLe(std::vector<char>* buf, T value) {
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    buf->push_back(static_cast<char>((static_cast<std::uint64_t>(value) >> (8 * i)) & 0xff));
  }
}

template <typename T>
T ReadLe(const char* p) {
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    v |= static_cast<std::uint64_t>(static_cast<unsigned char>(p[i])) << (8 * i);
  }
  return static_cast<T>(v);
}

std::uint64_t ByteSum(const char* data, std::size_t n, std::uint64_t acc) {
  for (std::size_t i = 0; i < n; ++i) acc += static_cast<unsigned char>(data[i]);
  return acc;
}

// Arrays are written as raw memory; the format is little-endian.
static_assert(std::endian::native == std::endian::little, "big-endian hosts are not supported");

}  // namespace

std::uint64_t WritePartFile(const std::filesystem::path& path, std::uint32_t level,
                            std::span<const std::span<const ElementId>> vert_pieces,
                            std::span<const Offset> off) {
  std::uint64_t vert_count = 0;
  for (auto piece : vert_pieces) vert_count += piece.size();

  std::vector<char> header;
  header.insert(header.end(), kPartMagic, kPartMagic + 4);
  AppendLe<std::uint32_t>(&header, level);
  AppendLe<std::uint8_t>(&header, static_cast<std::uint8_t>(kIdWidth));
  AppendLe<std::uint64_t>(&header, vert_count);
  AppendLe<std::uint64_t>(&header, off.size());

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw StorageError("cannot create " + path.string());
  std::uint64_t sum = ByteSum(header.data(), header.size(), 0);
  out.write(header.data(), static_cast<std::streamsize>(header.size()));
  for (auto piece : vert_pieces) {
    const char* bytes = reinterpret_cast<const char*>(piece.data());
    std::size_t n = piece.size_bytes();
    sum = ByteSum(bytes, n, sum);
    out.write(bytes, static_cast<std::streamsize>(n));
  }
  const char* off_bytes = reinterpret_cast<const char*>(off.data());
  sum = ByteSum(off_bytes, off.size_bytes(), sum);
  out.write(off_bytes, static_cast<std::streamsize>(off.size_bytes()));
  std::vector<char> trailer;
  AppendLe<std::uint64_t>(&trailer, sum);
  out.write(trailer.data(), static_cast<std::streamsize>(trailer.size()));
  out.flush();
  if (!out) throw StorageError("write failed for " + path.string());
  return header.size() + vert_count * sizeof(ElementId) + off.size_bytes() + trailer.size();
}

PartData ReadPartFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary | std::ios::ate);
  if (!in) throw StorageError("cannot open part " + path.string());
  const auto file_size = static_cast<std::uint64_t>(in.tellg());
  in.seekg(0);
  if (file_size < kPartHeaderBytes + 8) throw StorageError("truncated part " + path.string());

  std::array<char, kPartHeaderBytes> header{};
  in.read(header.data(), header.size());
  if (std::memcmp(header.data(), kPartMagic, 4) != 0) {
    throw StorageError("bad magic in " + path.string());
  }
  PartData part;
  part.level = ReadLe<std::uint32_t>(header.data() + 4);
  const auto id_width = ReadLe<std::uint8_t>(header.data() + 8);
  const auto vert_count = ReadLe<std::uint64_t>(header.data() + 9);
  const auto off_count = ReadLe<std::uint64_t>(header.data() + 17);
  if (id_width != kIdWidth) throw StorageError("id width mismatch in " + path.string());
  const std::uint64_t expected =
      kPartHeaderBytes + vert_count * sizeof(ElementId) + off_count * sizeof(Offset) + 8;
  if (file_size != expected) throw StorageError("size mismatch in " + path.string());

  part.vert.resize(vert_count);
  part.off.resize(off_count);
  in.read(reinterpret_cast<char*>(part.vert.data()),
          static_cast<std::streamsize>(vert_count * sizeof(ElementId)));
  in.read(reinterpret_cast<char*>(part.off.data()),
          static_cast<std::streamsize>(off_count * sizeof(Offset)));
  std::array<char, 8> trailer{};
  in.read(trailer.data(), trailer.size());
  if (!in) throw StorageError("read failed for " + path.string());

  std::uint64_t sum = ByteSum(header.data(), header.size(), 0);
  sum = ByteSum(reinterpret_cast<const char*>(part.vert.data()), vert_count * sizeof(ElementId), sum);
  sum = ByteSum(reinterpret_cast<const char*>(part.off.data()), off_count * sizeof(Offset), sum);
  if (sum != ReadLe<std::uint64_t>(trailer.data())) {
    throw StorageError("checksum mismatch in " + path.string());
  }
  return part;
}

}  // namespace kaleido
