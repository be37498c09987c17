//
// Kaleido - Copyright 2026 The Kaleido Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "kaleido/hybrid_storage.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <random>
#include <utility>

#include "kaleido/partition.h"

namespace kaleido {

namespace fs = std::filesystem;

std::vector<std::size_t> SpillPlan::SpilledLevels(std::size_t depth) const {
  std::vector<std::size_t> out;
  if (first_spilled == 0) return out;
  for (std::size_t j = first_spilled; j <= depth; ++j) out.push_back(j);
  return out;
}

SpillPlan PlanSpill(std::span<const std::uint64_t> level_bytes, std::uint64_t budget,
                    int workers) {
  SpillPlan plan;
  plan.memory_budget = budget;
  plan.parts_per_level = static_cast<std::size_t>(std::max(1, workers));
  if (budget == 0) return plan;
  const std::uint64_t total = std::accumulate(level_bytes.begin(), level_bytes.end(), 0ull);
  if (total <= budget) return plan;

  const std::size_t n = level_bytes.size();
  if (n < 3) return plan;
  const std::uint64_t base = level_bytes[0] + level_bytes[1];
  if (base > budget) {
    throw BudgetTooSmallError("memory budget of " + std::to_string(budget) +
                              " bytes cannot hold levels 1-2 (" + std::to_string(base) +
                              " bytes)");
  }
  std::size_t s = 3;
  std::uint64_t resident = base;
  while (s < n && resident + level_bytes[s - 1] <= budget) {
    resident += level_bytes[s - 1];
    ++s;
  }
  plan.first_spilled = s;
  return plan;
}

std::uint64_t EstimateNextLevelBytes(std::uint64_t count, double mean_prediction) {
  const auto children = static_cast<std::uint64_t>(std::ceil(count * mean_prediction));
  return children * sizeof(ElementId) + (count + 1) * sizeof(Offset) +
         sizeof(std::vector<ElementId>) + sizeof(std::vector<Offset>);
}

void MemoryTracker::Add(std::uint64_t bytes) {
  const std::uint64_t now = current_.fetch_add(bytes) + bytes;
  std::uint64_t peak = peak_.load();
  while (now > peak && !peak_.compare_exchange_weak(peak, now)) {
  }
}

void MemoryTracker::Sub(std::uint64_t bytes) { current_.fetch_sub(bytes); }

namespace {

std::uint64_t BufferBytes(const std::vector<ElementId>& vert, const std::vector<Offset>& off) {
  return vert.size() * sizeof(ElementId) + off.size() * sizeof(Offset);
}

std::uint64_t BufferBytes(const LevelBuffer& buf) { return BufferBytes(buf.vert, buf.off); }

std::uint64_t CeilDiv(std::uint64_t a, std::uint64_t b) { return (a + b - 1) / b; }

double Mean(std::span<const std::uint64_t> values) {
  if (values.empty()) return 0.0;
  long double sum = 0;
  for (auto v : values) sum += v;
  return static_cast<double>(sum / values.size());
}

}  // namespace

// ---------------------------------------------------------------------------
// PartWriter

PartWriter::PartWriter(MemoryTracker* tracker, std::size_t max_pending)
    : tracker_(tracker), max_pending_(std::max<std::size_t>(1, max_pending)) {
  thread_ = std::thread([this] { Run(); });
}

PartWriter::~PartWriter() {
  {
    std::lock_guard<std::mutex> lock(mu_);
    closing_ = true;
  }
  cv_.notify_all();
  thread_.join();
  for (const auto& job : queue_) tracker_->Sub(BufferBytes(job.vert, job.off));
}

void PartWriter::Enqueue(fs::path path, std::uint32_t level, std::vector<ElementId> vert,
                         std::vector<Offset> off) {
  std::unique_lock<std::mutex> lock(mu_);
  cv_.wait(lock, [&] { return queue_.size() < max_pending_ || error_; });
  if (error_) {
    tracker_->Sub(BufferBytes(vert, off));
    return;
  }
  queue_.push_back({std::move(path), level, std::move(vert), std::move(off)});
  lock.unlock();
  cv_.notify_all();
}

void PartWriter::Run() {
  while (true) {
    Job job;
    {
      std::unique_lock<std::mutex> lock(mu_);
      cv_.wait(lock, [&] { return closing_ || !queue_.empty(); });
      if (queue_.empty()) return;
      job = std::move(queue_.front());
      queue_.pop_front();
      busy_ = true;
    }
    cv_.notify_all();
    bool failed;
    {
      std::lock_guard<std::mutex> lock(mu_);
      failed = static_cast<bool>(error_);
    }
    if (!failed) {
      try {
        std::array<std::span<const ElementId>, 1> pieces{std::span<const ElementId>(job.vert)};
        const std::uint64_t bytes = WritePartFile(job.path, job.level, pieces, job.off);
        std::lock_guard<std::mutex> lock(mu_);
        written_.push_back(job.path);
        sizes_.push_back(bytes);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu_);
        written_.push_back(job.path);
        error_ = std::current_exception();
      }
    }
    tracker_->Sub(BufferBytes(job.vert, job.off));
    {
      std::lock_guard<std::mutex> lock(mu_);
      busy_ = false;
    }
    cv_.notify_all();
  }
}

std::vector<std::uint64_t> PartWriter::Finish() {
  std::unique_lock<std::mutex> lock(mu_);
  cv_.wait(lock, [&] { return (queue_.empty() && !busy_) || error_; });
  // With an error pending, wait for the in-flight job so no file appears
  // after the cleanup below.
  cv_.wait(lock, [&] { return !busy_; });
  if (error_) {
    for (const auto& job : queue_) tracker_->Sub(BufferBytes(job.vert, job.off));
    queue_.clear();
    std::error_code ec;
    for (const auto& p : written_) fs::remove(p, ec);
    written_.clear();
    sizes_.clear();
    auto err = error_;
    error_ = nullptr;
    std::rethrow_exception(err);
  }
  written_.clear();
  return std::exchange(sizes_, {});
}

// ---------------------------------------------------------------------------
// SlidingWindow

SlidingWindow::SlidingWindow(const CseLevel& level, MemoryTracker* tracker,
                             std::atomic<std::uint64_t>* bytes_read)
    : level_(level), tracker_(tracker), bytes_read_(bytes_read) {}

SlidingWindow::~SlidingWindow() {
  Release(&main_);
  if (candidate_.valid()) {
    try {
      auto part = candidate_.get();
      Release(&part);
    } catch (...) {
    }
  }
}

std::unique_ptr<PartData> SlidingWindow::Load(std::size_t index) {
  const PartInfo& info = level_.parts[index];
  auto part = std::make_unique<PartData>(ReadPartFile(info.path));
  if (part->level != level_.index || part->vert.size() != info.vert_count ||
      part->off.size() != info.parent_count + 1) {
    throw StorageError("part " + info.path.string() + " does not match its descriptor");
  }
  tracker_->Add(BufferBytes(part->vert, part->off));
  *bytes_read_ += info.file_bytes;
  return part;
}

void SlidingWindow::Release(std::unique_ptr<PartData>* part) {
  if (*part) {
    tracker_->Sub(BufferBytes((*part)->vert, (*part)->off));
    part->reset();
  }
}

void SlidingWindow::Prefetch(std::size_t index) {
  candidate_index_ = static_cast<std::int64_t>(index);
  candidate_ = std::async(std::launch::async, [this, index] { return Load(index); });
}

void SlidingWindow::MoveTo(std::size_t index) {
  if (main_index_ == static_cast<std::int64_t>(index)) return;
  Release(&main_);
  if (candidate_index_ == static_cast<std::int64_t>(index)) {
    main_ = candidate_.get();
  } else {
    if (candidate_.valid()) {
      auto stale = candidate_.get();
      Release(&stale);
    }
    main_ = Load(index);
  }
  candidate_index_ = -1;
  main_index_ = static_cast<std::int64_t>(index);
  if (index + 1 < level_.parts.size()) Prefetch(index + 1);
  max_held_ = std::max(max_held_, held_parts());
}

int SlidingWindow::held_parts() const {
  return (main_ ? 1 : 0) + (candidate_index_ >= 0 ? 1 : 0);
}

// ---------------------------------------------------------------------------
// HybridStore

namespace {

// One window per spilled level, aligned so that every window's main part
// holds the ancestors of the top window's main part.
class Windows {
 public:
  Windows(const Cse& cse, std::size_t first_spilled, std::size_t top, MemoryTracker* tracker,
          std::atomic<std::uint64_t>* bytes_read)
      : cse_(cse), first_(first_spilled), top_(top) {
    for (std::size_t j = first_; j <= top_; ++j) {
      windows_.push_back(std::make_unique<SlidingWindow>(cse.level(j), tracker, bytes_read));
    }
  }

  void Align(std::size_t part) {
    std::size_t j = top_;
    std::int64_t p = static_cast<std::int64_t>(part);
    while (j >= first_ && p >= 0) {
      at(j).MoveTo(static_cast<std::size_t>(p));
      p = cse_.level(j).parts[p].parent_part;
      --j;
    }
  }

  // Writes elements 0..level-1 of the embedding at local index `local` of
  // the main part of `level`.
  void Extract(std::size_t level, std::uint64_t local, std::span<ElementId> out) const {
    std::size_t j = level;
    while (true) {
      const SlidingWindow& w = at(j);
      const PartData& part = w.main();
      out[j - 1] = part.vert[local];
      const std::uint64_t parent = w.main_info().parent_begin + OwningSlice(part.off, local);
      --j;
      if (j < first_) {
        cse_.ExtractInto(j, parent, out.first(j));
        return;
      }
      local = parent - at(j).main_info().vert_begin;
    }
  }

  int MaxHeld() const {
    int m = 0;
    for (const auto& w : windows_) m = std::max(m, w->max_held_parts());
    return m;
  }

 private:
  SlidingWindow& at(std::size_t level) { return *windows_[level - first_]; }
  const SlidingWindow& at(std::size_t level) const { return *windows_[level - first_]; }

  const Cse& cse_;
  std::size_t first_;
  std::size_t top_;
  std::vector<std::unique_ptr<SlidingWindow>> windows_;
};

// The main part of the top window, addressed by local index.
class WindowSource final : public EmbeddingSource {
 public:
  WindowSource(const Windows& windows, std::size_t level, std::uint64_t count)
      : windows_(windows), level_(level), count_(count) {}
  std::uint64_t size() const override { return count_; }
  std::size_t length() const override { return level_; }
  void Extract(std::uint64_t i, std::span<ElementId> out) const override {
    windows_.Extract(level_, i, out);
  }

 private:
  const Windows& windows_;
  std::size_t level_;
  std::uint64_t count_;
};

}  // namespace

HybridStore::HybridStore(const Graph& g, EmbeddingKind kind, EngineOptions options)
    : g_(g), options_(std::move(options)), cse_(kind) {
  options_.workers = std::max(1, options_.workers);
  plan_.memory_budget = options_.memory_budget;
  plan_.parts_per_level = static_cast<std::size_t>(options_.workers);
  plan_.spill_dir = options_.spill_dir;
}

HybridStore::~HybridStore() {
  if (!part_dir_.empty()) {
    std::error_code ec;
    fs::remove_all(part_dir_, ec);
  }
}

void HybridStore::Init() { InitLevel(g_, &cse_); }

void HybridStore::InitBase(std::vector<ElementId> elements) {
  tracker_.Add(elements.size() * sizeof(ElementId));
  cse_.InitBase(std::move(elements));
}

void HybridStore::EnsurePartDir() {
  if (!part_dir_.empty()) return;
  fs::path base = options_.spill_dir.empty() ? fs::temp_directory_path() : options_.spill_dir;
  std::error_code ec;
  fs::create_directories(base, ec);
  std::random_device rd;
  for (int attempt = 0; attempt < 100; ++attempt) {
    char name[32];
    std::snprintf(name, sizeof(name), "kaleido-%08x", rd());
    fs::path dir = base / name;
    if (fs::create_directory(dir, ec)) {
      part_dir_ = dir;
      return;
    }
    if (ec) break;
  }
  throw StorageError("cannot create a spill directory under " + base.string());
}

fs::path HybridStore::PartPath(std::size_t level, std::size_t part) {
  EnsurePartDir();
  return part_dir_ / ("L" + std::to_string(level) + "_P" + std::to_string(part) + ".cse");
}

std::uint64_t HybridStore::PartTargetBytes(std::size_t spilled_levels) const {
  if (options_.part_bytes != 0) return options_.part_bytes;
  std::uint64_t resident = 0;
  for (std::size_t j = 1; j <= cse_.depth(); ++j) {
    if (cse_.level(j).residency == Residency::kMemory) resident += LevelSizeBytes(cse_.level(j));
  }
  const std::uint64_t avail =
      options_.memory_budget > resident ? options_.memory_budget - resident : 0;
  return std::max(kMinPartBytes, avail / (2 * spilled_levels + 2));
}

void HybridStore::Explore(const ExploreFilters& filters) {
  if (cse_.empty()) throw InvariantError("Explore before Init");
  if (cse_.top().residency == Residency::kMemory) {
    auto preds = PredictLevel(g_, cse_, cse_.depth(), options_.workers);
    const std::uint64_t pred_bytes = preds.size() * sizeof(std::uint64_t);
    tracker_.Add(pred_bytes);
    bool done = false;
    try {
      UpdatePlan(preds);
      if (cse_.top().residency == Residency::kMemory) {
        if (plan_.spills(cse_.depth() + 1)) {
          ExploreToDisk(filters, preds);
        } else {
          ExploreResident(filters, preds);
        }
        done = true;
      }
    } catch (...) {
      tracker_.Sub(pred_bytes);
      throw;
    }
    tracker_.Sub(pred_bytes);
    if (!done) ExploreSpilled(filters);
  } else {
    ExploreSpilled(filters);
  }
  if (plan_.first_spilled != 0) WriteManifest();
}

void HybridStore::UpdatePlan(const std::vector<std::uint64_t>& preds) {
  if (options_.memory_budget == 0) return;
  std::vector<std::uint64_t> level_bytes;
  for (std::size_t j = 1; j <= cse_.depth(); ++j) level_bytes.push_back(LevelSizeBytes(cse_.level(j)));
  level_bytes.push_back(EstimateNextLevelBytes(cse_.top().count, Mean(preds)));
  SpillPlan next = PlanSpill(level_bytes, options_.memory_budget, options_.workers);
  if (next.first_spilled == 0) return;
  if (next.first_spilled <= cse_.depth()) SpillResidentLevels(next.first_spilled);
  plan_.first_spilled = next.first_spilled;
}

void HybridStore::SpillResidentLevels(std::size_t from) {
  const std::size_t depth = cse_.depth();
  const std::uint64_t target = PartTargetBytes(depth - from + 2);
  // Part boundaries are chosen bottom-up so that each level nests in the one
  // below, then written top-down because a level can only go to disk once
  // the level above it is there.
  std::vector<std::vector<PartInfo>> plans;
  for (std::size_t j = from; j <= depth; ++j) {
    const CseLevel& level = cse_.level(j);
    struct Segment {
      std::uint64_t begin, count;
      std::int64_t part;
    };
    std::vector<Segment> segments;
    if (j == from) {
      segments.push_back({0, cse_.level(j - 1).count, -1});
    } else {
      const auto& below = plans.back();
      for (std::size_t q = 0; q < below.size(); ++q) {
        segments.push_back({below[q].vert_begin, below[q].vert_count, static_cast<std::int64_t>(q)});
      }
    }
    std::vector<PartInfo> parts;
    for (const auto& seg : segments) {
      const Offset first = level.off[seg.begin];
      const Offset last = level.off[seg.begin + seg.count];
      const std::uint64_t bytes = (last - first) * sizeof(ElementId) + (seg.count + 1) * sizeof(Offset);
      std::uint64_t q = std::max<std::uint64_t>(1, CeilDiv(bytes, target));
      if (j == from) q = std::max<std::uint64_t>(q, options_.workers);
      q = std::min<std::uint64_t>(q, std::max<std::uint64_t>(1, seg.count));
      std::vector<std::uint64_t> weights(seg.count);
      for (std::uint64_t i = 0; i < seg.count; ++i) {
        weights[i] = level.off[seg.begin + i + 1] - level.off[seg.begin + i];
      }
      auto bounds = PartitionByWeight(weights, q);
      for (std::size_t r = 0; r < q; ++r) {
        PartInfo info;
        info.path = PartPath(j, parts.size());
        info.parent_begin = seg.begin + bounds[r];
        info.parent_count = bounds[r + 1] - bounds[r];
        info.vert_begin = level.off[info.parent_begin];
        info.vert_count = level.off[info.parent_begin + info.parent_count] - info.vert_begin;
        info.parent_part = seg.part;
        parts.push_back(std::move(info));
      }
    }
    plans.push_back(std::move(parts));
  }

  for (std::size_t j = depth; j >= from; --j) {
    auto& parts = plans[j - from];
    const CseLevel& level = cse_.level(j);
    std::vector<fs::path> done;
    try {
      for (auto& info : parts) {
        std::array<std::span<const ElementId>, 1> pieces{
            std::span<const ElementId>(level.vert).subspan(info.vert_begin, info.vert_count)};
        std::vector<Offset> off(level.off.begin() + info.parent_begin,
                                level.off.begin() + info.parent_begin + info.parent_count + 1);
        for (auto& o : off) o -= info.vert_begin;
        info.file_bytes = WritePartFile(info.path, static_cast<std::uint32_t>(j), pieces, off);
        done.push_back(info.path);
        bytes_spilled_ += info.file_bytes;
        ++parts_written_;
      }
    } catch (...) {
      std::error_code ec;
      for (const auto& p : done) fs::remove(p, ec);
      fs::remove(parts[done.size()].path, ec);
      throw;
    }
    tracker_.Sub(LevelPayloadBytes(level));
    cse_.MarkSpilled(j, std::move(parts));
  }
}

LevelBuffer HybridStore::ExpandBalanced(const EmbeddingSource& source, std::uint64_t begin,
                                        std::uint64_t end, std::span<const std::uint64_t> preds,
                                        const ExploreFilters& filters) {
  const int workers = options_.workers;
  auto bounds = PartitionByWeight(preds, workers);
  std::vector<LevelBuffer> pieces(workers);
  RunWorkers(workers, [&](int w) {
    Extender ext(g_, cse_.kind());
    ext.ExpandRange(source, begin + bounds[w], begin + bounds[w + 1], filters, &pieces[w]);
  });
  std::uint64_t piece_bytes = 0;
  std::size_t total = 0;
  for (const auto& p : pieces) {
    piece_bytes += BufferBytes(p);
    total += p.vert.size();
  }
  tracker_.Add(piece_bytes);
  LevelBuffer result;
  result.vert.reserve(total);
  result.off.reserve(end - begin + 1);
  tracker_.Add(total * sizeof(ElementId) + (end - begin + 1) * sizeof(Offset));
  for (auto& p : pieces) {
    const Offset base = result.vert.size();
    result.vert.insert(result.vert.end(), p.vert.begin(), p.vert.end());
    for (std::size_t i = 1; i < p.off.size(); ++i) result.off.push_back(base + p.off[i]);
    std::vector<ElementId>().swap(p.vert);
    std::vector<Offset>().swap(p.off);
  }
  tracker_.Sub(piece_bytes);
  return result;
}

void HybridStore::ExploreResident(const ExploreFilters& filters,
                                  const std::vector<std::uint64_t>& preds) {
  ResidentLevelSource source(cse_, cse_.depth());
  LevelBuffer buf = ExpandBalanced(source, 0, source.size(), preds, filters);
  cse_.AppendLevel(std::move(buf.vert), std::move(buf.off));
}

void HybridStore::ExploreToDisk(const ExploreFilters& filters,
                                const std::vector<std::uint64_t>& preds) {
  const std::size_t next = cse_.depth() + 1;
  const std::uint64_t count = cse_.top().count;
  const std::uint64_t est = EstimateNextLevelBytes(count, Mean(preds));
  std::uint64_t nparts = std::max<std::uint64_t>(options_.workers, CeilDiv(est, PartTargetBytes(1)));
  nparts = std::min<std::uint64_t>(nparts, std::max<std::uint64_t>(1, count));
  auto bounds = PartitionByWeight(preds, nparts);

  ResidentLevelSource source(cse_, cse_.depth());
  std::vector<PartInfo> parts;
  {
    PartWriter writer(&tracker_);
    std::uint64_t vert_begin = 0;
    for (std::size_t p = 0; p < nparts; ++p) {
      const std::uint64_t lo = bounds[p];
      const std::uint64_t hi = bounds[p + 1];
      LevelBuffer buf =
          ExpandBalanced(source, lo, hi, std::span(preds).subspan(lo, hi - lo), filters);
      PartInfo info;
      info.path = PartPath(next, p);
      info.vert_begin = vert_begin;
      info.vert_count = buf.vert.size();
      info.parent_begin = lo;
      info.parent_count = hi - lo;
      vert_begin += info.vert_count;
      writer.Enqueue(info.path, static_cast<std::uint32_t>(next), std::move(buf.vert),
                     std::move(buf.off));
      parts.push_back(std::move(info));
    }
    auto sizes = writer.Finish();
    for (std::size_t p = 0; p < parts.size(); ++p) {
      parts[p].file_bytes = sizes[p];
      bytes_spilled_ += sizes[p];
    }
    parts_written_ += parts.size();
  }
  cse_.AppendSpilledLevel(std::move(parts));
}

void HybridStore::ExploreSpilled(const ExploreFilters& filters) {
  const std::size_t top = cse_.depth();
  const std::size_t next = top + 1;
  const std::uint64_t target = PartTargetBytes(next - plan_.first_spilled + 1);
  std::vector<PartInfo> parts;
  {
    const CseLevel& level = cse_.level(top);
    Windows windows(cse_, plan_.first_spilled, top, &tracker_, &bytes_read_);
    PartWriter writer(&tracker_);
    std::uint64_t vert_begin = 0;
    std::vector<std::uint64_t> preds;
    for (std::size_t p = 0; p < level.parts.size(); ++p) {
      windows.Align(p);
      const PartInfo& segment = level.parts[p];
      const std::uint64_t n = segment.vert_count;
      WindowSource source(windows, top, n);

      preds.assign(n, 0);
      tracker_.Add(n * sizeof(std::uint64_t));
      auto even = EvenSplit(0, n, options_.workers);
      RunWorkers(options_.workers, [&](int w) {
        Extender ext(g_, cse_.kind());
        ext.PredictRange(source, even[w], even[w + 1],
                         std::span(preds).subspan(even[w], even[w + 1] - even[w]));
      });
      const std::uint64_t est = EstimateNextLevelBytes(n, Mean(preds));
      std::uint64_t q = std::max<std::uint64_t>(1, CeilDiv(est, target));
      q = std::min<std::uint64_t>(q, std::max<std::uint64_t>(1, n));
      auto bounds = PartitionByWeight(preds, q);
      for (std::size_t r = 0; r < q; ++r) {
        const std::uint64_t lo = bounds[r];
        const std::uint64_t hi = bounds[r + 1];
        LevelBuffer buf =
            ExpandBalanced(source, lo, hi, std::span(preds).subspan(lo, hi - lo), filters);
        PartInfo info;
        info.path = PartPath(next, parts.size());
        info.vert_begin = vert_begin;
        info.vert_count = buf.vert.size();
        info.parent_begin = segment.vert_begin + lo;
        info.parent_count = hi - lo;
        info.parent_part = static_cast<std::int64_t>(p);
        vert_begin += info.vert_count;
        writer.Enqueue(info.path, static_cast<std::uint32_t>(next), std::move(buf.vert),
                       std::move(buf.off));
        parts.push_back(std::move(info));
      }
      tracker_.Sub(n * sizeof(std::uint64_t));
    }
    auto sizes = writer.Finish();
    for (std::size_t p = 0; p < parts.size(); ++p) {
      parts[p].file_bytes = sizes[p];
      bytes_spilled_ += sizes[p];
    }
    parts_written_ += parts.size();
    max_window_parts_ = std::max(max_window_parts_, windows.MaxHeld());
  }
  cse_.AppendSpilledLevel(std::move(parts));
}

void HybridStore::ForEachEmbedding(const Visitor& visit) {
  if (cse_.empty()) return;
  const std::size_t top = cse_.depth();
  const int workers = options_.workers;
  if (cse_.top().residency == Residency::kMemory) {
    auto bounds = EvenSplit(0, cse_.top().count, workers);
    RunWorkers(workers, [&](int w) {
      std::array<ElementId, kMaxEmbeddingSize> buf{};
      std::span<ElementId> e(buf.data(), top);
      for (std::uint64_t i = bounds[w]; i < bounds[w + 1]; ++i) {
        cse_.ExtractInto(top, i, e);
        visit(w, e);
      }
    });
    return;
  }
  const CseLevel& level = cse_.level(top);
  Windows windows(cse_, plan_.first_spilled, top, &tracker_, &bytes_read_);
  for (std::size_t p = 0; p < level.parts.size(); ++p) {
    windows.Align(p);
    const std::uint64_t n = level.parts[p].vert_count;
    auto bounds = EvenSplit(0, n, workers);
    RunWorkers(workers, [&](int w) {
      std::array<ElementId, kMaxEmbeddingSize> buf{};
      std::span<ElementId> e(buf.data(), top);
      for (std::uint64_t i = bounds[w]; i < bounds[w + 1]; ++i) {
        windows.Extract(top, i, e);
        visit(w, e);
      }
    });
  }
  max_window_parts_ = std::max(max_window_parts_, windows.MaxHeld());
}

void HybridStore::WriteManifest() const {
  if (part_dir_.empty()) return;
  std::ofstream out(part_dir_ / "plan.txt", std::ios::trunc);
  out << "memory_budget " << options_.memory_budget << "\n";
  out << "first_spilled " << plan_.first_spilled << "\n";
  for (std::size_t j = 1; j <= cse_.depth(); ++j) {
    const CseLevel& level = cse_.level(j);
    if (level.residency != Residency::kDisk) continue;
    std::uint64_t bytes = 0;
    for (const auto& p : level.parts) bytes += p.file_bytes;
    out << "level " << j << " parts " << level.parts.size() << " bytes " << bytes << "\n";
  }
  if (!out) throw StorageError("cannot write " + (part_dir_ / "plan.txt").string());
}

StorageMetrics HybridStore::metrics() const {
  StorageMetrics m;
  m.peak_resident_bytes = tracker_.peak();
  m.bytes_spilled = bytes_spilled_;
  m.bytes_read = bytes_read_.load();
  m.parts_written = parts_written_;
  m.max_window_parts = max_window_parts_;
  for (std::size_t j = 1; j <= cse_.depth(); ++j) {
    m.level_counts.push_back(cse_.level(j).count);
    m.level_spilled.push_back(cse_.level(j).residency == Residency::kDisk);
  }
  return m;
}

}  // namespace kaleido
