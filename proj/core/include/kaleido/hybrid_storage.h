//
// Kaleido - Copyright 2026 The Kaleido Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef KALEIDO_HYBRID_STORAGE_H_
#define KALEIDO_HYBRID_STORAGE_H_

#include <atomic>
#include <condition_variable>
#include <deque>
#include <filesystem>
#include <functional>
#include <future>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "kaleido/common.h"
#include "kaleido/cse.h"
#include "kaleido/explorer.h"
#include "kaleido/graph.h"

namespace kaleido {

inline constexpr std::uint64_t kMinPartBytes = 64 * 1024;

struct EngineOptions {
  int workers = 1;
  // 0 means unlimited: nothing is ever spilled.
  std::uint64_t memory_budget = 0;
  // Parent directory for spill files; a private subdirectory is created in it.
  std::filesystem::path spill_dir;
  // Target part size. 0 derives it from the budget left after the resident
  // levels.
  std::uint64_t part_bytes = 0;
};

// Which levels live on disk. Levels are 1-based; spilled levels are the
// suffix first_spilled..depth, and levels 1 and 2 are never spilled.
struct SpillPlan {
  std::uint64_t memory_budget = 0;
  std::size_t first_spilled = 0;  // 0 = nothing spilled
  std::size_t parts_per_level = 1;
  std::filesystem::path spill_dir;

  bool spills(std::size_t level) const { return first_spilled != 0 && level >= first_spilled; }
  std::vector<std::size_t> SpilledLevels(std::size_t depth) const;
};

// Chooses the smallest suffix of `level_bytes` (index 0 = level 1; the last
// entry may be an estimate of a level not built yet) whose removal leaves at
// most `budget` bytes resident. Levels 1 and 2 always stay resident, so with
// fewer than three entries the plan is empty. Throws BudgetTooSmallError when
// levels 1 and 2 alone exceed the budget while a level above them exists.
SpillPlan PlanSpill(std::span<const std::uint64_t> level_bytes, std::uint64_t budget,
                    int workers = 1);

// Estimated bytes of the level expanded from `count` embeddings whose mean
// predicted candidate count is `mean_prediction`.
std::uint64_t EstimateNextLevelBytes(std::uint64_t count, double mean_prediction);

// Resident-byte accounting shared by the store, its windows and its writer.
class MemoryTracker {
 public:
  void Add(std::uint64_t bytes);
  void Sub(std::uint64_t bytes);
  std::uint64_t current() const { return current_.load(); }
  std::uint64_t peak() const { return peak_.load(); }

 private:
  std::atomic<std::uint64_t> current_{0};
  std::atomic<std::uint64_t> peak_{0};
};

// Single background writer draining an ordered queue of parts. Enqueue blocks
// while `max_pending` parts are waiting.
class PartWriter {
 public:
  PartWriter(MemoryTracker* tracker, std::size_t max_pending = 1);
  ~PartWriter();

  PartWriter(const PartWriter&) = delete;
  PartWriter& operator=(const PartWriter&) = delete;

  void Enqueue(std::filesystem::path path, std::uint32_t level, std::vector<ElementId> vert,
               std::vector<Offset> off);
  // Waits for the queue to drain. Returns the size of every written file in
  // enqueue order. On any write error, removes every file this writer
  // created and rethrows.
  std::vector<std::uint64_t> Finish();

 private:
  struct Job {
    std::filesystem::path path;
    std::uint32_t level;
    std::vector<ElementId> vert;
    std::vector<Offset> off;
  };
  void Run();

  MemoryTracker* tracker_;
  std::size_t max_pending_;
  std::mutex mu_;
  std::condition_variable cv_;
  std::deque<Job> queue_;
  bool closing_ = false;
  bool busy_ = false;
  std::exception_ptr error_;
  std::vector<std::filesystem::path> written_;
  std::vector<std::uint64_t> sizes_;
  std::thread thread_;
};

// Two-part view over the part sequence of one spilled level: the main part is
// processed while the next one is read in the background.
class SlidingWindow {
 public:
  SlidingWindow(const CseLevel& level, MemoryTracker* tracker,
                std::atomic<std::uint64_t>* bytes_read);
  ~SlidingWindow();

  SlidingWindow(const SlidingWindow&) = delete;
  SlidingWindow& operator=(const SlidingWindow&) = delete;

  // Makes `part` the main part. Moving to the next part consumes the
  // prefetched candidate; any other jump loads synchronously.
  void MoveTo(std::size_t part);

  std::int64_t main_index() const { return main_index_; }
  const PartData& main() const { return *main_; }
  const PartInfo& main_info() const { return level_.parts[main_index_]; }
  // Parts currently held or loading (main plus candidate).
  int held_parts() const;
  int max_held_parts() const { return max_held_; }

 private:
  void Release(std::unique_ptr<PartData>* part);
  void Prefetch(std::size_t part);
  std::unique_ptr<PartData> Load(std::size_t part);

  const CseLevel& level_;
  MemoryTracker* tracker_;
  std::atomic<std::uint64_t>* bytes_read_;
  std::int64_t main_index_ = -1;
  std::unique_ptr<PartData> main_;
  std::int64_t candidate_index_ = -1;
  std::future<std::unique_ptr<PartData>> candidate_;
  int max_held_ = 0;
};

struct StorageMetrics {
  std::uint64_t peak_resident_bytes = 0;
  std::uint64_t bytes_spilled = 0;
  std::uint64_t bytes_read = 0;
  std::uint64_t parts_written = 0;
  std::vector<std::uint64_t> level_counts;
  std::vector<bool> level_spilled;
  int max_window_parts = 0;
};

// A CSE whose upper levels may live on disk, plus the drivers that explore
// and visit it. Results of Explore() and ForEachEmbedding() do not depend on
// the worker count or on which levels are spilled.
class HybridStore {
 public:
  using Visitor = std::function<void(int worker, std::span<const ElementId> embedding)>;

  HybridStore(const Graph& g, EmbeddingKind kind, EngineOptions options);
  ~HybridStore();

  HybridStore(const HybridStore&) = delete;
  HybridStore& operator=(const HybridStore&) = delete;

  // Level 1: every vertex or every edge.
  void Init();
  // Level 1 from an explicit ascending element list.
  void InitBase(std::vector<ElementId> elements);

  // Builds the next level. Planning runs first while the top is resident;
  // once a level is on disk every later level is too.
  void Explore(const ExploreFilters& filters = {});

  // Calls visit(worker, e) exactly once for every top-level embedding.
  // Visits of one worker happen in ascending embedding order.
  void ForEachEmbedding(const Visitor& visit);

  std::size_t depth() const { return cse_.depth(); }
  std::uint64_t top_count() const { return cse_.top().count; }
  const Cse& cse() const { return cse_; }
  const SpillPlan& plan() const { return plan_; }
  int workers() const { return options_.workers; }
  const Graph& graph() const { return g_; }
  // Directory holding this store's part files (empty until the first spill).
  const std::filesystem::path& part_dir() const { return part_dir_; }

  StorageMetrics metrics() const;

 private:
  void UpdatePlan(const std::vector<std::uint64_t>& predictions);
  void SpillResidentLevels(std::size_t from);
  void ExploreResident(const ExploreFilters& filters, const std::vector<std::uint64_t>& preds);
  void ExploreToDisk(const ExploreFilters& filters, const std::vector<std::uint64_t>& preds);
  void ExploreSpilled(const ExploreFilters& filters);
  // Expands [begin, end) of `source` with all workers, balanced by `preds`
  // (indexed from `begin`).
  LevelBuffer ExpandBalanced(const EmbeddingSource& source, std::uint64_t begin, std::uint64_t end,
                             std::span<const std::uint64_t> preds, const ExploreFilters& filters);
  std::uint64_t PartTargetBytes(std::size_t spilled_levels) const;
  std::filesystem::path PartPath(std::size_t level, std::size_t part);
  void EnsurePartDir();
  void WriteManifest() const;

  const Graph& g_;
  EngineOptions options_;
  Cse cse_;
  SpillPlan plan_;
  MemoryTracker tracker_;
  std::atomic<std::uint64_t> bytes_read_{0};
  std::uint64_t bytes_spilled_ = 0;
  std::uint64_t parts_written_ = 0;
  int max_window_parts_ = 0;
  std::filesystem::path part_dir_;
};

}  // namespace kaleido

#endif  // KALEIDO_HYBRID_STORAGE_H_
