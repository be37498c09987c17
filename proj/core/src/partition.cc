//
// Kaleido - Copyright 2026 The Kaleido Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "kaleido/partition.h"

#include <algorithm>
#include <exception>
#include <mutex>
#include <thread>

namespace kaleido {

std::vector<std::uint64_t> PartitionByWeight(std::span<const std::uint64_t> weights,
                                             std::size_t parts) {
  if (parts == 0) parts = 1;
  const std::uint64_t n = weights.size();
  unsigned __int128 total = 0;
  for (auto w : weights) total += w;
  if (total == 0) return EvenSplit(0, n, parts);

  std::vector<std::uint64_t> bounds(parts + 1, n);
  bounds[0] = 0;
  std::size_t next = 1;
  unsigned __int128 before = 0;
  for (std::uint64_t i = 0; i < n && next < parts; ++i) {
    // Item i starts every part j with before * parts >= j * total.
    while (next < parts && before * parts >= static_cast<unsigned __int128>(next) * total) {
      bounds[next++] = i;
    }
    before += weights[i];
  }
  return bounds;
}

std::vector<std::uint64_t> EvenSplit(std::uint64_t begin, std::uint64_t end, std::size_t parts) {
  if (parts == 0) parts = 1;
  std::vector<std::uint64_t> bounds(parts + 1);
  const std::uint64_t n = end - begin;
  for (std::size_t j = 0; j <= parts; ++j) {
    bounds[j] = begin + static_cast<std::uint64_t>(static_cast<unsigned __int128>(n) * j / parts);
  }
  return bounds;
}

void RunWorkers(int workers, const std::function<void(int)>& fn) {
  if (workers <= 1) {
    fn(0);
    return;
  }
  std::exception_ptr first;
  std::mutex mu;
  auto guarded = [&](int w) {
    try {
      fn(w);
    } catch (...) {
      std::lock_guard<std::mutex> lock(mu);
      if (!first) first = std::current_exception();
    }
  };
  std::vector<std::thread> threads;
  threads.reserve(workers - 1);
  for (int w = 1; w < workers; ++w) threads.emplace_back(guarded, w);
  guarded(0);
  for (auto& t : threads) t.join();
  if (first) std::rethrow_exception(first);
}

int DefaultWorkerCount() {
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

}  // namespace kaleido
