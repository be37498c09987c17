//
// Kaleido - Copyright 2026 The Kaleido Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef KALEIDO_PARTITION_H_
#define KALEIDO_PARTITION_H_

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace kaleido {

// Splits items 0..n-1 into `parts` contiguous ranges by prefix sums of their
// weights. Item i goes to part floor(S_i * parts / total), where S_i is the
// weight of items before i, so every part weighs at most
// total/parts + max(weight). Returns parts+1 boundaries; parts may be empty.
// With zero total weight the split is by item count.
std::vector<std::uint64_t> PartitionByWeight(std::span<const std::uint64_t> weights,
                                             std::size_t parts);

// Equal-count split of [begin, end) into `parts` ranges; returns parts+1
// boundaries.
std::vector<std::uint64_t> EvenSplit(std::uint64_t begin, std::uint64_t end, std::size_t parts);

// Runs fn(0..workers-1) concurrently and rethrows the first exception.
void RunWorkers(int workers, const std::function<void(int)>& fn);

int DefaultWorkerCount();

}  // namespace kaleido

#endif  // KALEIDO_PARTITION_H_
