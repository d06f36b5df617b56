// Copyright 2026 The vexsort Authors
// SPDX-License-Identifier: Apache-2.0
//
// Quicksort driver: recursion with degenerate-partition recovery, a depth
// budget of 2*ceil(log2(n)) + 4 against adversarial pivots, and a Heapsort
// fallback that guarantees O(n log n) overall.

#ifndef VEXSORT_DETAIL_DRIVER_HPP_
#define VEXSORT_DETAIL_DRIVER_HPP_

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>

#include "vexsort/detail/config.hpp"
#include "vexsort/detail/network.hpp"
#include "vexsort/detail/partition.hpp"
#include "vexsort/detail/pivot.hpp"
#include "vexsort/detail/traits.hpp"
#include "vexsort/detail/vec.hpp"

namespace vexsort {

struct SortStats {
  std::size_t max_depth = 0;
  std::size_t partition_calls = 0;
  std::size_t base_case_calls = 0;
  std::size_t keys_partitioned = 0;
  bool fallback_triggered = false;
};

}  // namespace vexsort

namespace vexsort::detail {

inline std::size_t depth_budget(std::size_t n) {
  if (n <= 1) return 4;
  return 2 * static_cast<std::size_t>(std::bit_width(n - 1)) + 4;
}

inline std::uint64_t default_seed(const void* keys, std::size_t n_keys) {
  return 0x9E3779B97F4A7C15ULL ^ reinterpret_cast<std::uintptr_t>(keys) ^
         (static_cast<std::uint64_t>(n_keys) * 0xD1B54A32D192ED03ULL);
}

template <class BE, class TR>
struct Driver {
  using Lane = typename TR::Lane;
  using Key = typename TR::Key;
  using O = typename BE::template Ops<Lane>;
  using Block = typename O::Block;
  static constexpr std::size_t kN = O::kLanes;
  static constexpr std::size_t kLpk = TR::kLanesPerKey;

  using Net = Network<BE, TR>;
  using Part = Partitioner<BE, TR>;
  using Pivot = PivotSampler<BE, TR>;

  // Scratch lanes shared by the base case, the small-partition loop and
  // pivot sampling (they never run concurrently within one sort).
  static constexpr std::size_t kScratchLanes =
      std::max({kNetworkRows * Net::kRowLanes, Part::kScratchLanes,
                Pivot::kScratchLanes});

  static void scan_min_max(std::span<const Lane> keys, Key& first, Key& last) {
    const std::size_t len = keys.size();
    VEXSORT_DASSERT(len >= kLpk);
    std::size_t pos = 0;
    if (len >= kN) {
      Block acc_first = O::load(keys, 0);
      Block acc_last = acc_first;
      pos = kN;
      while (pos + kN <= len) {
        const Block v = O::load(keys, pos);
        acc_first = TR::template first_blocks<O>(acc_first, v);
        acc_last = TR::template last_blocks<O>(acc_last, v);
        pos += kN;
      }
      first = TR::template first_of_lanes<O>(acc_first);
      last = TR::template last_of_lanes<O>(acc_last);
    } else {
      first = TR::load_key(keys.data());
      last = first;
      pos = kLpk;
    }
    for (; pos < len; pos += kLpk) {
      const Key k = TR::load_key(keys.data() + pos);
      if (TR::precedes(k, first)) first = k;
      if (TR::precedes(last, k)) last = k;
    }
  }

  // In-place heapsort over whole keys; touches nothing but the range.
  static void heap_sort(Lane* keys, std::size_t n_keys) {
    if (n_keys <= 1) return;
    const auto sift_down = [&](std::size_t root, std::size_t limit) {
      while (true) {
        const std::size_t left = 2 * root + 1;
        if (left >= limit) break;
        std::size_t next = left;
        if (left + 1 < limit &&
            TR::precedes(TR::load_key(keys + left * kLpk),
                         TR::load_key(keys + (left + 1) * kLpk))) {
          next = left + 1;
        }
        if (!TR::precedes(TR::load_key(keys + root * kLpk),
                          TR::load_key(keys + next * kLpk))) {
          break;
        }
        TR::swap_keys(keys, root * kLpk, next * kLpk);
        root = next;
      }
    };
    for (std::size_t i = n_keys / 2; i-- > 0;) sift_down(i, n_keys);
    for (std::size_t end = n_keys - 1; end > 0; --end) {
      TR::swap_keys(keys, 0, end * kLpk);
      sift_down(0, end);
    }
  }

  static void recurse(std::span<Lane> keys, Key pivot, std::size_t budget,
                      std::size_t depth, Sfc64& rng, std::span<Lane> scratch,
                      SortStats& stats) {
    if (budget == 0) {
      heap_sort(keys.data(), keys.size() / kLpk);
      stats.fallback_triggered = true;
      return;
    }
    if (depth > stats.max_depth) stats.max_depth = depth;

    const Block pivot_block = TR::template broadcast_key<O>(pivot);
    const std::size_t bound = Part::partition(keys, pivot_block, scratch);
    stats.partition_calls += 1;
    stats.keys_partitioned += keys.size() / kLpk;

    // The pivot is one of the keys and equal keys go left, so the left
    // partition is never empty.
    VEXSORT_DASSERT(bound >= kLpk);

    if (bound == keys.size()) {
      // Degenerate: pivot was the last key in sort order. If all keys are
      // equal we are done; otherwise retry with the first key in sort
      // order, which must partition off at least the keys equal to it.
      Key first;
      Key last;
      scan_min_max(keys, first, last);
      if (TR::key_equal(first, last)) return;
      return recurse(keys, first, budget - 1, depth + 1, rng, scratch, stats);
    }

    const std::span<Lane> left = keys.subspan(0, bound);
    const std::span<Lane> right = keys.subspan(bound);
    if (left.size() <= kBaseCaseKeys * kLpk) {
      Net::base_case(left.data(), left.size() / kLpk, scratch);
      stats.base_case_calls += 1;
    } else {
      const Key p = Pivot::choose_pivot(left, scratch, rng);
      recurse(left, p, budget - 1, depth + 1, rng, scratch, stats);
    }
    // Right branch last, in tail position.
    if (right.size() <= kBaseCaseKeys * kLpk) {
      Net::base_case(right.data(), right.size() / kLpk, scratch);
      stats.base_case_calls += 1;
    } else {
      const Key p = Pivot::choose_pivot(right, scratch, rng);
      recurse(right, p, budget - 1, depth + 1, rng, scratch, stats);
    }
  }

  static SortStats sort(Lane* keys, std::size_t n_keys, std::uint64_t seed,
                        std::span<Lane> scratch) {
    SortStats stats;
    if (n_keys <= 1) return stats;
#if VEXSORT_DEBUG_CHECKS
    if (contains_nan(std::span<const Lane>(keys, n_keys * kLpk))) {
      throw std::invalid_argument("vexsort: NaN keys are not supported");
    }
#endif
    std::span<Lane> range(keys, n_keys * kLpk);
    if (n_keys <= kBaseCaseKeys) {
      Net::base_case(keys, n_keys, scratch);
      stats.base_case_calls = 1;
      return stats;
    }
    Sfc64 rng(seed);
    const Key pivot = Pivot::choose_pivot(range, scratch, rng);
    recurse(range, pivot, depth_budget(n_keys), 1, rng, scratch, stats);
    return stats;
  }
};

}  // namespace vexsort::detail

#endif  // VEXSORT_DETAIL_DRIVER_HPP_
