// Copyright 2026 The vexsort Authors
// SPDX-License-Identifier: Apache-2.0
//
// In-place bidirectional compress partition around a broadcast pivot. Keys
// that compare less-or-equal to the pivot (in sort order) end up on the
// left, strictly-greater keys on the right.
//
// The main loop keeps exactly two vectors in flight (the first and last of
// its region, loaded up front) and consumes one vector per step from
// whichever end has less write capacity. Each consumed vector is permuted
// once into [lefts | rights] and stored twice: a full-width store at the
// left write position (its tail lands in the unwritten gap) and a full-width
// store whose tail ends exactly where the finalized right partition begins.
// The final overlapping pair of stores finishes the array in place.
//
// Sub-vector remainders and arrays below one unroll never touch that loop:
// partition_small handles them, and the main partition trims its input to a
// multiple of four vectors by small-partitioning the tail and swapping the
// resulting lefts to the front.
//
// The last input vector is handled exactly once at the end: it is loaded to
// a register before anything else, one vector of right-partition keys is
// copied into its slot to make space at the boundary (loading from a
// decreased address when fewer than a vector of rights exists, which
// duplicates some left keys until the final store overwrites them), and the
// permuted last vector fills the one-block gap. This is the subtlest code
// here; the exhaustive small-size tests cover every remainder shape with
// the bounds-checking backend.

#ifndef VEXSORT_DETAIL_PARTITION_HPP_
#define VEXSORT_DETAIL_PARTITION_HPP_

#include <cstddef>
#include <span>

#include "vexsort/detail/config.hpp"
#include "vexsort/detail/traits.hpp"
#include "vexsort/detail/vec.hpp"

namespace vexsort::detail {

inline constexpr std::size_t kPartitionUnroll = 4;

template <class BE, class TR>
struct Partitioner {
  using Lane = typename TR::Lane;
  using O = typename BE::template Ops<Lane>;
  using Block = typename O::Block;
  using Mask = typename O::Mask;
  static constexpr std::size_t kN = O::kLanes;

  // Scratch layout (lanes): [0, 9N) right-key staging, [9N, 10N) padded
  // remainder block.
  static constexpr std::size_t kScratchLanes = 10 * kN;

  // Any size in [0, 8N]; lefts are compressed in place, rights staged in
  // scratch and appended.
  static std::size_t partition_small(std::span<Lane> keys, const Block& pivot,
                                     std::span<Lane> scratch) {
    const std::size_t len = keys.size();
    VEXSORT_DASSERT(len <= 8 * kN);
    if (len == 0) return 0;
    std::span<Lane> buf_right = scratch.subspan(0, 9 * kN);
    std::span<Lane> buf_pad = scratch.subspan(9 * kN, kN);

    std::size_t write_left = 0;
    std::size_t num_right = 0;
    std::size_t pos = 0;
    while (pos + kN <= len) {
      const Block v = O::load(keys, pos);
      pos += kN;
      const Mask right = TR::template compare<O>(pivot, v);
      num_right += O::compress_store(v, right, buf_right, num_right);
      // In-place store: the slack stays within lanes this loop already read.
      write_left += O::compress_store(v, O::mask_not(right), keys, write_left);
    }
    const std::size_t rem = len - pos;
    if (rem > 0) {
      O::safe_copy_n(keys.subspan(pos, rem), rem, buf_pad);
      const Block v = O::load(std::span<const Lane>(buf_pad.data(), kN), 0);
      const Mask valid = O::first_n_mask(rem);
      const Mask right_raw = TR::template compare<O>(pivot, v);
      num_right += O::compress_store(v, O::mask_and(right_raw, valid),
                                     buf_right, num_right);
      // No slack allowed here: the write may end flush with the array.
      write_left += O::compress_blended_store(
          v, O::mask_and(O::mask_not(right_raw), valid), keys, write_left);
    }

    std::size_t off = 0;
    while (off + kN <= num_right) {
      O::store(O::load(std::span<const Lane>(buf_right.data(), 9 * kN), off),
               keys, write_left + off);
      off += kN;
    }
    if (off < num_right) {
      O::safe_copy_n(std::span<const Lane>(buf_right.data() + off,
                                           num_right - off),
                     num_right - off, keys.subspan(write_left + off));
    }
    return write_left;
  }

  // Loop counters travel by value so their addresses are never taken; a
  // spilled counter re-loaded after every key store halves throughput.
  struct BulkState {
    std::size_t write_left;
    std::size_t remaining;
    std::size_t read_left;
    std::size_t read_right;
  };

  // One main-loop step: permute v into [lefts | rights] and store both
  // sides. `remaining` counts unstored lanes including v's.
  VEXSORT_INLINE static BulkState store_left_right(const Block& v,
                                                   const Block pivot,
                                                   std::span<Lane> keys,
                                                   BulkState s) {
    const auto packed = TR::template partition_first<O>(v, pivot);
    s.remaining -= kN;
    O::store(packed.block, keys, s.write_left);
    O::store(packed.block, keys, s.write_left + s.remaining);
    s.write_left += packed.num_selected;
    return s;
  }

  VEXSORT_INLINE static BulkState step(const Block pivot,
                                       std::span<Lane> keys, BulkState s) {
    const std::size_t cap_left = s.read_left - s.write_left;
    const std::size_t cap_right = (s.write_left + s.remaining) - s.read_right;
    VEXSORT_DASSERT_HOT(cap_left + cap_right == 2 * kN);
    Block v;
#if defined(VEXSORT_PARTITION_BRANCHLESS)
    // Tunable alternative: trade the branch for a data-dependent load.
    const std::size_t take_left = cap_left <= cap_right ? 1 : 0;
    const std::size_t load_at =
        take_left != 0 ? s.read_left : s.read_right - kN;
    v = O::load(keys, load_at);
    s.read_left += take_left * kN;
    s.read_right -= (1 - take_left) * kN;
#else
    // Conditional branch by default; see the module notes.
    if (cap_left <= cap_right) {
      v = O::load(keys, s.read_left);
      s.read_left += kN;
    } else {
      s.read_right -= kN;
      v = O::load(keys, s.read_right);
    }
#endif
    return store_left_right(v, pivot, keys, s);
  }

  // Core loop over a region whose length is a multiple of kPartitionUnroll
  // vectors. Returns the boundary within `keys`.
  static std::size_t partition_bulk(std::span<Lane> keys, const Block pivot) {
    const std::size_t len = keys.size();
    VEXSORT_DASSERT(len >= kPartitionUnroll * kN &&
                    len % (kPartitionUnroll * kN) == 0);
    const Block vfirst = O::load(keys, 0);
    const Block vlast = O::load(keys, len - kN);
    BulkState s{0, len, kN, len - kN};

    while (s.read_right - s.read_left >= kPartitionUnroll * kN) {
      s = step(pivot, keys, s);
      s = step(pivot, keys, s);
      s = step(pivot, keys, s);
      s = step(pivot, keys, s);
    }
    while (s.read_right - s.read_left >= kN) {
      s = step(pivot, keys, s);
    }
    VEXSORT_DASSERT(s.read_left == s.read_right);
    s = store_left_right(vfirst, pivot, keys, s);
    s = store_left_right(vlast, pivot, keys, s);
    VEXSORT_DASSERT(s.remaining == 0);
    return s.write_left;
  }

  static void swap_ranges(std::span<Lane> keys, std::size_t a, std::size_t b,
                          std::size_t count) {
    std::size_t i = 0;
    for (; i + kN <= count; i += kN) {
      const Block va = O::load(keys, a + i);
      const Block vb = O::load(keys, b + i);
      O::store(va, keys, b + i);
      O::store(vb, keys, a + i);
    }
    for (; i < count; ++i) {
      const Lane t = keys[a + i];
      keys[a + i] = keys[b + i];
      keys[b + i] = t;
    }
  }

  // Full partition; requires at least two vectors of input.
  static std::size_t partition(std::span<Lane> keys, const Block& pivot,
                               std::span<Lane> scratch) {
    const std::size_t len = keys.size();
    VEXSORT_DASSERT(len >= 2 * kN);

    // Reserve the final vector before anything can overwrite it.
    const Block vlast = O::load(keys, len - kN);
    const std::size_t inner = len - kN;

    const std::size_t bulk = inner - inner % (kPartitionUnroll * kN);
    const std::size_t rem = inner - bulk;
    std::size_t write_left = 0;
    if (rem > 0) {
      const std::size_t num_small_left =
          partition_small(keys.subspan(bulk, rem), pivot, scratch);
      if (bulk > 0 && num_small_left > 0) {
        swap_ranges(keys, 0, bulk, num_small_left);
      }
      write_left = num_small_left;
    }
    if (bulk > 0) {
      write_left += partition_bulk(keys.subspan(write_left, bulk), pivot);
    }

    // Make space for one vector at the boundary: move a vector of rights
    // into the reserved final slot. With fewer than a vector of rights,
    // decrease the load address so the rights land flush with the end; the
    // duplicated left keys below them are overwritten by the final store.
    const std::size_t num_right = inner - write_left;
    if (num_right >= kN) {
      O::store(O::load(keys, write_left), keys, inner);
    } else {
      O::store(O::load(keys, write_left - (kN - num_right)), keys, inner);
    }

    const auto packed = O::compress_partition_count(
        vlast, O::mask_not(TR::template compare<O>(pivot, vlast)));
    O::store(packed.block, keys, write_left);
    return write_left + packed.num_selected;
  }
};

}  // namespace vexsort::detail

#endif  // VEXSORT_DETAIL_PARTITION_HPP_
