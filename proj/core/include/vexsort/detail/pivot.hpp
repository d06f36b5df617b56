// Copyright 2026 The vexsort Authors
// SPDX-License-Identifier: Apache-2.0
//
// Pivot sampling: load up to nine 64-byte chunks from random chunk-aligned
// offsets, reduce lane-parallel medians of three, then recursively reduce
// the median buffer to a single key. The chosen pivot is always one of the
// input keys.

#ifndef VEXSORT_DETAIL_PIVOT_HPP_
#define VEXSORT_DETAIL_PIVOT_HPP_

#include <array>
#include <bit>
#include <cstdint>
#include <span>

#include "vexsort/detail/config.hpp"
#include "vexsort/detail/traits.hpp"
#include "vexsort/detail/vec.hpp"

namespace vexsort::detail {

// Small-fast-counting generator, 256 bits of state (three words plus a
// counter), the standard published update.
class Sfc64 {
 public:
  explicit Sfc64(std::uint64_t seed)
      : a_(seed), b_(seed), c_(seed), counter_(1) {
    for (int i = 0; i < 12; ++i) next();
  }

  std::uint64_t next() {
    const std::uint64_t result = a_ + b_ + counter_++;
    a_ = b_ ^ (b_ >> 11);
    b_ = c_ + (c_ << 3);
    c_ = std::rotl(c_, 24) + result;
    return result;
  }

 private:
  std::uint64_t a_;
  std::uint64_t b_;
  std::uint64_t c_;
  std::uint64_t counter_;
};

// Map a 32-bit draw into [0, bound) with a multiply-high reduction: no
// division, one draw per value, bias of bound/2^32.
inline std::uint32_t bounded_offset(std::uint64_t random, std::uint32_t bound) {
  VEXSORT_DASSERT(bound >= 1);
  const std::uint64_t r32 = static_cast<std::uint32_t>(random);
  return static_cast<std::uint32_t>((r32 * bound) >> 32);
}

inline constexpr std::size_t kChunkBytes = 64;
inline constexpr std::size_t kMaxChunks = 9;

struct ChunkPlan {
  std::array<std::uint32_t, kMaxChunks> chunk_index;
  std::size_t num_chunks;
};

// Five 64-bit draws provide nine 32-bit values; each is reduced to a chunk
// index. Always draws five so the stream position does not depend on the
// chunk count. Duplicates are allowed (sampling with replacement).
inline ChunkPlan five_draws_for_nine_offsets(Sfc64& rng,
                                             std::uint32_t chunk_bound,
                                             std::size_t num_chunks) {
  VEXSORT_DASSERT(num_chunks <= kMaxChunks);
  std::array<std::uint32_t, 10> pieces;
  for (std::size_t i = 0; i < 5; ++i) {
    const std::uint64_t draw = rng.next();
    pieces[2 * i] = static_cast<std::uint32_t>(draw);
    pieces[2 * i + 1] = static_cast<std::uint32_t>(draw >> 32);
  }
  ChunkPlan plan;
  plan.num_chunks = num_chunks;
  for (std::size_t i = 0; i < num_chunks; ++i) {
    plan.chunk_index[i] = bounded_offset(pieces[i], chunk_bound);
  }
  return plan;
}

template <class BE, class TR>
struct PivotSampler {
  using Lane = typename TR::Lane;
  using Key = typename TR::Key;
  using O = typename BE::template Ops<Lane>;
  using Block = typename O::Block;
  static constexpr std::size_t kN = O::kLanes;
  static constexpr std::size_t kLpk = TR::kLanesPerKey;
  static constexpr std::size_t kChunkLanes = kChunkBytes / sizeof(Lane);
  // Median buffer: up to 3 chunks of round-one medians plus one chunk for
  // the reduction target.
  static constexpr std::size_t kScratchLanes = 4 * kChunkLanes;

  // Median of three, per key slot: conditional swap (0,2), then the two
  // half-swaps that order element 1.
  static Block median3_blocks(const Block& a, const Block& b, const Block& c) {
    Block lo = a;
    Block hi = c;
    TR::template sort2_keys<O>(lo, hi);
    const Block mid = TR::template last_blocks<O>(lo, b);
    return TR::template first_blocks<O>(mid, hi);
  }

  static Key median3_keys(Key a, Key b, Key c) {
    const Key lo = TR::precedes(c, a) ? c : a;
    const Key hi = TR::precedes(c, a) ? a : c;
    const Key mid = TR::precedes(b, lo) ? lo : b;
    return TR::precedes(hi, mid) ? hi : mid;
  }

  // Reduce `count` lanes of keys in `cur` to one key, ping-ponging between
  // the two halves of the buffer. Each pass takes medians of key triples
  // (i, i+K, i+2K) — a fixed, lane-count-independent grouping, so every
  // backend reduces to the same pivot — and ignores the 0-2 leftovers.
  static Key reduce_medians(std::span<Lane> cur, std::span<Lane> other,
                            std::size_t count) {
    while (count >= 3 * kLpk) {
      const std::size_t out_keys = (count / kLpk) / 3;
      const std::size_t stride = out_keys * kLpk;  // K in lanes
      std::size_t i = 0;
      for (; i + kN <= stride; i += kN) {
        const Block m = median3_blocks(
            O::load(std::span<const Lane>(cur.data(), cur.size()), i),
            O::load(std::span<const Lane>(cur.data(), cur.size()), i + stride),
            O::load(std::span<const Lane>(cur.data(), cur.size()),
                    i + 2 * stride));
        O::store(m, other, i);
      }
      for (; i < stride; i += kLpk) {
        const Key m = median3_keys(TR::load_key(cur.data() + i),
                                   TR::load_key(cur.data() + i + stride),
                                   TR::load_key(cur.data() + i + 2 * stride));
        TR::store_key(other.data() + i, m);
      }
      count = stride;
      std::swap(cur, other);
    }
    return TR::load_key(cur.data());
  }

  // keys covers the subrange to sample from; its length must exceed the
  // base-case capacity so at least three chunks fit.
  static Key choose_pivot(std::span<const Lane> keys, std::span<Lane> scratch,
                          Sfc64& rng) {
    const std::size_t total_chunks = keys.size() / kChunkLanes;
    VEXSORT_DASSERT(total_chunks >= 3);
    // Shrink to a multiple of three when fewer than nine chunks fit.
    const std::size_t use_chunks =
        total_chunks >= 9 ? 9 : (total_chunks >= 6 ? 6 : 3);
    const std::size_t rounds = use_chunks / 3;

    const ChunkPlan plan = five_draws_for_nine_offsets(
        rng, static_cast<std::uint32_t>(total_chunks), use_chunks);

    std::span<Lane> medians = scratch.subspan(0, 3 * kChunkLanes);
    std::span<Lane> other = scratch.subspan(3 * kChunkLanes, kChunkLanes);
    for (std::size_t r = 0; r < rounds; ++r) {
      const std::size_t o0 = plan.chunk_index[3 * r] * kChunkLanes;
      const std::size_t o1 = plan.chunk_index[3 * r + 1] * kChunkLanes;
      const std::size_t o2 = plan.chunk_index[3 * r + 2] * kChunkLanes;
      for (std::size_t j = 0; j + kN <= kChunkLanes; j += kN) {
        const Block m = median3_blocks(O::load(keys, o0 + j),
                                       O::load(keys, o1 + j),
                                       O::load(keys, o2 + j));
        O::store(m, medians, r * kChunkLanes + j);
      }
    }
    return reduce_medians(medians, other, rounds * kChunkLanes);
  }
};

}  // namespace vexsort::detail

#endif  // VEXSORT_DETAIL_PIVOT_HPP_
