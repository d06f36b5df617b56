// Copyright 2026 The vexsort Authors
// SPDX-License-Identifier: Apache-2.0
//
// Backend abstraction: the lane-level op contract the sort is written
// against, plus the reference implementation.
//
// A backend provides, per lane type T:
//   Block              fixed group of kLanes lanes (kLanes a power of two,
//                      kLanes * sizeof(T) >= 16 so one block holds at least
//                      one 128-bit key)
//   Mask               one predicate bit per lane
//   memory ops         load / store / compress_store / compress_blended_store
//                      / safe_copy_n
//   lane ops           broadcast / min / max / compare_lt / compare_eq /
//                      if_then_else / or_and
//   mask ops           all_true / count_true / mask_not / mask_and /
//                      first_n_mask / alternating_groups_mask /
//                      mask_to_block / block_to_mask
//   permutes           shift_lanes_left_by_one / interleave_upper /
//                      reverse_lanes / swap_adjacent_pairs /
//                      reverse_within_groups / compress_partition
//   reductions         min_of_lanes / max_of_lanes
//
// Contract notes for porting a new backend:
//  * compress_store packs the selected lanes contiguously IN LANE ORDER and
//    may overwrite up to kLanes lanes starting at the write offset; callers
//    must provide that headroom. compress_blended_store writes exactly
//    `count` lanes and leaves everything after them untouched.
//  * compress_partition returns [selected lanes asc | unselected lanes asc]
//    as one block. Both halves keep their original relative order; the sort
//    relies on this for its in-place store scheme and for producing the
//    same partitions on every backend.
//  * interleave_upper works per 128-bit sub-block (it exists to splice
//    lane-pair comparison results, and pairs never straddle 128-bit
//    boundaries). All other permutes act on the whole block.
//  * min/max/min_of_lanes tie rule: when lanes compare equal (only possible
//    bitwise-distinct case is -0.0/+0.0), the SECOND operand wins, and
//    reductions fold as a halving tree. Backends must match this so results
//    stay bit-identical to the reference.
//  * No global mutable state; every op is reentrant.
//
// The reference backend (GenericOps with kChecked=true) bounds-checks every
// memory op and poisons unspecified slack lanes, standing in for sanitizer
// instrumentation during tests.

#ifndef VEXSORT_DETAIL_VEC_HPP_
#define VEXSORT_DETAIL_VEC_HPP_

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <span>
#include <type_traits>

#include "vexsort/detail/config.hpp"

namespace vexsort::detail {

inline constexpr unsigned char kPoisonByte = 0xA5;

template <typename T>
using UnsignedBits =
    std::conditional_t<sizeof(T) == 2, std::uint16_t,
                       std::conditional_t<sizeof(T) == 4, std::uint32_t,
                                          std::uint64_t>>;

template <typename T, std::size_t kBytes, bool kChecked>
struct GenericOps {
  static_assert(kBytes >= 16 && std::has_single_bit(kBytes));
  static constexpr std::size_t kLanes = kBytes / sizeof(T);
  static constexpr const char* kName = kChecked ? "reference" : "portable";

  struct Block {
    std::array<T, kLanes> lane;
  };
  struct Mask {
    std::array<bool, kLanes> bit;
  };

  using Bits = UnsignedBits<T>;

  // ---- memory ----

  static Block load(std::span<const T> src, std::size_t offset) {
    if constexpr (kChecked) {
      if (offset + kLanes > src.size())
        bounds_fail("load", offset, kLanes, src.size());
    }
    Block b;
    std::memcpy(b.lane.data(), src.data() + offset, kBytes);
    return b;
  }

  static void store(const Block& v, std::span<T> dst, std::size_t offset) {
    if constexpr (kChecked) {
      if (offset + kLanes > dst.size())
        bounds_fail("store", offset, kLanes, dst.size());
    }
    std::memcpy(dst.data() + offset, v.lane.data(), kBytes);
  }

  static std::size_t compress_store(const Block& v, const Mask& m,
                                    std::span<T> dst, std::size_t offset) {
    if constexpr (kChecked) {
      if (offset + kLanes > dst.size())
        bounds_fail("compress_store", offset, kLanes, dst.size());
    }
    std::size_t count = 0;
    for (std::size_t i = 0; i < kLanes; ++i) {
      if (m.bit[i]) dst[offset + count++] = v.lane[i];
    }
    if constexpr (kChecked) {
      // Slack lanes are unspecified; poison them so nothing reads them back.
      for (std::size_t i = count; i < kLanes; ++i) {
        std::memset(&dst[offset + i], kPoisonByte, sizeof(T));
      }
    }
    return count;
  }

  static std::size_t compress_blended_store(const Block& v, const Mask& m,
                                            std::span<T> dst,
                                            std::size_t offset) {
    std::size_t count = 0;
    for (std::size_t i = 0; i < kLanes; ++i) count += m.bit[i] ? 1 : 0;
    if constexpr (kChecked) {
      if (offset + count > dst.size())
        bounds_fail("compress_blended_store", offset, count, dst.size());
    }
    std::size_t w = 0;
    for (std::size_t i = 0; i < kLanes; ++i) {
      if (m.bit[i]) dst[offset + w++] = v.lane[i];
    }
    return count;
  }

  static Block compress_partition(const Block& v, const Mask& m) {
    Block out;
    std::size_t w = 0;
    for (std::size_t i = 0; i < kLanes; ++i) {
      if (m.bit[i]) out.lane[w++] = v.lane[i];
    }
    for (std::size_t i = 0; i < kLanes; ++i) {
      if (!m.bit[i]) out.lane[w++] = v.lane[i];
    }
    return out;
  }

  struct Packed {
    Block block;
    std::size_t num_selected;
  };

  // Fusion of compress_partition and count_true; backends share one mask
  // extraction in the partition loop.
  static Packed compress_partition_count(const Block& v, const Mask& m) {
    return {compress_partition(v, m), count_true(m)};
  }

  // Same, but partitions by the complement of m (complementing the
  // extracted bits is cheaper than a lane-wise not).
  static Packed compress_partition_count_complement(const Block& v,
                                                    const Mask& m) {
    return compress_partition_count(v, mask_not(m));
  }

  // Partition v by comparison against a broadcast bound: lanes <= bound
  // (resp. >= bound) packed first. The sort's hot loop; backends fuse the
  // compare with the mask extraction.
  static Packed partition_le(const Block& v, const Block& bound) {
    return compress_partition_count_complement(v, compare_lt(bound, v));
  }

  static Packed partition_ge(const Block& v, const Block& bound) {
    return compress_partition_count_complement(v, compare_lt(v, bound));
  }

  static void safe_copy_n(std::span<const T> src, std::size_t count,
                          std::span<T> dst) {
    if constexpr (kChecked) {
      if (count > src.size()) bounds_fail("safe_copy_n/src", 0, count, src.size());
      if (count > dst.size()) bounds_fail("safe_copy_n/dst", 0, count, dst.size());
    }
    // Lane counts stay far below PTRDIFF_MAX; the bound keeps glibc's
    // fortified memcpy range analysis quiet.
    VEXSORT_ASSUME(count < (std::size_t{1} << 48));
    if (count > 0) std::memcpy(dst.data(), src.data(), count * sizeof(T));
  }

  // ---- lanewise ----

  static Block broadcast(T value) {
    Block b;
    b.lane.fill(value);
    return b;
  }

  static T min_lane(T a, T b) { return a < b ? a : b; }
  static T max_lane(T a, T b) { return a > b ? a : b; }

  static Block min(const Block& a, const Block& b) {
    Block out;
    for (std::size_t i = 0; i < kLanes; ++i)
      out.lane[i] = min_lane(a.lane[i], b.lane[i]);
    return out;
  }

  static Block max(const Block& a, const Block& b) {
    Block out;
    for (std::size_t i = 0; i < kLanes; ++i)
      out.lane[i] = max_lane(a.lane[i], b.lane[i]);
    return out;
  }

  // Compare-and-exchange: a keeps the lane-wise minima, b the maxima.
  static void sort2(Block& a, Block& b) {
    const Block lo = min(a, b);
    b = max(a, b);
    a = lo;
  }

  static Mask compare_lt(const Block& a, const Block& b) {
    Mask m;
    for (std::size_t i = 0; i < kLanes; ++i) m.bit[i] = a.lane[i] < b.lane[i];
    return m;
  }

  static Mask compare_eq(const Block& a, const Block& b) {
    Mask m;
    for (std::size_t i = 0; i < kLanes; ++i) m.bit[i] = a.lane[i] == b.lane[i];
    return m;
  }

  static Block if_then_else(const Mask& m, const Block& yes, const Block& no) {
    Block out;
    for (std::size_t i = 0; i < kLanes; ++i)
      out.lane[i] = m.bit[i] ? yes.lane[i] : no.lane[i];
    return out;
  }

  // a | (b & c) on lane bits.
  static Block or_and(const Block& a, const Block& b, const Block& c) {
    Block out;
    for (std::size_t i = 0; i < kLanes; ++i) {
      const Bits bits = std::bit_cast<Bits>(a.lane[i]) |
                        (std::bit_cast<Bits>(b.lane[i]) &
                         std::bit_cast<Bits>(c.lane[i]));
      out.lane[i] = std::bit_cast<T>(bits);
    }
    return out;
  }

  // ---- masks ----

  static bool all_true(const Mask& m) {
    for (std::size_t i = 0; i < kLanes; ++i)
      if (!m.bit[i]) return false;
    return true;
  }

  static std::size_t count_true(const Mask& m) {
    std::size_t n = 0;
    for (std::size_t i = 0; i < kLanes; ++i) n += m.bit[i] ? 1 : 0;
    return n;
  }

  static Mask mask_not(const Mask& m) {
    Mask out;
    for (std::size_t i = 0; i < kLanes; ++i) out.bit[i] = !m.bit[i];
    return out;
  }

  static Mask mask_and(const Mask& a, const Mask& b) {
    Mask out;
    for (std::size_t i = 0; i < kLanes; ++i) out.bit[i] = a.bit[i] && b.bit[i];
    return out;
  }

  static Mask first_n_mask(std::size_t k) {
    VEXSORT_DASSERT(k <= kLanes);
    Mask out;
    for (std::size_t i = 0; i < kLanes; ++i) out.bit[i] = i < k;
    return out;
  }

  // True on lanes whose group index (lane / group) is odd.
  static Mask alternating_groups_mask(std::size_t group) {
    VEXSORT_DASSERT(group >= 1 && group <= kLanes && kLanes % group == 0);
    Mask out;
    for (std::size_t i = 0; i < kLanes; ++i) out.bit[i] = ((i / group) & 1) != 0;
    return out;
  }

  static Block mask_to_block(const Mask& m) {
    Block out;
    for (std::size_t i = 0; i < kLanes; ++i) {
      const Bits bits = m.bit[i] ? ~Bits{0} : Bits{0};
      out.lane[i] = std::bit_cast<T>(bits);
    }
    return out;
  }

  static Mask block_to_mask(const Block& v) {
    Mask out;
    for (std::size_t i = 0; i < kLanes; ++i)
      out.bit[i] = std::bit_cast<Bits>(v.lane[i]) != 0;
    return out;
  }

  // ---- permutes ----

  static Block shift_lanes_left_by_one(const Block& v) {
    Block out;
    out.lane[0] = T{};
    for (std::size_t i = 1; i < kLanes; ++i) out.lane[i] = v.lane[i - 1];
    return out;
  }

  // Per 128-bit sub-block: interleave the upper halves of a and b.
  static Block interleave_upper(const Block& a, const Block& b) {
    constexpr std::size_t kPer128 = 16 / sizeof(T);
    constexpr std::size_t kHalf = kPer128 / 2;
    Block out;
    for (std::size_t base = 0; base < kLanes; base += kPer128) {
      for (std::size_t i = 0; i < kHalf; ++i) {
        out.lane[base + 2 * i] = a.lane[base + kHalf + i];
        out.lane[base + 2 * i + 1] = b.lane[base + kHalf + i];
      }
    }
    return out;
  }

  static Block reverse_lanes(const Block& v) {
    Block out;
    for (std::size_t i = 0; i < kLanes; ++i)
      out.lane[i] = v.lane[kLanes - 1 - i];
    return out;
  }

  static Block swap_adjacent_pairs(const Block& v) {
    return reverse_within_groups(v, 2);
  }

  static Block reverse_within_groups(const Block& v, std::size_t group) {
    VEXSORT_DASSERT(group >= 1 && group <= kLanes && std::has_single_bit(group));
    Block out;
    for (std::size_t g = 0; g < kLanes; g += group) {
      for (std::size_t i = 0; i < group; ++i)
        out.lane[g + i] = v.lane[g + group - 1 - i];
    }
    return out;
  }

  // ---- reductions (halving tree; see tie rule above) ----

  static T min_of_lanes(const Block& v) {
    std::array<T, kLanes> t = v.lane;
    for (std::size_t n = kLanes; n > 1; n /= 2) {
      for (std::size_t i = 0; i < n / 2; ++i)
        t[i] = min_lane(t[i], t[i + n / 2]);
    }
    return t[0];
  }

  static T max_of_lanes(const Block& v) {
    std::array<T, kLanes> t = v.lane;
    for (std::size_t n = kLanes; n > 1; n /= 2) {
      for (std::size_t i = 0; i < n / 2; ++i)
        t[i] = max_lane(t[i], t[i + n / 2]);
    }
    return t[0];
  }
};

}  // namespace vexsort::detail

#if VEXSORT_HAVE_AVX2
#include "vexsort/detail/vec_avx2.hpp"
#endif

namespace vexsort::detail {

// The two mandatory backends. The scalar reference uses minimal (128-bit)
// blocks and full bounds checking; the wide backend uses 256-bit blocks.
struct ScalarTag {
  static constexpr const char* kName = "scalar";
  template <typename T>
  using Ops = GenericOps<T, 16, true>;
};

struct WideTag {
  static constexpr const char* kName = "wide";
#if VEXSORT_HAVE_AVX2
  template <typename T>
  using Ops = Avx2Ops<T>;
#else
  template <typename T>
  using Ops = GenericOps<T, 32, false>;
#endif
};

}  // namespace vexsort::detail

#endif  // VEXSORT_DETAIL_VEC_HPP_
