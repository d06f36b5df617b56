// Copyright 2026 The vexsort Authors
// SPDX-License-Identifier: Apache-2.0
//
// Base case: sort up to 256 keys with a fixed comparator network. The keys
// are copied into a padded scratch buffer viewed as a 16-row matrix, the
// columns are sorted with a 60-module 16-input network applied between
// whole rows, and the sorted columns are merged by bitonic stages whose
// lane permutations keep compare-exchange partners vertically aligned.
// The merged result is in column-major key order.
//
// Rows may span several blocks (narrow backends) or occupy part of one
// block (wide backends with few columns; the spare lanes carry padding that
// no merge group ever touches). The schedule is expressed in lane units so
// both cases share one code path, and the column count is a compile-time
// parameter so every block loop and lane-group permutation folds to
// straight-line code.

#ifndef VEXSORT_DETAIL_NETWORK_HPP_
#define VEXSORT_DETAIL_NETWORK_HPP_

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "vexsort/detail/config.hpp"
#include "vexsort/detail/traits.hpp"
#include "vexsort/detail/vec.hpp"

namespace vexsort::detail {

inline constexpr std::size_t kNetworkRows = 16;
inline constexpr std::size_t kBaseCaseKeys = 256;

// 16-input sorting network with the minimal known module count (60), taken
// from the published optimal-network tables. Validated by the 0-1 test
// suite rather than trusted.
inline constexpr std::array<std::pair<std::uint8_t, std::uint8_t>, 60>
    kGreen16 = {{
        {0, 13},  {1, 12},  {2, 15},  {3, 14},  {4, 8},   {5, 6},
        {7, 11},  {9, 10},  {0, 5},   {1, 7},   {2, 9},   {3, 4},
        {6, 13},  {8, 14},  {10, 15}, {11, 12}, {0, 1},   {2, 3},
        {4, 5},   {6, 8},   {7, 9},   {10, 11}, {12, 13}, {14, 15},
        {0, 2},   {1, 3},   {4, 10},  {5, 11},  {6, 7},   {8, 9},
        {12, 14}, {13, 15}, {1, 2},   {3, 12},  {4, 6},   {5, 7},
        {8, 10},  {9, 11},  {13, 14}, {1, 4},   {2, 6},   {5, 8},
        {7, 10},  {9, 13},  {11, 14}, {2, 4},   {3, 6},   {9, 12},
        {11, 13}, {3, 5},   {6, 8},   {7, 9},   {10, 12}, {3, 4},
        {5, 6},   {7, 8},   {9, 10},  {11, 12}, {6, 7},   {8, 9},
    }};

// Number of key columns: smallest power of two c <= 16 with 16*c >= n.
inline std::size_t columns_for(std::size_t n_keys) {
  VEXSORT_DASSERT(n_keys <= kBaseCaseKeys);
  std::size_t c = 1;
  while (kNetworkRows * c < n_keys) c *= 2;
  return c;
}

struct MergeStep {
  enum class Kind : std::uint8_t {
    kCross,  // param = group lanes (2g keys worth)
    kIntra,  // param = compare-exchange lane distance within rows
    kRows,   // param = row distance
  };
  Kind kind;
  std::uint16_t param;

  friend bool operator==(const MergeStep&, const MergeStep&) = default;
};

// Fixed, data-independent op sequence for merging sorted columns; depends
// only on (columns, lanes per key).
template <class Emit>
constexpr void emit_merge_schedule(std::size_t cols, std::size_t lanes_per_key,
                                   Emit&& emit) {
  for (std::size_t g = 1; 2 * g <= cols; g *= 2) {
    emit(MergeStep{MergeStep::Kind::kCross,
                   static_cast<std::uint16_t>(2 * g * lanes_per_key)});
    for (std::size_t hp = g / 2; hp >= 1; hp /= 2) {
      emit(MergeStep{MergeStep::Kind::kIntra,
                     static_cast<std::uint16_t>(hp * lanes_per_key)});
    }
    for (std::size_t h = 8; h >= 1; h /= 2) {
      emit(MergeStep{MergeStep::Kind::kRows, static_cast<std::uint16_t>(h)});
    }
  }
}

constexpr std::size_t merge_schedule_size(std::size_t cols) {
  std::size_t total = 0;
  emit_merge_schedule(cols, 1, [&](const MergeStep&) { ++total; });
  return total;
}

inline std::vector<MergeStep> make_merge_schedule(std::size_t cols,
                                                  std::size_t lanes_per_key) {
  std::vector<MergeStep> steps;
  emit_merge_schedule(cols, lanes_per_key,
                      [&](const MergeStep& s) { steps.push_back(s); });
  return steps;
}

template <std::size_t kCols, std::size_t kLpk>
constexpr auto merge_schedule_array() {
  std::array<MergeStep, merge_schedule_size(kCols)> steps{};
  std::size_t i = 0;
  emit_merge_schedule(kCols, kLpk, [&](const MergeStep& s) { steps[i++] = s; });
  return steps;
}

template <class BE, class TR>
struct Network {
  using Lane = typename TR::Lane;
  using O = typename BE::template Ops<Lane>;
  using Block = typename O::Block;
  using Mask = typename O::Mask;
  static constexpr std::size_t kN = O::kLanes;
  static constexpr std::size_t kLpk = TR::kLanesPerKey;
  static constexpr std::size_t kRowLanes =
      kNetworkRows * kLpk > kN ? kNetworkRows * kLpk : kN;
  static constexpr std::size_t kMaxBlocksPerRow = kRowLanes / kN;

  struct Row {
    std::array<Block, kMaxBlocksPerRow> blk;
  };
  using Rows = std::array<Row, kNetworkRows>;

  static constexpr std::size_t row_lanes(std::size_t cols) {
    const std::size_t lanes = cols * kLpk;
    return lanes > kN ? lanes : kN;
  }

  // ---- row-level primitives (nb = blocks per row) ----

  template <std::size_t kNb>
  VEXSORT_INLINE static void coex_rows(Row& a, Row& b) {
    for (std::size_t i = 0; i < kNb; ++i) {
      TR::template coex<O>(a.blk[i], b.blk[i]);
    }
  }

  // Reverse key order within groups of `group` lanes inside one block.
  VEXSORT_INLINE static Block reverse_keys_in_groups(const Block& v,
                                                     std::size_t group) {
    const Block r = O::reverse_within_groups(v, group);
    if constexpr (kLpk == 2) return O::swap_adjacent_pairs(r);
    else return r;
  }

  // Bitonic cross step between rows a and b: within every `group`-lane
  // group, key x pairs with key (group-1-x) of the other row; the lower
  // half of each group keeps the first-in-order results, the upper half the
  // last-in-order results.
  template <std::size_t kNb>
  VEXSORT_INLINE static void cross_rows(Row& a, Row& b, std::size_t group) {
    if (group <= kN) {
      const Mask upper = O::alternating_groups_mask(group / 2);
      for (std::size_t i = 0; i < kNb; ++i) {
        Block lo_a = a.blk[i];
        Block hi_a = reverse_keys_in_groups(b.blk[i], group);
        TR::template sort2_keys<O>(lo_a, hi_a);
        Block lo_b = b.blk[i];
        Block hi_b = reverse_keys_in_groups(a.blk[i], group);
        TR::template sort2_keys<O>(lo_b, hi_b);
        a.blk[i] = O::if_then_else(upper, hi_a, lo_a);
        b.blk[i] = O::if_then_else(upper, hi_b, lo_b);
      }
      return;
    }
    const std::size_t gb = group / kN;  // blocks per group
    for (std::size_t base = 0; base < kNb; base += gb) {
      // Each compare-exchange pairs a low block of one row with the
      // key-reversed high block of the other; maxima return reversed.
      for (std::size_t j = 0; j < gb / 2; ++j) {
        const std::size_t lo = base + j;
        const std::size_t hi = base + gb - 1 - j;
        Block x = a.blk[lo];
        Block y = TR::template reverse_keys<O>(b.blk[hi]);
        TR::template sort2_keys<O>(x, y);
        Block p = b.blk[lo];
        Block q = TR::template reverse_keys<O>(a.blk[hi]);
        TR::template sort2_keys<O>(p, q);
        a.blk[lo] = x;
        b.blk[hi] = TR::template reverse_keys<O>(y);
        b.blk[lo] = p;
        a.blk[hi] = TR::template reverse_keys<O>(q);
      }
    }
  }

  // Compare-exchange lanes at distance d within groups of 2d lanes, for one
  // row. d is a whole number of keys.
  template <std::size_t kNb>
  VEXSORT_INLINE static void intra_row(Row& v, std::size_t d) {
    if (d >= kN) {
      const std::size_t db = d / kN;
      for (std::size_t i = 0; i < kNb; ++i) {
        if ((i & db) != 0) continue;
        TR::template coex<O>(v.blk[i], v.blk[i + db]);
      }
      return;
    }
    const Mask upper = O::alternating_groups_mask(d);
    for (std::size_t i = 0; i < kNb; ++i) {
      // Swap adjacent d-lane sub-blocks; two group reversals compose to a
      // sub-block swap that keeps lane pairs intact.
      Block lo = v.blk[i];
      Block hi =
          O::reverse_within_groups(O::reverse_within_groups(v.blk[i], 2 * d), d);
      TR::template sort2_keys<O>(lo, hi);
      v.blk[i] = O::if_then_else(upper, hi, lo);
    }
  }

  // ---- phases ----

  template <std::size_t kNb>
  static void sort_16_rows(Rows& rows) {
    for (const auto& [i, j] : kGreen16) {
      coex_rows<kNb>(rows[i], rows[j]);
    }
  }

  template <std::size_t kNb>
  VEXSORT_INLINE static void run_merge_step_nb(Rows& rows,
                                               const MergeStep& step) {
    switch (step.kind) {
      case MergeStep::Kind::kCross:
        for (std::size_t r = 0; r < kNetworkRows / 2; ++r) {
          cross_rows<kNb>(rows[r], rows[kNetworkRows - 1 - r], step.param);
        }
        break;
      case MergeStep::Kind::kIntra:
        for (std::size_t r = 0; r < kNetworkRows; ++r) {
          intra_row<kNb>(rows[r], step.param);
        }
        break;
      case MergeStep::Kind::kRows:
        for (std::size_t r = 0; r < kNetworkRows; ++r) {
          if ((r & step.param) != 0) continue;
          coex_rows<kNb>(rows[r], rows[r + step.param]);
        }
        break;
    }
  }

  template <std::size_t kCols, std::size_t... Is>
  static void run_merge_ct(Rows& rows, std::index_sequence<Is...>) {
    static constexpr auto kSchedule = merge_schedule_array<kCols, kLpk>();
    constexpr std::size_t kNb = row_lanes(kCols) / kN;
    (run_merge_step_nb<kNb>(rows, kSchedule[Is]), ...);
  }

  // ---- test-visible runtime variants ----

  static void sort_16_rows(Rows& rows, std::size_t nb) {
    dispatch_nb(nb, [&]<std::size_t kNb>() { sort_16_rows<kNb>(rows); });
  }

  static void run_merge_step(Rows& rows, const MergeStep& step,
                             std::size_t nb) {
    dispatch_nb(nb, [&]<std::size_t kNb>() { run_merge_step_nb<kNb>(rows, step); });
  }

  static void merge_sorted_columns(Rows& rows, std::size_t cols,
                                   std::size_t nb) {
    const auto schedule = make_merge_schedule(cols, kLpk);
    for (const MergeStep& step : schedule) {
      run_merge_step(rows, step, nb);
    }
  }

  template <class F>
  static void dispatch_nb(std::size_t nb, F&& f) {
    switch (nb) {
      case 1: f.template operator()<1>(); break;
      case 2: if constexpr (kMaxBlocksPerRow >= 2) f.template operator()<2>(); break;
      case 4: if constexpr (kMaxBlocksPerRow >= 4) f.template operator()<4>(); break;
      case 8: if constexpr (kMaxBlocksPerRow >= 8) f.template operator()<8>(); break;
      case 16: if constexpr (kMaxBlocksPerRow >= 16) f.template operator()<16>(); break;
      default: VEXSORT_DASSERT(false);
    }
  }

  // ---- entry point ----

  template <std::size_t kCols>
  static void base_case_shape(Lane* keys, std::size_t n_keys,
                              std::span<Lane> scratch) {
    constexpr std::size_t kStride = row_lanes(kCols);
    constexpr std::size_t kNb = kStride / kN;
    std::span<Lane> buf = scratch.subspan(0, kNetworkRows * kStride);

    // Copy in row-major, pad everything else with the last value in sort
    // order so padding stays behind real keys.
    const typename TR::Key last = TR::last_value();
    const std::size_t total_lanes = n_keys * kLpk;
    constexpr std::size_t kWant = kCols * kLpk;
    const std::size_t full_rows = total_lanes / kWant;
    const std::size_t partial = total_lanes % kWant;
    for (std::size_t r = 0; r < kNetworkRows; ++r) {
      const std::size_t have =
          r < full_rows ? kWant : (r == full_rows ? partial : 0);
      if (have > 0) {
        O::safe_copy_n(std::span<const Lane>(keys + r * kWant, have), have,
                       buf.subspan(r * kStride, have));
      }
      for (std::size_t i = have; i < kStride; i += kLpk) {
        TR::store_key(buf.data() + r * kStride + i, last);
      }
    }

    Rows rows;
    for (std::size_t r = 0; r < kNetworkRows; ++r) {
      for (std::size_t i = 0; i < kNb; ++i) {
        rows[r].blk[i] = O::load(buf, r * kStride + i * kN);
      }
    }

    sort_16_rows<kNb>(rows);
    run_merge_ct<kCols>(
        rows, std::make_index_sequence<merge_schedule_size(kCols)>{});

    // Sorted order is column-major: key q lives at row q%16, column q/16.
    if constexpr (kLpk == 1 && kN == 4 && sizeof(Lane) == 8 &&
                  requires(Block& b) { O::transpose_4x4_64(b, b, b, b); }) {
      // Emit columns with 4x4 block transposes instead of a scalar gather.
      for (std::size_t b = 0; b < kNb; ++b) {
        for (std::size_t q = 0; q < kNetworkRows / 4; ++q) {
          Block c0 = rows[4 * q + 0].blk[b];
          Block c1 = rows[4 * q + 1].blk[b];
          Block c2 = rows[4 * q + 2].blk[b];
          Block c3 = rows[4 * q + 3].blk[b];
          O::transpose_4x4_64(c0, c1, c2, c3);
          O::store(c0, buf, (4 * b + 0) * kNetworkRows + 4 * q);
          O::store(c1, buf, (4 * b + 1) * kNetworkRows + 4 * q);
          O::store(c2, buf, (4 * b + 2) * kNetworkRows + 4 * q);
          O::store(c3, buf, (4 * b + 3) * kNetworkRows + 4 * q);
        }
      }
      O::safe_copy_n(std::span<const Lane>(buf.data(), buf.size()),
                     n_keys * kLpk, std::span<Lane>(keys, n_keys * kLpk));
    } else {
      for (std::size_t r = 0; r < kNetworkRows; ++r) {
        for (std::size_t i = 0; i < kNb; ++i) {
          O::store(rows[r].blk[i], buf, r * kStride + i * kN);
        }
      }
      for (std::size_t q = 0; q < n_keys; ++q) {
        const std::size_t src =
            (q % kNetworkRows) * kStride + (q / kNetworkRows) * kLpk;
        TR::store_key(keys + q * kLpk, TR::load_key(buf.data() + src));
      }
    }
  }

  static void base_case_dispatch(Lane* keys, std::size_t n_keys,
                                 std::span<Lane> scratch) {
    switch (columns_for(n_keys)) {
      case 1: base_case_shape<1>(keys, n_keys, scratch); break;
      case 2: base_case_shape<2>(keys, n_keys, scratch); break;
      case 4: base_case_shape<4>(keys, n_keys, scratch); break;
      case 8: base_case_shape<8>(keys, n_keys, scratch); break;
      default: base_case_shape<16>(keys, n_keys, scratch); break;
    }
  }

  static void base_case(Lane* keys, std::size_t n_keys,
                        std::span<Lane> scratch) {
    VEXSORT_DASSERT(n_keys <= kBaseCaseKeys);
    if (n_keys <= 1) return;
#if VEXSORT_HAVE_AVX2
    // AVX2 has no unsigned 64-bit compare; biasing to the signed domain
    // once saves two ops per compare-exchange throughout the network.
    if constexpr (std::is_same_v<Lane, std::uint64_t> && kLpk == 1 &&
                  std::is_same_v<O, Avx2Ops<std::uint64_t>>) {
      const __m256i bias =
          _mm256_set1_epi64x(static_cast<long long>(0x8000000000000000ULL));
      const auto bias_pass = [&]() {
        VEXSORT_ASSUME(n_keys <= kBaseCaseKeys);
        std::size_t i = 0;
        auto* p = reinterpret_cast<__m256i*>(keys);
        for (; i + 4 <= n_keys; i += 4, ++p) {
          _mm256_storeu_si256(p, _mm256_xor_si256(_mm256_loadu_si256(p), bias));
        }
        for (; i < n_keys; ++i) keys[i] ^= 0x8000000000000000ULL;
      };
      using SignedNet =
          Network<BE, LaneKeyTraits<std::int64_t, TR::kIsAscending>>;
      bias_pass();
      SignedNet::base_case_dispatch(
          reinterpret_cast<std::int64_t*>(keys), n_keys,
          std::span<std::int64_t>(reinterpret_cast<std::int64_t*>(scratch.data()),
                                  scratch.size()));
      bias_pass();
      return;
    }
#endif
    base_case_dispatch(keys, n_keys, scratch);
  }
};

}  // namespace vexsort::detail

#endif  // VEXSORT_DETAIL_NETWORK_HPP_
