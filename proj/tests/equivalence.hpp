// Copyright 2026 The vexsort Authors
// SPDX-License-Identifier: Apache-2.0
//
// Op-level backend equivalence harness: runs every vec op on random inputs
// through the wide backend and through the bounds-checked reference
// implementation instantiated at the same lane count, and demands
// bit-identical results. Shared by the unit suite (small count) and the
// acceptance suite (full count).

#ifndef VEXSORT_TESTS_EQUIVALENCE_HPP_
#define VEXSORT_TESTS_EQUIVALENCE_HPP_

#include <array>
#include <cstring>
#include <functional>
#include <map>
#include <string>

#include "test_util.hpp"
#include "vexsort/detail/vec.hpp"

namespace vextest {

struct EquivalenceReport {
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::map<std::string, std::size_t> failed_ops;

  void record(const char* op, bool ok) {
    ++checks;
    if (!ok) {
      ++failures;
      ++failed_ops[op];
    }
  }
};

template <typename T>
void run_vec_equivalence(std::size_t iterations, std::uint64_t seed,
                         EquivalenceReport& report) {
  using M = vexsort::detail::GenericOps<T, 32, true>;
  using W = typename vexsort::detail::WideTag::template Ops<T>;
  static_assert(M::kLanes == W::kLanes);
  constexpr std::size_t N = M::kLanes;

  Rng rng(seed);

  const auto blocks_equal = [](const typename M::Block& m,
                               const typename W::Block& w) {
    const auto ma = block_to_array<M, T>(m);
    const auto wa = block_to_array<W, T>(w);
    return std::memcmp(ma.data(), wa.data(), sizeof(ma)) == 0;
  };
  const auto masks_equal = [](const typename M::Mask& m,
                              const typename W::Mask& w) {
    return mask_to_bools<M, T>(m) == mask_to_bools<W, T>(w);
  };

  for (std::size_t it = 0; it < iterations; ++it) {
    std::array<T, N> a_arr{};
    std::array<T, N> b_arr{};
    std::array<T, N> c_arr{};
    for (std::size_t i = 0; i < N; ++i) {
      a_arr[i] = random_lane<T>(rng);
      b_arr[i] = random_lane<T>(rng);
      c_arr[i] = random_lane<T>(rng);
    }
    std::array<bool, N> bools{};
    std::array<bool, N> bools2{};
    for (std::size_t i = 0; i < N; ++i) {
      bools[i] = (rng() & 1) != 0;
      bools2[i] = (rng() & 1) != 0;
    }
    const std::size_t k = rng() % (N + 1);
    std::size_t group = std::size_t{1} << (rng() % (std::bit_width(N)));
    const std::size_t offset = rng() % (N + 1);

    const auto ma = block_from_array<M, T>(a_arr);
    const auto mb = block_from_array<M, T>(b_arr);
    const auto mc = block_from_array<M, T>(c_arr);
    const auto wa = block_from_array<W, T>(a_arr);
    const auto wb = block_from_array<W, T>(b_arr);
    const auto wc = block_from_array<W, T>(c_arr);
    const auto mm = mask_from_bools<M, T>(bools);
    const auto wm = mask_from_bools<W, T>(bools);
    const auto mm2 = mask_from_bools<M, T>(bools2);
    const auto wm2 = mask_from_bools<W, T>(bools2);

    report.record("load", blocks_equal(ma, wa));
    report.record("broadcast",
                  blocks_equal(M::broadcast(a_arr[0]), W::broadcast(a_arr[0])));
    report.record("min", blocks_equal(M::min(ma, mb), W::min(wa, wb)));
    report.record("max", blocks_equal(M::max(ma, mb), W::max(wa, wb)));
    {
      auto m_lo = ma;
      auto m_hi = mb;
      M::sort2(m_lo, m_hi);
      auto w_lo = wa;
      auto w_hi = wb;
      W::sort2(w_lo, w_hi);
      report.record("sort2",
                    blocks_equal(m_lo, w_lo) && blocks_equal(m_hi, w_hi));
    }
    report.record("compare_lt",
                  masks_equal(M::compare_lt(ma, mb), W::compare_lt(wa, wb)));
    report.record("compare_eq",
                  masks_equal(M::compare_eq(ma, mb), W::compare_eq(wa, wb)));
    report.record("if_then_else", blocks_equal(M::if_then_else(mm, ma, mb),
                                               W::if_then_else(wm, wa, wb)));
    report.record("or_and", blocks_equal(M::or_and(ma, mb, mc),
                                         W::or_and(wa, wb, wc)));
    report.record("all_true", M::all_true(mm) == W::all_true(wm));
    report.record("count_true", M::count_true(mm) == W::count_true(wm));
    report.record("mask_not", masks_equal(M::mask_not(mm), W::mask_not(wm)));
    report.record("mask_and", masks_equal(M::mask_and(mm, mm2),
                                          W::mask_and(wm, wm2)));
    report.record("first_n_mask",
                  masks_equal(M::first_n_mask(k), W::first_n_mask(k)));
    report.record("alternating_groups_mask",
                  masks_equal(M::alternating_groups_mask(group),
                              W::alternating_groups_mask(group)));
    report.record("mask_to_block",
                  blocks_equal(M::mask_to_block(mm), W::mask_to_block(wm)));
    report.record("block_to_mask",
                  masks_equal(M::block_to_mask(ma), W::block_to_mask(wa)));
    report.record("shift_lanes_left_by_one",
                  blocks_equal(M::shift_lanes_left_by_one(ma),
                               W::shift_lanes_left_by_one(wa)));
    report.record("interleave_upper",
                  blocks_equal(M::interleave_upper(ma, mb),
                               W::interleave_upper(wa, wb)));
    report.record("reverse_lanes",
                  blocks_equal(M::reverse_lanes(ma), W::reverse_lanes(wa)));
    report.record("swap_adjacent_pairs",
                  blocks_equal(M::swap_adjacent_pairs(ma),
                               W::swap_adjacent_pairs(wa)));
    report.record("reverse_within_groups",
                  blocks_equal(M::reverse_within_groups(ma, group),
                               W::reverse_within_groups(wa, group)));
    report.record("min_of_lanes",
                  bit_equal(M::min_of_lanes(ma), W::min_of_lanes(wa)));
    report.record("max_of_lanes",
                  bit_equal(M::max_of_lanes(ma), W::max_of_lanes(wa)));
    report.record("compress_partition",
                  blocks_equal(M::compress_partition(ma, mm),
                               W::compress_partition(wa, wm)));
    {
      const auto mp = M::compress_partition_count(ma, mm);
      const auto wp = W::compress_partition_count(wa, wm);
      report.record("compress_partition_count",
                    mp.num_selected == wp.num_selected &&
                        blocks_equal(mp.block, wp.block));
      const auto mc = M::compress_partition_count_complement(ma, mm);
      const auto wc = W::compress_partition_count_complement(wa, wm);
      report.record("compress_partition_count_complement",
                    mc.num_selected == wc.num_selected &&
                        blocks_equal(mc.block, wc.block));
      const auto pivot_m = M::broadcast(b_arr[0]);
      const auto pivot_w = W::broadcast(b_arr[0]);
      const auto mle = M::partition_le(ma, pivot_m);
      const auto wle = W::partition_le(wa, pivot_w);
      report.record("partition_le", mle.num_selected == wle.num_selected &&
                                        blocks_equal(mle.block, wle.block));
      const auto mge = M::partition_ge(ma, pivot_m);
      const auto wge = W::partition_ge(wa, pivot_w);
      report.record("partition_ge", mge.num_selected == wge.num_selected &&
                                        blocks_equal(mge.block, wge.block));
    }

    // store family: run into identically pre-filled buffers
    {
      std::array<T, 3 * N> mdst{};
      std::array<T, 3 * N> wdst{};
      for (std::size_t i = 0; i < 3 * N; ++i) {
        mdst[i] = random_lane<T>(rng);
        wdst[i] = mdst[i];
      }
      auto msp = std::span<T>(mdst.data(), mdst.size());
      auto wsp = std::span<T>(wdst.data(), wdst.size());

      M::store(ma, msp, offset);
      W::store(wa, wsp, offset);
      report.record("store", arrays_bit_equal<T>(mdst, wdst));

      const std::size_t mcount = M::compress_store(ma, mm, msp, offset);
      const std::size_t wcount = W::compress_store(wa, wm, wsp, offset);
      // Slack lanes past the selected count are unspecified; compare only
      // the defined regions and verify nothing outside offset+N moved.
      bool ok = mcount == wcount;
      for (std::size_t i = 0; i < 3 * N && ok; ++i) {
        if (i >= offset + mcount && i < offset + N) continue;
        ok = bit_equal(mdst[i], wdst[i]);
      }
      report.record("compress_store", ok);

      // Re-sync buffers, then test the blended variant (fully specified).
      wdst = mdst;
      const std::size_t mb2 = M::compress_blended_store(ma, mm2, msp, offset);
      const std::size_t wb2 = W::compress_blended_store(wa, wm2, wsp, offset);
      report.record("compress_blended_store",
                    mb2 == wb2 && arrays_bit_equal<T>(mdst, wdst));

      wdst = mdst;
      const std::size_t cnt = rng() % (2 * N);
      M::safe_copy_n(std::span<const T>(a_arr.data(), N), std::min(cnt, N),
                     msp);
      W::safe_copy_n(std::span<const T>(a_arr.data(), N), std::min(cnt, N),
                     wsp);
      report.record("safe_copy_n", arrays_bit_equal<T>(mdst, wdst));
    }
  }
}

inline void run_all_vec_equivalence(std::size_t iterations, std::uint64_t seed,
                                    EquivalenceReport& report) {
  run_vec_equivalence<std::int16_t>(iterations, seed ^ 1, report);
  run_vec_equivalence<std::uint16_t>(iterations, seed ^ 2, report);
  run_vec_equivalence<std::int32_t>(iterations, seed ^ 3, report);
  run_vec_equivalence<std::uint32_t>(iterations, seed ^ 4, report);
  run_vec_equivalence<float>(iterations, seed ^ 5, report);
  run_vec_equivalence<std::int64_t>(iterations, seed ^ 6, report);
  run_vec_equivalence<std::uint64_t>(iterations, seed ^ 7, report);
  run_vec_equivalence<double>(iterations, seed ^ 8, report);
}

}  // namespace vextest

#endif  // VEXSORT_TESTS_EQUIVALENCE_HPP_
