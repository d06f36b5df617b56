// Copyright 2026 The vexsort Authors
// SPDX-License-Identifier: Apache-2.0
//
// 256-bit wide backend using AVX2 intrinsics. AVX2 has no compress
// instruction, so compress ops re-order lanes with a permutation loaded
// from a table indexed by the concatenated mask bits; 16-bit lanes compose
// two 8-lane half-block shuffles.

#ifndef VEXSORT_DETAIL_VEC_AVX2_HPP_
#define VEXSORT_DETAIL_VEC_AVX2_HPP_

#ifndef __AVX2__
#error "vec_avx2.hpp requires -mavx2"
#endif

#include <immintrin.h>

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <span>
#include <type_traits>

#include "vexsort/detail/config.hpp"

namespace vexsort::detail {

namespace avx2 {

template <typename T>
struct RawOf {
  using type = __m256i;
};
template <>
struct RawOf<float> {
  using type = __m256;
};
template <>
struct RawOf<double> {
  using type = __m256d;
};

// Permutation tables for the emulated compress: row = concatenated mask
// bits, entries = source lane indices with selected lanes first (ascending)
// followed by unselected lanes (ascending).
struct CompressTables {
  alignas(32) std::uint32_t perm8[256][8];    // 8x32-bit lanes
  alignas(32) std::uint32_t perm4[16][8];     // 4x64-bit lanes, doubled idx
  alignas(16) std::uint8_t bytes16[256][16];  // one 128-bit half of 16-bit lanes
};

constexpr CompressTables make_compress_tables() {
  CompressTables t{};
  for (int mask = 0; mask < 256; ++mask) {
    int w = 0;
    std::uint32_t lanes[8] = {};
    for (int i = 0; i < 8; ++i)
      if (mask & (1 << i)) lanes[w++] = static_cast<std::uint32_t>(i);
    for (int i = 0; i < 8; ++i)
      if (!(mask & (1 << i))) lanes[w++] = static_cast<std::uint32_t>(i);
    for (int i = 0; i < 8; ++i) {
      t.perm8[mask][i] = lanes[i];
      t.bytes16[mask][2 * i] = static_cast<std::uint8_t>(2 * lanes[i]);
      t.bytes16[mask][2 * i + 1] = static_cast<std::uint8_t>(2 * lanes[i] + 1);
    }
  }
  for (int mask = 0; mask < 16; ++mask) {
    int w = 0;
    std::uint32_t keys[4] = {};
    for (int i = 0; i < 4; ++i)
      if (mask & (1 << i)) keys[w++] = static_cast<std::uint32_t>(i);
    for (int i = 0; i < 4; ++i)
      if (!(mask & (1 << i))) keys[w++] = static_cast<std::uint32_t>(i);
    for (int i = 0; i < 4; ++i) {
      t.perm4[mask][2 * i] = 2 * keys[i];
      t.perm4[mask][2 * i + 1] = 2 * keys[i] + 1;
    }
  }
  return t;
}

inline constexpr CompressTables kCompress = make_compress_tables();

VEXSORT_INLINE __m256i swap_halves(__m256i v) {
  return _mm256_permute2x128_si256(v, v, 0x01);
}

// Shift the whole 256-bit register up by kBytes (lane i -> lane i+1),
// zero-filling the bottom.
template <int kBytes>
VEXSORT_INLINE __m256i shift_bytes_up(__m256i v) {
  const __m256i lo_to_hi = _mm256_permute2x128_si256(v, v, 0x08);
  return _mm256_alignr_epi8(v, lo_to_hi, 16 - kBytes);
}

VEXSORT_INLINE __m256i iota16() {
  return _mm256_setr_epi16(0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14,
                           15);
}
VEXSORT_INLINE __m256i iota32() {
  return _mm256_setr_epi32(0, 1, 2, 3, 4, 5, 6, 7);
}
VEXSORT_INLINE __m256i iota64() { return _mm256_setr_epi64x(0, 1, 2, 3); }

}  // namespace avx2

template <typename T>
struct Avx2Ops {
  static constexpr std::size_t kLanes = 32 / sizeof(T);
  static constexpr const char* kName = "avx2";

  static constexpr bool kIsFloat = std::is_floating_point_v<T>;
  static constexpr bool kIsSigned = std::is_signed_v<T> && !kIsFloat;
  using Raw = typename avx2::RawOf<T>::type;

  struct Block {
    Raw raw;
  };
  // Masks are lane-wide all-ones / all-zeros vectors.
  struct Mask {
    __m256i raw;
  };

  // ---- raw casts ----

  VEXSORT_INLINE static __m256i to_int(Raw v) {
    if constexpr (std::is_same_v<T, float>) return _mm256_castps_si256(v);
    else if constexpr (std::is_same_v<T, double>) return _mm256_castpd_si256(v);
    else return v;
  }
  VEXSORT_INLINE static Raw from_int(__m256i v) {
    if constexpr (std::is_same_v<T, float>) return _mm256_castsi256_ps(v);
    else if constexpr (std::is_same_v<T, double>) return _mm256_castsi256_pd(v);
    else return v;
  }

  // ---- memory ----

  VEXSORT_INLINE static Block load(std::span<const T> src, std::size_t offset) {
    Block b;
    if constexpr (std::is_same_v<T, float>) {
      b.raw = _mm256_loadu_ps(src.data() + offset);
    } else if constexpr (std::is_same_v<T, double>) {
      b.raw = _mm256_loadu_pd(src.data() + offset);
    } else {
      b.raw = _mm256_loadu_si256(
          reinterpret_cast<const __m256i*>(src.data() + offset));
    }
    return b;
  }

  VEXSORT_INLINE static void store(const Block& v, std::span<T> dst,
                                   std::size_t offset) {
    if constexpr (std::is_same_v<T, float>) {
      _mm256_storeu_ps(dst.data() + offset, v.raw);
    } else if constexpr (std::is_same_v<T, double>) {
      _mm256_storeu_pd(dst.data() + offset, v.raw);
    } else {
      _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst.data() + offset),
                          v.raw);
    }
  }

  static void safe_copy_n(std::span<const T> src, std::size_t count,
                          std::span<T> dst) {
    if (count > 0) std::memcpy(dst.data(), src.data(), count * sizeof(T));
  }

  // ---- lanewise ----

  VEXSORT_INLINE static Block broadcast(T value) {
    Block b;
    if constexpr (std::is_same_v<T, float>) b.raw = _mm256_set1_ps(value);
    else if constexpr (std::is_same_v<T, double>) b.raw = _mm256_set1_pd(value);
    else if constexpr (sizeof(T) == 2)
      b.raw = _mm256_set1_epi16(static_cast<short>(value));
    else if constexpr (sizeof(T) == 4)
      b.raw = _mm256_set1_epi32(static_cast<int>(value));
    else
      b.raw = _mm256_set1_epi64x(static_cast<long long>(value));
    return b;
  }

  // Unsigned 64-bit compares go through a sign-bias; AVX2 only has signed
  // 64-bit compares.
  VEXSORT_INLINE static __m256i bias64(__m256i v) {
    return _mm256_xor_si256(v, _mm256_set1_epi64x(
                                   static_cast<long long>(0x8000000000000000ULL)));
  }

  VEXSORT_INLINE static Mask compare_lt(const Block& a, const Block& b) {
    Mask m;
    if constexpr (std::is_same_v<T, float>) {
      m.raw = _mm256_castps_si256(_mm256_cmp_ps(a.raw, b.raw, _CMP_LT_OQ));
    } else if constexpr (std::is_same_v<T, double>) {
      m.raw = _mm256_castpd_si256(_mm256_cmp_pd(a.raw, b.raw, _CMP_LT_OQ));
    } else if constexpr (sizeof(T) == 2) {
      if constexpr (kIsSigned) m.raw = _mm256_cmpgt_epi16(b.raw, a.raw);
      else {
        const __m256i bias = _mm256_set1_epi16(static_cast<short>(0x8000));
        m.raw = _mm256_cmpgt_epi16(_mm256_xor_si256(b.raw, bias),
                                   _mm256_xor_si256(a.raw, bias));
      }
    } else if constexpr (sizeof(T) == 4) {
      if constexpr (kIsSigned) m.raw = _mm256_cmpgt_epi32(b.raw, a.raw);
      else {
        const __m256i bias = _mm256_set1_epi32(static_cast<int>(0x80000000));
        m.raw = _mm256_cmpgt_epi32(_mm256_xor_si256(b.raw, bias),
                                   _mm256_xor_si256(a.raw, bias));
      }
    } else {
      if constexpr (kIsSigned) m.raw = _mm256_cmpgt_epi64(b.raw, a.raw);
      else m.raw = _mm256_cmpgt_epi64(bias64(b.raw), bias64(a.raw));
    }
    return m;
  }

  VEXSORT_INLINE static Mask compare_eq(const Block& a, const Block& b) {
    Mask m;
    if constexpr (std::is_same_v<T, float>) {
      m.raw = _mm256_castps_si256(_mm256_cmp_ps(a.raw, b.raw, _CMP_EQ_OQ));
    } else if constexpr (std::is_same_v<T, double>) {
      m.raw = _mm256_castpd_si256(_mm256_cmp_pd(a.raw, b.raw, _CMP_EQ_OQ));
    } else if constexpr (sizeof(T) == 2) {
      m.raw = _mm256_cmpeq_epi16(a.raw, b.raw);
    } else if constexpr (sizeof(T) == 4) {
      m.raw = _mm256_cmpeq_epi32(a.raw, b.raw);
    } else {
      m.raw = _mm256_cmpeq_epi64(a.raw, b.raw);
    }
    return m;
  }

  VEXSORT_INLINE static Block min(const Block& a, const Block& b) {
    Block out;
    if constexpr (std::is_same_v<T, float>) {
      out.raw = _mm256_min_ps(a.raw, b.raw);
    } else if constexpr (std::is_same_v<T, double>) {
      out.raw = _mm256_min_pd(a.raw, b.raw);
    } else if constexpr (std::is_same_v<T, std::int16_t>) {
      out.raw = _mm256_min_epi16(a.raw, b.raw);
    } else if constexpr (std::is_same_v<T, std::uint16_t>) {
      out.raw = _mm256_min_epu16(a.raw, b.raw);
    } else if constexpr (std::is_same_v<T, std::int32_t>) {
      out.raw = _mm256_min_epi32(a.raw, b.raw);
    } else if constexpr (std::is_same_v<T, std::uint32_t>) {
      out.raw = _mm256_min_epu32(a.raw, b.raw);
    } else {
      // 64-bit: lt ? a : b (ties pick b, matching the reference).
      const Mask lt = compare_lt(a, b);
      out.raw = _mm256_blendv_epi8(b.raw, a.raw, lt.raw);
    }
    return out;
  }

  VEXSORT_INLINE static Block max(const Block& a, const Block& b) {
    Block out;
    if constexpr (std::is_same_v<T, float>) {
      out.raw = _mm256_max_ps(a.raw, b.raw);
    } else if constexpr (std::is_same_v<T, double>) {
      out.raw = _mm256_max_pd(a.raw, b.raw);
    } else if constexpr (std::is_same_v<T, std::int16_t>) {
      out.raw = _mm256_max_epi16(a.raw, b.raw);
    } else if constexpr (std::is_same_v<T, std::uint16_t>) {
      out.raw = _mm256_max_epu16(a.raw, b.raw);
    } else if constexpr (std::is_same_v<T, std::int32_t>) {
      out.raw = _mm256_max_epi32(a.raw, b.raw);
    } else if constexpr (std::is_same_v<T, std::uint32_t>) {
      out.raw = _mm256_max_epu32(a.raw, b.raw);
    } else {
      const Mask gt = compare_lt(b, a);
      out.raw = _mm256_blendv_epi8(b.raw, a.raw, gt.raw);
    }
    return out;
  }

  // Compare-and-exchange: a keeps the lane-wise minima, b the maxima.
  // 64-bit integers share one comparison between both selects.
  VEXSORT_INLINE static void sort2(Block& a, Block& b) {
    if constexpr (sizeof(T) == 8 && !kIsFloat) {
      const Mask lt = compare_lt(a, b);
      const Block lo{_mm256_blendv_epi8(b.raw, a.raw, lt.raw)};
      b.raw = _mm256_blendv_epi8(a.raw, b.raw, lt.raw);
      a = lo;
    } else {
      const Block lo = min(a, b);
      b = max(a, b);
      a = lo;
    }
  }

  VEXSORT_INLINE static Block if_then_else(const Mask& m, const Block& yes,
                                           const Block& no) {
    Block out;
    if constexpr (std::is_same_v<T, float>) {
      out.raw = _mm256_blendv_ps(no.raw, yes.raw, _mm256_castsi256_ps(m.raw));
    } else if constexpr (std::is_same_v<T, double>) {
      out.raw = _mm256_blendv_pd(no.raw, yes.raw, _mm256_castsi256_pd(m.raw));
    } else {
      out.raw = _mm256_blendv_epi8(no.raw, yes.raw, m.raw);
    }
    return out;
  }

  VEXSORT_INLINE static Block or_and(const Block& a, const Block& b,
                                     const Block& c) {
    Block out;
    out.raw = from_int(_mm256_or_si256(
        to_int(a.raw), _mm256_and_si256(to_int(b.raw), to_int(c.raw))));
    return out;
  }

  // ---- masks ----

  VEXSORT_INLINE static bool all_true(const Mask& m) {
    return _mm256_movemask_epi8(m.raw) == -1;
  }

  VEXSORT_INLINE static std::size_t count_true(const Mask& m) {
    const auto bits = static_cast<std::uint32_t>(_mm256_movemask_epi8(m.raw));
    return static_cast<std::size_t>(std::popcount(bits)) / sizeof(T);
  }

  VEXSORT_INLINE static Mask mask_not(const Mask& m) {
    Mask out;
    out.raw = _mm256_xor_si256(m.raw, _mm256_set1_epi8(-1));
    return out;
  }

  VEXSORT_INLINE static Mask mask_and(const Mask& a, const Mask& b) {
    Mask out;
    out.raw = _mm256_and_si256(a.raw, b.raw);
    return out;
  }

  VEXSORT_INLINE static Mask first_n_mask(std::size_t k) {
    Mask out;
    if constexpr (sizeof(T) == 2) {
      out.raw = _mm256_cmpgt_epi16(_mm256_set1_epi16(static_cast<short>(k)),
                                   avx2::iota16());
    } else if constexpr (sizeof(T) == 4) {
      out.raw = _mm256_cmpgt_epi32(_mm256_set1_epi32(static_cast<int>(k)),
                                   avx2::iota32());
    } else {
      out.raw = _mm256_cmpgt_epi64(
          _mm256_set1_epi64x(static_cast<long long>(k)), avx2::iota64());
    }
    return out;
  }

  VEXSORT_INLINE static Mask alternating_groups_mask(std::size_t group) {
    // (lane / group) odd  <=>  lane & group  (group is a power of two).
    Mask out;
    if constexpr (sizeof(T) == 2) {
      const __m256i g = _mm256_set1_epi16(static_cast<short>(group));
      out.raw = _mm256_cmpeq_epi16(_mm256_and_si256(avx2::iota16(), g), g);
    } else if constexpr (sizeof(T) == 4) {
      const __m256i g = _mm256_set1_epi32(static_cast<int>(group));
      out.raw = _mm256_cmpeq_epi32(_mm256_and_si256(avx2::iota32(), g), g);
    } else {
      const __m256i g = _mm256_set1_epi64x(static_cast<long long>(group));
      out.raw = _mm256_cmpeq_epi64(_mm256_and_si256(avx2::iota64(), g), g);
    }
    return out;
  }

  VEXSORT_INLINE static Block mask_to_block(const Mask& m) {
    Block out;
    out.raw = from_int(m.raw);
    return out;
  }

  VEXSORT_INLINE static Mask block_to_mask(const Block& v) {
    // Bit-level nonzero test, so -0.0f counts as true (as in the reference).
    Mask out;
    const __m256i zero = _mm256_setzero_si256();
    __m256i eq;
    if constexpr (sizeof(T) == 2) eq = _mm256_cmpeq_epi16(to_int(v.raw), zero);
    else if constexpr (sizeof(T) == 4) eq = _mm256_cmpeq_epi32(to_int(v.raw), zero);
    else eq = _mm256_cmpeq_epi64(to_int(v.raw), zero);
    out.raw = _mm256_xor_si256(eq, _mm256_set1_epi8(-1));
    return out;
  }

  // ---- permutes ----

  VEXSORT_INLINE static Block shift_lanes_left_by_one(const Block& v) {
    Block out;
    out.raw = from_int(avx2::shift_bytes_up<sizeof(T)>(to_int(v.raw)));
    return out;
  }

  VEXSORT_INLINE static Block interleave_upper(const Block& a, const Block& b) {
    Block out;
    if constexpr (std::is_same_v<T, float>) {
      out.raw = _mm256_unpackhi_ps(a.raw, b.raw);
    } else if constexpr (std::is_same_v<T, double>) {
      out.raw = _mm256_unpackhi_pd(a.raw, b.raw);
    } else if constexpr (sizeof(T) == 2) {
      out.raw = _mm256_unpackhi_epi16(a.raw, b.raw);
    } else if constexpr (sizeof(T) == 4) {
      out.raw = _mm256_unpackhi_epi32(a.raw, b.raw);
    } else {
      out.raw = _mm256_unpackhi_epi64(a.raw, b.raw);
    }
    return out;
  }

  VEXSORT_INLINE static Block reverse_lanes(const Block& v) {
    return reverse_within_groups(v, kLanes);
  }

  VEXSORT_INLINE static Block swap_adjacent_pairs(const Block& v) {
    return reverse_within_groups(v, 2);
  }

  static Block reverse_within_groups(const Block& v, std::size_t group) {
    VEXSORT_DASSERT_HOT(group >= 1 && group <= kLanes && std::has_single_bit(group));
    Block out;
    const __m256i x = to_int(v.raw);
    __m256i r = x;
    if constexpr (sizeof(T) == 2) {
      switch (group) {
        case 1: break;
        case 2:
          r = _mm256_shufflehi_epi16(_mm256_shufflelo_epi16(x, _MM_SHUFFLE(2, 3, 0, 1)),
                                     _MM_SHUFFLE(2, 3, 0, 1));
          break;
        case 4:
          r = _mm256_shufflehi_epi16(_mm256_shufflelo_epi16(x, _MM_SHUFFLE(0, 1, 2, 3)),
                                     _MM_SHUFFLE(0, 1, 2, 3));
          break;
        case 8:
          r = _mm256_shuffle_epi8(
              x, _mm256_setr_epi8(14, 15, 12, 13, 10, 11, 8, 9, 6, 7, 4, 5, 2,
                                  3, 0, 1, 14, 15, 12, 13, 10, 11, 8, 9, 6, 7,
                                  4, 5, 2, 3, 0, 1));
          break;
        case 16:
          r = avx2::swap_halves(_mm256_shuffle_epi8(
              x, _mm256_setr_epi8(14, 15, 12, 13, 10, 11, 8, 9, 6, 7, 4, 5, 2,
                                  3, 0, 1, 14, 15, 12, 13, 10, 11, 8, 9, 6, 7,
                                  4, 5, 2, 3, 0, 1)));
          break;
      }
    } else if constexpr (sizeof(T) == 4) {
      switch (group) {
        case 1: break;
        case 2: r = _mm256_shuffle_epi32(x, _MM_SHUFFLE(2, 3, 0, 1)); break;
        case 4: r = _mm256_shuffle_epi32(x, _MM_SHUFFLE(0, 1, 2, 3)); break;
        case 8:
          r = _mm256_permutevar8x32_epi32(
              x, _mm256_setr_epi32(7, 6, 5, 4, 3, 2, 1, 0));
          break;
      }
    } else {
      switch (group) {
        case 1: break;
        case 2: r = _mm256_permute4x64_epi64(x, _MM_SHUFFLE(2, 3, 0, 1)); break;
        case 4: r = _mm256_permute4x64_epi64(x, _MM_SHUFFLE(0, 1, 2, 3)); break;
      }
    }
    out.raw = from_int(r);
    return out;
  }

  // ---- compress family ----

  VEXSORT_INLINE static std::uint32_t mask_bits(const Mask& m) {
    if constexpr (sizeof(T) == 2) {
      const __m256i bytes = _mm256_packs_epi16(m.raw, m.raw);
      const auto b = static_cast<std::uint32_t>(_mm256_movemask_epi8(bytes));
      return (b & 0xFFu) | ((b >> 8) & 0xFF00u);
    } else if constexpr (sizeof(T) == 4) {
      return static_cast<std::uint32_t>(
          _mm256_movemask_ps(_mm256_castsi256_ps(m.raw)));
    } else {
      return static_cast<std::uint32_t>(
          _mm256_movemask_pd(_mm256_castsi256_pd(m.raw)));
    }
  }

  // Selected lanes packed ascending at the bottom, unselected ascending at
  // the top; one table-driven permute for 32/64-bit, two half shuffles for
  // 16-bit.
  VEXSORT_INLINE static Block compress_partition(const Block& v, const Mask& m) {
    Block out;
    if constexpr (sizeof(T) == 4) {
      const std::uint32_t bits = mask_bits(m);
      const __m256i idx = _mm256_load_si256(
          reinterpret_cast<const __m256i*>(avx2::kCompress.perm8[bits]));
      out.raw = from_int(_mm256_permutevar8x32_epi32(to_int(v.raw), idx));
    } else if constexpr (sizeof(T) == 8) {
      const std::uint32_t bits = mask_bits(m);
      const __m256i idx = _mm256_load_si256(
          reinterpret_cast<const __m256i*>(avx2::kCompress.perm4[bits]));
      out.raw = from_int(_mm256_permutevar8x32_epi32(to_int(v.raw), idx));
    } else {
      const std::uint32_t bits = mask_bits(m);
      const std::uint32_t mb0 = bits & 0xFFu;
      const std::uint32_t mb1 = (bits >> 8) & 0xFFu;
      const std::size_t c0 = std::popcount(mb0);
      const std::size_t c1 = std::popcount(mb1);
      const __m128i h0 = _mm256_castsi256_si128(v.raw);
      const __m128i h1 = _mm256_extracti128_si256(v.raw, 1);
      const __m128i p0 = _mm_shuffle_epi8(
          h0, _mm_load_si128(
                  reinterpret_cast<const __m128i*>(avx2::kCompress.bytes16[mb0])));
      const __m128i p1 = _mm_shuffle_epi8(
          h1, _mm_load_si128(
                  reinterpret_cast<const __m128i*>(avx2::kCompress.bytes16[mb1])));
      alignas(16) T seg0[8];
      alignas(16) T seg1[8];
      _mm_store_si128(reinterpret_cast<__m128i*>(seg0), p0);
      _mm_store_si128(reinterpret_cast<__m128i*>(seg1), p1);
      alignas(32) T merged[16];
      T* w = merged;
      std::memcpy(w, seg0, c0 * sizeof(T));
      w += c0;
      std::memcpy(w, seg1, c1 * sizeof(T));
      w += c1;
      std::memcpy(w, seg0 + c0, (8 - c0) * sizeof(T));
      w += 8 - c0;
      std::memcpy(w, seg1 + c1, (8 - c1) * sizeof(T));
      out.raw = _mm256_load_si256(reinterpret_cast<const __m256i*>(merged));
    }
    return out;
  }

  struct Packed {
    Block block;
    std::size_t num_selected;
  };

  VEXSORT_INLINE static Packed compress_partition_count(const Block& v,
                                                        const Mask& m) {
    Packed out;
    if constexpr (sizeof(T) == 4) {
      const std::uint32_t bits = mask_bits(m);
      const __m256i idx = _mm256_load_si256(
          reinterpret_cast<const __m256i*>(avx2::kCompress.perm8[bits]));
      out.block.raw = from_int(_mm256_permutevar8x32_epi32(to_int(v.raw), idx));
      out.num_selected = std::popcount(bits);
    } else if constexpr (sizeof(T) == 8) {
      const std::uint32_t bits = mask_bits(m);
      const __m256i idx = _mm256_load_si256(
          reinterpret_cast<const __m256i*>(avx2::kCompress.perm4[bits]));
      out.block.raw = from_int(_mm256_permutevar8x32_epi32(to_int(v.raw), idx));
      out.num_selected = std::popcount(bits);
    } else {
      out.block = compress_partition(v, m);
      out.num_selected = count_true(m);
    }
    return out;
  }

  VEXSORT_INLINE static Packed compress_partition_count_complement(
      const Block& v, const Mask& m) {
    if constexpr (sizeof(T) == 4 || sizeof(T) == 8) {
      constexpr std::uint32_t kAll = sizeof(T) == 4 ? 0xFFu : 0xFu;
      const std::uint32_t bits = mask_bits(m) ^ kAll;
      Packed out;
      if constexpr (sizeof(T) == 4) {
        const __m256i idx = _mm256_load_si256(
            reinterpret_cast<const __m256i*>(avx2::kCompress.perm8[bits]));
        out.block.raw = from_int(_mm256_permutevar8x32_epi32(to_int(v.raw), idx));
      } else {
        const __m256i idx = _mm256_load_si256(
            reinterpret_cast<const __m256i*>(avx2::kCompress.perm4[bits]));
        out.block.raw = from_int(_mm256_permutevar8x32_epi32(to_int(v.raw), idx));
      }
      out.num_selected = std::popcount(bits);
      return out;
    } else {
      return compress_partition_count(v, mask_not(m));
    }
  }

#if defined(__AVX512VL__) && defined(__AVX512DQ__)
  // Mask-register compares avoid the sign-bias dance and the movemask.
  VEXSORT_INLINE static std::uint32_t le_bits(const Block& v, const Block& b) {
    if constexpr (std::is_same_v<T, float>) {
      return _mm256_cmp_ps_mask(v.raw, b.raw, _CMP_LE_OQ);
    } else if constexpr (std::is_same_v<T, double>) {
      return _mm256_cmp_pd_mask(v.raw, b.raw, _CMP_LE_OQ);
    } else if constexpr (std::is_same_v<T, std::int32_t>) {
      return _mm256_cmple_epi32_mask(v.raw, b.raw);
    } else if constexpr (std::is_same_v<T, std::uint32_t>) {
      return _mm256_cmple_epu32_mask(v.raw, b.raw);
    } else if constexpr (std::is_same_v<T, std::int64_t>) {
      return _mm256_cmple_epi64_mask(v.raw, b.raw);
    } else {
      return _mm256_cmple_epu64_mask(v.raw, b.raw);
    }
  }

  VEXSORT_INLINE static std::uint32_t ge_bits(const Block& v, const Block& b) {
    if constexpr (std::is_same_v<T, float>) {
      return _mm256_cmp_ps_mask(v.raw, b.raw, _CMP_GE_OQ);
    } else if constexpr (std::is_same_v<T, double>) {
      return _mm256_cmp_pd_mask(v.raw, b.raw, _CMP_GE_OQ);
    } else if constexpr (std::is_same_v<T, std::int32_t>) {
      return _mm256_cmpge_epi32_mask(v.raw, b.raw);
    } else if constexpr (std::is_same_v<T, std::uint32_t>) {
      return _mm256_cmpge_epu32_mask(v.raw, b.raw);
    } else if constexpr (std::is_same_v<T, std::int64_t>) {
      return _mm256_cmpge_epi64_mask(v.raw, b.raw);
    } else {
      return _mm256_cmpge_epu64_mask(v.raw, b.raw);
    }
  }

  template <bool kGe>
  VEXSORT_INLINE static Packed partition_cmp(const Block& v, const Block& b) {
    const std::uint32_t bits = kGe ? ge_bits(v, b) : le_bits(v, b);
    Packed out;
    if constexpr (sizeof(T) == 4) {
      const __m256i idx = _mm256_load_si256(
          reinterpret_cast<const __m256i*>(avx2::kCompress.perm8[bits]));
      out.block.raw = from_int(_mm256_permutevar8x32_epi32(to_int(v.raw), idx));
    } else {
      const __m256i idx = _mm256_load_si256(
          reinterpret_cast<const __m256i*>(avx2::kCompress.perm4[bits]));
      out.block.raw = from_int(_mm256_permutevar8x32_epi32(to_int(v.raw), idx));
    }
    out.num_selected = std::popcount(bits);
    return out;
  }
#endif  // __AVX512VL__ && __AVX512DQ__

  VEXSORT_INLINE static Packed partition_le(const Block& v, const Block& bound) {
#if defined(__AVX512VL__) && defined(__AVX512DQ__)
    if constexpr (sizeof(T) >= 4) return partition_cmp<false>(v, bound);
#endif
    return compress_partition_count_complement(v, compare_lt(bound, v));
  }

  VEXSORT_INLINE static Packed partition_ge(const Block& v, const Block& bound) {
#if defined(__AVX512VL__) && defined(__AVX512DQ__)
    if constexpr (sizeof(T) >= 4) return partition_cmp<true>(v, bound);
#endif
    return compress_partition_count_complement(v, compare_lt(v, bound));
  }

  // 4x4 transpose across four blocks of 64-bit lanes; backend extension
  // used by the base case to emit column-major output with vector stores.
  VEXSORT_INLINE static void transpose_4x4_64(Block& r0, Block& r1, Block& r2,
                                              Block& r3) {
    static_assert(sizeof(T) == 8);
    const __m256i t0 = _mm256_unpacklo_epi64(to_int(r0.raw), to_int(r1.raw));
    const __m256i t1 = _mm256_unpackhi_epi64(to_int(r0.raw), to_int(r1.raw));
    const __m256i t2 = _mm256_unpacklo_epi64(to_int(r2.raw), to_int(r3.raw));
    const __m256i t3 = _mm256_unpackhi_epi64(to_int(r2.raw), to_int(r3.raw));
    r0.raw = from_int(_mm256_permute2x128_si256(t0, t2, 0x20));
    r1.raw = from_int(_mm256_permute2x128_si256(t1, t3, 0x20));
    r2.raw = from_int(_mm256_permute2x128_si256(t0, t2, 0x31));
    r3.raw = from_int(_mm256_permute2x128_si256(t1, t3, 0x31));
  }

  VEXSORT_INLINE static std::size_t compress_store(const Block& v, const Mask& m,
                                                   std::span<T> dst,
                                                   std::size_t offset) {
    if constexpr (sizeof(T) == 2) {
      const std::uint32_t bits = mask_bits(m);
      const std::uint32_t mb0 = bits & 0xFFu;
      const std::uint32_t mb1 = (bits >> 8) & 0xFFu;
      const std::size_t c0 = std::popcount(mb0);
      const std::size_t c1 = std::popcount(mb1);
      const __m128i p0 = _mm_shuffle_epi8(
          _mm256_castsi256_si128(v.raw),
          _mm_load_si128(
              reinterpret_cast<const __m128i*>(avx2::kCompress.bytes16[mb0])));
      const __m128i p1 = _mm_shuffle_epi8(
          _mm256_extracti128_si256(v.raw, 1),
          _mm_load_si128(
              reinterpret_cast<const __m128i*>(avx2::kCompress.bytes16[mb1])));
      _mm_storeu_si128(reinterpret_cast<__m128i*>(dst.data() + offset), p0);
      _mm_storeu_si128(reinterpret_cast<__m128i*>(dst.data() + offset + c0), p1);
      return c0 + c1;
    } else {
      const Block packed = compress_partition(v, m);
      store(packed, dst, offset);
      return count_true(m);
    }
  }

  static std::size_t compress_blended_store(const Block& v, const Mask& m,
                                            std::span<T> dst,
                                            std::size_t offset) {
    const Block packed = compress_partition(v, m);
    alignas(32) T tmp[kLanes];
    std::memcpy(tmp, &packed.raw, sizeof(tmp));
    const std::size_t count = count_true(m);
    if (count > 0) std::memcpy(dst.data() + offset, tmp, count * sizeof(T));
    return count;
  }

  // ---- reductions (halving tree, matching the reference fold order) ----

  VEXSORT_INLINE static T extract_lane0(const Block& v) {
    if constexpr (std::is_same_v<T, float>) {
      return _mm_cvtss_f32(_mm256_castps256_ps128(v.raw));
    } else if constexpr (std::is_same_v<T, double>) {
      return _mm_cvtsd_f64(_mm256_castpd256_pd128(v.raw));
    } else if constexpr (sizeof(T) == 2) {
      return static_cast<T>(
          _mm_extract_epi16(_mm256_castsi256_si128(v.raw), 0));
    } else if constexpr (sizeof(T) == 4) {
      return static_cast<T>(
          _mm_cvtsi128_si32(_mm256_castsi256_si128(v.raw)));
    } else {
      return static_cast<T>(
          _mm_cvtsi128_si64(_mm256_castsi256_si128(v.raw)));
    }
  }

  template <class F>
  VEXSORT_INLINE static T reduce(const Block& v, F&& combine) {
    Block acc = v;
    Block swapped;
    swapped.raw = from_int(avx2::swap_halves(to_int(acc.raw)));
    acc = combine(acc, swapped);
    if constexpr (sizeof(T) <= 4) {
      swapped.raw = from_int(
          _mm256_shuffle_epi32(to_int(acc.raw), _MM_SHUFFLE(1, 0, 3, 2)));
      acc = combine(acc, swapped);
    }
    if constexpr (sizeof(T) <= 2) {
      swapped.raw = from_int(
          _mm256_shuffle_epi32(to_int(acc.raw), _MM_SHUFFLE(2, 3, 0, 1)));
      acc = combine(acc, swapped);
    }
    // final: adjacent lanes
    if constexpr (sizeof(T) == 2) {
      swapped.raw = from_int(_mm256_shufflelo_epi16(
          to_int(acc.raw), _MM_SHUFFLE(2, 3, 0, 1)));
    } else if constexpr (sizeof(T) == 4) {
      swapped.raw = from_int(
          _mm256_shuffle_epi32(to_int(acc.raw), _MM_SHUFFLE(2, 3, 0, 1)));
    } else {
      swapped.raw = from_int(_mm256_permute4x64_epi64(
          to_int(acc.raw), _MM_SHUFFLE(2, 3, 0, 1)));
    }
    acc = combine(acc, swapped);
    return extract_lane0(acc);
  }

  static T min_of_lanes(const Block& v) {
    return reduce(v, [](const Block& a, const Block& b) { return min(a, b); });
  }

  static T max_of_lanes(const Block& v) {
    return reduce(v, [](const Block& a, const Block& b) { return max(a, b); });
  }
};

}  // namespace vexsort::detail

#endif  // VEXSORT_DETAIL_VEC_AVX2_HPP_
