// Copyright 2026 The vexsort Authors
// SPDX-License-Identifier: Apache-2.0
//
// Key traits: the order (ascending/descending) and key-width (single lane
// vs. 64-bit lane pair) abstraction everything above the vec layer is
// written against. "first"/"last" always mean position in the requested
// sort order, not numeric magnitude.

#ifndef VEXSORT_DETAIL_TRAITS_HPP_
#define VEXSORT_DETAIL_TRAITS_HPP_

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <type_traits>

#include "vexsort/detail/config.hpp"
#include "vexsort/detail/vec.hpp"

namespace vexsort {

// 128-bit key stored as two 64-bit lanes: low half in the even lane, high
// half in the odd lane.
struct K128 {
  std::uint64_t lo;
  std::uint64_t hi;

  friend bool operator==(const K128& a, const K128& b) = default;
};

namespace detail {

template <typename T>
constexpr T lowest_value() {
  if constexpr (std::is_floating_point_v<T>)
    return -std::numeric_limits<T>::infinity();
  else
    return std::numeric_limits<T>::lowest();
}

template <typename T>
constexpr T highest_value() {
  if constexpr (std::is_floating_point_v<T>)
    return std::numeric_limits<T>::infinity();
  else
    return std::numeric_limits<T>::max();
}

template <typename T, bool kAscending>
struct LaneKeyTraits {
  using Lane = T;
  using Key = T;
  static constexpr std::size_t kLanesPerKey = 1;
  static constexpr bool kIsAscending = kAscending;

  // scalar keys
  static Key load_key(const Lane* p) { return *p; }
  static void store_key(Lane* p, Key k) { *p = k; }
  static bool precedes(Key a, Key b) {
    if constexpr (kAscending) return a < b;
    else return b < a;
  }
  static bool key_equal(Key a, Key b) { return a == b; }
  // i and j are key-aligned lane offsets.
  static void swap_keys(Lane* arr, std::size_t i, std::size_t j) {
    const Lane t = arr[i];
    arr[i] = arr[j];
    arr[j] = t;
  }
  static constexpr Key first_value() {
    return kAscending ? lowest_value<T>() : highest_value<T>();
  }
  static constexpr Key last_value() {
    return kAscending ? highest_value<T>() : lowest_value<T>();
  }

  // vector level; O is a backend's op set for Lane
  template <class O>
  static typename O::Mask compare(const typename O::Block& a,
                                  const typename O::Block& b) {
    if constexpr (kAscending) return O::compare_lt(a, b);
    else return O::compare_lt(b, a);
  }

  template <class O>
  static typename O::Block broadcast_key(Key k) {
    return O::broadcast(k);
  }

  template <class O>
  static typename O::Block set_key(const Lane* p) {
    return O::broadcast(*p);
  }

  template <class O>
  static typename O::Block first_blocks(const typename O::Block& a,
                                        const typename O::Block& b) {
    if constexpr (kAscending) return O::min(a, b);
    else return O::max(a, b);
  }

  template <class O>
  static typename O::Block last_blocks(const typename O::Block& a,
                                       const typename O::Block& b) {
    if constexpr (kAscending) return O::max(a, b);
    else return O::min(a, b);
  }

  // a keeps the first-in-order keys, b the last-in-order ones; one
  // comparison per block pair.
  template <class O>
  static void sort2_keys(typename O::Block& a, typename O::Block& b) {
    if constexpr (kAscending) O::sort2(a, b);
    else O::sort2(b, a);
  }

  // Pack the keys at-or-before the pivot first, the rest after; returns the
  // packed block and the first-side count.
  template <class O>
  static auto partition_first(const typename O::Block& v,
                              const typename O::Block& pivot) {
    if constexpr (kAscending) return O::partition_le(v, pivot);
    else return O::partition_ge(v, pivot);
  }

  template <class O>
  static void coex(typename O::Block& a, typename O::Block& b) {
    sort2_keys<O>(a, b);
  }

  template <class O>
  static Key first_of_lanes(const typename O::Block& v) {
    if constexpr (kAscending) return O::min_of_lanes(v);
    else return O::max_of_lanes(v);
  }

  template <class O>
  static Key last_of_lanes(const typename O::Block& v) {
    if constexpr (kAscending) return O::max_of_lanes(v);
    else return O::min_of_lanes(v);
  }

  template <class O>
  static typename O::Block reverse_keys(const typename O::Block& v) {
    return O::reverse_lanes(v);
  }
};

template <bool kAscending>
struct Key128Traits {
  using Lane = std::uint64_t;
  using Key = K128;
  static constexpr std::size_t kLanesPerKey = 2;
  static constexpr bool kIsAscending = kAscending;

  static Key load_key(const Lane* p) { return Key{p[0], p[1]}; }
  static void store_key(Lane* p, Key k) {
    p[0] = k.lo;
    p[1] = k.hi;
  }
  static bool less128(Key a, Key b) {
    return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo);
  }
  static bool precedes(Key a, Key b) {
    if constexpr (kAscending) return less128(a, b);
    else return less128(b, a);
  }
  static bool key_equal(Key a, Key b) { return a == b; }
  static void swap_keys(Lane* arr, std::size_t i, std::size_t j) {
    VEXSORT_DASSERT(i % 2 == 0 && j % 2 == 0);
    Lane t = arr[i];
    arr[i] = arr[j];
    arr[j] = t;
    t = arr[i + 1];
    arr[i + 1] = arr[j + 1];
    arr[j + 1] = t;
  }
  static constexpr Key first_value() {
    return kAscending ? Key{0, 0} : Key{~0ULL, ~0ULL};
  }
  static constexpr Key last_value() {
    return kAscending ? Key{~0ULL, ~0ULL} : Key{0, 0};
  }

  // 128-bit "precedes" built from lane ops: compare the 64-bit halves, fold
  // the low-half result into the high lane, then copy each pair's high lane
  // to both of its lanes. True in both lanes iff the upper lane is less, or
  // upper lanes are equal and the lower lane is less.
  template <class O>
  static typename O::Mask compare(const typename O::Block& a,
                                  const typename O::Block& b) {
    const typename O::Block& x = kAscending ? a : b;
    const typename O::Block& y = kAscending ? b : a;
    const typename O::Block eq_hl = O::mask_to_block(O::compare_eq(x, y));
    const typename O::Block lt_hl = O::mask_to_block(O::compare_lt(x, y));
    const typename O::Block lt_lx = O::shift_lanes_left_by_one(lt_hl);
    const typename O::Block hx = O::or_and(lt_hl, eq_hl, lt_lx);
    return O::block_to_mask(O::interleave_upper(hx, hx));
  }

  template <class O>
  static typename O::Block broadcast_key(Key k) {
    std::array<Lane, O::kLanes> tmp;
    for (std::size_t i = 0; i < O::kLanes; i += 2) {
      tmp[i] = k.lo;
      tmp[i + 1] = k.hi;
    }
    return O::load(std::span<const Lane>(tmp.data(), tmp.size()), 0);
  }

  template <class O>
  static typename O::Block set_key(const Lane* p) {
    return broadcast_key<O>(Key{p[0], p[1]});
  }

  template <class O>
  static typename O::Block first_blocks(const typename O::Block& a,
                                        const typename O::Block& b) {
    return O::if_then_else(compare<O>(a, b), a, b);
  }

  template <class O>
  static typename O::Block last_blocks(const typename O::Block& a,
                                       const typename O::Block& b) {
    return O::if_then_else(compare<O>(a, b), b, a);
  }

  template <class O>
  static void sort2_keys(typename O::Block& a, typename O::Block& b) {
    const typename O::Mask m = compare<O>(a, b);
    const typename O::Block f = O::if_then_else(m, a, b);
    b = O::if_then_else(m, b, a);
    a = f;
  }

  template <class O>
  static void coex(typename O::Block& a, typename O::Block& b) {
    sort2_keys<O>(a, b);
  }

  template <class O>
  static auto partition_first(const typename O::Block& v,
                              const typename O::Block& pivot) {
    return O::compress_partition_count_complement(v, compare<O>(pivot, v));
  }

  template <class O>
  static Key first_of_lanes(const typename O::Block& v) {
    std::array<Lane, O::kLanes> tmp;
    O::store(v, std::span<Lane>(tmp.data(), tmp.size()), 0);
    Key best = load_key(tmp.data());
    for (std::size_t i = 2; i < O::kLanes; i += 2) {
      const Key k = load_key(tmp.data() + i);
      if (precedes(k, best)) best = k;
    }
    return best;
  }

  template <class O>
  static Key last_of_lanes(const typename O::Block& v) {
    std::array<Lane, O::kLanes> tmp;
    O::store(v, std::span<Lane>(tmp.data(), tmp.size()), 0);
    Key best = load_key(tmp.data());
    for (std::size_t i = 2; i < O::kLanes; i += 2) {
      const Key k = load_key(tmp.data() + i);
      if (precedes(best, k)) best = k;
    }
    return best;
  }

  // Reverse key order but keep the lo/hi layout within each pair.
  template <class O>
  static typename O::Block reverse_keys(const typename O::Block& v) {
    return O::swap_adjacent_pairs(O::reverse_lanes(v));
  }
};

// Debug-build input validation: float keys must not contain NaN, which
// would break the strict weak ordering every network and partition relies
// on.
template <typename T>
bool contains_nan(std::span<const T> keys) {
  if constexpr (std::is_floating_point_v<T>) {
    for (const T& k : keys) {
      if (std::isnan(k)) return true;
    }
  }
  return false;
}

}  // namespace detail
}  // namespace vexsort

#endif  // VEXSORT_DETAIL_TRAITS_HPP_
