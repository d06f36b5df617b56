// Copyright 2026 The vexsort Authors
// SPDX-License-Identifier: Apache-2.0
//
// Shared test helpers: typed random key generation, block/mask conversion,
// and reference comparators.

#ifndef VEXSORT_TESTS_TEST_UTIL_HPP_
#define VEXSORT_TESTS_TEST_UTIL_HPP_

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <random>
#include <span>
#include <vector>

#include "vexsort/vexsort.hpp"

namespace vextest {

using Rng = std::mt19937_64;

// Random lane value over the full bit domain, with NaN replaced (ops and
// sorts exclude NaN by contract). Keeps +/-0 and infinities.
template <typename T>
T random_lane(Rng& rng) {
  using Bits = vexsort::detail::UnsignedBits<T>;
  const auto bits = static_cast<Bits>(rng());
  if constexpr (std::is_floating_point_v<T>) {
    T v = std::bit_cast<T>(bits);
    if (std::isnan(v)) v = T(0);
    return v;
  } else {
    return std::bit_cast<T>(bits);
  }
}

template <typename T>
std::vector<T> random_lanes(Rng& rng, std::size_t n) {
  std::vector<T> v(n);
  for (auto& x : v) x = random_lane<T>(rng);
  return v;
}

inline vexsort::K128 random_k128(Rng& rng) {
  return vexsort::K128{rng(), rng()};
}

// Typed key generation for whole-sort tests.
template <typename T>
std::vector<T> random_keys(Rng& rng, std::size_t n) {
  if constexpr (std::is_same_v<T, vexsort::K128>) {
    std::vector<T> v(n);
    for (auto& k : v) k = random_k128(rng);
    return v;
  } else {
    return random_lanes<T>(rng, n);
  }
}

template <typename T>
bool key_precedes(const T& a, const T& b, bool ascending) {
  if constexpr (std::is_same_v<T, vexsort::K128>) {
    const bool lt = a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo);
    const bool gt = b.hi < a.hi || (b.hi == a.hi && b.lo < a.lo);
    return ascending ? lt : gt;
  } else {
    return ascending ? a < b : b < a;
  }
}

template <typename T>
void reference_sort(std::vector<T>& keys, bool ascending) {
  std::sort(keys.begin(), keys.end(), [&](const T& a, const T& b) {
    return key_precedes(a, b, ascending);
  });
}

// Block/mask array round-trips for op-level comparisons.
template <class O, typename T>
std::array<T, O::kLanes> block_to_array(const typename O::Block& b) {
  std::array<T, O::kLanes> a{};
  O::store(b, std::span<T>(a.data(), a.size()), 0);
  return a;
}

template <class O, typename T>
typename O::Block block_from_array(const std::array<T, O::kLanes>& a) {
  return O::load(std::span<const T>(a.data(), a.size()), 0);
}

// Builds a mask from bools portably: lane i of x equals lane i of y iff
// bits[i], so compare_eq produces exactly the requested mask.
template <class O, typename T>
typename O::Mask mask_from_bools(const std::array<bool, O::kLanes>& bits) {
  std::array<T, O::kLanes> x{};
  std::array<T, O::kLanes> y{};
  for (std::size_t i = 0; i < O::kLanes; ++i) {
    x[i] = static_cast<T>(1);
    y[i] = bits[i] ? static_cast<T>(1) : static_cast<T>(2);
  }
  return O::compare_eq(block_from_array<O, T>(x), block_from_array<O, T>(y));
}

template <class O, typename T>
std::array<bool, O::kLanes> mask_to_bools(const typename O::Mask& m) {
  const auto ones = O::broadcast(static_cast<T>(1));
  const auto zeros = O::broadcast(static_cast<T>(0));
  const auto sel = block_to_array<O, T>(O::if_then_else(m, ones, zeros));
  std::array<bool, O::kLanes> bits{};
  for (std::size_t i = 0; i < O::kLanes; ++i) {
    bits[i] = std::bit_cast<vexsort::detail::UnsignedBits<T>>(sel[i]) != 0;
  }
  return bits;
}

template <typename T>
bool bit_equal(const T& a, const T& b) {
  return std::memcmp(&a, &b, sizeof(T)) == 0;
}

template <typename T>
bool arrays_bit_equal(std::span<const T> a, std::span<const T> b) {
  if (a.size() != b.size()) return false;
  return std::memcmp(a.data(), b.data(), a.size() * sizeof(T)) == 0;
}

// Multiset equality on raw bit patterns (catches value fabrication for
// floats, where -0.0 == +0.0 as values).
template <typename T>
bool bit_multiset_equal(std::span<const T> a, std::span<const T> b) {
  using Bits = vexsort::detail::UnsignedBits<T>;
  if (a.size() != b.size()) return false;
  std::vector<Bits> ba(a.size());
  std::vector<Bits> bb(b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::memcpy(&ba[i], &a[i], sizeof(Bits));
    std::memcpy(&bb[i], &b[i], sizeof(Bits));
  }
  std::sort(ba.begin(), ba.end());
  std::sort(bb.begin(), bb.end());
  return ba == bb;
}

}  // namespace vextest

#endif  // VEXSORT_TESTS_TEST_UTIL_HPP_
