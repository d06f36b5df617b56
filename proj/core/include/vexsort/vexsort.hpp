// Copyright 2026 The vexsort Authors
// SPDX-License-Identifier: Apache-2.0
//
// vexsort: in-place vectorized quicksort for numeric keys.
//
//   std::vector<uint64_t> keys = ...;
//   vexsort::SortStats stats = vexsort::sort(std::span(keys));
//
// Supported key types: 16/32/64-bit signed and unsigned integers, float,
// double, and 128-bit keys (K128, stored as lo/hi 64-bit halves). Ascending
// or descending order. Float keys must not contain NaN; debug builds reject
// such input with std::invalid_argument.
//
// Sorting allocates a scratch buffer unless the caller passes a reusable
// SortScratch of at least scratch_bytes<T>() bytes.

#ifndef VEXSORT_VEXSORT_HPP_
#define VEXSORT_VEXSORT_HPP_

#include <cstddef>
#include <cstdint>
#include <new>
#include <optional>
#include <span>
#include <utility>

#include "vexsort/detail/driver.hpp"

namespace vexsort {

enum class Order { kAscending, kDescending };

// Which backend executes the sort. kAuto picks the wide backend (AVX2 when
// compiled in, a portable fixed-width fallback otherwise); kScalar forces
// the bounds-checked reference backend.
enum class Backend { kAuto, kScalar, kWide };

namespace detail {

template <typename T>
struct TraitsFor {
  using Lane = T;
  template <bool kAsc>
  using Traits = LaneKeyTraits<T, kAsc>;
};

template <>
struct TraitsFor<K128> {
  using Lane = std::uint64_t;
  template <bool kAsc>
  using Traits = Key128Traits<kAsc>;
};

}  // namespace detail

// Scratch capacity one sort call needs for key type T, valid for every
// backend and order.
template <typename T>
constexpr std::size_t scratch_bytes() {
  using Lane = typename detail::TraitsFor<T>::Lane;
  using Tr = typename detail::TraitsFor<T>::template Traits<true>;
  constexpr std::size_t s =
      detail::Driver<detail::ScalarTag, Tr>::kScratchLanes;
  constexpr std::size_t w = detail::Driver<detail::WideTag, Tr>::kScratchLanes;
  return (s > w ? s : w) * sizeof(Lane);
}

// 64-byte-aligned reusable scratch buffer. Move-only.
class SortScratch {
 public:
  SortScratch() = default;
  explicit SortScratch(std::size_t bytes)
      : mem_(static_cast<std::byte*>(
            ::operator new(bytes, std::align_val_t{64}))),
        size_(bytes) {}

  template <typename T>
  static SortScratch for_key() {
    return SortScratch(scratch_bytes<T>());
  }

  SortScratch(SortScratch&& other) noexcept
      : mem_(std::exchange(other.mem_, nullptr)),
        size_(std::exchange(other.size_, 0)) {}
  SortScratch& operator=(SortScratch&& other) noexcept {
    if (this != &other) {
      release();
      mem_ = std::exchange(other.mem_, nullptr);
      size_ = std::exchange(other.size_, 0);
    }
    return *this;
  }
  SortScratch(const SortScratch&) = delete;
  SortScratch& operator=(const SortScratch&) = delete;
  ~SortScratch() { release(); }

  std::byte* data() const { return mem_; }
  std::size_t size() const { return size_; }

 private:
  void release() {
    if (mem_ != nullptr) {
      ::operator delete(mem_, std::align_val_t{64});
      mem_ = nullptr;
    }
  }

  std::byte* mem_ = nullptr;
  std::size_t size_ = 0;
};

struct SortConfig {
  Order order = Order::kAscending;
  Backend backend = Backend::kAuto;
  // Pivot-sampling seed; defaults to a fixed constant mixed with the input
  // address and length. Fix it for reproducible runs.
  std::optional<std::uint64_t> seed{};
  SortScratch* scratch = nullptr;
};

SortStats sort(std::span<std::int16_t> keys, const SortConfig& config = {});
SortStats sort(std::span<std::uint16_t> keys, const SortConfig& config = {});
SortStats sort(std::span<std::int32_t> keys, const SortConfig& config = {});
SortStats sort(std::span<std::uint32_t> keys, const SortConfig& config = {});
SortStats sort(std::span<float> keys, const SortConfig& config = {});
SortStats sort(std::span<std::int64_t> keys, const SortConfig& config = {});
SortStats sort(std::span<std::uint64_t> keys, const SortConfig& config = {});
SortStats sort(std::span<double> keys, const SortConfig& config = {});
SortStats sort(std::span<K128> keys, const SortConfig& config = {});

// True when the wide backend was compiled with AVX2 intrinsics.
bool wide_backend_is_simd();

}  // namespace vexsort

#endif  // VEXSORT_VEXSORT_HPP_
