// Copyright 2026 The vexsort Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef VEXSORT_DETAIL_CONFIG_HPP_
#define VEXSORT_DETAIL_CONFIG_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

#if defined(__AVX2__)
#define VEXSORT_HAVE_AVX2 1
#else
#define VEXSORT_HAVE_AVX2 0
#endif

#if defined(__GNUC__) || defined(__clang__)
#define VEXSORT_INLINE inline __attribute__((always_inline))
#define VEXSORT_RESTRICT __restrict__
#define VEXSORT_ASSUME(cond) \
  do {                       \
    if (!(cond)) __builtin_unreachable(); \
  } while (0)
#else
#define VEXSORT_INLINE inline
#define VEXSORT_RESTRICT
#define VEXSORT_ASSUME(cond) ((void)0)
#endif

// Debug checks (NaN scan, structural asserts) are active unless NDEBUG.
#if !defined(NDEBUG)
#define VEXSORT_DEBUG_CHECKS 1
#else
#define VEXSORT_DEBUG_CHECKS 0
#endif

namespace vexsort::detail {

// Raised by the reference backend when a memory op would touch lanes
// outside its stated range. Uses an exception (not abort) so tests can
// assert that out-of-bounds access is detected.
class BoundsError : public std::logic_error {
 public:
  explicit BoundsError(const std::string& what) : std::logic_error(what) {}
};

[[noreturn]] inline void bounds_fail(const char* op, std::size_t offset,
                                     std::size_t extent, std::size_t size) {
  throw BoundsError(std::string(op) + ": lanes [" + std::to_string(offset) +
                    ", " + std::to_string(offset + extent) +
                    ") exceed array of " + std::to_string(size) + " lanes");
}

#if VEXSORT_DEBUG_CHECKS
#define VEXSORT_DASSERT(cond)                                             \
  do {                                                                    \
    if (!(cond))                                                          \
      throw std::logic_error("vexsort assertion failed: " #cond);        \
  } while (0)
#else
#define VEXSORT_DASSERT(cond) ((void)0)
#endif

// Per-block invariants in the partition loop; costs cycles per vector, so
// only instrumented builds pay for it.
#if defined(VEXSORT_INSTRUMENTED)
#define VEXSORT_DASSERT_HOT(cond) VEXSORT_DASSERT(cond)
#else
#define VEXSORT_DASSERT_HOT(cond) ((void)0)
#endif

}  // namespace vexsort::detail

#endif  // VEXSORT_DETAIL_CONFIG_HPP_
