// Copyright 2026 The vexsort Authors
// SPDX-License-Identifier: Apache-2.0

#include "vexsort/vexsort.hpp"

#include <stdexcept>

namespace vexsort {
namespace {

template <typename T>
SortStats sort_typed(std::span<T> keys, const SortConfig& config) {
  using TF = detail::TraitsFor<T>;
  using Lane = typename TF::Lane;

  const std::size_t n = keys.size();
  auto* lanes = reinterpret_cast<Lane*>(keys.data());

  const std::size_t need = scratch_bytes<T>();
  SortScratch local;
  const SortScratch* scratch = config.scratch;
  if (scratch != nullptr) {
    if (scratch->size() < need) {
      throw std::invalid_argument("vexsort: provided scratch is too small");
    }
  } else {
    local = SortScratch(need);
    scratch = &local;
  }
  std::span<Lane> scratch_lanes(reinterpret_cast<Lane*>(scratch->data()),
                                scratch->size() / sizeof(Lane));

  const std::uint64_t seed =
      config.seed ? *config.seed : detail::default_seed(lanes, n);

  const bool wide = config.backend != Backend::kScalar;
  if (config.order == Order::kAscending) {
    using Tr = typename TF::template Traits<true>;
    return wide ? detail::Driver<detail::WideTag, Tr>::sort(lanes, n, seed,
                                                            scratch_lanes)
                : detail::Driver<detail::ScalarTag, Tr>::sort(lanes, n, seed,
                                                              scratch_lanes);
  }
  using Tr = typename TF::template Traits<false>;
  return wide ? detail::Driver<detail::WideTag, Tr>::sort(lanes, n, seed,
                                                          scratch_lanes)
              : detail::Driver<detail::ScalarTag, Tr>::sort(lanes, n, seed,
                                                            scratch_lanes);
}

}  // namespace

SortStats sort(std::span<std::int16_t> keys, const SortConfig& config) {
  return sort_typed(keys, config);
}
SortStats sort(std::span<std::uint16_t> keys, const SortConfig& config) {
  return sort_typed(keys, config);
}
SortStats sort(std::span<std::int32_t> keys, const SortConfig& config) {
  return sort_typed(keys, config);
}
SortStats sort(std::span<std::uint32_t> keys, const SortConfig& config) {
  return sort_typed(keys, config);
}
SortStats sort(std::span<float> keys, const SortConfig& config) {
  return sort_typed(keys, config);
}
SortStats sort(std::span<std::int64_t> keys, const SortConfig& config) {
  return sort_typed(keys, config);
}
SortStats sort(std::span<std::uint64_t> keys, const SortConfig& config) {
  return sort_typed(keys, config);
}
SortStats sort(std::span<double> keys, const SortConfig& config) {
  return sort_typed(keys, config);
}
SortStats sort(std::span<K128> keys, const SortConfig& config) {
  return sort_typed(keys, config);
}

bool wide_backend_is_simd() { return VEXSORT_HAVE_AVX2 != 0; }

}  // namespace vexsort
