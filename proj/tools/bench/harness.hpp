// Copyright 2026 The vexsort Authors
// SPDX-License-Identifier: Apache-2.0
//
// Benchmark harness: deterministic input generators, correctness
// verification, and throughput measurement for whole sorts and for the
// partition kernel. Every reported number comes from a run whose output
// was verified.

#ifndef VEXSORT_TOOLS_BENCH_HARNESS_HPP_
#define VEXSORT_TOOLS_BENCH_HARNESS_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "vexsort/vexsort.hpp"

namespace vexbench {

enum class KeyType { kI16, kU16, kI32, kU32, kF32, kI64, kU64, kF64, kK128 };
enum class Dist {
  kUniform,
  kEqual,
  kLowEntropy,  // 16-bit values widened to the key width
  kAscending,
  kDescending,
  kTwoValue,
};
enum class Algo { kVexsort, kStdSort, kHeapSort };

std::optional<KeyType> key_type_from_string(const std::string& s);
std::optional<Dist> dist_from_string(const std::string& s);
const char* to_string(KeyType t);
const char* to_string(Dist d);
const char* to_string(Algo a);
std::size_t key_bytes(KeyType t);

struct BenchConfig {
  KeyType type = KeyType::kU64;
  vexsort::Order order = vexsort::Order::kAscending;
  Dist dist = Dist::kUniform;
  std::size_t n = 1'000'000;
  std::size_t reps = 10;
  std::uint64_t seed = 1;
  std::vector<Algo> algos = {Algo::kVexsort, Algo::kStdSort, Algo::kHeapSort};
  std::size_t threads = 1;
  vexsort::Backend backend = vexsort::Backend::kAuto;
};

struct PartitionBenchConfig {
  KeyType type = KeyType::kU64;
  vexsort::Order order = vexsort::Order::kAscending;
  std::size_t max_n = std::size_t{1} << 24;
  std::size_t reps = 5;
  std::uint64_t seed = 1;
};

struct BenchResult {
  std::string algo;
  KeyType type;
  vexsort::Order order;
  Dist dist;
  std::size_t n = 0;
  std::size_t reps = 0;
  double mbps_median = 0;
  double mbps_min = 0;
  double mbps_max = 0;
  bool verified = false;
  std::size_t max_depth = 0;
  bool fallback = false;
};

// Deterministic per (dist, n, seed).
template <typename T>
std::vector<T> generate(Dist dist, std::size_t n, std::uint64_t seed);

// Runs every configured algorithm; throws std::runtime_error with a
// reproduction dump if any verification fails.
std::vector<BenchResult> run_bench(const BenchConfig& config);

// Times the partition kernel alone across L1-resident through
// memory-resident sizes (2^10 .. max_n, powers of four steps).
std::vector<BenchResult> run_partition_bench(const PartitionBenchConfig& config);

void write_csv(std::ostream& os, const std::vector<BenchResult>& results);
void write_table(std::ostream& os, const std::vector<BenchResult>& results);

}  // namespace vexbench

#endif  // VEXSORT_TOOLS_BENCH_HARNESS_HPP_
