// Copyright 2026 The vexsort Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bench/harness.hpp"
#include "test_util.hpp"

using namespace vexbench;

TEST_SUITE_BEGIN("bench");

TEST_CASE("generators are deterministic and match their shapes") {
  const auto a = generate<std::uint64_t>(Dist::kUniform, 1000, 5);
  const auto b = generate<std::uint64_t>(Dist::kUniform, 1000, 5);
  CHECK(a == b);
  const auto c = generate<std::uint64_t>(Dist::kUniform, 1000, 6);
  CHECK(a != c);

  const auto eq = generate<std::uint32_t>(Dist::kEqual, 4, 1);
  CHECK(eq == std::vector<std::uint32_t>{0x2A, 0x2A, 0x2A, 0x2A});

  const auto asc = generate<std::int64_t>(Dist::kAscending, 1000, 1);
  CHECK(std::is_sorted(asc.begin(), asc.end()));
  const auto desc = generate<std::int64_t>(Dist::kDescending, 1000, 1);
  CHECK(std::is_sorted(desc.rbegin(), desc.rend()));

  const auto low = generate<std::uint64_t>(Dist::kLowEntropy, 5000, 2);
  for (const auto k : low) CHECK(k <= 0xFFFF);

  const auto two = generate<float>(Dist::kTwoValue, 1000, 3);
  for (const auto k : two) CHECK((k == 1.0f || k == 2.0f));
}

TEST_CASE("uniform generator passes a chi-square test at 64 buckets") {
  const std::size_t n = 1'000'000;
  const auto keys = generate<std::uint64_t>(Dist::kUniform, n, 9);
  std::array<std::size_t, 64> buckets{};
  for (const auto k : keys) buckets[k >> 58]++;
  const double expect = static_cast<double>(n) / 64.0;
  double chi2 = 0;
  for (const auto c : buckets) {
    const double d = static_cast<double>(c) - expect;
    chi2 += d * d / expect;
  }
  // 63 degrees of freedom, p > 0.001: critical value 103.44.
  CHECK(chi2 < 103.44);
}

TEST_CASE("run_bench smoke: small configs verify and report") {
  BenchConfig config;
  config.type = KeyType::kU32;
  config.n = 1000;
  config.reps = 3;
  config.seed = 4;
  const auto results = run_bench(config);
  REQUIRE(results.size() == 3);
  for (const auto& r : results) {
    CHECK(r.verified);
    CHECK(r.n == 1000);
    CHECK(r.reps == 3);
    CHECK(r.mbps_median > 0);
    CHECK(std::isfinite(r.mbps_median));
    CHECK(r.mbps_min <= r.mbps_median);
    CHECK(r.mbps_median <= r.mbps_max);
    CHECK(!r.fallback);
  }
}

TEST_CASE("run_bench covers every distribution and 128-bit keys") {
  for (const Dist dist : {Dist::kUniform, Dist::kEqual, Dist::kLowEntropy,
                          Dist::kAscending, Dist::kDescending, Dist::kTwoValue}) {
    BenchConfig config;
    config.type = KeyType::kK128;
    config.order = vexsort::Order::kDescending;
    config.dist = dist;
    config.n = 2000;
    config.reps = 2;
    config.algos = {Algo::kVexsort};
    const auto results = run_bench(config);
    REQUIRE(results.size() == 1);
    CHECK(results[0].verified);
  }
}

TEST_CASE("threaded mode runs independent instances") {
  BenchConfig config;
  config.type = KeyType::kU64;
  config.n = 20000;
  config.reps = 2;
  config.threads = 2;
  config.algos = {Algo::kVexsort};
  const auto results = run_bench(config);
  REQUIRE(results.size() == 1);
  CHECK(results[0].verified);
}

TEST_CASE("partition bench reports a verified size curve") {
  PartitionBenchConfig config;
  config.max_n = 1 << 16;
  config.reps = 2;
  const auto results = run_partition_bench(config);
  REQUIRE(results.size() == 4);  // 2^10, 2^12, 2^14, 2^16
  for (const auto& r : results) {
    CHECK(r.verified);
    CHECK(r.mbps_median > 0);
  }
}

TEST_CASE("CSV output carries the full column set") {
  BenchConfig config;
  config.type = KeyType::kI16;
  config.n = 500;
  config.reps = 2;
  config.algos = {Algo::kVexsort};
  const auto results = run_bench(config);
  std::ostringstream os;
  write_csv(os, results);
  const std::string csv = os.str();
  CHECK(csv.starts_with(
      "algo,type,order,dist,n,reps,mbps_median,mbps_min,mbps_max,verified,"
      "max_depth,fallback\n"));
  CHECK(csv.find("vexsort,i16,asc,uniform,500,2,") != std::string::npos);
  // One header plus one row.
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);
}

TEST_SUITE_END();
