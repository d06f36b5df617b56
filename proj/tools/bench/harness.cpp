// Copyright 2026 The vexsort Authors
// SPDX-License-Identifier: Apache-2.0

#include "bench/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "vexsort/detail/driver.hpp"
#include "vexsort/detail/partition.hpp"
#include "vexsort/detail/pivot.hpp"

namespace vexbench {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

template <typename T>
T widen16(std::uint16_t v) {
  if constexpr (std::is_same_v<T, vexsort::K128>) {
    return vexsort::K128{v, 0};
  } else {
    return static_cast<T>(v);
  }
}

template <typename T>
T from_index(std::size_t i) {
  if constexpr (std::is_same_v<T, vexsort::K128>) {
    return vexsort::K128{i, 0};
  } else if constexpr (std::is_floating_point_v<T>) {
    return static_cast<T>(i);
  } else {
    // Spread indices over the representable range, monotone non-decreasing.
    using U = std::make_unsigned_t<T>;
    if constexpr (sizeof(T) >= 4) {
      return static_cast<T>(static_cast<U>(i));
    } else {
      return static_cast<T>(static_cast<U>(i % (std::size_t{1} << (8 * sizeof(T)))));
    }
  }
}

template <typename T>
T uniform_key(vexsort::detail::Sfc64& rng) {
  if constexpr (std::is_same_v<T, vexsort::K128>) {
    return vexsort::K128{rng.next(), rng.next()};
  } else if constexpr (std::is_same_v<T, float>) {
    return static_cast<float>(rng.next() >> 40) * (1.0f / (1 << 24)) * 1e6f;
  } else if constexpr (std::is_same_v<T, double>) {
    return static_cast<double>(rng.next() >> 11) *
           (1.0 / (std::uint64_t{1} << 53)) * 1e6;
  } else {
    return static_cast<T>(rng.next());
  }
}

template <typename T>
bool precedes(const T& a, const T& b, vexsort::Order order) {
  const bool asc = order == vexsort::Order::kAscending;
  if constexpr (std::is_same_v<T, vexsort::K128>) {
    const bool lt = a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo);
    const bool gt = b.hi < a.hi || (b.hi == a.hi && b.lo < a.lo);
    return asc ? lt : gt;
  } else {
    return asc ? a < b : b < a;
  }
}

template <typename T>
struct TypedCase;

template <typename T>
double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v[v.size() / 2];
}

[[noreturn]] void verification_failure(const std::string& what,
                                       const BenchConfig& config,
                                       const std::string& algo) {
  std::ostringstream os;
  os << "verification failed: " << what << " [algo=" << algo
     << " type=" << to_string(config.type)
     << " order=" << (config.order == vexsort::Order::kAscending ? "asc" : "desc")
     << " dist=" << to_string(config.dist) << " n=" << config.n
     << " seed=" << config.seed << "]";
  throw std::runtime_error(os.str());
}

}  // namespace

std::optional<KeyType> key_type_from_string(const std::string& s) {
  if (s == "i16") return KeyType::kI16;
  if (s == "u16") return KeyType::kU16;
  if (s == "i32") return KeyType::kI32;
  if (s == "u32") return KeyType::kU32;
  if (s == "f32") return KeyType::kF32;
  if (s == "i64") return KeyType::kI64;
  if (s == "u64") return KeyType::kU64;
  if (s == "f64") return KeyType::kF64;
  if (s == "k128") return KeyType::kK128;
  return std::nullopt;
}

std::optional<Dist> dist_from_string(const std::string& s) {
  if (s == "uniform") return Dist::kUniform;
  if (s == "equal") return Dist::kEqual;
  if (s == "lowentropy") return Dist::kLowEntropy;
  if (s == "asc") return Dist::kAscending;
  if (s == "desc") return Dist::kDescending;
  if (s == "twovalue") return Dist::kTwoValue;
  return std::nullopt;
}

const char* to_string(KeyType t) {
  switch (t) {
    case KeyType::kI16: return "i16";
    case KeyType::kU16: return "u16";
    case KeyType::kI32: return "i32";
    case KeyType::kU32: return "u32";
    case KeyType::kF32: return "f32";
    case KeyType::kI64: return "i64";
    case KeyType::kU64: return "u64";
    case KeyType::kF64: return "f64";
    case KeyType::kK128: return "k128";
  }
  return "?";
}

const char* to_string(Dist d) {
  switch (d) {
    case Dist::kUniform: return "uniform";
    case Dist::kEqual: return "equal";
    case Dist::kLowEntropy: return "lowentropy";
    case Dist::kAscending: return "asc";
    case Dist::kDescending: return "desc";
    case Dist::kTwoValue: return "twovalue";
  }
  return "?";
}

const char* to_string(Algo a) {
  switch (a) {
    case Algo::kVexsort: return "vexsort";
    case Algo::kStdSort: return "std";
    case Algo::kHeapSort: return "heap";
  }
  return "?";
}

std::size_t key_bytes(KeyType t) {
  switch (t) {
    case KeyType::kI16:
    case KeyType::kU16: return 2;
    case KeyType::kI32:
    case KeyType::kU32:
    case KeyType::kF32: return 4;
    case KeyType::kI64:
    case KeyType::kU64:
    case KeyType::kF64: return 8;
    case KeyType::kK128: return 16;
  }
  return 0;
}

template <typename T>
std::vector<T> generate(Dist dist, std::size_t n, std::uint64_t seed) {
  vexsort::detail::Sfc64 rng(seed ^ (0x6A09E667F3BCC909ULL + n));
  std::vector<T> keys(n);
  switch (dist) {
    case Dist::kUniform:
      for (auto& k : keys) k = uniform_key<T>(rng);
      break;
    case Dist::kEqual: {
      const T v = widen16<T>(0x2A);
      for (auto& k : keys) k = v;
      break;
    }
    case Dist::kLowEntropy:
      for (auto& k : keys) {
        k = widen16<T>(static_cast<std::uint16_t>(rng.next()));
      }
      break;
    case Dist::kAscending:
      for (std::size_t i = 0; i < n; ++i) keys[i] = from_index<T>(i);
      if constexpr (!std::is_same_v<T, vexsort::K128>) {
        std::sort(keys.begin(), keys.end());
      }
      break;
    case Dist::kDescending: {
      for (std::size_t i = 0; i < n; ++i) keys[i] = from_index<T>(i);
      if constexpr (!std::is_same_v<T, vexsort::K128>) {
        std::sort(keys.begin(), keys.end());
      }
      std::reverse(keys.begin(), keys.end());
      break;
    }
    case Dist::kTwoValue: {
      const T lo = widen16<T>(1);
      const T hi = widen16<T>(2);
      for (auto& k : keys) k = (rng.next() & 1) != 0 ? hi : lo;
      break;
    }
  }
  return keys;
}

template std::vector<std::int16_t> generate(Dist, std::size_t, std::uint64_t);
template std::vector<std::uint16_t> generate(Dist, std::size_t, std::uint64_t);
template std::vector<std::int32_t> generate(Dist, std::size_t, std::uint64_t);
template std::vector<std::uint32_t> generate(Dist, std::size_t, std::uint64_t);
template std::vector<float> generate(Dist, std::size_t, std::uint64_t);
template std::vector<std::int64_t> generate(Dist, std::size_t, std::uint64_t);
template std::vector<std::uint64_t> generate(Dist, std::size_t, std::uint64_t);
template std::vector<double> generate(Dist, std::size_t, std::uint64_t);
template std::vector<vexsort::K128> generate(Dist, std::size_t, std::uint64_t);

namespace {

template <typename T>
BenchResult run_algo(Algo algo, const BenchConfig& config) {
  BenchResult result;
  result.algo = to_string(algo);
  result.type = config.type;
  result.order = config.order;
  result.dist = config.dist;
  result.n = config.n;
  result.reps = config.reps;

  const std::vector<T> input = generate<T>(config.dist, config.n, config.seed);
  std::vector<T> reference = input;
  std::sort(reference.begin(), reference.end(), [&](const T& a, const T& b) {
    return precedes(a, b, config.order);
  });

  vexsort::SortScratch scratch = vexsort::SortScratch::for_key<T>();
  vexsort::SortConfig sort_config;
  sort_config.order = config.order;
  sort_config.backend = config.backend;
  sort_config.seed = config.seed;
  sort_config.scratch = &scratch;

  const auto compare = [&](const T& a, const T& b) {
    return precedes(a, b, config.order);
  };

  vexsort::SortStats last_stats;
  const auto sort_once = [&](std::vector<T>& data) {
    switch (algo) {
      case Algo::kVexsort:
        last_stats = vexsort::sort(std::span<T>(data), sort_config);
        break;
      case Algo::kStdSort:
        std::sort(data.begin(), data.end(), compare);
        break;
      case Algo::kHeapSort: {
        using TF = vexsort::detail::TraitsFor<T>;
        using Lane = typename TF::Lane;
        if (config.order == vexsort::Order::kAscending) {
          using D = vexsort::detail::Driver<vexsort::detail::WideTag,
                                            typename TF::template Traits<true>>;
          D::heap_sort(reinterpret_cast<Lane*>(data.data()), data.size());
        } else {
          using D = vexsort::detail::Driver<vexsort::detail::WideTag,
                                            typename TF::template Traits<false>>;
          D::heap_sort(reinterpret_cast<Lane*>(data.data()), data.size());
        }
        break;
      }
    }
  };

  const auto verify = [&](const std::vector<T>& data) {
    if (data.size() != reference.size()) return false;
    for (std::size_t i = 0; i < data.size(); ++i) {
      if (std::memcmp(&data[i], &reference[i], sizeof(T)) != 0) {
        // Equal keys may legally differ bitwise only for -0.0/+0.0.
        if constexpr (std::is_floating_point_v<T>) {
          if (data[i] == reference[i]) continue;
        }
        return false;
      }
    }
    return true;
  };

  // Warm-up (also an extra verification pass).
  {
    std::vector<T> copy = input;
    sort_once(copy);
    if (!verify(copy)) verification_failure("warm-up run", config, result.algo);
  }

  std::vector<double> times;
  times.reserve(config.reps);
  for (std::size_t rep = 0; rep < config.reps; ++rep) {
    if (config.threads <= 1) {
      std::vector<T> copy = input;
      const auto start = Clock::now();
      sort_once(copy);
      times.push_back(seconds_since(start));
      if (!verify(copy)) verification_failure("timed run", config, result.algo);
    } else {
      // Independent instances: one sort per thread on disjoint arrays;
      // aggregate throughput over the wall time of the slowest.
      std::vector<std::vector<T>> copies(config.threads, input);
      std::vector<vexsort::SortScratch> scratches;
      for (std::size_t t = 0; t < config.threads; ++t) {
        scratches.push_back(vexsort::SortScratch::for_key<T>());
      }
      const auto start = Clock::now();
      std::vector<std::thread> workers;
      for (std::size_t t = 0; t < config.threads; ++t) {
        workers.emplace_back([&, t]() {
          vexsort::SortConfig cfg = sort_config;
          cfg.scratch = &scratches[t];
          switch (algo) {
            case Algo::kVexsort:
              vexsort::sort(std::span<T>(copies[t]), cfg);
              break;
            case Algo::kStdSort:
              std::sort(copies[t].begin(), copies[t].end(), compare);
              break;
            case Algo::kHeapSort: {
              using TF = vexsort::detail::TraitsFor<T>;
              using Lane = typename TF::Lane;
              if (config.order == vexsort::Order::kAscending) {
                using D = vexsort::detail::Driver<
                    vexsort::detail::WideTag, typename TF::template Traits<true>>;
                D::heap_sort(reinterpret_cast<Lane*>(copies[t].data()),
                             copies[t].size());
              } else {
                using D = vexsort::detail::Driver<
                    vexsort::detail::WideTag,
                    typename TF::template Traits<false>>;
                D::heap_sort(reinterpret_cast<Lane*>(copies[t].data()),
                             copies[t].size());
              }
              break;
            }
          }
        });
      }
      for (auto& w : workers) w.join();
      times.push_back(seconds_since(start) / static_cast<double>(config.threads));
      for (auto& copy : copies) {
        if (!verify(copy)) {
          verification_failure("threaded run", config, result.algo);
        }
      }
    }
  }

  std::vector<double> mbps;
  mbps.reserve(times.size());
  const double bytes = static_cast<double>(config.n) *
                       static_cast<double>(key_bytes(config.type));
  for (double t : times) mbps.push_back(bytes / t / 1e6);
  std::sort(mbps.begin(), mbps.end());
  result.mbps_median = mbps[mbps.size() / 2];
  result.mbps_min = mbps.front();
  result.mbps_max = mbps.back();
  result.verified = true;
  if (algo == Algo::kVexsort) {
    result.max_depth = last_stats.max_depth;
    result.fallback = last_stats.fallback_triggered;
  }
  return result;
}

template <typename T>
std::vector<BenchResult> run_bench_typed(const BenchConfig& config) {
  std::vector<BenchResult> results;
  for (Algo algo : config.algos) {
    results.push_back(run_algo<T>(algo, config));
  }
  return results;
}

template <class F>
auto with_key_type(KeyType t, F&& f) {
  switch (t) {
    case KeyType::kI16: return f(std::type_identity<std::int16_t>{});
    case KeyType::kU16: return f(std::type_identity<std::uint16_t>{});
    case KeyType::kI32: return f(std::type_identity<std::int32_t>{});
    case KeyType::kU32: return f(std::type_identity<std::uint32_t>{});
    case KeyType::kF32: return f(std::type_identity<float>{});
    case KeyType::kI64: return f(std::type_identity<std::int64_t>{});
    case KeyType::kU64: return f(std::type_identity<std::uint64_t>{});
    case KeyType::kF64: return f(std::type_identity<double>{});
    case KeyType::kK128: return f(std::type_identity<vexsort::K128>{});
  }
  throw std::logic_error("unknown key type");
}

template <typename T>
std::vector<BenchResult> run_partition_bench_typed(
    const PartitionBenchConfig& config) {
  using TF = vexsort::detail::TraitsFor<T>;
  using Lane = typename TF::Lane;
  using Tr = typename TF::template Traits<true>;
  using Part =
      vexsort::detail::Partitioner<vexsort::detail::WideTag, Tr>;
  using O = typename vexsort::detail::WideTag::template Ops<Lane>;
  constexpr std::size_t kLpk = Tr::kLanesPerKey;

  std::vector<BenchResult> results;
  vexsort::SortScratch scratch = vexsort::SortScratch::for_key<T>();
  std::span<Lane> scratch_lanes(reinterpret_cast<Lane*>(scratch.data()),
                                scratch.size() / sizeof(Lane));

  for (std::size_t n = std::size_t{1} << 10; n <= config.max_n; n <<= 2) {
    const std::vector<T> input = generate<T>(Dist::kUniform, n, config.seed);

    // Median pivot for a stable, balanced measurement.
    std::vector<T> tmp = input;
    std::nth_element(tmp.begin(), tmp.begin() + tmp.size() / 2, tmp.end(),
                     [](const T& a, const T& b) {
                       return precedes(a, b, vexsort::Order::kAscending);
                     });
    const T pivot_key = tmp[tmp.size() / 2];

    BenchResult result;
    result.algo = "partition";
    result.type = config.type;
    result.order = config.order;
    result.dist = Dist::kUniform;
    result.n = n;
    result.reps = config.reps;

    std::vector<double> mbps;
    for (std::size_t rep = 0; rep < config.reps + 1; ++rep) {
      std::vector<T> copy = input;
      auto* lanes = reinterpret_cast<Lane*>(copy.data());
      const std::span<Lane> span(lanes, copy.size() * kLpk);
      Lane pivot_lanes[2];
      std::memcpy(pivot_lanes, &pivot_key, sizeof(T));
      const auto pivot_block = Tr::template set_key<O>(pivot_lanes);

      const auto start = Clock::now();
      const std::size_t bound = Part::partition(span, pivot_block, scratch_lanes);
      const double secs = seconds_since(start);

      // Verify the partition predicate and multiset on every run.
      bool ok = bound % kLpk == 0;
      for (std::size_t i = 0; ok && i < copy.size(); ++i) {
        const bool right = precedes(pivot_key, copy[i], config.order);
        ok = (i * kLpk < bound) ? !right : right;
      }
      std::vector<T> sorted_copy = copy;
      std::vector<T> sorted_input = input;
      auto cmp = [](const T& a, const T& b) {
        return precedes(a, b, vexsort::Order::kAscending);
      };
      std::sort(sorted_copy.begin(), sorted_copy.end(), cmp);
      std::sort(sorted_input.begin(), sorted_input.end(), cmp);
      if (!ok || std::memcmp(sorted_copy.data(), sorted_input.data(),
                             sorted_copy.size() * sizeof(T)) != 0) {
        std::ostringstream os;
        os << "partition verification failed [type=" << to_string(config.type)
           << " n=" << n << " seed=" << config.seed << "]";
        throw std::runtime_error(os.str());
      }
      if (rep > 0) {  // first run is warm-up
        mbps.push_back(static_cast<double>(n) * sizeof(T) / secs / 1e6);
      }
    }
    std::sort(mbps.begin(), mbps.end());
    result.mbps_median = mbps[mbps.size() / 2];
    result.mbps_min = mbps.front();
    result.mbps_max = mbps.back();
    result.verified = true;
    results.push_back(result);
  }
  return results;
}

}  // namespace

std::vector<BenchResult> run_bench(const BenchConfig& config) {
  return with_key_type(config.type, [&](auto tag) {
    using T = typename decltype(tag)::type;
    return run_bench_typed<T>(config);
  });
}

std::vector<BenchResult> run_partition_bench(
    const PartitionBenchConfig& config) {
  return with_key_type(config.type, [&](auto tag) {
    using T = typename decltype(tag)::type;
    return run_partition_bench_typed<T>(config);
  });
}

void write_csv(std::ostream& os, const std::vector<BenchResult>& results) {
  os << "algo,type,order,dist,n,reps,mbps_median,mbps_min,mbps_max,verified,"
        "max_depth,fallback\n";
  for (const BenchResult& r : results) {
    os << r.algo << ',' << to_string(r.type) << ','
       << (r.order == vexsort::Order::kAscending ? "asc" : "desc") << ','
       << to_string(r.dist) << ',' << r.n << ',' << r.reps << ','
       << std::fixed << std::setprecision(2) << r.mbps_median << ','
       << r.mbps_min << ',' << r.mbps_max << ','
       << (r.verified ? 1 : 0) << ',' << r.max_depth << ','
       << (r.fallback ? 1 : 0) << '\n';
  }
}

void write_table(std::ostream& os, const std::vector<BenchResult>& results) {
  os << std::left << std::setw(11) << "algo" << std::setw(6) << "type"
     << std::setw(6) << "order" << std::setw(12) << "dist" << std::right
     << std::setw(10) << "n" << std::setw(12) << "MB/s med" << std::setw(12)
     << "MB/s min" << std::setw(12) << "MB/s max" << std::setw(10)
     << "verified" << '\n';
  for (const BenchResult& r : results) {
    os << std::left << std::setw(11) << r.algo << std::setw(6)
       << to_string(r.type) << std::setw(6)
       << (r.order == vexsort::Order::kAscending ? "asc" : "desc")
       << std::setw(12) << to_string(r.dist) << std::right << std::setw(10)
       << r.n << std::fixed << std::setprecision(1) << std::setw(12)
       << r.mbps_median << std::setw(12) << r.mbps_min << std::setw(12)
       << r.mbps_max << std::setw(10) << (r.verified ? "yes" : "NO") << '\n';
  }
}

}  // namespace vexbench
