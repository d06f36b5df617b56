// Copyright 2026 The vexsort Authors
// SPDX-License-Identifier: Apache-2.0
//
// vexsort-bench: sorts or partitions generated inputs and reports verified
// throughput, optionally as CSV.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bench/harness.hpp"

int main(int argc, char** argv) {
  CLI::App app{"vexsort benchmark harness"};

  std::string type = "u64";
  std::string order = "asc";
  std::string dist = "uniform";
  std::string algo = "all";
  std::string bench = "sort";
  std::string csv_path;
  std::size_t n = 1'000'000;
  std::size_t reps = 10;
  std::size_t threads = 1;
  std::uint64_t seed = 1;

  app.add_option("--type", type,
                 "key type: i16,u16,i32,u32,f32,i64,u64,f64,k128")
      ->check(CLI::IsMember(
          {"i16", "u16", "i32", "u32", "f32", "i64", "u64", "f64", "k128"}));
  app.add_option("--order", order, "sort order")
      ->check(CLI::IsMember({"asc", "desc"}));
  app.add_option("--dist", dist,
                 "input distribution: uniform,equal,lowentropy,asc,desc,twovalue")
      ->check(CLI::IsMember(
          {"uniform", "equal", "lowentropy", "asc", "desc", "twovalue"}));
  app.add_option("--n", n, "number of keys");
  app.add_option("--reps", reps, "timed repetitions (fresh copy each)");
  app.add_option("--seed", seed, "generator seed");
  app.add_option("--algo", algo, "algorithm(s): vexsort,std,heap,all")
      ->check(CLI::IsMember({"vexsort", "std", "heap", "all"}));
  app.add_option("--bench", bench, "benchmark kind")
      ->check(CLI::IsMember({"sort", "partition"}));
  app.add_option("--threads", threads,
                 "independent sort instances, one per thread");
  app.add_option("--csv", csv_path, "also write results to this CSV file");

  CLI11_PARSE(app, argc, argv);

  std::vector<vexbench::BenchResult> results;
  try {
    if (bench == "partition") {
      vexbench::PartitionBenchConfig config;
      config.type = *vexbench::key_type_from_string(type);
      config.order = order == "asc" ? vexsort::Order::kAscending
                                    : vexsort::Order::kDescending;
      config.max_n = n;
      config.reps = reps;
      config.seed = seed;
      results = vexbench::run_partition_bench(config);
    } else {
      vexbench::BenchConfig config;
      config.type = *vexbench::key_type_from_string(type);
      config.order = order == "asc" ? vexsort::Order::kAscending
                                    : vexsort::Order::kDescending;
      config.dist = *vexbench::dist_from_string(dist);
      config.n = n;
      config.reps = reps;
      config.seed = seed;
      config.threads = threads;
      if (algo == "vexsort") {
        config.algos = {vexbench::Algo::kVexsort};
      } else if (algo == "std") {
        config.algos = {vexbench::Algo::kStdSort};
      } else if (algo == "heap") {
        config.algos = {vexbench::Algo::kHeapSort};
      }
      results = vexbench::run_bench(config);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }

  vexbench::write_table(std::cout, results);
  if (!csv_path.empty()) {
    std::ofstream csv(csv_path);
    if (!csv) {
      std::cerr << "error: cannot open " << csv_path << '\n';
      return 1;
    }
    vexbench::write_csv(csv, results);
  }
  return 0;
}
