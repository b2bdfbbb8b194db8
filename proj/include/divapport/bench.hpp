#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <ostream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "divapport/algorithms.hpp"
#include "divapport/generators.hpp"
#include "divapport/random.hpp"
#include "divapport/votes_io.hpp"

namespace divapport {

struct BenchConfig {
  std::vector<Algorithm> algorithms;
  std::string method = "sainte-lague";
  std::vector<std::size_t> n_values;
  std::uint64_t k_multiplier = 5;
  VoteDistribution dist = VoteDistribution::uniform();
  std::size_t instances_per_n = 1;
  std::size_t reps_per_instance = 1;  // timed executions per block
  std::size_t rep_blocks = 1;
  std::size_t warmup_reps = 0;
  std::uint64_t seed = 1;
  SelectBackend select = SelectBackend::quick;
  Fuzzy fuzzy{};
  bool no_time = false;  // zero all times for byte-stable output
  bool verify = true;
  std::size_t workers = 1;
  std::string repro_dir = ".";
};

struct BenchRecord {
  Algorithm algorithm = Algorithm::sandwich;
  std::size_t n = 0;
  std::uint64_t k = 0;
  std::string method;
  std::string dist;
  std::uint64_t seed = 0;
  std::size_t instance_index = 0;
  std::size_t rep_block = 0;
  double mean_time_ns = 0.0;
  std::int64_t counter = 0;
  CounterKind counter_kind = CounterKind::none;
};

/// Seed of instance `instance` at party count n.
inline std::uint64_t instance_seed(std::uint64_t base, std::size_t n, std::size_t instance) {
  return split_seed(split_seed(base, n), instance);
}

namespace detail {

inline void validate_config(const BenchConfig& config) {
  if (config.algorithms.empty()) throw Error(ErrorCode::invalid_argument, "no algorithms given");
  if (config.n_values.empty()) throw Error(ErrorCode::invalid_argument, "no party counts given");
  if (config.reps_per_instance < 1 || config.rep_blocks < 1) {
    throw Error(ErrorCode::invalid_argument, "repetitions and blocks must be >= 1");
  }
  if (config.k_multiplier < 1)
    throw Error(ErrorCode::invalid_argument, "k multiplier must be >= 1");
  for (auto n : config.n_values) {
    if (n < 1) throw Error(ErrorCode::invalid_argument, "party counts must be >= 1");
  }
}

inline std::string dump_instance(const BenchConfig& config, const DivisorMethod& method,
                                 const Instance& inst, std::uint64_t seed,
                                 const std::string& detail) {
  const std::string path = config.repro_dir + "/mismatch-n" + std::to_string(inst.votes.size()) +
                           "-seed" + std::to_string(seed) + ".votes";
  const std::vector<std::string> header = {
      "mismatch: " + detail, "method=" + method.name(), "dist=" + config.dist.name(),
      "seats=" + std::to_string(inst.house_size), "seed=" + std::to_string(seed)};
  try {
    write_votes_file(path, inst.votes, header);
  } catch (const Error&) {
    return "(reproduction file could not be written)";
  }
  return path;
}

inline std::vector<BenchRecord> bench_instance(const BenchConfig& config,
                                               const DivisorMethod& method, std::size_t n,
                                               std::size_t instance) {
  const std::uint64_t seed = instance_seed(config.seed, n, instance);
  const Instance inst = gen_instance(config.dist, n, config.k_multiplier, seed);
  const RunOptions options{config.select, seed, config.fuzzy};
  std::vector<BenchRecord> records;
  std::vector<RunOutcome> outcomes;

  for (Algorithm algorithm : config.algorithms) {
    RunOutcome outcome;
    for (std::size_t w = 0; w < config.warmup_reps; ++w) {
      outcome = run_algorithm(algorithm, method, inst.votes, inst.house_size, options);
    }
    for (std::size_t block = 0; block < config.rep_blocks; ++block) {
      const auto start = std::chrono::steady_clock::now();
      for (std::size_t rep = 0; rep < config.reps_per_instance; ++rep) {
        outcome = run_algorithm(algorithm, method, inst.votes, inst.house_size, options);
      }
      const auto stop = std::chrono::steady_clock::now();
      const double total =
          std::chrono::duration<double, std::nano>(stop - start).count();
      BenchRecord rec;
      rec.algorithm = algorithm;
      rec.n = n;
      rec.k = inst.house_size;
      rec.method = method.name();
      rec.dist = config.dist.name();
      rec.seed = seed;
      rec.instance_index = instance;
      rec.rep_block = block;
      rec.mean_time_ns =
          config.no_time ? 0.0
                         : std::max(total / static_cast<double>(config.reps_per_instance), 1.0);
      rec.counter = outcome.counter;
      rec.counter_kind = outcome.kind;
      records.push_back(std::move(rec));
    }
    outcomes.push_back(std::move(outcome));
  }

  if (config.verify) {
    for (std::size_t a = 0; a < outcomes.size(); ++a) {
      std::string problem;
      if (!verify_allocation(method, inst.votes, inst.house_size, outcomes[a].allocation,
                             config.fuzzy)) {
        problem = std::string(to_string(config.algorithms[a])) + " failed the max-min check";
      } else if (!allocations_agree(outcomes[a].allocation, outcomes[0].allocation,
                                    config.fuzzy)) {
        problem = std::string(to_string(config.algorithms[a])) + " disagrees with " +
                  to_string(config.algorithms[0]);
      }
      if (!problem.empty()) {
        const std::string descriptor = "n=" + std::to_string(n) + " instance=" +
                                       std::to_string(instance) + " seed=" + std::to_string(seed);
        const std::string path = dump_instance(config, method, inst, seed, problem);
        throw Error(ErrorCode::mismatch_detected, descriptor + ": " + problem + " (" + path + ")");
      }
    }
  }
  return records;
}

}  // namespace detail

/// Runs every algorithm on the same generated instances. Warm-up executions
/// are untimed; each record holds the mean time of one timed block. Records
/// come out ordered by (n, instance, algorithm, block) regardless of workers.
inline std::vector<BenchRecord> run_benchmark(const BenchConfig& config) {
  detail::validate_config(config);
  const DivisorMethod method = parse_method(config.method);

  struct Task {
    std::size_t n;
    std::size_t instance;
  };
  std::vector<Task> tasks;
  for (std::size_t n : config.n_values) {
    for (std::size_t i = 0; i < config.instances_per_n; ++i) tasks.push_back({n, i});
  }
  std::vector<std::vector<BenchRecord>> per_task(tasks.size());

  const std::size_t workers = std::max<std::size_t>(1, std::min(config.workers, tasks.size()));
  if (workers <= 1) {
    for (std::size_t t = 0; t < tasks.size(); ++t) {
      per_task[t] = detail::bench_instance(config, method, tasks[t].n, tasks[t].instance);
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t t = next++; t < tasks.size(); t = next++) {
          try {
            per_task[t] = detail::bench_instance(config, method, tasks[t].n, tasks[t].instance);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next = tasks.size();
          }
        }
      });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
  }

  std::vector<BenchRecord> records;
  for (auto& chunk : per_task) {
    for (auto& rec : chunk) records.push_back(std::move(rec));
  }
  return records;
}

namespace detail {

inline std::string csv_field(const std::string& value) {
  if (value.find_first_of(",\"\n") == std::string::npos) return value;
  std::string quoted = "\"";
  for (char c : value) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

inline std::string fixed1(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.1f", value);
  return buf;
}

inline std::string general(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", value);
  return buf;
}

}  // namespace detail

inline constexpr std::string_view kCsvHeader =
    "algorithm,n,k,method,dist,seed,instance,rep_block,mean_time_ns,counter,counter_kind";

inline void write_csv(const std::vector<BenchRecord>& records, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const auto& r : records) {
    out << to_string(r.algorithm) << ',' << r.n << ',' << r.k << ','
        << detail::csv_field(r.method) << ',' << detail::csv_field(r.dist) << ',' << r.seed << ','
        << r.instance_index << ',' << r.rep_block << ',' << detail::fixed1(r.mean_time_ns) << ','
        << r.counter << ',' << to_string(r.counter_kind) << '\n';
  }
}

inline void emit_csv(const std::vector<BenchRecord>& records, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::io_failure, "cannot open '" + path + "' for writing");
  write_csv(records, out);
  out.flush();
  if (!out) throw Error(ErrorCode::io_failure, "write failed for '" + path + "'");
}

enum class PlotKind { time_vs_n_normalized, time_vs_counter, counter_vs_n };

inline PlotKind parse_plot_kind(std::string_view text) {
  if (text == "time_vs_n_normalized") return PlotKind::time_vs_n_normalized;
  if (text == "time_vs_counter") return PlotKind::time_vs_counter;
  if (text == "counter_vs_n") return PlotKind::counter_vs_n;
  throw Error(ErrorCode::invalid_argument, "unknown plot kind '" + std::string(text) + "'");
}

/// Whitespace-separated series separated by two blank lines (gnuplot `index`).
///   time_vs_n_normalized  per algorithm:       n  mean_time_ns/n
///   time_vs_counter       per algorithm and n: |counter|  mean_time_ns
///   counter_vs_n          per algorithm:       n  mean|counter|/n
inline void write_plot_data(const std::vector<BenchRecord>& records, PlotKind kind,
                            std::ostream& out) {
  std::vector<Algorithm> order;
  for (const auto& r : records) {
    if (kind != PlotKind::time_vs_n_normalized && r.counter_kind == CounterKind::none) continue;
    if (std::find(order.begin(), order.end(), r.algorithm) == order.end()) {
      order.push_back(r.algorithm);
    }
  }
  if (order.empty()) {
    throw Error(ErrorCode::empty_selection, "no records for the requested plot kind");
  }
  bool first_series = true;
  auto open_series = [&](const std::string& title, const char* columns) {
    if (!first_series) out << "\n\n";
    first_series = false;
    out << "# " << title << '\n' << "# " << columns << '\n';
  };

  for (Algorithm algorithm : order) {
    if (kind == PlotKind::time_vs_counter) {
      std::map<std::size_t, std::vector<const BenchRecord*>> by_n;
      for (const auto& r : records) {
        if (r.algorithm == algorithm) by_n[r.n].push_back(&r);
      }
      for (const auto& [n, group] : by_n) {
        open_series(std::string("algorithm=") + to_string(algorithm) + " n=" + std::to_string(n),
                    "abs_counter mean_time_ns");
        for (const auto* r : group) {
          out << std::llabs(r->counter) << ' ' << detail::general(r->mean_time_ns) << '\n';
        }
      }
      continue;
    }
    std::map<std::size_t, std::pair<double, std::size_t>> sums;
    for (const auto& r : records) {
      if (r.algorithm != algorithm) continue;
      auto& [sum, count] = sums[r.n];
      sum += kind == PlotKind::time_vs_n_normalized ? r.mean_time_ns
                                                    : static_cast<double>(std::llabs(r.counter));
      ++count;
    }
    open_series(std::string("algorithm=") + to_string(algorithm),
                kind == PlotKind::time_vs_n_normalized ? "n mean_time_ns_per_n"
                                                       : "n mean_abs_counter_per_n");
    for (const auto& [n, acc] : sums) {
      const double mean = acc.first / static_cast<double>(acc.second);
      out << n << ' ' << detail::general(mean / static_cast<double>(n)) << '\n';
    }
  }
}

inline void emit_plot_data(const std::vector<BenchRecord>& records, PlotKind kind,
                           const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::io_failure, "cannot open '" + path + "' for writing");
  write_plot_data(records, kind, out);
  out.flush();
  if (!out) throw Error(ErrorCode::io_failure, "write failed for '" + path + "'");
}

}  // namespace divapport
