#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "divapport/divapport.hpp"

namespace divapport::cli {
namespace {

std::string fmt_real(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.15g", value);
  return buf;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) parts.push_back(item);
  }
  return parts;
}

// lo:hi:count, geometrically spaced and rounded, duplicates dropped.
std::vector<std::size_t> geometric_range(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() != 3) {
    throw Error(ErrorCode::invalid_argument, "--n-range expects <lo>:<hi>:<count>");
  }
  const double lo = detail::parse_number(parts[0], "--n-range");
  const double hi = detail::parse_number(parts[1], "--n-range");
  const double count = detail::parse_number(parts[2], "--n-range");
  if (!(lo >= 1.0 && hi >= lo && count >= 1.0)) {
    throw Error(ErrorCode::invalid_argument, "--n-range needs 1 <= lo <= hi and count >= 1");
  }
  std::vector<std::size_t> values;
  const auto steps = static_cast<std::size_t>(count);
  for (std::size_t s = 0; s < steps; ++s) {
    const double t = steps == 1 ? 0.0 : static_cast<double>(s) / static_cast<double>(steps - 1);
    const auto n = static_cast<std::size_t>(std::llround(lo * std::pow(hi / lo, t)));
    if (values.empty() || values.back() != n) values.push_back(n);
  }
  return values;
}

Fuzzy make_fuzzy(const std::optional<double>& tolerance) {
  Fuzzy fuzzy = fuzzy_from_env();
  if (tolerance) {
    if (!(*tolerance >= 0.0) || !std::isfinite(*tolerance)) {
      throw Error(ErrorCode::invalid_argument, "--tolerance must be a non-negative number");
    }
    fuzzy.tolerance = *tolerance;
  }
  return fuzzy;
}

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::mismatch_detected:
    case ErrorCode::inconsistent_rank:
      return kExitMismatch;
    default:
      return kExitInvalidInput;
  }
}

void print_allocation(std::ostream& out, const DivisorMethod& method, Algorithm algorithm,
                      std::span<const double> votes, std::uint64_t k, const Allocation& alloc,
                      bool valid) {
  out << "method: " << method.name() << '\n';
  out << "algorithm: " << to_string(algorithm) << '\n';
  out << "parties: " << votes.size() << '\n';
  out << "seats: " << k << '\n';
  out << "astar: " << fmt_real(alloc.astar) << '\n';
  out << "residual: " << alloc.residual << '\n';
  out << "tied_parties: " << alloc.tied_count() << '\n';
  out << "valid: " << (valid ? "true" : "false") << '\n';
  out << "party votes undisputed tied\n";
  for (std::size_t i = 0; i < votes.size(); ++i) {
    out << (i + 1) << ' ' << fmt_real(votes[i]) << ' ' << alloc.undisputed[i] << ' '
        << (alloc.tied[i] ? "yes" : "no") << '\n';
  }
}

struct ApportionArgs {
  std::string method;
  long long seats = 0;
  std::string votes;
  std::string algorithm = "sandwich";
  std::string select = "quick";
  std::optional<double> tolerance;
  bool cross_check = false;
};

int cmd_apportion(const ApportionArgs& a, std::ostream& out, std::ostream& err) {
  if (a.seats < 1) {
    err << "error: --seats must be at least 1\n";
    return kExitInvalidInput;
  }
  const DivisorMethod method = parse_method(a.method);
  const Algorithm algorithm = parse_algorithm(a.algorithm);
  const Fuzzy fuzzy = make_fuzzy(a.tolerance);
  const std::vector<double> votes = read_votes_file(a.votes);
  const auto k = static_cast<std::uint64_t>(a.seats);
  validate_instance(votes, k);

  RunOptions options;
  options.select = parse_select_backend(a.select);
  options.fuzzy = fuzzy;
  const RunOutcome outcome = run_algorithm(algorithm, method, votes, k, options);
  const bool valid = verify_allocation(method, votes, k, outcome.allocation, fuzzy);
  print_allocation(out, method, algorithm, votes, k, outcome.allocation, valid);
  if (!valid) {
    err << "error: allocation failed the max-min check\n";
    return kExitMismatch;
  }
  if (a.cross_check) {
    for (Algorithm other : kAllAlgorithms) {
      const RunOutcome check = run_algorithm(other, method, votes, k, options);
      if (!allocations_agree(check.allocation, outcome.allocation, fuzzy)) {
        err << "error: " << to_string(other) << " disagrees with " << to_string(algorithm)
            << '\n';
        return kExitMismatch;
      }
    }
    out << "cross_check: agree\n";
  }
  return kExitOk;
}

struct GenerateArgs {
  std::string dist = "uniform";
  std::size_t n = 0;
  std::uint64_t k_mult = 1;
  std::uint64_t seed = 1;
  std::string out_path;
};

int cmd_generate(const GenerateArgs& a, std::ostream& out) {
  const VoteDistribution dist = parse_distribution(a.dist);
  if (a.n < 1) throw Error(ErrorCode::invalid_argument, "--n must be at least 1");
  const Instance inst = gen_instance(dist, a.n, a.k_mult, a.seed);
  const std::vector<std::string> header = {
      "generated instance", "dist=" + dist.name(), "n=" + std::to_string(a.n),
      "k-mult=" + std::to_string(a.k_mult), "seats=" + std::to_string(inst.house_size),
      "seed=" + std::to_string(a.seed)};
  if (a.out_path.empty() || a.out_path == "-") {
    write_votes(out, inst.votes, header);
  } else {
    write_votes_file(a.out_path, inst.votes, header);
  }
  return kExitOk;
}

struct BenchArgs {
  std::string algorithms = "iterative-scan,iterative-heap,jump-step-scan,jump-step-heap,sandwich";
  std::string method = "sainte-lague";
  std::string n_list;
  std::string n_range;
  std::uint64_t k_mult = 5;
  std::string dist = "uniform";
  std::size_t instances = 1;
  std::size_t reps = 1;
  std::size_t blocks = 1;
  std::size_t warmup = 0;
  std::uint64_t seed = 1;
  std::string select = "quick";
  std::string csv;
  std::vector<std::string> plots;
  bool no_time = false;
  bool no_verify = false;
  std::size_t parallel = 1;
  std::string repro_dir = ".";
  std::optional<double> tolerance;
};

int cmd_bench(const BenchArgs& a, std::ostream& out) {
  BenchConfig config;
  for (const auto& name : split_list(a.algorithms))
    config.algorithms.push_back(parse_algorithm(name));
  config.method = parse_method(a.method).name();
  if (!a.n_list.empty()) {
    for (const auto& item : split_list(a.n_list)) {
      const double n = detail::parse_number(item, "--n");
      if (!(n >= 1.0) || n != std::floor(n)) {
        throw Error(ErrorCode::invalid_argument, "--n values must be positive integers");
      }
      config.n_values.push_back(static_cast<std::size_t>(n));
    }
  }
  if (!a.n_range.empty()) {
    for (auto n : geometric_range(a.n_range)) config.n_values.push_back(n);
  }
  config.k_multiplier = a.k_mult;
  config.dist = parse_distribution(a.dist);
  config.instances_per_n = a.instances;
  config.reps_per_instance = a.reps;
  config.rep_blocks = a.blocks;
  config.warmup_reps = a.warmup;
  config.seed = a.seed;
  config.select = parse_select_backend(a.select);
  config.fuzzy = make_fuzzy(a.tolerance);
  config.no_time = a.no_time;
  config.verify = !a.no_verify;
  config.workers = a.parallel;
  config.repro_dir = a.repro_dir;

  std::vector<std::pair<PlotKind, std::string>> plots;
  for (const auto& spec : a.plots) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::invalid_argument, "--plot expects <kind>=<path>");
    }
    plots.emplace_back(parse_plot_kind(spec.substr(0, eq)), spec.substr(eq + 1));
  }

  const auto records = run_benchmark(config);
  if (a.csv.empty() || a.csv == "-") {
    write_csv(records, out);
  } else {
    emit_csv(records, a.csv);
  }
  for (const auto& [kind, path] : plots) emit_plot_data(records, kind, path);
  return kExitOk;
}

struct VerifyArgs {
  std::size_t instances = 1000;
  std::size_t max_n = 200;
  std::uint64_t max_k_mult = 10;
  std::uint64_t seed = 1;
  std::string select = "quick";
  std::optional<double> tolerance;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  if (a.max_n < 1 || a.max_k_mult < 1) {
    throw Error(ErrorCode::invalid_argument, "--max-n and --max-k-mult must be at least 1");
  }
  RunOptions options;
  options.select = parse_select_backend(a.select);
  options.fuzzy = make_fuzzy(a.tolerance);
  SplitMix64 rng(a.seed);
  std::size_t mismatches = 0;
  std::size_t oracle_checked = 0;
  for (std::size_t t = 0; t < a.instances; ++t) {
    const FuzzCase fc = sample_fuzz_case(rng, a.max_n, a.max_k_mult);
    std::optional<Allocation> reference;
    if (fc.k <= kOracleLimit / fc.votes.size()) {
      reference = enumerate_oracle(fc.method, fc.votes, fc.k, options.fuzzy);
      ++oracle_checked;
    }
    for (Algorithm algorithm : kAllAlgorithms) {
      std::string problem;
      try {
        const RunOutcome r = run_algorithm(algorithm, fc.method, fc.votes, fc.k, options);
        if (!reference) reference = r.allocation;
        if (!allocations_agree(r.allocation, *reference, options.fuzzy)) {
          problem = "disagrees with reference";
        } else if (!verify_allocation(fc.method, fc.votes, fc.k, r.allocation, options.fuzzy)) {
          problem = "fails the max-min check";
        }
      } catch (const Error& e) {
        problem = e.what();
      }
      if (!problem.empty()) {
        ++mismatches;
        err << "mismatch: case " << t << " (" << fc.describe() << "): " << to_string(algorithm)
            << ' ' << problem << '\n';
      }
    }
  }
  out << "instances: " << a.instances << '\n';
  out << "oracle_checked: " << oracle_checked << '\n';
  out << "mismatches: " << mismatches << '\n';
  return mismatches == 0 ? kExitOk : kExitMismatch;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Divisor-method apportionment: algorithms, benchmark harness and checks",
               "divapport"};
  app.require_subcommand(1);

  ApportionArgs apportion;
  auto* ap = app.add_subcommand("apportion", "Apportion seats for a votes file");
  ap->add_option("--method", apportion.method, "Divisor method name")->required();
  ap->add_option("--seats", apportion.seats, "House size k")->required();
  ap->add_option("--votes", apportion.votes, "Votes file (one positive number per line)")
      ->required();
  ap->add_option("--algorithm", apportion.algorithm,
                 "iterative-scan | iterative-heap | jump-step-scan | jump-step-heap | sandwich")
      ->capture_default_str();
  ap->add_option("--select", apportion.select, "Selection backend: quick | mom")
      ->capture_default_str();
  ap->add_option("--tolerance", apportion.tolerance, "Relative fuzzy-comparison tolerance");
  ap->add_flag("--cross-check", apportion.cross_check, "Compare against every algorithm");

  GenerateArgs generate;
  auto* gen = app.add_subcommand("generate", "Write a random votes file");
  gen->add_option("--dist", generate.dist, "uniform[:lo,hi] | exponential[:mean] | "
                                           "poisson[:mean] | pareto[:shape,scale]")
      ->capture_default_str();
  gen->add_option("--n", generate.n, "Number of parties")->required();
  gen->add_option("--k-mult", generate.k_mult, "House size multiplier (k = m*n)")
      ->capture_default_str();
  gen->add_option("--seed", generate.seed, "Generator seed")->capture_default_str();
  gen->add_option("--out", generate.out_path, "Output path (default stdout)");

  BenchArgs bench;
  auto* bn = app.add_subcommand("bench", "Run the running-time benchmark");
  bn->add_option("--algorithms", bench.algorithms, "Comma-separated algorithm ids")
      ->capture_default_str();
  bn->add_option("--method", bench.method, "Divisor method name")->capture_default_str();
  bn->add_option("--n", bench.n_list, "Comma-separated party counts");
  bn->add_option("--n-range", bench.n_range, "Geometric party counts <lo>:<hi>:<count>");
  bn->add_option("--k-mult", bench.k_mult, "House size multiplier")->capture_default_str();
  bn->add_option("--dist", bench.dist, "Vote distribution")->capture_default_str();
  bn->add_option("--instances", bench.instances, "Instances per n")->capture_default_str();
  bn->add_option("--reps", bench.reps, "Timed executions per block")->capture_default_str();
  bn->add_option("--blocks", bench.blocks, "Timed blocks per instance")->capture_default_str();
  bn->add_option("--warmup", bench.warmup, "Untimed warm-up executions")->capture_default_str();
  bn->add_option("--seed", bench.seed, "Base seed")->capture_default_str();
  bn->add_option("--select", bench.select, "Selection backend: quick | mom")
      ->capture_default_str();
  bn->add_option("--csv", bench.csv, "CSV output path (default stdout)");
  bn->add_option("--plot", bench.plots,
                 "<kind>=<path>, kind: time_vs_n_normalized | time_vs_counter | counter_vs_n");
  bn->add_flag("--no-time", bench.no_time, "Zero all times (byte-stable output)");
  bn->add_flag("--no-verify", bench.no_verify, "Skip the cross-algorithm check");
  bn->add_option("--parallel", bench.parallel, "Worker threads (sharded by instance)")
      ->capture_default_str();
  bn->add_option("--repro-dir", bench.repro_dir, "Where mismatching instances are dumped")
      ->capture_default_str();
  bn->add_option("--tolerance", bench.tolerance, "Relative fuzzy-comparison tolerance");

  VerifyArgs verify;
  auto* vf = app.add_subcommand("verify", "Fuzz cross-check of all algorithms");
  vf->add_option("--instances", verify.instances, "Number of random instances")
      ->capture_default_str();
  vf->add_option("--max-n", verify.max_n, "Maximum number of parties")->capture_default_str();
  vf->add_option("--max-k-mult", verify.max_k_mult, "k is drawn from [1, max-k-mult * n]")
      ->capture_default_str();
  vf->add_option("--seed", verify.seed, "Base seed")->capture_default_str();
  vf->add_option("--select", verify.select, "Selection backend: quick | mom")
      ->capture_default_str();
  vf->add_option("--tolerance", verify.tolerance, "Relative fuzzy-comparison tolerance");

  std::vector<const char*> argv{"divapport"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    err << app.help();
    return kExitInvalidInput;
  }

  try {
    if (ap->parsed()) return cmd_apportion(apportion, out, err);
    if (gen->parsed()) return cmd_generate(generate, out);
    if (bn->parsed()) return cmd_bench(bench, out);
    if (vf->parsed()) return cmd_verify(verify, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
  return kExitInvalidInput;
}

}  // namespace divapport::cli
