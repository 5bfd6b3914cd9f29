/**
 * Copyright 2026 The drfkit Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <climits>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"

#include "drfkit/cycles.hpp"
#include "drfkit/drf.hpp"
#include "drfkit/edrf.hpp"
#include "drfkit/harness.hpp"
#include "drfkit/io.hpp"
#include "drfkit/pdrf.hpp"
#include "drfkit/shares.hpp"

#ifndef DRFKIT_VERSION
#define DRFKIT_VERSION "0.0.0"
#endif

namespace drfkit::cli {

namespace {

class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

std::string read_source(const std::string& path, std::istream& in) {
  if (path == "-") return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  std::ifstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot read " + path);
  return {std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>()};
}

void write_target(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot write " + path);
  file << content;
  if (!file.flush()) throw IoError("failed writing " + path);
}

Scenario load_scenario(const std::string& path, std::istream& in) {
  auto scenario = parse_scenario(read_source(path, in));
  require_valid(scenario);
  return scenario;
}

std::string angle(const ResourceVector& v) {
  std::string s = "<";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ">";
}

struct AllocateArgs {
  std::string scenario;
  std::string algo = "drf";
  bool drf_no_removal = false;
  bool finishing = false;
  std::string trace;
  std::string output;
};

struct CompareArgs {
  std::string scenario;
  std::string reference = "drf";
  std::string candidate = "pdrf";
  bool drf_no_removal = false;
  bool finishing = false;
};

struct BenchArgs {
  std::size_t users = 1000;
  std::size_t resources = 10;
  std::string demands = "1:10";
  std::string reserves = "50000:100000";
  std::size_t trials = 30;
  std::uint64_t seed = 1;
  std::string out_dir = "bench-out";
  bool strict_drf = false;
  bool finishing = false;
  std::size_t threads = 0;
};

struct CyclesArgs {
  std::string scenario;
  bool decompose = false;
  bool json = false;
};

int do_allocate(const AllocateArgs& a, std::istream& in, std::ostream& out) {
  const auto scenario = load_scenario(a.scenario, in);
  std::string document;
  if (a.algo == "drf") {
    DrfOptions options;
    options.remove_saturated = !a.drf_no_removal;
    options.collect_trace = !a.trace.empty();
    const auto result = drf_allocate(scenario, options);
    document = allocation_document(result.allocation, "drf",
                                   {{"halt_reason", to_string(result.trace.halt_reason)},
                                    {"iterations", std::to_string(result.trace.iterations)},
                                    {"remove_saturated", options.removes_saturated() ? "true" : "false"}});
    if (!a.trace.empty()) write_target(a.trace, format_trace(result.trace), out);
  } else if (a.algo == "pdrf") {
    const auto result = pdrf_allocate(scenario);
    const auto allocation = a.finishing ? finishing_pass(scenario, result) : result.allocation;
    document = allocation_document(allocation, a.finishing ? "pdrf+finishing-pass" : "pdrf",
                                   {{"k", result.k.to_string()}, {"ds_star", result.ds_star.to_string()}});
  } else {
    document = divisible_document(edrf_allocate(scenario));
  }
  write_target(a.output, document, out);
  return kOk;
}

Allocation run_named(const std::string& name, const Scenario& scenario, const CompareArgs& a) {
  if (name == "drf") {
    DrfOptions options;
    options.remove_saturated = !a.drf_no_removal;
    return drf_allocate(scenario, options).allocation;
  }
  const auto result = pdrf_allocate(scenario);
  return a.finishing ? finishing_pass(scenario, result) : result.allocation;
}

int do_compare(const CompareArgs& a, std::istream& in, std::ostream& out) {
  const auto scenario = load_scenario(a.scenario, in);
  const auto deltas = compare(run_named(a.reference, scenario, a), run_named(a.candidate, scenario, a));
  out << "user\tdelta\n";
  for (const auto& [id, delta] : deltas) out << id << '\t' << (delta > 0 ? "+" : "") << delta << '\n';
  const auto b = bucket_deltas(deltas);
  out << "under: 1=" << b.under_1 << " 2=" << b.under_2 << " >2=" << b.under_gt2 << " max=" << b.max_under << '\n';
  out << "over: 1=" << b.over_1 << " 2=" << b.over_2 << " >2=" << b.over_gt2 << " max=" << b.max_over << '\n';
  out << "exact: " << b.exact << '\n';
  return kOk;
}

int do_bench(const BenchArgs& a, std::ostream& out) {
  ExperimentConfig config;
  config.n_users = a.users;
  config.n_resources = a.resources;
  config.demand_interval = parse_interval(a.demands);
  config.reserve_interval = parse_interval(a.reserves);
  config.trials = a.trials;
  config.seed = a.seed;
  config.drf_options.strict_paper_mode = a.strict_drf;
  config.apply_finishing_pass = a.finishing;
  config.threads = a.threads;
  validate_config(config);

  const auto start = std::chrono::steady_clock::now();
  const auto stats = run_experiment(config);
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  try {
    export_stats(stats, a.out_dir);
  } catch (const std::runtime_error& e) {
    throw IoError(e.what());
  }

  out << stats_table(stats);
  double iterations = 0, heap_ops = 0, pdrf_ops = 0, float_u = 0, float_s = 0;
  for (const auto& t : stats.trials) {
    iterations += static_cast<double>(t.drf_iterations);
    heap_ops += static_cast<double>(t.drf_heap_operations);
    pdrf_ops += static_cast<double>(t.pdrf_operations);
    float_u += static_cast<double>(t.float_unsimplified_mismatches);
    float_s += static_cast<double>(t.float_simplified_mismatches);
  }
  const double n = static_cast<double>(stats.trials.size());
  out << "# informative: mean DRF iterations " << iterations / n << ", heap operations " << heap_ops / n
      << ", PDRF arithmetic operations " << pdrf_ops / n << '\n';
  out << "# informative: mean float-route task mismatches vs exact: unsimplified " << float_u / n << ", simplified "
      << float_s / n << '\n';
  out << "# informative: wall time " << elapsed.count() << " s for " << stats.trials.size() << " trials\n";
  out << "# wrote " << (std::filesystem::path(a.out_dir) / "stats.csv").string() << " and "
      << (std::filesystem::path(a.out_dir) / "stats.json").string() << '\n';
  return kOk;
}

int do_cycles(const CyclesArgs& a, std::istream& in, std::ostream& out) {
  const auto scenario = load_scenario(a.scenario, in);
  const auto profile = cycle_profile(scenario);
  std::optional<CycleDecomposition> decomposition;
  if (a.decompose) decomposition = decompose_higher_order(scenario);
  if (a.json) {
    out << cycles_document(profile, decomposition ? &*decomposition : nullptr);
    return kOk;
  }

  const auto ds = dominant_shares(scenario);
  out << "lcm(ds) = " << profile.lcm_ds << '\n';
  out << "full cycle length " << profile.full_length << ", basic subcycle length " << profile.basic_length << '\n';
  out << "user\tds\tfull\tbasic\n";
  for (std::size_t i = 0; i < scenario.num_users(); ++i) {
    const auto& id = scenario.users[i].id;
    out << id << '\t' << ds[i].share << '\t' << profile.occurrences.at(id) << '\t' << profile.basic_occurrences.at(id)
        << '\n';
  }
  for (const auto& p : profile.extra_occurrences) {
    out << "extra turns for " << p.user << " (ratio " << p.ratio << "): every " << p.period << " subcycles at";
    for (auto pos : p.extra_positions) out << ' ' << pos;
    if (p.truncated) out << " ...";
    out << '\n';
  }
  if (decomposition) {
    out << "higher-order decomposition (experimental)\n";
    for (std::size_t l = 0; l < decomposition->layers.size(); ++l) {
      const auto& layer = decomposition->layers[l];
      out << "layer " << l << ": k = " << layer.k << ", iterations " << layer.iterations << ", consumed "
          << angle(layer.consumed) << ", turns";
      for (const auto& [id, turns] : layer.occurrences) out << ' ' << id << ':' << turns;
      if (layer.deviates_from_basic) {
        out << " (basic subcycle:";
        for (const auto& [id, turns] : layer.basic_occurrences) out << ' ' << id << ':' << turns;
        out << ')';
      }
      out << '\n';
    }
    out << "residual " << angle(decomposition->residual) << '\n';
  }
  return kOk;
}

int do_pareto_demo(std::ostream& out) {
  Scenario scenario{{59, 19}, {{"A", {1, 4}, std::nullopt}, {"B", {3, 1}, std::nullopt}}};
  DrfOptions strict;
  strict.strict_paper_mode = true;
  const auto halted = drf_allocate(scenario, strict);
  const auto completed = drf_allocate(scenario, DrfOptions{});

  auto report = [&](const char* label, const DrfResult& r) {
    out << label << ": " << r.trace.iterations << " iterations, halt reason " << to_string(r.trace.halt_reason) << '\n';
    for (const auto& [id, tasks] : r.allocation.tasks) {
      out << "  " << id << ": " << tasks << " tasks " << angle(r.allocation.per_user_amounts.at(id)) << '\n';
    }
    out << "  residual " << angle(r.allocation.residual) << '\n';
  };

  out << "capacities " << angle(scenario.resources) << ", A demands <1,4>, B demands <3,1>\n";
  report("strict mode (no saturated-demand removal)", halted);
  std::int64_t b_fits = INT64_MAX;
  const auto& residual = halted.allocation.residual;
  for (std::size_t r = 0; r < residual.size(); ++r) {
    if (scenario.users[1].demand[r] > 0) b_fits = std::min(b_fits, residual[r] / scenario.users[1].demand[r]);
  }
  out << "  the residual still fits " << b_fits
      << " more B tasks, but A is the least allocated user and A's next task does not fit: not Pareto efficient\n";
  report("removal mode (saturated demands excluded)", completed);
  out << "  B received " << completed.allocation.tasks.at("B") - halted.allocation.tasks.at("B")
      << " extra tasks; residual memory " << completed.allocation.residual[1] << '\n';
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multi-resource fair allocation: DRF, EDRF and PDRF", "drfkit"};
  app.set_version_flag("--version", std::string("drfkit ") + DRFKIT_VERSION);
  app.require_subcommand(1);

  AllocateArgs allocate;
  auto* allocate_cmd = app.add_subcommand("allocate", "Allocate a scenario file");
  allocate_cmd->add_option("scenario", allocate.scenario, "Scenario JSON file, or - for stdin")->required();
  allocate_cmd->add_option("--algo", allocate.algo, "Allocator")->check(CLI::IsMember({"drf", "edrf", "pdrf"}));
  allocate_cmd->add_flag("--drf-no-removal", allocate.drf_no_removal, "DRF halts at the first task that does not fit");
  allocate_cmd->add_flag("--finishing-pass", allocate.finishing, "Run the one-task finishing sweep after PDRF");
  allocate_cmd->add_option("--trace", allocate.trace, "Write the DRF step trace to this file");
  allocate_cmd->add_option("--output", allocate.output, "Write the allocation here instead of stdout");

  CompareArgs cmp;
  auto* compare_cmd = app.add_subcommand("compare", "Per-user task deltas between two allocators");
  compare_cmd->add_option("scenario", cmp.scenario, "Scenario JSON file, or - for stdin")->required();
  compare_cmd->add_option("--reference", cmp.reference, "Reference allocator")->check(CLI::IsMember({"drf", "pdrf"}));
  compare_cmd->add_option("--candidate", cmp.candidate, "Candidate allocator")->check(CLI::IsMember({"drf", "pdrf"}));
  compare_cmd->add_flag("--drf-no-removal", cmp.drf_no_removal, "DRF halts at the first task that does not fit");
  compare_cmd->add_flag("--finishing-pass", cmp.finishing, "Apply the finishing sweep to PDRF");

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Seeded DRF vs PDRF deviation experiment");
  bench_cmd->add_option("--users", bench.users, "Users per scenario")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--resources", bench.resources, "Resource types")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--demands", bench.demands, "Demand interval lo:hi (inclusive)");
  bench_cmd->add_option("--reserves", bench.reserves, "Reserve interval lo:hi (inclusive)");
  bench_cmd->add_option("--trials", bench.trials, "Number of trials")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--seed", bench.seed, "PRNG seed");
  bench_cmd->add_option("--out", bench.out_dir, "Directory for stats.csv and stats.json");
  bench_cmd->add_flag("--strict-drf", bench.strict_drf, "Reference DRF without saturated-demand removal");
  bench_cmd->add_flag("--finishing-pass", bench.finishing, "Apply the finishing sweep to PDRF");
  bench_cmd->add_option("--threads", bench.threads, "Worker threads (0 = hardware)");

  CyclesArgs cycles;
  auto* cycles_cmd = app.add_subcommand("cycles", "Cycle structure of the DRF main loop");
  cycles_cmd->add_option("scenario", cycles.scenario, "Scenario JSON file, or - for stdin")->required();
  cycles_cmd->add_flag("--decompose", cycles.decompose, "Also print the experimental higher-order decomposition");
  cycles_cmd->add_flag("--json", cycles.json, "Machine-readable output");

  auto* pareto_cmd = app.add_subcommand("pareto-demo", "Replay the <59,19> Pareto counterexample");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::Success& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    if (*allocate_cmd) return do_allocate(allocate, in, out);
    if (*compare_cmd) return do_compare(cmp, in, out);
    if (*bench_cmd) return do_bench(bench, out);
    if (*cycles_cmd) return do_cycles(cycles, in, out);
    if (*pareto_cmd) return do_pareto_demo(out);
  } catch (const IoError& e) {
    err << "drfkit: " << e.what() << '\n';
    return kIo;
  } catch (const ScenarioFormatError& e) {
    err << "drfkit: malformed scenario at " << e.what() << '\n';
    return kValidation;
  } catch (const std::invalid_argument& e) {
    err << "drfkit: " << e.what() << '\n';
    return kValidation;
  } catch (const std::exception& e) {
    err << "drfkit: " << e.what() << '\n';
    return kValidation;
  }
  return kUsage;
}

}  // namespace drfkit::cli
