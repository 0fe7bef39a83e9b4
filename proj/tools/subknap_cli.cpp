// Copyright 2026 The subknap Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "subknap/experiments.hpp"
#include "subknap/io.hpp"
#include "subknap/verify.hpp"

namespace {

using namespace subknap;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInvariant = 2;
constexpr int kExitCapacity = 3;

// Size up to which run and compare also compute the exact optimum.
constexpr std::size_t kAutoOptN = 16;

struct AlgoFlags {
  double eps = 0.5;
  std::optional<std::size_t> t;
  std::optional<std::size_t> r;
  std::optional<std::size_t> phases;
  std::string mode = "practical";
  std::uint64_t seed = 0;
  double limit = 1e5;
  std::size_t trials = 4;
  std::size_t k_max = kDefaultMaxFractional;

  void attach(CLI::App& app) {
    app.add_option("--epsilon", eps, "Accuracy parameter in (0, 1)")->capture_default_str();
    app.add_option("--t", t, "OPT_1 iterations per phase");
    app.add_option("--r", r, "Large-value iterations per phase");
    app.add_option("--phases", phases, "Number of phases P");
    app.add_option("--mode", mode, "Guess mode: enumerate, practical, analysis")->capture_default_str();
    app.add_option("--seed", seed, "Global seed")->capture_default_str();
    app.add_option("--limit", limit, "Cap on guess sequences per value of M")->capture_default_str();
    app.add_option("--trials", trials, "Roundings per fractional outcome")->capture_default_str();
    app.add_option("--k-max", k_max, "Largest fractional support")->capture_default_str();
  }

  KnapsackParams params() const {
    KnapsackParams p;
    p.eps = eps;
    p.t = t;
    p.r = r;
    p.phases = phases;
    p.mode = parse_mode(mode);
    p.seed = seed;
    p.limit = limit;
    p.rounding_trials = trials;
    p.k_max = k_max;
    return p;
  }
};

// Appends rows to `path`, writing the header first when the file is new or empty.
class CsvSink {
 public:
  explicit CsvSink(const std::string& path) {
    if (path.empty()) return;
    const bool fresh = !std::filesystem::exists(path) || std::filesystem::file_size(path) == 0;
    file_.open(path, std::ios::app);
    if (!file_) throw InputError("cannot write '" + path + "'");
    if (fresh) file_ << csv_header() << '\n';
  }
  void write(const RunRow& row) {
    std::cout << csv_row(row) << '\n';
    if (file_.is_open()) file_ << csv_row(row) << '\n';
  }

 private:
  std::ofstream file_;
};

void write_json(const std::string& path, const Json& doc) {
  if (path.empty() || path == "-") {
    std::cout << doc.dump(2) << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << doc.dump(2) << '\n';
}

// Runs the algorithms on one instance; false if any returned set is over budget.
bool run_instance(const Instance& inst, const std::vector<std::string>& algorithms,
                  const KnapsackParams& params, bool want_opt, CsvSink& sink,
                  const std::string& json_path) {
  std::optional<double> opt;
  if (want_opt) opt = run_algorithm(inst, "brute", params).value;
  bool feasible = true;
  for (const std::string& algo : algorithms) {
    RunRow row = run_algorithm(inst, algo, params);
    if (opt) row.ratio_opt = *opt > 0.0 ? row.value / *opt : 1.0;
    sink.write(row);
    if (!within_budget(row.cost)) {
      feasible = false;
      std::cerr << "error: " << algo << " returned a set of cost " << row.cost << " on "
                << inst.name << '\n';
      if (row.knapsack) std::cerr << to_json(*row.knapsack, true).dump(2) << '\n';
    }
    if (row.knapsack && !json_path.empty()) write_json(json_path, to_json(*row.knapsack, true));
  }
  return feasible;
}

int cmd_gen(const GenParams& gp, const std::string& out) {
  Instance inst = generate(gp);
  inst.name = std::string(family_name(gp.family)) + "-n" + std::to_string(gp.n) + "-s" +
              std::to_string(gp.seed);
  if (out.empty() || out == "-") {
    std::cout << instance_to_json(inst).dump(1) << '\n';
  } else {
    save_instance(out, inst);
  }
  return kExitOk;
}

int cmd_verify(const std::string& path, const VerifyOptions& opts, const std::string& out,
               bool traces) {
  Instance inst = load_instance(path);
  VerifyReport rep = verify_instance(inst, opts);
  for (const CheckOutcome& c : rep.checks) {
    std::cerr << (c.ok ? "PASS " : "FAIL ") << c.name << " (evaluated " << c.evaluated
              << ", skipped " << c.skipped << ")";
    if (!c.ok) std::cerr << ": " << c.witness;
    std::cerr << '\n';
  }
  write_json(out, to_json(rep, traces));
  return rep.ok() ? kExitOk : kExitInvariant;
}

int cmd_scaling(const std::string& family, const std::vector<std::size_t>& ns, double eps,
                std::uint64_t seed, const std::string& out) {
  ScalingReport rep = run_scaling(parse_family(family), ns, eps, seed);
  std::ofstream file;
  if (!out.empty()) {
    file.open(out);
    if (!file) throw InputError("cannot write '" + out + "'");
  }
  auto emit = [&](const std::string& line) {
    std::cout << line << '\n';
    if (file.is_open()) file << line << '\n';
  };
  emit("n,algorithm,queries,normalized");
  for (const ScalingRow& r : rep.rows) {
    emit(std::to_string(r.n) + ',' + r.algorithm + ',' + std::to_string(r.queries) + ',' +
         std::to_string(r.normalized));
  }
  std::cerr << "lazy_greedy max/min of queries/(n ln(n/eps)): " << rep.lazy_spread << '\n'
            << "knapsack_phase max/min of queries/(n ln(n/eps)): " << rep.phase_spread << '\n'
            << "lazy_greedy queries increase with n: " << (rep.lazy_increasing ? "yes" : "no")
            << '\n';
  return kExitOk;
}

int cmd_compare(const std::string& dir, const KnapsackParams& params, const std::string& out) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw InputError("no .json instances in '" + dir + "'");
  CsvSink sink(out);
  std::cout << csv_header() << '\n';
  bool feasible = true;
  for (const auto& f : files) {
    Instance inst = load_instance(f.string());
    std::vector<std::string> algorithms = {"knapsack", "density"};
    if (inst.size() <= kSviridenkoMaxN) algorithms.push_back("sviridenko");
    const bool small = inst.size() <= kAutoOptN;
    if (small) algorithms.push_back("brute");
    feasible = run_instance(inst, algorithms, params, small, sink, {}) && feasible;
  }
  return feasible ? kExitOk : kExitInvariant;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monotone submodular maximization under a knapsack constraint"};
  app.require_subcommand(1);
  int code = kExitOk;

  GenParams gp;
  std::string family = "coverage";
  std::string gen_out;
  CLI::App* gen = app.add_subcommand("gen", "Generate a random instance file");
  gen->add_option("family", family, "coverage, facility or concave_modular")->capture_default_str();
  gen->add_option("--n", gp.n, "Number of elements")->capture_default_str();
  gen->add_option("--seed", gp.seed, "Generator seed")->capture_default_str();
  gen->add_option("--cost-max", gp.cost_max, "Costs are drawn from (0, cost-max]")->capture_default_str();
  gen->add_flag("--adversarial", gp.adversarial, "Costs track singleton values");
  gen->add_option("--noise", gp.noise, "Jitter in adversarial mode")->capture_default_str();
  gen->add_flag("--integer-weights", gp.integer_weights, "Small integer objective weights");
  gen->add_option("--universe", gp.universe, "Coverage: universe size");
  gen->add_option("--cover-size", gp.cover_size, "Coverage: items per element");
  gen->add_option("--customers", gp.customers, "Facility: customers");
  gen->add_option("--groups", gp.groups, "Concave-over-modular: groups");
  gen->add_option("--out", gen_out, "Output file (stdout by default)");

  AlgoFlags run_flags;
  std::vector<std::string> run_files;
  std::vector<std::string> run_algos = {"knapsack"};
  bool run_opt = false;
  std::string run_out;
  std::string run_json;
  CLI::App* run = app.add_subcommand("run", "Run algorithms and print CSV rows");
  run->add_option("instances", run_files, "Instance files")->required()->check(CLI::ExistingFile);
  run->add_option("--algorithm", run_algos, "knapsack, density, sviridenko, brute (repeatable)")
      ->capture_default_str();
  run->add_flag("--opt", run_opt, "Compute the exact optimum for ratio_opt (automatic up to n = 16)");
  run->add_option("--out", run_out, "Append rows to this CSV file");
  run->add_option("--json", run_json, "Write the knapsack report with traces");
  run_flags.attach(*run);

  std::string verify_file;
  VerifyOptions vopts;
  std::size_t v_trials = vopts.rounding_trials;
  std::string verify_out;
  bool verify_traces = false;
  CLI::App* verify = app.add_subcommand("verify", "Check the per-phase guarantees on a small instance");
  verify->add_option("instance", verify_file, "Instance file (n <= 16)")->required()->check(CLI::ExistingFile);
  verify->add_option("--epsilon", vopts.eps, "Accuracy parameter in (0, 1)")->capture_default_str();
  verify->add_option("--t", vopts.t, "OPT_1 iterations per phase");
  verify->add_option("--r", vopts.r, "Large-value iterations per phase");
  verify->add_option("--phases", vopts.phases, "Number of phases P");
  verify->add_option("--seed", vopts.seed, "Rounding seed")->capture_default_str();
  verify->add_option("--trials", v_trials, "Roundings for the statistics")->capture_default_str();
  verify->add_option("--k-max", vopts.k_max, "Largest fractional support")->capture_default_str();
  verify->add_option("--out", verify_out, "Report file (stdout by default)");
  verify->add_flag("--traces", verify_traces, "Include phase and analysis traces");

  std::string sc_family = "coverage";
  std::vector<std::size_t> sc_ns = {1024, 2048, 4096, 8192, 16384};
  double sc_eps = 0.1;
  std::uint64_t sc_seed = 0;
  std::string sc_out;
  CLI::App* scaling = app.add_subcommand("scaling", "Oracle queries against n ln(n/eps)");
  scaling->add_option("--family", sc_family, "Instance family")->capture_default_str();
  scaling->add_option("--n", sc_ns, "Ascending sizes, comma separated")->delimiter(',')->capture_default_str();
  scaling->add_option("--epsilon", sc_eps, "Lazy greedy accuracy")->capture_default_str();
  scaling->add_option("--seed", sc_seed, "Generator seed")->capture_default_str();
  scaling->add_option("--out", sc_out, "Also write the CSV here");

  AlgoFlags cmp_flags;
  std::string cmp_dir;
  std::string cmp_out;
  CLI::App* compare = app.add_subcommand("compare", "Run every algorithm on a directory of instances");
  compare->add_option("directory", cmp_dir, "Directory of .json instances")->required()->check(CLI::ExistingDirectory);
  compare->add_option("--out", cmp_out, "Append rows to this CSV file");
  cmp_flags.attach(*compare);

  try {
    app.parse(argc, argv);
    if (*gen) {
      gp.family = parse_family(family);
      code = cmd_gen(gp, gen_out);
    } else if (*run) {
      KnapsackParams params = run_flags.params();
      CsvSink sink(run_out);
      std::cout << csv_header() << '\n';
      bool feasible = true;
      for (const std::string& f : run_files) {
        Instance inst = load_instance(f);
        const bool want_opt = run_opt || inst.size() <= kAutoOptN;
        feasible = run_instance(inst, run_algos, params, want_opt, sink, run_json) && feasible;
      }
      code = feasible ? kExitOk : kExitInvariant;
    } else if (*verify) {
      vopts.rounding_trials = v_trials;
      code = cmd_verify(verify_file, vopts, verify_out, verify_traces);
    } else if (*scaling) {
      code = cmd_scaling(sc_family, sc_ns, sc_eps, sc_seed, sc_out);
    } else if (*compare) {
      code = cmd_compare(cmp_dir, cmp_flags.params(), cmp_out);
    }
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  } catch (const CapacityError& e) {
    std::cerr << "capacity: " << e.what() << '\n';
    return kExitCapacity;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return code;
}
