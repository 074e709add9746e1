// Copyright 2026 The sparsim Authors
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

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sparsim/runner.hpp"

namespace {

struct FlagValues {
  std::string config_path;
  std::string sparsifier;
  int workers = 0;
  long long gradients = 0;
  long long blocks = 0;
  double density = 0.0;
  long long iters = 0;
  double alpha = 0.0, beta = 0.0, gamma = 0.0;
  long long blk_move = 0, min_blk = 0;
  double delta0 = 0.0, fixed_delta = 0.0, eta = 0.0;
  std::uint64_t seed = 0;
  bool static_partitions = false;
  double max_density_cap = 0.0;
  std::string workload, distribution, segments;
  double decay = 0.0;
  long long decay_step = 0;
  double decay_step_factor = 0.0;
  long long dataset_size = 0, batch_size = 0;
  double condition = 0.0;
  bool sequential = false;
  std::string out;
};

// Registers the shared experiment flags on a subcommand. The values only
// override the config file / defaults when the flag was actually given.
void add_experiment_flags(CLI::App* cmd, FlagValues& v) {
  cmd->add_option("--config", v.config_path, "key=value config file");
  cmd->add_option("--workers", v.workers, "worker count n");
  cmd->add_option("--gradients", v.gradients, "model gradient count n_g");
  cmd->add_option("--blocks", v.blocks, "block count n_b (default 64*workers)");
  cmd->add_option("--density", v.density, "target density d in (0,1]");
  cmd->add_option("--iters", v.iters, "iterations to run");
  cmd->add_option("--alpha", v.alpha, "imbalance trigger ratio");
  cmd->add_option("--beta", v.beta, "density band ratio");
  cmd->add_option("--gamma", v.gamma, "threshold scaling step");
  cmd->add_option("--blk-move", v.blk_move, "blocks moved per adjustment");
  cmd->add_option("--min-blk", v.min_blk, "minimum blocks per partition");
  cmd->add_option("--delta0", v.delta0,
                  "initial threshold (omit for the warm-up estimate)");
  cmd->add_option("--fixed-delta", v.fixed_delta,
                  "fixed threshold for hardthreshold");
  cmd->add_option("--eta", v.eta, "learning rate");
  cmd->add_option("--seed", v.seed, "PRNG seed");
  cmd->add_flag("--static-partitions", v.static_partitions,
                "freeze the partition topology after the initial build");
  cmd->add_option("--max-density-cap", v.max_density_cap,
                  "optional per-partition density ceiling");
  cmd->add_option("--workload", v.workload, "synthetic|quadratic|logistic");
  cmd->add_option("--distribution", v.distribution, "laplace|lognormal");
  cmd->add_option("--segments", v.segments,
                  "stream segments as len:scale,len:scale,...");
  cmd->add_option("--decay", v.decay, "per-iteration stream scale factor");
  cmd->add_option("--decay-step", v.decay_step,
                  "iteration at which stream scales drop by the step factor");
  cmd->add_option("--decay-step-factor", v.decay_step_factor,
                  "one-time scale drop factor");
  cmd->add_option("--dataset-size", v.dataset_size, "task dataset rows");
  cmd->add_option("--batch-size", v.batch_size, "task minibatch size");
  cmd->add_option("--condition", v.condition, "task conditioning/skew");
  cmd->add_flag("--sequential", v.sequential, "disable worker threads");
  cmd->add_option("--out", v.out, "metrics CSV path");
}

sparsim::RunSpec build_spec(const CLI::App* cmd, const FlagValues& v) {
  sparsim::RunSpec spec;
  if (cmd->count("--config") > 0) {
    spec = sparsim::parse_config_file(v.config_path);
  }
  auto set = [cmd](const std::string& flag) { return cmd->count(flag) > 0; };
  if (set("--workers")) spec.cfg.n = v.workers;
  if (set("--gradients")) spec.cfg.n_g = v.gradients;
  if (set("--blocks")) spec.cfg.n_b = v.blocks;
  if (set("--density")) spec.cfg.d = v.density;
  if (set("--iters")) spec.iters = v.iters;
  if (set("--alpha")) spec.cfg.alpha = v.alpha;
  if (set("--beta")) spec.cfg.beta = v.beta;
  if (set("--gamma")) spec.cfg.gamma = v.gamma;
  if (set("--blk-move")) spec.cfg.blk_move = v.blk_move;
  if (set("--min-blk")) spec.cfg.min_blk = v.min_blk;
  if (set("--delta0")) spec.cfg.delta0 = v.delta0;
  if (set("--fixed-delta")) spec.fixed_delta = v.fixed_delta;
  if (set("--eta")) spec.cfg.eta = v.eta;
  if (set("--seed")) spec.cfg.seed = v.seed;
  if (set("--static-partitions")) spec.static_partitions = v.static_partitions;
  if (set("--max-density-cap")) spec.cfg.max_density_cap = v.max_density_cap;
  if (set("--workload")) {
    sparsim::RunSpec probe;
    sparsim::apply_config_text(probe, "workload=" + v.workload);
    spec.workload = probe.workload;
  }
  if (set("--distribution")) {
    sparsim::RunSpec probe;
    sparsim::apply_config_text(probe, "distribution=" + v.distribution);
    spec.distribution = probe.distribution;
  }
  if (set("--segments")) {
    sparsim::RunSpec probe;
    sparsim::apply_config_text(probe, "segments=" + v.segments);
    spec.segments = probe.segments;
  }
  if (set("--decay")) spec.decay = v.decay;
  if (set("--decay-step")) spec.decay_step = v.decay_step;
  if (set("--decay-step-factor")) spec.decay_step_factor = v.decay_step_factor;
  if (set("--dataset-size")) spec.dataset_size = v.dataset_size;
  if (set("--batch-size")) spec.batch_size = v.batch_size;
  if (set("--condition")) spec.condition = v.condition;
  if (set("--sequential")) spec.sequential = v.sequential;
  if (set("--out")) spec.out = v.out;
  return spec;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"deterministic sparsified-SGD simulator with exact traffic accounting"};
  app.require_subcommand(1);

  FlagValues run_flags, cmp_flags;
  std::string run_sparsifier;
  std::vector<std::string> compare_names;

  CLI::App* run = app.add_subcommand("run", "execute one experiment");
  run->add_option("--sparsifier", run_sparsifier,
                  "exdyna|topk|cltk|hardthreshold");
  add_experiment_flags(run, run_flags);

  CLI::App* cmp = app.add_subcommand(
      "compare", "run several sparsifiers on the identical stream");
  cmp->add_option("names", compare_names,
                  "sparsifier names (exdyna-static allowed)");
  add_experiment_flags(cmp, cmp_flags);

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      sparsim::RunSpec spec = build_spec(run, run_flags);
      if (run->count("--sparsifier") > 0) {
        spec.sparsifier = sparsim::parse_sparsifier(run_sparsifier);
      }
      return sparsim::run_command(spec, std::cout);
    }
    if (compare_names.size() < 2) {
      std::cerr << "error: compare needs at least two sparsifier names\n";
      return 1;
    }
    return sparsim::compare_command(build_spec(cmp, cmp_flags), compare_names,
                                    std::cout);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
