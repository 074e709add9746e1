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

#ifndef SPARSIM_RUNNER_HPP
#define SPARSIM_RUNNER_HPP

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "sparsim/run_config.hpp"

namespace sparsim {

struct RunResult {
  RunSpec spec;  // finalized
  std::vector<IterationRecord> records;
  std::string topology_warning;
};

// Executes one experiment end to end, deterministically for a fixed seed.
RunResult execute_run(const RunSpec& spec, bool verify_conservation = false);

// CSV schema (fixed): t,k_prime,density,eps,m_t,C_t,f_t,global_err,delta,loss
// Comma separated, header row, decimal floats, newline-terminated rows. The
// loss cell is empty on non-task runs.
std::string format_csv(std::span<const IterationRecord> records);
void write_file(const std::string& path, const std::string& content);

// Aggregate stats over one run.
struct RunStats {
  long long iterations = 0;
  double mean_density = 0.0;
  double mean_f = 0.0;
  double mean_eps = 0.0;
  Count duplicates = 0;
  long long adjust_moves = 0;
  long long adjust_skips = 0;
  long long cap_hits = 0;
  double mean_idle_workers = 0.0;
  double final_delta = 0.0;
  double final_global_err = 0.0;
  std::optional<double> final_loss;
};

RunStats summarize(std::span<const IterationRecord> records);
std::string format_summary(const RunResult& result);
std::string summary_path_for(const std::string& csv_path);

// `run` subcommand: writes the CSV and the run summary, echoes the summary
// to `console`. Returns a process exit status.
int run_command(const RunSpec& spec, std::ostream& console);

struct CompareRow {
  std::string name;
  RunStats stats;
};

// `compare` subcommand: executes every named sparsifier on the identical
// stream seed. "exdyna-static" runs ExDyna with the topology frozen after
// the initial build. With a non-empty out path each run's CSV lands next to
// it as <stem>.<name>.csv.
int compare_command(const RunSpec& base, const std::vector<std::string>& names,
                    std::ostream& console);

}  // namespace sparsim

#endif  // SPARSIM_RUNNER_HPP
