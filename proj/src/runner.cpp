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

#include "sparsim/runner.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace sparsim {

namespace {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

EngineOptions engine_options(const RunSpec& spec, bool verify_conservation) {
  EngineOptions opt;
  opt.sparsifier = spec.sparsifier;
  opt.static_partitions = spec.static_partitions;
  opt.fixed_delta = spec.fixed_delta;
  opt.parallel_workers = !spec.sequential;
  opt.verify_conservation = verify_conservation;
  return opt;
}

}  // namespace

RunResult execute_run(const RunSpec& raw, bool verify_conservation) {
  RunResult result;
  result.spec = finalized(raw);
  Engine engine(result.spec.cfg, engine_options(result.spec, verify_conservation),
                make_source(result.spec));
  result.records = engine.run(result.spec.iters);
  result.topology_warning = engine.topology_warning();
  return result;
}

std::string format_csv(std::span<const IterationRecord> records) {
  std::string csv = "t,k_prime,density,eps,m_t,C_t,f_t,global_err,delta,loss\n";
  for (const auto& r : records) {
    csv += std::to_string(r.t);
    csv += ',';
    csv += std::to_string(r.k_prime);
    csv += ',';
    csv += format_double(r.density);
    csv += ',';
    csv += format_double(r.eps);
    csv += ',';
    csv += std::to_string(r.m_t);
    csv += ',';
    csv += std::to_string(r.c_t);
    csv += ',';
    csv += format_double(r.f_t);
    csv += ',';
    csv += format_double(r.global_err);
    csv += ',';
    csv += format_double(r.delta);
    csv += ',';
    if (r.loss) csv += format_double(*r.loss);
    csv += '\n';
  }
  return csv;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

RunStats summarize(std::span<const IterationRecord> records) {
  RunStats s;
  s.iterations = static_cast<long long>(records.size());
  if (records.empty()) return s;
  double idle = 0.0;
  for (const auto& r : records) {
    s.mean_density += r.density;
    s.mean_f += r.f_t;
    s.mean_eps += r.eps;
    s.duplicates += r.duplicates;
    s.adjust_moves += r.adjust_moves;
    s.adjust_skips += r.adjust_skips;
    s.cap_hits += r.cap_hits;
    idle += r.idle_workers;
  }
  const auto n = static_cast<double>(records.size());
  s.mean_density /= n;
  s.mean_f /= n;
  s.mean_eps /= n;
  s.mean_idle_workers = idle / n;
  s.final_delta = records.back().delta;
  s.final_global_err = records.back().global_err;
  s.final_loss = records.back().loss;
  return s;
}

std::string format_summary(const RunResult& result) {
  const RunStats s = summarize(result.records);
  std::string text = "# run summary\n# effective config\n";
  text += serialize(result.spec);
  text += "# results\n";
  auto kv = [&text](const std::string& key, const std::string& value) {
    text += key + '=' + value + '\n';
  };
  kv("iterations", std::to_string(s.iterations));
  kv("k", std::to_string(result.spec.cfg.k));
  kv("mean_density", format_double(s.mean_density));
  kv("mean_f_t", format_double(s.mean_f));
  kv("mean_eps", format_double(s.mean_eps));
  kv("total_duplicates", std::to_string(s.duplicates));
  kv("total_adjust_moves", std::to_string(s.adjust_moves));
  kv("total_adjust_skips", std::to_string(s.adjust_skips));
  kv("total_cap_hits", std::to_string(s.cap_hits));
  kv("mean_idle_workers", format_double(s.mean_idle_workers));
  kv("final_delta", format_double(s.final_delta));
  kv("final_global_err", format_double(s.final_global_err));
  if (s.final_loss) kv("final_loss", format_double(*s.final_loss));
  if (!result.topology_warning.empty()) {
    kv("topology_warning", result.topology_warning);
  }
  return text;
}

std::string summary_path_for(const std::string& csv_path) {
  std::filesystem::path p(csv_path);
  p.replace_extension(".summary.txt");
  return p.string();
}

int run_command(const RunSpec& spec, std::ostream& console) {
  const RunResult result = execute_run(spec);
  write_file(result.spec.out, format_csv(result.records));
  const std::string summary = format_summary(result);
  write_file(summary_path_for(result.spec.out), summary);
  console << summary;
  return 0;
}

int compare_command(const RunSpec& base, const std::vector<std::string>& names,
                    std::ostream& console) {
  if (names.size() < 2) {
    throw std::invalid_argument("compare needs at least two sparsifier names");
  }
  std::vector<CompareRow> rows;
  for (const auto& name : names) {
    RunSpec spec = base;
    if (name == "exdyna-static") {
      spec.sparsifier = SparsifierKind::ExDyna;
      spec.static_partitions = true;
    } else {
      spec.sparsifier = parse_sparsifier(name);
    }
    const RunResult result = execute_run(spec);
    if (!base.out.empty()) {
      std::filesystem::path p(base.out);
      const std::string stem = p.stem().string();
      p.replace_filename(stem + "." + name + ".csv");
      write_file(p.string(), format_csv(result.records));
    }
    rows.push_back({name, summarize(result.records)});
  }

  console << "# compare (identical stream seed " << base.cfg.seed << ")\n";
  console << "sparsifier,mean_density,mean_f_t,total_duplicates\n";
  for (const auto& row : rows) {
    console << row.name << ',' << format_double(row.stats.mean_density) << ','
            << format_double(row.stats.mean_f) << ',' << row.stats.duplicates
            << '\n';
  }
  return 0;
}

}  // namespace sparsim
