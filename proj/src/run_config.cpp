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

#include "sparsim/run_config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sparsim {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

// Shortest representation that parses back to the identical double.
std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& key, const std::string& v) {
  double out{};
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc{} || res.ptr != v.data() + v.size()) {
    throw std::invalid_argument("bad value for " + key);
  }
  return out;
}

long long parse_int(const std::string& key, const std::string& v) {
  long long out{};
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc{} || res.ptr != v.data() + v.size()) {
    throw std::invalid_argument("bad value for " + key);
  }
  return out;
}

std::uint64_t parse_u64(const std::string& key, const std::string& v) {
  std::uint64_t out{};
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc{} || res.ptr != v.data() + v.size()) {
    throw std::invalid_argument("bad value for " + key);
  }
  return out;
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw std::invalid_argument("bad value for " + key);
}

std::vector<StreamSegment> parse_segments(const std::string& v) {
  std::vector<StreamSegment> segments;
  if (v == "default") return segments;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) {
      throw std::invalid_argument("bad value for segments");
    }
    StreamSegment seg;
    seg.length = parse_int("segments", trim(item.substr(0, colon)));
    seg.scale = parse_double("segments", trim(item.substr(colon + 1)));
    segments.push_back(seg);
  }
  if (segments.empty()) throw std::invalid_argument("bad value for segments");
  return segments;
}

std::string format_segments(const std::vector<StreamSegment>& segments) {
  if (segments.empty()) return "default";
  std::string out;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(segments[i].length) + ':' +
           format_double(segments[i].scale);
  }
  return out;
}

}  // namespace

const char* to_string(WorkloadKind kind) {
  switch (kind) {
    case WorkloadKind::Synthetic: return "synthetic";
    case WorkloadKind::Quadratic: return "quadratic";
    case WorkloadKind::Logistic: return "logistic";
  }
  return "unknown";
}

SparsifierKind parse_sparsifier(const std::string& name) {
  if (name == "exdyna") return SparsifierKind::ExDyna;
  if (name == "topk") return SparsifierKind::TopK;
  if (name == "cltk") return SparsifierKind::CLTk;
  if (name == "hardthreshold") return SparsifierKind::HardThreshold;
  throw std::invalid_argument("unknown sparsifier: " + name);
}

namespace {

WorkloadKind parse_workload(const std::string& name) {
  if (name == "synthetic") return WorkloadKind::Synthetic;
  if (name == "quadratic") return WorkloadKind::Quadratic;
  if (name == "logistic") return WorkloadKind::Logistic;
  throw std::invalid_argument("unknown workload: " + name);
}

StreamDistribution parse_distribution(const std::string& name) {
  if (name == "laplace") return StreamDistribution::Laplace;
  if (name == "lognormal") return StreamDistribution::LogNormal;
  throw std::invalid_argument("unknown distribution: " + name);
}

void apply_key(RunSpec& spec, const std::string& key, const std::string& value) {
  if (key == "sparsifier") {
    spec.sparsifier = parse_sparsifier(value);
  } else if (key == "workers") {
    spec.cfg.n = static_cast<int>(parse_int(key, value));
  } else if (key == "gradients") {
    spec.cfg.n_g = parse_int(key, value);
  } else if (key == "blocks") {
    spec.cfg.n_b = parse_int(key, value);
  } else if (key == "density") {
    spec.cfg.d = parse_double(key, value);
  } else if (key == "iters") {
    spec.iters = parse_int(key, value);
  } else if (key == "alpha") {
    spec.cfg.alpha = parse_double(key, value);
  } else if (key == "beta") {
    spec.cfg.beta = parse_double(key, value);
  } else if (key == "gamma") {
    spec.cfg.gamma = parse_double(key, value);
  } else if (key == "blk_move") {
    spec.cfg.blk_move = parse_int(key, value);
  } else if (key == "min_blk") {
    spec.cfg.min_blk = parse_int(key, value);
  } else if (key == "delta0") {
    if (value == "auto") {
      spec.cfg.delta0.reset();
    } else {
      spec.cfg.delta0 = parse_double(key, value);
    }
  } else if (key == "fixed_delta") {
    spec.fixed_delta = parse_double(key, value);
  } else if (key == "eta") {
    spec.cfg.eta = parse_double(key, value);
  } else if (key == "seed") {
    spec.cfg.seed = parse_u64(key, value);
  } else if (key == "static_partitions") {
    spec.static_partitions = parse_bool(key, value);
  } else if (key == "max_density_cap") {
    if (value == "none") {
      spec.cfg.max_density_cap.reset();
    } else {
      spec.cfg.max_density_cap = parse_double(key, value);
    }
  } else if (key == "workload") {
    spec.workload = parse_workload(value);
  } else if (key == "distribution") {
    spec.distribution = parse_distribution(value);
  } else if (key == "segments") {
    spec.segments = parse_segments(value);
  } else if (key == "decay") {
    spec.decay = parse_double(key, value);
  } else if (key == "decay_step") {
    if (value == "none") {
      spec.decay_step.reset();
    } else {
      spec.decay_step = parse_int(key, value);
    }
  } else if (key == "decay_step_factor") {
    spec.decay_step_factor = parse_double(key, value);
  } else if (key == "dataset_size") {
    spec.dataset_size = parse_int(key, value);
  } else if (key == "batch_size") {
    spec.batch_size = parse_int(key, value);
  } else if (key == "condition") {
    spec.condition = parse_double(key, value);
  } else if (key == "label_noise") {
    spec.label_noise = parse_double(key, value);
  } else if (key == "l2_reg") {
    spec.l2_reg = parse_double(key, value);
  } else if (key == "sequential") {
    spec.sequential = parse_bool(key, value);
  } else if (key == "out") {
    spec.out = value;
  } else {
    throw std::invalid_argument("unknown config key: " + key);
  }
}

}  // namespace

void apply_config_text(RunSpec& spec, const std::string& text) {
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("malformed config line: " + line);
    }
    apply_key(spec, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

RunSpec parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  RunSpec spec;
  apply_config_text(spec, buffer.str());
  return spec;
}

RunSpec finalized(RunSpec spec) {
  if (spec.cfg.n_b == 0) spec.cfg.n_b = default_block_count(spec.cfg.n);
  if (spec.iters < 1) throw std::invalid_argument("iters out of range");
  if (spec.workload != WorkloadKind::Synthetic) {
    spec.segments.clear();  // stream knobs are inert on task runs
  } else if (spec.segments.empty()) {
    // Default stream: four equal segments with falling scales, so selection
    // skew under a static topology is visible out of the box.
    const Index quarter = spec.cfg.n_g / 4;
    if (quarter > 0) {
      spec.segments = {{quarter, 1.0},
                       {quarter, 0.5},
                       {quarter, 0.25},
                       {spec.cfg.n_g - 3 * quarter, 0.125}};
    } else {
      spec.segments = {{spec.cfg.n_g, 1.0}};
    }
  }
  spec.cfg = validate(spec.cfg);
  if (spec.workload == WorkloadKind::Synthetic) {
    validate(make_stream_spec(spec));
  }
  return spec;
}

StreamSpec make_stream_spec(const RunSpec& spec) {
  StreamSpec stream;
  stream.n_g = spec.cfg.n_g;
  stream.segments = spec.segments;
  stream.distribution = spec.distribution;
  stream.decay = spec.decay;
  stream.decay_step = spec.decay_step;
  stream.decay_step_factor = spec.decay_step_factor;
  stream.seed = spec.cfg.seed;
  return stream;
}

TaskSpec make_task_spec(const RunSpec& spec) {
  TaskSpec task;
  task.kind = spec.workload == WorkloadKind::Logistic ? TaskKind::Logistic
                                                      : TaskKind::Quadratic;
  task.dimension = spec.cfg.n_g;
  task.dataset_size = spec.dataset_size;
  task.batch_size = spec.batch_size;
  task.condition = spec.condition;
  task.label_noise = spec.label_noise;
  task.l2_reg = spec.l2_reg;
  task.seed = spec.cfg.seed;
  return task;
}

std::shared_ptr<const GradientSource> make_source(const RunSpec& spec) {
  if (spec.workload == WorkloadKind::Synthetic) {
    return std::make_shared<SyntheticStream>(make_stream_spec(spec));
  }
  return std::shared_ptr<const GradientSource>(make_task(make_task_spec(spec)));
}

std::string serialize(const RunSpec& spec) {
  std::string s;
  auto kv = [&s](const std::string& key, const std::string& value) {
    s += key + '=' + value + '\n';
  };
  kv("sparsifier", to_string(spec.sparsifier));
  kv("workers", std::to_string(spec.cfg.n));
  kv("gradients", std::to_string(spec.cfg.n_g));
  kv("blocks", std::to_string(spec.cfg.n_b));
  kv("density", format_double(spec.cfg.d));
  kv("iters", std::to_string(spec.iters));
  kv("alpha", format_double(spec.cfg.alpha));
  kv("beta", format_double(spec.cfg.beta));
  kv("gamma", format_double(spec.cfg.gamma));
  kv("blk_move", std::to_string(spec.cfg.blk_move));
  kv("min_blk", std::to_string(spec.cfg.min_blk));
  kv("delta0", spec.cfg.delta0 ? format_double(*spec.cfg.delta0) : "auto");
  kv("fixed_delta", format_double(spec.fixed_delta));
  kv("eta", format_double(spec.cfg.eta));
  kv("seed", std::to_string(spec.cfg.seed));
  kv("static_partitions", spec.static_partitions ? "true" : "false");
  kv("max_density_cap", spec.cfg.max_density_cap
                            ? format_double(*spec.cfg.max_density_cap)
                            : "none");
  kv("workload", to_string(spec.workload));
  kv("distribution", spec.distribution == StreamDistribution::Laplace
                         ? "laplace"
                         : "lognormal");
  kv("segments", format_segments(spec.segments));
  kv("decay", format_double(spec.decay));
  kv("decay_step",
     spec.decay_step ? std::to_string(*spec.decay_step) : "none");
  kv("decay_step_factor", format_double(spec.decay_step_factor));
  kv("dataset_size", std::to_string(spec.dataset_size));
  kv("batch_size", std::to_string(spec.batch_size));
  kv("condition", format_double(spec.condition));
  kv("label_noise", format_double(spec.label_noise));
  kv("l2_reg", format_double(spec.l2_reg));
  kv("sequential", spec.sequential ? "true" : "false");
  kv("out", spec.out);
  return s;
}

}  // namespace sparsim
