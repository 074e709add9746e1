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

#include "sparsim/engine.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <thread>

#include "sparsim/baselines.hpp"
#include "sparsim/selector.hpp"
#include "sparsim/threshold.hpp"

namespace sparsim {

namespace {

// Floor for the auto-estimated threshold; keeps delta strictly positive even
// on degenerate all-zero first gradients.
constexpr double kMinDelta = 1e-300;

bool bits_equal(double a, double b) {
  return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b);
}

}  // namespace

const char* to_string(SparsifierKind kind) {
  switch (kind) {
    case SparsifierKind::ExDyna: return "exdyna";
    case SparsifierKind::TopK: return "topk";
    case SparsifierKind::CLTk: return "cltk";
    case SparsifierKind::HardThreshold: return "hardthreshold";
  }
  return "unknown";
}

Engine::Engine(SparsifierConfig cfg, EngineOptions opt,
               std::shared_ptr<const GradientSource> source)
    : cfg_(validate(std::move(cfg))), opt_(opt), src_(std::move(source)) {
  if (!src_) throw std::invalid_argument("engine: null gradient source");
  if (src_->size() != cfg_.n_g) {
    throw std::invalid_argument("engine: workload size != n_g");
  }
  if (opt_.sparsifier == SparsifierKind::HardThreshold &&
      !(opt_.fixed_delta > 0.0)) {
    throw std::invalid_argument("fixed_delta out of range");
  }

  const PartitionTopology topology = build_topology(
      cfg_.n_g, cfg_.n_b, cfg_.n, cfg_.min_blk, &topology_warning_);

  workers_.resize(cfg_.n);
  scratch_.resize(cfg_.n);
  for (int r = 0; r < cfg_.n; ++r) {
    WorkerState& w = workers_[r];
    w.rank = r;
    w.x.assign(static_cast<std::size_t>(cfg_.n_g), 0.0);
    w.e.assign(static_cast<std::size_t>(cfg_.n_g), 0.0);
    w.topology = topology;
    w.k_t.ordering = KOrdering::RankOrder;
    w.k_t.counts.assign(cfg_.n, cfg_.k / cfg_.n);
    switch (opt_.sparsifier) {
      case SparsifierKind::ExDyna:
        w.delta = cfg_.delta0.value_or(0.0);  // estimated at t=0 when unset
        break;
      case SparsifierKind::HardThreshold:
        w.delta = opt_.fixed_delta;
        break;
      default:
        w.delta = 0.0;
    }
    scratch_[r].grad.assign(static_cast<std::size_t>(cfg_.n_g), 0.0);
  }
}

void Engine::for_each_worker(const std::function<void(int)>& fn) const {
  const int n = cfg_.n;
  if (!opt_.parallel_workers || n == 1) {
    for (int r = 0; r < n; ++r) fn(r);
    return;
  }
  std::vector<std::exception_ptr> errors(n);
  std::vector<std::thread> threads;
  threads.reserve(n - 1);
  for (int r = 1; r < n; ++r) {
    threads.emplace_back([&, r] {
      try {
        fn(r);
      } catch (...) {
        errors[r] = std::current_exception();
      }
    });
  }
  try {
    fn(0);
  } catch (...) {
    errors[0] = std::current_exception();
  }
  for (auto& th : threads) th.join();
  for (int r = 0; r < n; ++r) {
    if (errors[r]) std::rethrow_exception(errors[r]);
  }
}

void Engine::accumulate_phase() {
  for_each_worker([&](int r) {
    WorkerState& w = workers_[r];
    Scratch& s = scratch_[r];
    s.adjust = AdjustStats{};

    if (opt_.sparsifier == SparsifierKind::ExDyna) {
      if (!opt_.static_partitions) {
        PartialK part = rotate_to_partition_order(w.k_t, t_, cfg_.n);
        s.adjust = adjust_topology(w.topology, part, cfg_.alpha, cfg_.blk_move,
                                   cfg_.min_blk, cfg_.n_g);
      }
      s.alloc = allocate_partition(w.topology, t_, r, cfg_.n_g);
    }

    src_->gradient(t_, r, w.x, s.grad);
    double norm2 = 0.0;
    for (std::size_t j = 0; j < w.e.size(); ++j) {
      const double prev = w.e[j];
      norm2 += prev * prev;
      w.e[j] = prev + cfg_.eta * s.grad[j];  // w.e now holds acc_{i,t}
    }
    s.entering_norm = std::sqrt(norm2);
    if (opt_.verify_conservation) s.snapshot = w.e;
  });
}

void Engine::initialize_threshold() {
  double delta0;
  if (cfg_.delta0) {
    delta0 = *cfg_.delta0;
  } else {
    // Quantile warm-start from rank 0's first accumulated vector, shared
    // with everyone so the replicas agree.
    std::vector<double> mags(workers_[0].e.size());
    for (std::size_t j = 0; j < mags.size(); ++j) {
      mags[j] = std::fabs(workers_[0].e[j]);
    }
    delta0 = std::max(initial_threshold(std::move(mags), cfg_.d), kMinDelta);
  }
  const auto copies = broadcast(delta0, cfg_.n);
  for (int r = 0; r < cfg_.n; ++r) workers_[r].delta = copies[r];
}

void Engine::select_phase() {
  const int leader = cltk_leader(t_, cfg_.n);
  std::optional<Count> cap;
  if (cfg_.max_density_cap) {
    cap = std::max<Count>(
        1, static_cast<Count>(std::llround(*cfg_.max_density_cap *
                                           static_cast<double>(cfg_.n_g) /
                                           cfg_.n)));
  }

  for_each_worker([&](int r) {
    WorkerState& w = workers_[r];
    Scratch& s = scratch_[r];
    s.batch.indices.clear();
    s.batch.values.clear();
    s.batch.padded_length = 0;
    s.capped = false;

    switch (opt_.sparsifier) {
      case SparsifierKind::ExDyna: {
        Selection sel = select_indices_capped(w.e, s.alloc.range.st,
                                              s.alloc.range.end, w.delta, cap);
        s.batch.indices = std::move(sel.indices);
        s.capped = sel.capped;
        break;
      }
      case SparsifierKind::TopK:
        s.batch.indices = topk_select(w.e, cfg_.k);
        break;
      case SparsifierKind::HardThreshold:
        s.batch.indices = hard_threshold_select(w.e, opt_.fixed_delta);
        break;
      case SparsifierKind::CLTk:
        if (r == leader) s.batch.indices = topk_select(w.e, cfg_.k);
        break;
    }
    s.batch.values.reserve(s.batch.indices.size());
    for (Index j : s.batch.indices) {
      s.batch.values.push_back(w.e[static_cast<std::size_t>(j)]);
    }
  });
}

void Engine::apply_phase(const GatherResult& gather, const std::vector<double>& g,
                         Count k_prime) {
  for_each_worker([&](int r) {
    WorkerState& w = workers_[r];
    if (opt_.sparsifier == SparsifierKind::ExDyna) {
      w.delta = scale_threshold(cfg_.k, k_prime, w.delta, cfg_.beta, cfg_.gamma);
    }
    w.k_t = gather.k_rank;
    for (std::size_t pos = 0; pos < gather.idx_global.size(); ++pos) {
      w.x[static_cast<std::size_t>(gather.idx_global[pos])] -= g[pos] / cfg_.n;
    }
    clear_selected(w.e, gather.idx_global);
  });
}

void Engine::verify_conservation(const GatherResult& gather) const {
  for_each_worker([&](int r) {
    const WorkerState& w = workers_[r];
    const Scratch& s = scratch_[r];
    const auto& idx = gather.idx_global;
    for (std::size_t pos = 0; pos < idx.size(); ++pos) {
      if (!bits_equal(s.contribution[pos],
                      s.snapshot[static_cast<std::size_t>(idx[pos])])) {
        throw EngineError("conservation violated: contribution != acc at t=" +
                          std::to_string(t_));
      }
    }
    std::size_t next = 0;
    for (std::size_t j = 0; j < w.e.size(); ++j) {
      const bool selected =
          next < idx.size() && static_cast<std::size_t>(idx[next]) == j;
      if (selected) {
        if (w.e[j] != 0.0) {
          throw EngineError("conservation violated: residual not cleared at t=" +
                            std::to_string(t_));
        }
        ++next;
      } else if (!bits_equal(w.e[j], s.snapshot[j])) {
        throw EngineError("conservation violated: unselected residual changed at t=" +
                          std::to_string(t_));
      }
    }
  });
}

void Engine::verify_replication(long long t) const {
  const WorkerState& ref = workers_[0];
  for (int r = 1; r < cfg_.n; ++r) {
    const WorkerState& w = workers_[r];
    const char* field = nullptr;
    if (!bits_equal(w.delta, ref.delta)) {
      field = "delta";
    } else if (w.k_t != ref.k_t) {
      field = "k_t";
    } else if (w.topology != ref.topology) {
      field = "topology";
    } else if (std::memcmp(w.x.data(), ref.x.data(),
                           ref.x.size() * sizeof(double)) != 0) {
      field = "x";
    }
    if (field) {
      throw EngineError("replicated state diverged at iteration " +
                        std::to_string(t) + ": rank " + std::to_string(r) +
                        " field " + field);
    }
  }
}

IterationRecord Engine::step() {
  const int n = cfg_.n;

  accumulate_phase();
  if (t_ == 0 && opt_.sparsifier == SparsifierKind::ExDyna) {
    initialize_threshold();
  }

  double delta_used = 0.0;
  if (opt_.sparsifier == SparsifierKind::ExDyna) delta_used = workers_[0].delta;
  if (opt_.sparsifier == SparsifierKind::HardThreshold) delta_used = opt_.fixed_delta;

  select_phase();

  std::vector<SparseBatch> batches(n);
  for (int r = 0; r < n; ++r) batches[r] = scratch_[r].batch;
  GatherResult gather = all_gather(batches);
  for (int r = 0; r < n; ++r) scratch_[r].batch.padded_length = gather.m_t;

  if (opt_.sparsifier == SparsifierKind::CLTk) {
    // The leader's index list reaches every rank by broadcast; the gather
    // union must be exactly that list.
    const auto copies = broadcast(scratch_[cltk_leader(t_, n)].batch.indices, n);
    for (const auto& c : copies) {
      if (c != gather.idx_global) {
        throw EngineError("cltk broadcast does not match gathered union");
      }
    }
  }
  if ((opt_.sparsifier == SparsifierKind::ExDyna ||
       opt_.sparsifier == SparsifierKind::CLTk) &&
      gather.duplicates != 0) {
    throw EngineError("duplicate selection in build-up-free sparsifier at t=" +
                      std::to_string(t_));
  }

  std::vector<std::vector<double>> contributions(n);
  for (int r = 0; r < n; ++r) {
    auto& c = contributions[r];
    c.resize(gather.idx_global.size());
    const auto& e = workers_[r].e;
    for (std::size_t pos = 0; pos < gather.idx_global.size(); ++pos) {
      c[pos] = e[static_cast<std::size_t>(gather.idx_global[pos])];
    }
    if (opt_.verify_conservation) scratch_[r].contribution = c;
  }
  const std::vector<double> g = all_reduce_sum(contributions);

  const Count k_prime = gather.k_prime();
  apply_phase(gather, g, k_prime);
  if (opt_.verify_conservation) verify_conservation(gather);
  if (opt_.verify_replication) verify_replication(t_);

  IterationRecord rec;
  rec.t = t_;
  rec.k_prime = k_prime;
  rec.density = static_cast<double>(k_prime) / static_cast<double>(cfg_.n_g);
  rec.eps = density_error(cfg_.k, k_prime, cfg_.n_g);
  rec.m_t = gather.m_t;
  rec.c_t = gather.c_t;
  rec.f_t = gather.f_t;
  double norm_sum = 0.0;
  for (int r = 0; r < n; ++r) norm_sum += scratch_[r].entering_norm;
  rec.global_err = norm_sum / n;
  rec.delta = delta_used;
  if (opt_.record_loss) rec.loss = src_->loss(workers_[0].x);
  rec.duplicates = gather.duplicates;
  rec.union_count = static_cast<Count>(gather.idx_global.size());
  rec.k_rank = gather.k_rank.counts;
  rec.adjust_moves = scratch_[0].adjust.moves;
  rec.adjust_skips = scratch_[0].adjust.skips;
  for (int r = 0; r < n; ++r) rec.cap_hits += scratch_[r].capped ? 1 : 0;
  rec.idle_workers = opt_.sparsifier == SparsifierKind::CLTk ? n - 1 : 0;

  ++t_;
  return rec;
}

std::vector<IterationRecord> Engine::run(long long iterations) {
  std::vector<IterationRecord> records;
  records.reserve(static_cast<std::size_t>(iterations));
  for (long long i = 0; i < iterations; ++i) records.push_back(step());
  return records;
}

double global_error(std::span<const WorkerState> workers) {
  double sum = 0.0;
  for (const auto& w : workers) {
    double norm2 = 0.0;
    for (double v : w.e) norm2 += v * v;
    sum += std::sqrt(norm2);
  }
  return sum / static_cast<double>(workers.size());
}

double density_error(Count k, Count k_prime, Index n_g) {
  return static_cast<double>(std::llabs(k - k_prime)) / static_cast<double>(n_g);
}

std::vector<double> scaled_error_series(std::span<const double> deltas,
                                        std::span<const double> errors) {
  if (deltas.size() != errors.size() || deltas.empty()) {
    throw std::invalid_argument("scaled_error_series: length mismatch");
  }
  double delta_sum = 0.0, err_sum = 0.0;
  for (double v : deltas) delta_sum += v;
  for (double v : errors) err_sum += v;
  if (!(err_sum > 0.0)) {
    throw std::invalid_argument("scaled_error_series: error sum not positive");
  }
  const double ratio = delta_sum / err_sum;
  std::vector<double> scaled(errors.size());
  for (std::size_t i = 0; i < errors.size(); ++i) scaled[i] = errors[i] * ratio;
  return scaled;
}

}  // namespace sparsim
