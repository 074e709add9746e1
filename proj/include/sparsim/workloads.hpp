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

#ifndef SPARSIM_WORKLOADS_HPP
#define SPARSIM_WORKLOADS_HPP

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "sparsim/types.hpp"

namespace sparsim {

// Deterministic gradient sources. Everything is a pure function of its key
// (seed, t, rank, ...) so runs reproduce bit-for-bit regardless of worker
// scheduling.

enum class StreamDistribution { Laplace, LogNormal };

struct StreamSegment {
  Index length = 0;
  double scale = 1.0;

  bool operator==(const StreamSegment&) const = default;
};

// Synthetic heavy-tailed stream. Segments model per-layer magnitude
// heterogeneity; `decay` shrinks all scales multiplicatively each iteration,
// and `decay_step` optionally drops them by `decay_step_factor` once, at the
// given iteration.
struct StreamSpec {
  Index n_g = 0;
  std::vector<StreamSegment> segments;
  StreamDistribution distribution = StreamDistribution::Laplace;
  double decay = 1.0;                      // in (0, 1]
  std::optional<long long> decay_step;
  double decay_step_factor = 0.1;
  std::uint64_t seed = 42;
};

// Throws std::invalid_argument unless segment lengths sum to n_g, all scales
// are positive and decay parameters are in range.
void validate(const StreamSpec& spec);

// Fills `out` (length n_g) with the gradient of worker `rank` at iteration
// t. Deterministic in (seed, t, rank).
void synthetic_gradient(const StreamSpec& spec, long long t, int rank,
                        std::span<double> out);

enum class TaskKind { Quadratic, Logistic };

// Small analytic optimization task standing in for a training job.
struct TaskSpec {
  TaskKind kind = TaskKind::Quadratic;
  Index dimension = 0;
  Index dataset_size = 512;    // logistic only
  Index batch_size = 32;       // logistic only
  double condition = 10.0;     // spread of curvatures / feature scales
  double label_noise = 0.0;    // logistic: fraction of flipped labels
  double l2_reg = 0.0;         // logistic: L2 penalty coefficient
  std::uint64_t seed = 42;
};

class GradientSource {
 public:
  virtual ~GradientSource() = default;
  virtual Index size() const = 0;
  // Stochastic gradient of worker `rank` at iteration t, evaluated at x.
  virtual void gradient(long long t, int rank, std::span<const double> x,
                        std::span<double> out) const = 0;
  virtual std::optional<double> loss(std::span<const double> /*x*/) const {
    return std::nullopt;
  }
};

class SyntheticStream final : public GradientSource {
 public:
  explicit SyntheticStream(StreamSpec spec);
  Index size() const override { return spec_.n_g; }
  void gradient(long long t, int rank, std::span<const double> x,
                std::span<double> out) const override;
  const StreamSpec& spec() const { return spec_; }

 private:
  StreamSpec spec_;
};

// f(x) = 1/2 * sum_j h_j (x_j - x*_j)^2 with h_j log-spaced over
// [1/condition, 1]. The gradient is the exact full-batch one; with
// condition = 1 it reduces to x - x*.
class QuadraticTask final : public GradientSource {
 public:
  explicit QuadraticTask(const TaskSpec& spec);
  Index size() const override { return static_cast<Index>(target_.size()); }
  void gradient(long long t, int rank, std::span<const double> x,
                std::span<double> out) const override;
  std::optional<double> loss(std::span<const double> x) const override;

 private:
  std::vector<double> target_;      // x*
  std::vector<double> curvature_;   // h
};

// Binary logistic regression on a deterministic synthetic dataset; each
// (t, rank) draws its own minibatch with replacement.
class LogisticTask final : public GradientSource {
 public:
  explicit LogisticTask(const TaskSpec& spec);
  Index size() const override { return dim_; }
  void gradient(long long t, int rank, std::span<const double> x,
                std::span<double> out) const override;
  std::optional<double> loss(std::span<const double> x) const override;

  // Minibatch sample rows for (t, rank); exposed for the dense-SGD oracle.
  std::vector<Index> minibatch(long long t, int rank) const;

  // Mean loss over exactly the (t, rank) minibatch; gradient(t, rank, x) is
  // its exact derivative.
  double minibatch_loss(long long t, int rank, std::span<const double> x) const;

 private:
  double margin(Index row, std::span<const double> x) const;
  double ridge(std::span<const double> x) const;

  Index dim_ = 0;
  Index rows_ = 0;
  Index batch_ = 0;
  double l2_ = 0.0;
  std::uint64_t seed_ = 0;
  std::vector<double> features_;  // row-major rows_ x dim_
  std::vector<double> labels_;    // +/-1
};

std::unique_ptr<GradientSource> make_task(const TaskSpec& spec);

}  // namespace sparsim

#endif  // SPARSIM_WORKLOADS_HPP
