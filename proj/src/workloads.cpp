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

#include "sparsim/workloads.hpp"

#include <cmath>
#include <stdexcept>

#include "sparsim/rng.hpp"

namespace sparsim {

namespace {

// Key-domain tags so different purposes never share a stream.
constexpr std::uint64_t kTagStream = 0x5354524541'4dULL;
constexpr std::uint64_t kTagTarget = 0x544152474554ULL;
constexpr std::uint64_t kTagFeatures = 0x46454154ULL;
constexpr std::uint64_t kTagWeights = 0x57454947ULL;
constexpr std::uint64_t kTagBatch = 0x4241544348ULL;
constexpr std::uint64_t kTagNoise = 0x4e4f495345ULL;

double effective_scale(const StreamSpec& spec, double base, long long t) {
  double s = base * std::pow(spec.decay, static_cast<double>(t));
  if (spec.decay_step && t >= *spec.decay_step) s *= spec.decay_step_factor;
  return s;
}

}  // namespace

void validate(const StreamSpec& spec) {
  if (spec.n_g < 1) throw std::invalid_argument("stream n_g out of range");
  if (spec.segments.empty()) throw std::invalid_argument("stream has no segments");
  Index total = 0;
  for (const auto& seg : spec.segments) {
    if (seg.length < 1) throw std::invalid_argument("segment length out of range");
    if (!(seg.scale > 0.0)) throw std::invalid_argument("segment scale out of range");
    total += seg.length;
  }
  if (total != spec.n_g) {
    throw std::invalid_argument("segment lengths do not sum to n_g");
  }
  if (!(spec.decay > 0.0) || spec.decay > 1.0) {
    throw std::invalid_argument("decay out of range");
  }
  if (!(spec.decay_step_factor > 0.0) || spec.decay_step_factor > 1.0) {
    throw std::invalid_argument("decay_step_factor out of range");
  }
}

void synthetic_gradient(const StreamSpec& spec, long long t, int rank,
                        std::span<double> out) {
  if (static_cast<Index>(out.size()) != spec.n_g) {
    throw std::invalid_argument("synthetic_gradient: output length mismatch");
  }
  std::size_t pos = 0;
  for (std::size_t si = 0; si < spec.segments.size(); ++si) {
    const auto& seg = spec.segments[si];
    const double scale = effective_scale(spec, seg.scale, t);
    rng::Stream stream(rng::derive_key({spec.seed, kTagStream,
                                        static_cast<std::uint64_t>(t),
                                        static_cast<std::uint64_t>(rank), si}));
    if (spec.distribution == StreamDistribution::Laplace) {
      for (Index j = 0; j < seg.length; ++j) {
        out[pos++] = stream.next_laplace(scale);
      }
    } else {
      for (Index j = 0; j < seg.length; ++j) {
        const double mag = scale * std::exp(stream.next_normal());
        out[pos++] = stream.next_bool() ? mag : -mag;
      }
    }
  }
}

SyntheticStream::SyntheticStream(StreamSpec spec) : spec_(std::move(spec)) {
  validate(spec_);
}

void SyntheticStream::gradient(long long t, int rank,
                               std::span<const double> /*x*/,
                               std::span<double> out) const {
  synthetic_gradient(spec_, t, rank, out);
}

QuadraticTask::QuadraticTask(const TaskSpec& spec) {
  if (spec.dimension < 1) throw std::invalid_argument("task dimension out of range");
  if (!(spec.condition >= 1.0)) throw std::invalid_argument("condition out of range");
  const auto dim = static_cast<std::size_t>(spec.dimension);
  target_.resize(dim);
  curvature_.resize(dim);
  rng::Stream stream(rng::derive_key({spec.seed, kTagTarget}));
  for (std::size_t j = 0; j < dim; ++j) target_[j] = stream.next_normal();
  for (std::size_t j = 0; j < dim; ++j) {
    const double frac = dim > 1 ? static_cast<double>(j) / (dim - 1) : 0.0;
    curvature_[j] = std::pow(spec.condition, -frac);
  }
}

void QuadraticTask::gradient(long long /*t*/, int /*rank*/,
                             std::span<const double> x,
                             std::span<double> out) const {
  if (x.size() != target_.size() || out.size() != target_.size()) {
    throw std::invalid_argument("quadratic gradient: length mismatch");
  }
  for (std::size_t j = 0; j < target_.size(); ++j) {
    out[j] = curvature_[j] * (x[j] - target_[j]);
  }
}

std::optional<double> QuadraticTask::loss(std::span<const double> x) const {
  double f = 0.0;
  for (std::size_t j = 0; j < target_.size(); ++j) {
    const double r = x[j] - target_[j];
    f += 0.5 * curvature_[j] * r * r;
  }
  return f;
}

LogisticTask::LogisticTask(const TaskSpec& spec)
    : dim_(spec.dimension),
      rows_(spec.dataset_size),
      batch_(spec.batch_size),
      l2_(spec.l2_reg),
      seed_(spec.seed) {
  if (dim_ < 1) throw std::invalid_argument("task dimension out of range");
  if (rows_ < 1) throw std::invalid_argument("dataset_size out of range");
  if (batch_ < 1 || batch_ > rows_) throw std::invalid_argument("batch_size out of range");
  if (!(spec.condition >= 1.0)) throw std::invalid_argument("condition out of range");
  if (spec.label_noise < 0.0 || spec.label_noise >= 0.5) {
    throw std::invalid_argument("label_noise out of range");
  }
  if (l2_ < 0.0) throw std::invalid_argument("l2_reg out of range");

  features_.resize(static_cast<std::size_t>(rows_ * dim_));
  labels_.resize(static_cast<std::size_t>(rows_));

  // Per-column scales fall off toward 1/condition, giving coordinates the
  // uneven gradient magnitudes the sparsifier has to cope with.
  std::vector<double> col_scale(static_cast<std::size_t>(dim_));
  for (Index j = 0; j < dim_; ++j) {
    const double frac = dim_ > 1 ? static_cast<double>(j) / (dim_ - 1) : 0.0;
    col_scale[static_cast<std::size_t>(j)] = std::pow(spec.condition, -frac);
  }

  rng::Stream feat(rng::derive_key({seed_, kTagFeatures}));
  for (Index i = 0; i < rows_; ++i) {
    for (Index j = 0; j < dim_; ++j) {
      features_[static_cast<std::size_t>(i * dim_ + j)] =
          feat.next_normal() * col_scale[static_cast<std::size_t>(j)];
    }
  }

  rng::Stream wstream(rng::derive_key({seed_, kTagWeights}));
  std::vector<double> w(static_cast<std::size_t>(dim_));
  const double wscale = 1.0 / std::sqrt(static_cast<double>(dim_));
  for (Index j = 0; j < dim_; ++j) w[static_cast<std::size_t>(j)] = wstream.next_normal() * wscale;
  for (Index i = 0; i < rows_; ++i) {
    double z = 0.0;
    for (Index j = 0; j < dim_; ++j) {
      z += features_[static_cast<std::size_t>(i * dim_ + j)] * w[static_cast<std::size_t>(j)];
    }
    labels_[static_cast<std::size_t>(i)] = z >= 0.0 ? 1.0 : -1.0;
  }

  // Flipped labels put the optimum loss at a stable nonzero floor, so two
  // trained models can be compared by loss ratio.
  if (spec.label_noise > 0.0) {
    rng::Stream noise(rng::derive_key({seed_, kTagNoise}));
    for (Index i = 0; i < rows_; ++i) {
      if (noise.next_unit() < spec.label_noise) {
        labels_[static_cast<std::size_t>(i)] = -labels_[static_cast<std::size_t>(i)];
      }
    }
  }
}

std::vector<Index> LogisticTask::minibatch(long long t, int rank) const {
  rng::Stream stream(rng::derive_key({seed_, kTagBatch,
                                      static_cast<std::uint64_t>(t),
                                      static_cast<std::uint64_t>(rank)}));
  std::vector<Index> rows(static_cast<std::size_t>(batch_));
  for (auto& r : rows) {
    r = static_cast<Index>(stream.next_u64() % static_cast<std::uint64_t>(rows_));
  }
  return rows;
}

double LogisticTask::margin(Index row, std::span<const double> x) const {
  const double* a = &features_[static_cast<std::size_t>(row * dim_)];
  double z = 0.0;
  for (Index j = 0; j < dim_; ++j) z += a[j] * x[static_cast<std::size_t>(j)];
  return labels_[static_cast<std::size_t>(row)] * z;
}

void LogisticTask::gradient(long long t, int rank, std::span<const double> x,
                            std::span<double> out) const {
  if (static_cast<Index>(x.size()) != dim_ ||
      static_cast<Index>(out.size()) != dim_) {
    throw std::invalid_argument("logistic gradient: length mismatch");
  }
  std::fill(out.begin(), out.end(), 0.0);
  const auto rows = minibatch(t, rank);
  const double inv_b = 1.0 / static_cast<double>(rows.size());
  for (Index row : rows) {
    const double m = margin(row, x);
    const double p = 1.0 / (1.0 + std::exp(m));  // sigmoid(-margin)
    const double coef = -labels_[static_cast<std::size_t>(row)] * p * inv_b;
    const double* a = &features_[static_cast<std::size_t>(row * dim_)];
    for (Index j = 0; j < dim_; ++j) out[static_cast<std::size_t>(j)] += coef * a[j];
  }
  if (l2_ > 0.0) {
    for (Index j = 0; j < dim_; ++j) out[static_cast<std::size_t>(j)] += l2_ * x[static_cast<std::size_t>(j)];
  }
}

double LogisticTask::minibatch_loss(long long t, int rank,
                                    std::span<const double> x) const {
  const auto rows = minibatch(t, rank);
  double total = 0.0;
  for (Index row : rows) {
    const double z = -margin(row, x);
    total += z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
  }
  return total / static_cast<double>(rows.size()) + ridge(x);
}

double LogisticTask::ridge(std::span<const double> x) const {
  if (l2_ <= 0.0) return 0.0;
  double norm2 = 0.0;
  for (double v : x) norm2 += v * v;
  return 0.5 * l2_ * norm2;
}

std::optional<double> LogisticTask::loss(std::span<const double> x) const {
  double total = 0.0;
  for (Index i = 0; i < rows_; ++i) {
    const double z = -margin(i, x);
    // softplus(z) = log(1 + e^z), kept stable for large |z|.
    total += z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
  }
  return total / static_cast<double>(rows_) + ridge(x);
}

std::unique_ptr<GradientSource> make_task(const TaskSpec& spec) {
  switch (spec.kind) {
    case TaskKind::Quadratic:
      return std::make_unique<QuadraticTask>(spec);
    case TaskKind::Logistic:
      return std::make_unique<LogisticTask>(spec);
  }
  throw std::invalid_argument("unknown task kind");
}

}  // namespace sparsim
