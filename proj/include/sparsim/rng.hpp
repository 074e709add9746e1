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

#ifndef SPARSIM_RNG_HPP
#define SPARSIM_RNG_HPP

#include <cmath>
#include <cstdint>
#include <initializer_list>

// Counter-based splittable generator built on the splitmix64 finalizer.
// Streams are keyed by (seed, t, rank, segment); the same key always yields
// the same sequence, independent of evaluation order across workers.

namespace sparsim::rng {

inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Order-sensitive key derivation: each word is absorbed through the
// bijective mixer, so (a, b) and (b, a) land on unrelated streams.
inline std::uint64_t derive_key(std::initializer_list<std::uint64_t> words) {
  std::uint64_t h = 0x6a09e667f3bcc909ULL;
  for (std::uint64_t w : words) h = mix64(h ^ w);
  return h;
}

class Stream {
 public:
  explicit Stream(std::uint64_t key) : state_(key) {}

  std::uint64_t next_u64() { return mix64(state_ += 0x9e3779b97f4a7c15ULL); }

  // Uniform on the open interval (0, 1).
  double next_unit() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Laplace(0, scale) via inverse CDF.
  double next_laplace(double scale) {
    const double u = next_unit() - 0.5;
    const double mag = -scale * std::log1p(-2.0 * std::fabs(u));
    return u < 0.0 ? -mag : mag;
  }

  // Standard normal via Box-Muller (one draw per call).
  double next_normal() {
    const double u1 = next_unit();
    const double u2 = next_unit();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(6.283185307179586477 * u2);
  }

  bool next_bool() { return (next_u64() & 1ULL) != 0; }

 private:
  std::uint64_t state_;
};

}  // namespace sparsim::rng

#endif  // SPARSIM_RNG_HPP
