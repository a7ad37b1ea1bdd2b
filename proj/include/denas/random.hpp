// Copyright 2026 The denas Authors.
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

#ifndef DENAS_RANDOM_HPP_
#define DENAS_RANDOM_HPP_

#include <cstddef>
#include <cstdint>
#include <random>

namespace denas {

// Seeded random source shared by every optimizer.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the
// standard. The distributions are implemented here rather than taken from
// <random> because the standard distributions are implementation-defined,
// and traces must be bit-identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  // Uniform on [0, 1) with 53 bits of resolution.
  double uniform01();

  // Uniform on {0, ..., n - 1}; n must be positive. Unbiased (rejection).
  std::size_t uniform_index(std::size_t n);

  // True with probability p.
  bool bernoulli(double p) { return uniform01() < p; }

  std::uint64_t next_u64() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

// Stateless 64-bit mixer; used to derive well-separated engine seeds from
// consecutive run seeds.
std::uint64_t splitmix64(std::uint64_t x);

}  // namespace denas

#endif  // DENAS_RANDOM_HPP_
