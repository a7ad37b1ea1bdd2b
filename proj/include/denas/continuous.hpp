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

#ifndef DENAS_CONTINUOUS_HPP_
#define DENAS_CONTINUOUS_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "denas/benchmark.hpp"

namespace denas {

enum class ContinuousKind { kSphere, kRastrigin };

// Classic test functions over D float parameters sharing one box. The raw
// value f >= 0 is squashed to f / (1 + f) so it lies in [0, 1); both
// functions have their minimum f = 0 at the origin, which the box must
// contain. Every evaluation costs one second.
class ContinuousBenchmark final : public Benchmark {
 public:
  ContinuousBenchmark(ContinuousKind kind, std::size_t dimension, double lo,
                      double hi);

  const SearchSpace& space() const override { return space_; }
  EvaluationResult evaluate(const Configuration& config) const override;
  double best_validation_error() const override { return 0.0; }
  std::optional<double> best_test_error() const override { return std::nullopt; }
  std::string id() const override;

  double raw_value(const Configuration& config) const;
  ContinuousKind kind() const noexcept { return kind_; }

 private:
  ContinuousKind kind_;
  double lo_;
  double hi_;
  SearchSpace space_;
};

double squash(double raw);

// name is "sphere" or "rastrigin"; default bounds are [-5, 5] and
// [-5.12, 5.12]. Throws ConfigError on an unknown name.
ContinuousBenchmark continuous_function(std::string_view name,
                                        std::size_t dimension,
                                        std::optional<FloatRange> bounds = {});

}  // namespace denas

#endif  // DENAS_CONTINUOUS_HPP_
