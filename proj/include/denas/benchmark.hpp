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

#ifndef DENAS_BENCHMARK_HPP_
#define DENAS_BENCHMARK_HPP_

#include <optional>
#include <string>

#include "denas/search_space.hpp"

namespace denas {

// Outcome of evaluating one configuration. When valid is false the
// optimizers ignore the other fields and score the configuration as error
// 1.0 at zero cost.
struct EvaluationResult {
  bool valid = true;
  double validation_error = 1.0;
  std::optional<double> test_error;
  double cost_seconds = 0.0;

  static EvaluationResult invalid() { return EvaluationResult{false, 1.0, {}, 0.0}; }
};

// Objective, cost and feasibility of configurations in one search space.
//
// Implementations are immutable after construction; evaluate must be
// deterministic and safe to call from any number of threads. Failures other
// than an infeasible configuration are reported by throwing.
class Benchmark {
 public:
  virtual ~Benchmark() = default;

  virtual const SearchSpace& space() const = 0;
  virtual EvaluationResult evaluate(const Configuration& config) const = 0;
  // Lower bound on every valid validation error; the regret reference.
  virtual double best_validation_error() const = 0;
  virtual std::optional<double> best_test_error() const = 0;
  // Stable identifier recorded in traces, e.g. "synthetic:5x4:invalid=0:seed=0".
  virtual std::string id() const = 0;
};

}  // namespace denas

#endif  // DENAS_BENCHMARK_HPP_
