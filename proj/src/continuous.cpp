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

#include "denas/continuous.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "denas/error.hpp"

namespace denas {

namespace {

SearchSpace box_space(std::size_t dimension, double lo, double hi) {
  if (dimension == 0) {
    throw ConfigError("continuous benchmark needs dimension >= 1");
  }
  std::vector<ParameterSpec> params;
  params.reserve(dimension);
  for (std::size_t i = 0; i < dimension; ++i) {
    params.push_back(ParameterSpec::floating("x" + std::to_string(i), lo, hi));
  }
  return SearchSpace(std::move(params));
}

}  // namespace

double squash(double raw) { return raw / (1.0 + raw); }

ContinuousBenchmark::ContinuousBenchmark(ContinuousKind kind,
                                         std::size_t dimension, double lo,
                                         double hi)
    : kind_(kind), lo_(lo), hi_(hi), space_(box_space(dimension, lo, hi)) {
  if (!(lo <= 0.0 && 0.0 <= hi)) {
    throw ConfigError("continuous benchmark bounds must contain the origin");
  }
}

double ContinuousBenchmark::raw_value(const Configuration& config) const {
  if (config.values.size() != space_.dimension()) {
    throw ContractViolation("configuration has wrong dimension for " + id());
  }
  double f = 0.0;
  for (const auto& v : config.values) {
    const auto* x = std::get_if<double>(&v);
    if (!x) throw ContractViolation("continuous benchmark expects reals");
    if (kind_ == ContinuousKind::kSphere) {
      f += *x * *x;
    } else {
      f += *x * *x - 10.0 * std::cos(2.0 * std::numbers::pi * *x) + 10.0;
    }
  }
  // cos rounding can leave rastrigin a hair below zero near the origin.
  return std::max(f, 0.0);
}

EvaluationResult ContinuousBenchmark::evaluate(
    const Configuration& config) const {
  return EvaluationResult{true, squash(raw_value(config)), std::nullopt, 1.0};
}

std::string ContinuousBenchmark::id() const {
  const char* name = kind_ == ContinuousKind::kSphere ? "sphere" : "rastrigin";
  return std::string(name) + ":" + std::to_string(space_.dimension()) +
         ":lo=" + to_string(Value{lo_}) + ":hi=" + to_string(Value{hi_});
}

ContinuousBenchmark continuous_function(std::string_view name,
                                        std::size_t dimension,
                                        std::optional<FloatRange> bounds) {
  if (name == "sphere") {
    const auto b = bounds.value_or(FloatRange{-5.0, 5.0});
    return ContinuousBenchmark(ContinuousKind::kSphere, dimension, b.lo, b.hi);
  }
  if (name == "rastrigin") {
    const auto b = bounds.value_or(FloatRange{-5.12, 5.12});
    return ContinuousBenchmark(ContinuousKind::kRastrigin, dimension, b.lo,
                               b.hi);
  }
  throw ConfigError("unknown continuous function '" + std::string(name) +
                    "' (expected sphere or rastrigin)");
}

}  // namespace denas
