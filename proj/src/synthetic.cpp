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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "denas/error.hpp"
#include "denas/random.hpp"
#include "denas/tabular.hpp"

namespace denas {

namespace {

constexpr double kErrorFloor = 0.05;
constexpr double kErrorSpan = 0.85;
constexpr double kInteractionWeight = 0.5;
constexpr double kTestOffset = 0.01;
constexpr double kTestNoise = 0.02;

std::string synthetic_id(const SyntheticSpec& spec, std::uint64_t seed) {
  return "synthetic:" + std::to_string(spec.num_params) + "x" +
         std::to_string(spec.choices_per_param) +
         ":invalid=" + to_string(Value{spec.invalid_fraction}) +
         ":seed=" + std::to_string(seed);
}

}  // namespace

TabularBenchmark make_synthetic(const SyntheticSpec& spec, std::uint64_t seed) {
  const std::size_t p = spec.num_params;
  const std::size_t c = spec.choices_per_param;
  if (p == 0 || c == 0) {
    throw ConfigError("synthetic benchmark needs at least one parameter and "
                      "one choice");
  }
  if (!(spec.invalid_fraction >= 0.0 && spec.invalid_fraction < 1.0)) {
    throw ConfigError("invalid_fraction must lie in [0, 1)");
  }
  const auto& cm = spec.cost_model;
  if (!(cm.lo >= 0.0) || (cm.kind == CostModel::Kind::kUniform && !(cm.hi >= cm.lo))) {
    throw ConfigError("cost model needs 0 <= lo <= hi");
  }
  // Overflow-safe count against the enumeration cap.
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < p; ++i) {
    if (total > kMaxSyntheticConfigurations / c) {
      throw ConfigError("synthetic space " + std::to_string(c) + "^" +
                        std::to_string(p) + " exceeds " +
                        std::to_string(kMaxSyntheticConfigurations) +
                        " configurations");
    }
    total *= c;
  }

  std::vector<ParameterSpec> params;
  for (std::size_t i = 0; i < p; ++i) {
    std::vector<std::string> choices;
    for (std::size_t k = 0; k < c; ++k) choices.push_back("c" + std::to_string(k));
    params.push_back(ParameterSpec::categorical("p" + std::to_string(i),
                                                std::move(choices)));
  }
  TabularBenchmark bench(SearchSpace(std::move(params)),
                         synthetic_id(spec, seed));

  Rng rng(seed ^ 0x5eed5eed5eed5eedULL);
  std::vector<double> main_effect(p * c);
  for (auto& m : main_effect) m = rng.uniform01();
  const std::size_t pairs = p - 1;
  std::vector<double> interaction(pairs * c * c);
  for (auto& w : interaction) w = rng.uniform01();

  const auto n = static_cast<std::size_t>(total);
  std::vector<double> raw(n);
  std::vector<std::size_t> digits(p);
  for (std::size_t idx = 0; idx < n; ++idx) {
    std::size_t rest = idx;
    for (std::size_t i = p; i-- > 0;) {
      digits[i] = rest % c;
      rest /= c;
    }
    double v = 0.0;
    for (std::size_t i = 0; i < p; ++i) v += main_effect[i * c + digits[i]];
    for (std::size_t i = 0; i < pairs; ++i) {
      v += kInteractionWeight * interaction[(i * c + digits[i]) * c + digits[i + 1]];
    }
    raw[idx] = v;
  }

  // Partial Fisher-Yates: the first num_invalid positions are removed.
  const auto num_invalid = static_cast<std::size_t>(
      std::floor(static_cast<double>(n) * spec.invalid_fraction));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (std::size_t i = 0; i < num_invalid; ++i) {
    std::swap(order[i], order[i + rng.uniform_index(n - i)]);
  }
  std::vector<bool> valid(n, true);
  for (std::size_t i = 0; i < num_invalid; ++i) valid[order[i]] = false;

  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t idx = 0; idx < n; ++idx) {
    if (!valid[idx]) continue;
    lo = std::min(lo, raw[idx]);
    hi = std::max(hi, raw[idx]);
  }
  const double range = hi - lo;

  for (std::size_t idx = 0; idx < n; ++idx) {
    // Draws happen for every configuration so validity does not shift the
    // stream.
    const double noise = rng.uniform01();
    const double cost_draw = rng.uniform01();
    if (!valid[idx]) continue;
    const double err =
        range > 0.0 ? kErrorFloor + kErrorSpan * (raw[idx] - lo) / range
                    : kErrorFloor;
    const double test =
        std::clamp(err + kTestOffset + kTestNoise * (noise - 0.5), 0.0, 1.0);
    const double cost = cm.kind == CostModel::Kind::kConstant
                            ? cm.lo
                            : cm.lo + (cm.hi - cm.lo) * cost_draw;
    bench.table_.emplace(idx, TabularEntry{err, test, cost});
  }
  bench.finish();
  return bench;
}

}  // namespace denas
