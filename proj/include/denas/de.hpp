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

#ifndef DENAS_DE_HPP_
#define DENAS_DE_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "denas/benchmark.hpp"
#include "denas/random.hpp"
#include "denas/search_space.hpp"
#include "denas/trace.hpp"

namespace denas {

// What happens to mutant coordinates that leave [0, 1].
enum class BoundaryHandling {
  // Redraw each violating coordinate uniformly on [0, 1).
  kResample,
  // Project each violating coordinate onto the nearest face.
  kClip,
};

std::string to_string(BoundaryHandling b);
// Accepts "resample" and "clip"; throws ConfigError otherwise.
BoundaryHandling parse_boundary_handling(std::string_view name);

// rand/1/bin differential evolution on the unit hypercube.
struct DEConfig {
  std::size_t population_size = 20;
  double scaling_factor = 0.5;
  double crossover_rate = 0.5;
  Budget budget;
  BoundaryHandling boundary = BoundaryHandling::kResample;

  // Throws ConfigError: NP >= 4, F >= 0, Cr in [0, 1], valid budget.
  void validate() const;
  nlohmann::ordered_json to_json() const;
};

struct Individual {
  Genotype genotype;
  // Validation error (1.0 if invalid); empty until evaluated.
  std::optional<double> fitness;

  bool evaluated() const noexcept { return fitness.has_value(); }
};

struct Population {
  std::vector<Individual> members;
  std::uint64_t generation = 0;

  std::size_t size() const noexcept { return members.size(); }
};

// NP unevaluated genotypes drawn uniformly from [0, 1)^D; generation 0.
Population initialize(std::size_t population_size, std::size_t dimension,
                      Rng& rng);

// base + F * (a - b), coordinatewise and unbounded.
std::vector<double> rand1_vector(const Genotype& base, const Genotype& a,
                                 const Genotype& b, double scaling_factor);

// Brings every coordinate back into [0, 1]. Draws from rng only for
// kResample, once per violating coordinate in index order.
Genotype repair_bounds(std::vector<double> values, BoundaryHandling boundary,
                       Rng& rng);

struct Mutation {
  Genotype mutant;
  // r1, r2, r3: pairwise distinct and different from the target.
  std::array<std::size_t, 3> parents;
};

Mutation mutate_rand1(const Population& pop, std::size_t target,
                      double scaling_factor, Rng& rng,
                      BoundaryHandling boundary = BoundaryHandling::kResample);

// Binomial crossover: one uniformly drawn dimension always comes from the
// mutant, every other dimension with probability Cr.
Genotype crossover_binomial(const Genotype& target, const Genotype& mutant,
                            double crossover_rate, Rng& rng);

// True if the trial replaces the target (minimization, ties to the trial).
bool select(const Individual& target, double trial_fitness);

// Called with the initial population once it is fully evaluated and with
// every subsequent generation once it is complete.
using DEObserver = std::function<void(const Population&)>;

// Synchronous generational loop: all mutations of generation g read
// generation g; winners form generation g + 1. The budget is checked before
// every evaluation, so a run can stop mid-generation.
RunTrace run_de(const Benchmark& bench, const DEConfig& cfg, std::uint64_t seed,
                const DEObserver& observer = {});

}  // namespace denas

#endif  // DENAS_DE_HPP_
