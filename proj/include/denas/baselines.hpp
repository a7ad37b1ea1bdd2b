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

#ifndef DENAS_BASELINES_HPP_
#define DENAS_BASELINES_HPP_

#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <string>
#include <string_view>

#include "denas/benchmark.hpp"
#include "denas/random.hpp"
#include "denas/search_space.hpp"
#include "denas/trace.hpp"

namespace denas {

// Uniform genotype sampling until the budget runs out.
RunTrace run_random_search(const Benchmark& bench, const Budget& budget,
                           std::uint64_t seed);

// How a regularized-evolution child is derived from its parent.
enum class REMutation {
  // Change one parameter to a different native value.
  kPhenotype,
  // Redraw one genotype coordinate; the configuration may stay the same.
  kGenotype,
};

std::string to_string(REMutation m);
// Accepts "phenotype" and "genotype"; throws ConfigError otherwise.
REMutation parse_re_mutation(std::string_view name);

// Regularized (aging) evolution.
struct REConfig {
  std::size_t population_size = 100;
  std::size_t sample_size = 10;
  Budget budget;
  REMutation mutation = REMutation::kPhenotype;

  // Throws ConfigError unless 1 <= sample_size <= population_size.
  void validate() const;
  nlohmann::ordered_json to_json() const;
};

struct REMember {
  Genotype genotype;
  double fitness;
  // eval_index of the evaluation that created this member.
  std::uint64_t birth;
};

// Draws sample_size members uniformly with replacement and returns the
// position of the fittest; ties go to the lowest position.
std::size_t tournament_select(const std::deque<REMember>& population,
                              std::size_t sample_size, Rng& rng);

// Copy of the parent with one uniformly chosen coordinate redrawn on [0, 1).
Genotype mutate_one_coordinate(const Genotype& parent, Rng& rng);

// Copy of the parent whose configuration differs in exactly one uniformly
// chosen parameter (unless that parameter has a single value). Discrete
// parameters move to a uniformly chosen other value, encoded at its bin
// centre (integers: at the exact preimage); floats are redrawn on [0, 1).
Genotype mutate_one_parameter(const Genotype& parent, const SearchSpace& space,
                              Rng& rng);

// Called after each aging step with the population after insertion and
// removal, and the member that was removed.
using REObserver =
    std::function<void(const std::deque<REMember>& population,
                       const REMember& removed)>;

// Warm-up with population_size random members, then: tournament, mutate,
// evaluate, append the child and drop the oldest member.
RunTrace run_regularized_evolution(const Benchmark& bench, const REConfig& cfg,
                                   std::uint64_t seed,
                                   const REObserver& observer = {});

}  // namespace denas

#endif  // DENAS_BASELINES_HPP_
