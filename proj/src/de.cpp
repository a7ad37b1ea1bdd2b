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

#include "denas/de.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include "denas/error.hpp"

namespace denas {

std::string to_string(BoundaryHandling b) {
  return b == BoundaryHandling::kClip ? "clip" : "resample";
}

BoundaryHandling parse_boundary_handling(std::string_view name) {
  if (name == "resample") return BoundaryHandling::kResample;
  if (name == "clip") return BoundaryHandling::kClip;
  throw ConfigError("boundary handling must be 'resample' or 'clip', got '" +
                    std::string(name) + "'");
}

void DEConfig::validate() const {
  if (population_size < 4) {
    throw ConfigError("DE population size must be at least 4, got " +
                      std::to_string(population_size));
  }
  if (!(scaling_factor >= 0.0) || !std::isfinite(scaling_factor)) {
    throw ConfigError("DE scaling factor must be finite and >= 0");
  }
  if (!(crossover_rate >= 0.0 && crossover_rate <= 1.0)) {
    throw ConfigError("DE crossover rate must lie in [0, 1]");
  }
  budget.validate();
}

nlohmann::ordered_json DEConfig::to_json() const {
  nlohmann::ordered_json j;
  j["np"] = population_size;
  j["f"] = scaling_factor;
  j["cr"] = crossover_rate;
  j["boundary"] = to_string(boundary);
  j["budget"] = budget.to_json();
  return j;
}

Population initialize(std::size_t population_size, std::size_t dimension,
                      Rng& rng) {
  if (population_size < 4) {
    throw ConfigError("DE population size must be at least 4");
  }
  if (dimension == 0) throw ConfigError("dimension must be at least 1");
  Population pop;
  pop.members.reserve(population_size);
  for (std::size_t i = 0; i < population_size; ++i) {
    pop.members.push_back(Individual{random_genotype(dimension, rng), {}});
  }
  return pop;
}

std::vector<double> rand1_vector(const Genotype& base, const Genotype& a,
                                 const Genotype& b, double scaling_factor) {
  if (a.size() != base.size() || b.size() != base.size()) {
    throw ContractViolation("rand1_vector: dimension mismatch");
  }
  std::vector<double> v(base.size());
  for (std::size_t j = 0; j < v.size(); ++j) {
    v[j] = base[j] + scaling_factor * (a[j] - b[j]);
  }
  return v;
}

Genotype repair_bounds(std::vector<double> values, BoundaryHandling boundary,
                       Rng& rng) {
  for (double& x : values) {
    if (x >= 0.0 && x <= 1.0) continue;
    x = boundary == BoundaryHandling::kClip ? std::clamp(x, 0.0, 1.0)
                                            : rng.uniform01();
  }
  return Genotype(std::move(values));
}

Mutation mutate_rand1(const Population& pop, std::size_t target,
                      double scaling_factor, Rng& rng,
                      BoundaryHandling boundary) {
  const std::size_t np = pop.size();
  if (np < 4) throw ContractViolation("mutate_rand1 needs at least 4 members");
  if (target >= np) throw ContractViolation("mutate_rand1: bad target index");

  // Three steps of a Fisher-Yates shuffle over every index except target.
  std::vector<std::size_t> pool(np - 1);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  for (std::size_t k = target; k < pool.size(); ++k) pool[k] = k + 1;
  std::array<std::size_t, 3> r{};
  for (std::size_t k = 0; k < 3; ++k) {
    std::swap(pool[k], pool[k + rng.uniform_index(pool.size() - k)]);
    r[k] = pool[k];
  }
  return Mutation{repair_bounds(rand1_vector(pop.members[r[0]].genotype,
                                             pop.members[r[1]].genotype,
                                             pop.members[r[2]].genotype,
                                             scaling_factor),
                                boundary, rng),
                  r};
}

Genotype crossover_binomial(const Genotype& target, const Genotype& mutant,
                            double crossover_rate, Rng& rng) {
  if (target.size() != mutant.size()) {
    throw ContractViolation("crossover_binomial: dimension mismatch");
  }
  if (target.size() == 0) throw ContractViolation("crossover_binomial: D = 0");
  const std::size_t forced = rng.uniform_index(target.size());
  std::vector<double> trial(target.values().begin(), target.values().end());
  for (std::size_t j = 0; j < trial.size(); ++j) {
    if (j == forced || rng.bernoulli(crossover_rate)) trial[j] = mutant[j];
  }
  return Genotype(std::move(trial));
}

bool select(const Individual& target, double trial_fitness) {
  if (!target.evaluated()) {
    throw ContractViolation("select: target has not been evaluated");
  }
  return trial_fitness <= *target.fitness;
}

RunTrace run_de(const Benchmark& bench, const DEConfig& cfg, std::uint64_t seed,
                const DEObserver& observer) {
  cfg.validate();
  Rng rng(seed);
  TraceRecorder rec(bench, cfg.budget, seed, "de", cfg.to_json());

  Population pop = initialize(cfg.population_size, bench.space().dimension(), rng);
  for (auto& m : pop.members) {
    if (rec.exhausted()) return std::move(rec).finish();
    m.fitness = rec.evaluate(m.genotype);
  }
  if (observer) observer(pop);

  while (true) {
    Population next = pop;
    for (std::size_t i = 0; i < pop.size(); ++i) {
      if (rec.exhausted()) return std::move(rec).finish();
      const Mutation mut = mutate_rand1(pop, i, cfg.scaling_factor, rng, cfg.boundary);
      Genotype trial = crossover_binomial(pop.members[i].genotype, mut.mutant,
                                          cfg.crossover_rate, rng);
      const double f = rec.evaluate(trial);
      if (select(pop.members[i], f)) {
        next.members[i] = Individual{std::move(trial), f};
      }
    }
    next.generation = pop.generation + 1;
    pop = std::move(next);
    if (observer) observer(pop);
  }
}

}  // namespace denas
