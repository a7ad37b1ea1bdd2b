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

#include "denas/baselines.hpp"

#include <utility>
#include <vector>

#include "denas/error.hpp"

namespace denas {

RunTrace run_random_search(const Benchmark& bench, const Budget& budget,
                           std::uint64_t seed) {
  budget.validate();
  Rng rng(seed);
  nlohmann::ordered_json config;
  config["budget"] = budget.to_json();
  TraceRecorder rec(bench, budget, seed, "rs", std::move(config));
  const std::size_t d = bench.space().dimension();
  while (!rec.exhausted()) rec.evaluate(random_genotype(d, rng));
  return std::move(rec).finish();
}

std::string to_string(REMutation m) {
  return m == REMutation::kGenotype ? "genotype" : "phenotype";
}

REMutation parse_re_mutation(std::string_view name) {
  if (name == "phenotype") return REMutation::kPhenotype;
  if (name == "genotype") return REMutation::kGenotype;
  throw ConfigError("RE mutation must be 'phenotype' or 'genotype', got '" +
                    std::string(name) + "'");
}

void REConfig::validate() const {
  if (population_size < 1) {
    throw ConfigError("RE population size must be at least 1");
  }
  if (sample_size < 1 || sample_size > population_size) {
    throw ConfigError("RE sample size must lie in [1, population size]");
  }
  budget.validate();
}

nlohmann::ordered_json REConfig::to_json() const {
  nlohmann::ordered_json j;
  j["population"] = population_size;
  j["sample"] = sample_size;
  j["mutation"] = to_string(mutation);
  j["budget"] = budget.to_json();
  return j;
}

std::size_t tournament_select(const std::deque<REMember>& population,
                              std::size_t sample_size, Rng& rng) {
  if (population.empty() || sample_size == 0) {
    throw ContractViolation("tournament_select: empty population or sample");
  }
  std::size_t best = rng.uniform_index(population.size());
  for (std::size_t s = 1; s < sample_size; ++s) {
    const std::size_t k = rng.uniform_index(population.size());
    const double fk = population[k].fitness;
    const double fb = population[best].fitness;
    if (fk < fb || (fk == fb && k < best)) best = k;
  }
  return best;
}

Genotype mutate_one_coordinate(const Genotype& parent, Rng& rng) {
  if (parent.size() == 0) throw ContractViolation("mutate: empty genotype");
  std::vector<double> child(parent.values().begin(), parent.values().end());
  const std::size_t d = rng.uniform_index(child.size());
  child[d] = rng.uniform01();
  return Genotype(std::move(child));
}

Genotype mutate_one_parameter(const Genotype& parent, const SearchSpace& space,
                              Rng& rng) {
  if (parent.size() != space.dimension()) {
    throw ContractViolation("mutate_one_parameter: dimension mismatch");
  }
  std::vector<double> child(parent.values().begin(), parent.values().end());
  const std::size_t d = rng.uniform_index(child.size());
  const ParameterSpec& p = space[d];
  if (p.is_float()) {
    child[d] = rng.uniform01();
    return Genotype(std::move(child));
  }
  const std::uint64_t n = p.cardinality();
  if (n < 2) return Genotype(std::move(child));

  std::uint64_t current = 0;
  if (const auto* r = std::get_if<IntegerRange>(&p.kind())) {
    const auto v = std::get<std::int64_t>(space.discretize(parent).values[d]);
    current = static_cast<std::uint64_t>(v - r->lo);
  } else {
    current = genotype_bin_index(child[d], n);
  }
  std::uint64_t next = rng.uniform_index(n - 1);
  if (next >= current) ++next;

  if (std::holds_alternative<IntegerRange>(p.kind())) {
    child[d] = static_cast<double>(next) / static_cast<double>(n - 1);
  } else {
    child[d] = (static_cast<double>(next) + 0.5) / static_cast<double>(n);
  }
  return Genotype(std::move(child));
}

RunTrace run_regularized_evolution(const Benchmark& bench, const REConfig& cfg,
                                   std::uint64_t seed,
                                   const REObserver& observer) {
  cfg.validate();
  Rng rng(seed);
  TraceRecorder rec(bench, cfg.budget, seed, "re", cfg.to_json());
  const std::size_t d = bench.space().dimension();

  std::deque<REMember> population;
  while (population.size() < cfg.population_size) {
    if (rec.exhausted()) return std::move(rec).finish();
    const std::uint64_t birth = rec.evaluations();
    Genotype g = random_genotype(d, rng);
    const double f = rec.evaluate(g);
    population.push_back(REMember{std::move(g), f, birth});
  }

  while (!rec.exhausted()) {
    const std::size_t parent = tournament_select(population, cfg.sample_size, rng);
    Genotype child =
        cfg.mutation == REMutation::kPhenotype
            ? mutate_one_parameter(population[parent].genotype, bench.space(), rng)
            : mutate_one_coordinate(population[parent].genotype, rng);
    const std::uint64_t birth = rec.evaluations();
    const double f = rec.evaluate(child);
    population.push_back(REMember{std::move(child), f, birth});
    REMember removed = std::move(population.front());
    population.pop_front();
    if (observer) observer(population, removed);
  }
  return std::move(rec).finish();
}

}  // namespace denas
