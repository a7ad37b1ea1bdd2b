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

#ifndef DENAS_TABULAR_HPP_
#define DENAS_TABULAR_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "denas/benchmark.hpp"

namespace denas {

struct SyntheticSpec;

struct TabularEntry {
  double validation_error;
  std::optional<double> test_error;
  double cost_seconds;

  friend bool operator==(const TabularEntry&, const TabularEntry&) = default;
};

// Lookup-table benchmark. Configurations absent from the table are invalid.
//
// Only integer, ordinal and categorical parameters are allowed: keys are the
// exact native values, and float-keyed lookup is ill-defined. Keys are
// packed into a mixed-radix index in parameter declaration order.
class TabularBenchmark final : public Benchmark {
 public:
  using Row = std::pair<Configuration, TabularEntry>;

  // Throws ConfigError naming the offending row (0-based) on a duplicate key,
  // a key outside the space, an error outside [0, 1] or a negative cost.
  static TabularBenchmark from_rows(SearchSpace space, std::string id,
                                    const std::vector<Row>& rows);

  const SearchSpace& space() const override { return space_; }
  EvaluationResult evaluate(const Configuration& config) const override;
  double best_validation_error() const override { return best_validation_; }
  std::optional<double> best_test_error() const override { return best_test_; }
  std::string id() const override { return id_; }

  // Number of listed (valid) configurations.
  std::size_t size() const noexcept { return table_.size(); }
  // Size of the full discrete space, listed or not.
  std::uint64_t num_configurations() const noexcept { return total_; }
  // Listed rows ordered by key index.
  std::vector<Row> rows() const;

  std::optional<std::uint64_t> key_index(const Configuration& config) const;
  Configuration configuration_at(std::uint64_t index) const;

 private:
  friend TabularBenchmark read_tabular(std::istream&, const std::string&);
  friend TabularBenchmark make_synthetic(const SyntheticSpec&, std::uint64_t);

  TabularBenchmark(SearchSpace space, std::string id);
  void add(const Configuration& key, const TabularEntry& entry);
  void finish();

  SearchSpace space_;
  std::string id_;
  std::vector<std::uint64_t> radix_;
  std::vector<std::unordered_map<std::string, std::uint64_t>> token_index_;
  std::uint64_t total_ = 1;
  std::unordered_map<std::uint64_t, TabularEntry> table_;
  double best_validation_ = 1.0;
  std::optional<double> best_test_;
};

// JSON Lines: a header object {"id": ..., "space": {...}} followed by one
// {"key": [...], "val_err": x, "test_err": y, "cost": c} object per line.
// "id" is optional; without it the id is "tabular:<file stem>".
TabularBenchmark load_tabular(const std::filesystem::path& path);
TabularBenchmark read_tabular(std::istream& in, const std::string& default_id);
void write_tabular(std::ostream& out, const TabularBenchmark& bench);
void write_tabular(const std::filesystem::path& path,
                   const TabularBenchmark& bench);

struct CostModel {
  enum class Kind { kConstant, kUniform };
  Kind kind = Kind::kUniform;
  double lo = 1.0;
  double hi = 10.0;
};

struct SyntheticSpec {
  std::size_t num_params = 5;
  std::size_t choices_per_param = 4;
  double invalid_fraction = 0.0;
  CostModel cost_model;
};

// Largest number of configurations make_synthetic will enumerate.
inline constexpr std::uint64_t kMaxSyntheticConfigurations = 1'000'000;

// Enumerates a categorical space of choices_per_param^num_params
// configurations. Validation error follows a seeded additive model with
// adjacent-pair interactions, rescaled to [0.05, 0.90] over the valid set;
// test error is the validation error plus a small seeded offset. Exactly
// floor(N * invalid_fraction) configurations are left out of the table.
TabularBenchmark make_synthetic(const SyntheticSpec& spec, std::uint64_t seed);

}  // namespace denas

#endif  // DENAS_TABULAR_HPP_
