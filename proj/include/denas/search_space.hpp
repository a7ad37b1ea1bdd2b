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

#ifndef DENAS_SEARCH_SPACE_HPP_
#define DENAS_SEARCH_SPACE_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace denas {

class Rng;

struct FloatRange {
  double lo;
  double hi;

  friend bool operator==(const FloatRange&, const FloatRange&) = default;
};

struct IntegerRange {
  std::int64_t lo;
  std::int64_t hi;

  friend bool operator==(const IntegerRange&, const IntegerRange&) = default;
};

struct OrdinalValues {
  std::vector<std::string> values;

  friend bool operator==(const OrdinalValues&, const OrdinalValues&) = default;
};

struct CategoricalChoices {
  std::vector<std::string> choices;

  friend bool operator==(const CategoricalChoices&, const CategoricalChoices&) = default;
};

using ParameterKind =
    std::variant<FloatRange, IntegerRange, OrdinalValues, CategoricalChoices>;

// One tunable dimension and its native domain. Constructed only through the
// named factories, which reject empty or degenerate domains.
class ParameterSpec {
 public:
  static ParameterSpec floating(std::string name, double lo, double hi);
  static ParameterSpec integer(std::string name, std::int64_t lo,
                               std::int64_t hi);
  static ParameterSpec ordinal(std::string name,
                               std::vector<std::string> values);
  static ParameterSpec categorical(std::string name,
                                   std::vector<std::string> choices);

  const std::string& name() const noexcept { return name_; }
  const ParameterKind& kind() const noexcept { return kind_; }

  bool is_float() const noexcept {
    return std::holds_alternative<FloatRange>(kind_);
  }
  // Tokens of an ordinal or categorical parameter; empty otherwise.
  std::span<const std::string> tokens() const noexcept;
  // Number of distinct native values; 0 for float parameters.
  std::uint64_t cardinality() const noexcept;

  friend bool operator==(const ParameterSpec&, const ParameterSpec&) = default;

 private:
  ParameterSpec(std::string name, ParameterKind kind);

  std::string name_;
  ParameterKind kind_;
};

using Value = std::variant<double, std::int64_t, std::string>;

std::string to_string(const Value& v);

// A point of the unit hypercube [0, 1]^D.
class Genotype {
 public:
  Genotype() = default;
  // Throws ContractViolation if any value lies outside [0, 1] or is NaN.
  explicit Genotype(std::vector<double> values);

  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }

  friend bool operator==(const Genotype&, const Genotype&) = default;

 private:
  std::vector<double> values_;
};

// Native-domain values, one per parameter in declaration order.
struct Configuration {
  std::vector<Value> values;

  friend bool operator==(const Configuration&, const Configuration&) = default;
};

class SearchSpace {
 public:
  // Throws ConfigError on an empty parameter list or duplicate names.
  explicit SearchSpace(std::vector<ParameterSpec> params);

  std::size_t dimension() const noexcept { return params_.size(); }
  std::span<const ParameterSpec> params() const noexcept { return params_; }
  const ParameterSpec& operator[](std::size_t i) const { return params_[i]; }

  // Maps a genotype to its native-domain configuration:
  //   float [a, b]    a + (b - a) u
  //   integer [a, b]  round(a + (b - a) u), halves away from zero
  //   ordinal/categorical with n tokens: token min(floor(u n), n - 1)
  Configuration discretize(const Genotype& g) const;

  // True if every value is of the right type and inside its domain.
  bool contains(const Configuration& c) const;

  nlohmann::ordered_json to_json() const;
  static SearchSpace from_json(const nlohmann::json& doc);

  friend bool operator==(const SearchSpace&, const SearchSpace&) = default;

 private:
  std::vector<ParameterSpec> params_;
};

SearchSpace load_search_space(const std::filesystem::path& path);

// Index of the bin containing u when [0, 1] is split into n equal bins
// [k/n, (k+1)/n), the last one closed at 1.
std::size_t genotype_bin_index(double u, std::size_t n);

// D coordinates drawn independently and uniformly from [0, 1).
Genotype random_genotype(std::size_t dimension, Rng& rng);

}  // namespace denas

#endif  // DENAS_SEARCH_SPACE_HPP_
