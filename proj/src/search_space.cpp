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

#include "denas/search_space.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <unordered_set>
#include <utility>

#include "denas/error.hpp"
#include "denas/random.hpp"

namespace denas {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void check_tokens(const std::string& name,
                  const std::vector<std::string>& tokens) {
  if (tokens.empty()) {
    throw ConfigError("parameter '" + name + "' needs at least one token");
  }
  std::unordered_set<std::string> seen;
  for (const auto& t : tokens) {
    if (!seen.insert(t).second) {
      throw ConfigError("parameter '" + name + "' has duplicate token '" + t +
                        "'");
    }
  }
}

double map_float(double lo, double hi, double u) {
  if (u >= 1.0) return hi;
  return std::min(lo + (hi - lo) * u, hi);
}

std::int64_t map_integer(std::int64_t lo, std::int64_t hi, double u) {
  const double a = static_cast<double>(lo);
  const double b = static_cast<double>(hi);
  // std::round rounds halfway cases away from zero.
  const auto v = static_cast<std::int64_t>(std::round(a + (b - a) * u));
  return std::clamp(v, lo, hi);
}

}  // namespace

ParameterSpec::ParameterSpec(std::string name, ParameterKind kind)
    : name_(std::move(name)), kind_(std::move(kind)) {
  if (name_.empty()) throw ConfigError("parameter name must not be empty");
}

ParameterSpec ParameterSpec::floating(std::string name, double lo, double hi) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    throw ConfigError("float parameter '" + name + "' needs finite lo < hi");
  }
  return ParameterSpec(std::move(name), FloatRange{lo, hi});
}

ParameterSpec ParameterSpec::integer(std::string name, std::int64_t lo,
                                     std::int64_t hi) {
  if (!(lo < hi)) {
    throw ConfigError("integer parameter '" + name +
                      "' needs lo < hi (at least two values)");
  }
  return ParameterSpec(std::move(name), IntegerRange{lo, hi});
}

ParameterSpec ParameterSpec::ordinal(std::string name,
                                     std::vector<std::string> values) {
  check_tokens(name, values);
  return ParameterSpec(std::move(name), OrdinalValues{std::move(values)});
}

ParameterSpec ParameterSpec::categorical(std::string name,
                                         std::vector<std::string> choices) {
  check_tokens(name, choices);
  return ParameterSpec(std::move(name), CategoricalChoices{std::move(choices)});
}

std::span<const std::string> ParameterSpec::tokens() const noexcept {
  if (const auto* o = std::get_if<OrdinalValues>(&kind_)) return o->values;
  if (const auto* c = std::get_if<CategoricalChoices>(&kind_)) {
    return c->choices;
  }
  return {};
}

std::uint64_t ParameterSpec::cardinality() const noexcept {
  return std::visit(
      Overloaded{
          [](const FloatRange&) -> std::uint64_t { return 0; },
          [](const IntegerRange& r) -> std::uint64_t {
            return static_cast<std::uint64_t>(r.hi) -
                   static_cast<std::uint64_t>(r.lo) + 1;
          },
          [](const OrdinalValues& o) -> std::uint64_t {
            return o.values.size();
          },
          [](const CategoricalChoices& c) -> std::uint64_t {
            return c.choices.size();
          }},
      kind_);
}

std::string to_string(const Value& v) {
  return std::visit(Overloaded{[](double d) { return nlohmann::json(d).dump(); },
                               [](std::int64_t i) { return std::to_string(i); },
                               [](const std::string& s) { return s; }},
                    v);
}

Genotype::Genotype(std::vector<double> values) : values_(std::move(values)) {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const double u = values_[i];
    if (!(u >= 0.0 && u <= 1.0)) {
      throw ContractViolation("genotype coordinate " + std::to_string(i) +
                              " = " + to_string(Value{u}) +
                              " outside [0, 1]");
    }
  }
}

SearchSpace::SearchSpace(std::vector<ParameterSpec> params)
    : params_(std::move(params)) {
  if (params_.empty()) {
    throw ConfigError("search space needs at least one parameter");
  }
  std::unordered_set<std::string> names;
  for (const auto& p : params_) {
    if (!names.insert(p.name()).second) {
      throw ConfigError("duplicate parameter name '" + p.name() + "'");
    }
  }
}

std::size_t genotype_bin_index(double u, std::size_t n) {
  if (n == 0) throw ContractViolation("genotype_bin_index: n must be >= 1");
  if (!(u >= 0.0 && u <= 1.0)) {
    throw ContractViolation("genotype_bin_index: u outside [0, 1]");
  }
  const auto k = static_cast<std::size_t>(std::floor(u * static_cast<double>(n)));
  return std::min(k, n - 1);
}

Configuration SearchSpace::discretize(const Genotype& g) const {
  if (g.size() != params_.size()) {
    throw ContractViolation("discretize: genotype has " +
                            std::to_string(g.size()) + " values, space has " +
                            std::to_string(params_.size()) + " parameters");
  }
  Configuration out;
  out.values.reserve(params_.size());
  for (std::size_t i = 0; i < params_.size(); ++i) {
    const double u = g[i];
    out.values.push_back(std::visit(
        Overloaded{
            [u](const FloatRange& r) -> Value {
              return map_float(r.lo, r.hi, u);
            },
            [u](const IntegerRange& r) -> Value {
              return map_integer(r.lo, r.hi, u);
            },
            [u](const OrdinalValues& o) -> Value {
              return o.values[genotype_bin_index(u, o.values.size())];
            },
            [u](const CategoricalChoices& c) -> Value {
              return c.choices[genotype_bin_index(u, c.choices.size())];
            }},
        params_[i].kind()));
  }
  return out;
}

bool SearchSpace::contains(const Configuration& c) const {
  if (c.values.size() != params_.size()) return false;
  for (std::size_t i = 0; i < params_.size(); ++i) {
    const Value& v = c.values[i];
    const bool ok = std::visit(
        Overloaded{
            [&v](const FloatRange& r) {
              const auto* d = std::get_if<double>(&v);
              return d && *d >= r.lo && *d <= r.hi;
            },
            [&v](const IntegerRange& r) {
              const auto* k = std::get_if<std::int64_t>(&v);
              return k && *k >= r.lo && *k <= r.hi;
            },
            [&v, &p = params_[i]](const auto&) {
              const auto* s = std::get_if<std::string>(&v);
              if (!s) return false;
              const auto toks = p.tokens();
              return std::find(toks.begin(), toks.end(), *s) != toks.end();
            }},
        params_[i].kind());
    if (!ok) return false;
  }
  return true;
}

nlohmann::ordered_json SearchSpace::to_json() const {
  nlohmann::ordered_json params = nlohmann::ordered_json::array();
  for (const auto& p : params_) {
    nlohmann::ordered_json j;
    j["name"] = p.name();
    std::visit(Overloaded{[&j](const FloatRange& r) {
                            j["kind"] = "float";
                            j["lo"] = r.lo;
                            j["hi"] = r.hi;
                          },
                          [&j](const IntegerRange& r) {
                            j["kind"] = "integer";
                            j["lo"] = r.lo;
                            j["hi"] = r.hi;
                          },
                          [&j](const OrdinalValues& o) {
                            j["kind"] = "ordinal";
                            j["values"] = o.values;
                          },
                          [&j](const CategoricalChoices& c) {
                            j["kind"] = "categorical";
                            j["choices"] = c.choices;
                          }},
               p.kind());
    params.push_back(std::move(j));
  }
  nlohmann::ordered_json doc;
  doc["params"] = std::move(params);
  return doc;
}

SearchSpace SearchSpace::from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("params") ||
      !doc["params"].is_array()) {
    throw LoadError("search space: expected an object with a 'params' array");
  }
  std::vector<ParameterSpec> params;
  std::size_t index = 0;
  for (const auto& j : doc["params"]) {
    const std::string where = "search space param #" + std::to_string(index++);
    try {
      const auto name = j.at("name").get<std::string>();
      const auto kind = j.at("kind").get<std::string>();
      if (kind == "float") {
        params.push_back(ParameterSpec::floating(
            name, j.at("lo").get<double>(), j.at("hi").get<double>()));
      } else if (kind == "integer") {
        if (!j.at("lo").is_number_integer() ||
            !j.at("hi").is_number_integer()) {
          throw LoadError(where + ": integer bounds must be integers");
        }
        params.push_back(ParameterSpec::integer(
            name, j.at("lo").get<std::int64_t>(),
            j.at("hi").get<std::int64_t>()));
      } else if (kind == "ordinal") {
        params.push_back(ParameterSpec::ordinal(
            name, j.at("values").get<std::vector<std::string>>()));
      } else if (kind == "categorical") {
        params.push_back(ParameterSpec::categorical(
            name, j.at("choices").get<std::vector<std::string>>()));
      } else {
        throw LoadError(where + ": unknown kind '" + kind + "'");
      }
    } catch (const nlohmann::json::exception& e) {
      throw LoadError(where + ": " + e.what());
    } catch (const ConfigError& e) {
      throw LoadError(where + ": " + e.what());
    }
  }
  try {
    return SearchSpace(std::move(params));
  } catch (const ConfigError& e) {
    throw LoadError(std::string("search space: ") + e.what());
  }
}

SearchSpace load_search_space(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open search space file " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw LoadError(path.string() + ": " + e.what());
  }
  return SearchSpace::from_json(doc);
}

Genotype random_genotype(std::size_t dimension, Rng& rng) {
  std::vector<double> values(dimension);
  for (auto& v : values) v = rng.uniform01();
  return Genotype(std::move(values));
}

}  // namespace denas
