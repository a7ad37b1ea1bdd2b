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

#include "denas/tabular.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <string>

#include "denas/error.hpp"
#include "json.hpp"

namespace denas {

namespace {

// Keeps the packed key well inside uint64 range.
constexpr std::uint64_t kMaxKeySpace = std::uint64_t{1} << 62;

bool in_unit_interval(double x) { return x >= 0.0 && x <= 1.0; }

nlohmann::ordered_json value_to_json(const Value& v) {
  if (const auto* i = std::get_if<std::int64_t>(&v)) return *i;
  if (const auto* s = std::get_if<std::string>(&v)) return *s;
  return std::get<double>(v);
}

Configuration key_from_json(const nlohmann::json& key,
                            const SearchSpace& space) {
  if (!key.is_array() || key.size() != space.dimension()) {
    throw ConfigError("key must be an array of " +
                      std::to_string(space.dimension()) + " values");
  }
  Configuration c;
  for (std::size_t i = 0; i < key.size(); ++i) {
    const auto& k = key[i];
    if (std::holds_alternative<IntegerRange>(space[i].kind())) {
      if (!k.is_number_integer()) {
        throw ConfigError("key component " + std::to_string(i) +
                          " must be an integer");
      }
      c.values.emplace_back(k.get<std::int64_t>());
    } else {
      if (!k.is_string()) {
        throw ConfigError("key component " + std::to_string(i) +
                          " must be a string token");
      }
      c.values.emplace_back(k.get<std::string>());
    }
  }
  return c;
}

}  // namespace

TabularBenchmark::TabularBenchmark(SearchSpace space, std::string id)
    : space_(std::move(space)), id_(std::move(id)) {
  radix_.reserve(space_.dimension());
  token_index_.resize(space_.dimension());
  for (std::size_t i = 0; i < space_.dimension(); ++i) {
    const auto& p = space_[i];
    if (p.is_float()) {
      throw ConfigError("tabular benchmarks cannot key on float parameter '" +
                        p.name() + "'");
    }
    const std::uint64_t n = p.cardinality();
    if (total_ > kMaxKeySpace / n) {
      throw ConfigError("tabular search space too large to index");
    }
    total_ *= n;
    radix_.push_back(n);
    const auto toks = p.tokens();
    for (std::size_t t = 0; t < toks.size(); ++t) token_index_[i][toks[t]] = t;
  }
}

std::optional<std::uint64_t> TabularBenchmark::key_index(
    const Configuration& config) const {
  if (config.values.size() != space_.dimension()) return std::nullopt;
  std::uint64_t index = 0;
  for (std::size_t i = 0; i < radix_.size(); ++i) {
    std::uint64_t digit = 0;
    const Value& v = config.values[i];
    if (const auto* r = std::get_if<IntegerRange>(&space_[i].kind())) {
      const auto* k = std::get_if<std::int64_t>(&v);
      if (!k || *k < r->lo || *k > r->hi) return std::nullopt;
      digit = static_cast<std::uint64_t>(*k - r->lo);
    } else {
      const auto* s = std::get_if<std::string>(&v);
      if (!s) return std::nullopt;
      const auto it = token_index_[i].find(*s);
      if (it == token_index_[i].end()) return std::nullopt;
      digit = it->second;
    }
    index = index * radix_[i] + digit;
  }
  return index;
}

Configuration TabularBenchmark::configuration_at(std::uint64_t index) const {
  if (index >= total_) {
    throw ContractViolation("configuration index out of range");
  }
  Configuration c;
  c.values.resize(radix_.size());
  for (std::size_t i = radix_.size(); i-- > 0;) {
    const std::uint64_t digit = index % radix_[i];
    index /= radix_[i];
    if (const auto* r = std::get_if<IntegerRange>(&space_[i].kind())) {
      c.values[i] = r->lo + static_cast<std::int64_t>(digit);
    } else {
      c.values[i] = std::string(space_[i].tokens()[digit]);
    }
  }
  return c;
}

void TabularBenchmark::add(const Configuration& key,
                           const TabularEntry& entry) {
  const auto index = key_index(key);
  if (!index) throw ConfigError("key is not a configuration of the space");
  if (!in_unit_interval(entry.validation_error)) {
    throw ConfigError("val_err outside [0, 1]");
  }
  if (entry.test_error && !in_unit_interval(*entry.test_error)) {
    throw ConfigError("test_err outside [0, 1]");
  }
  if (!(entry.cost_seconds >= 0.0) || !std::isfinite(entry.cost_seconds)) {
    throw ConfigError("cost must be finite and non-negative");
  }
  if (!table_.emplace(*index, entry).second) {
    throw ConfigError("duplicate configuration key");
  }
}

void TabularBenchmark::finish() {
  if (table_.empty()) {
    throw ConfigError("tabular benchmark has no valid configurations");
  }
  best_validation_ = std::numeric_limits<double>::infinity();
  best_test_.reset();
  for (const auto& [index, entry] : table_) {
    best_validation_ = std::min(best_validation_, entry.validation_error);
    if (entry.test_error) {
      best_test_ = best_test_ ? std::min(*best_test_, *entry.test_error)
                              : *entry.test_error;
    }
  }
}

TabularBenchmark TabularBenchmark::from_rows(SearchSpace space, std::string id,
                                             const std::vector<Row>& rows) {
  TabularBenchmark bench(std::move(space), std::move(id));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    try {
      bench.add(rows[r].first, rows[r].second);
    } catch (const ConfigError& e) {
      throw ConfigError("row " + std::to_string(r) + ": " + e.what());
    }
  }
  bench.finish();
  return bench;
}

EvaluationResult TabularBenchmark::evaluate(const Configuration& config) const {
  const auto index = key_index(config);
  if (!index) {
    throw ContractViolation("configuration does not belong to " + id_);
  }
  const auto it = table_.find(*index);
  if (it == table_.end()) return EvaluationResult::invalid();
  return EvaluationResult{true, it->second.validation_error,
                          it->second.test_error, it->second.cost_seconds};
}

std::vector<TabularBenchmark::Row> TabularBenchmark::rows() const {
  std::vector<std::uint64_t> keys;
  keys.reserve(table_.size());
  for (const auto& kv : table_) keys.push_back(kv.first);
  std::sort(keys.begin(), keys.end());
  std::vector<Row> out;
  out.reserve(keys.size());
  for (const auto k : keys) out.emplace_back(configuration_at(k), table_.at(k));
  return out;
}

TabularBenchmark read_tabular(std::istream& in, const std::string& default_id) {
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&line_no](const std::string& what) -> LoadError {
    return LoadError("line " + std::to_string(line_no) + ": " + what);
  };

  nlohmann::json header;
  while (header.is_null() && std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      header = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw fail(std::string("bad header: ") + e.what());
    }
  }
  if (!header.is_object() || !header.contains("space")) {
    throw fail("missing header line with a 'space' object");
  }

  std::string id = default_id;
  if (header.contains("id")) {
    if (!header["id"].is_string()) throw fail("'id' must be a string");
    id = header["id"].get<std::string>();
  }
  std::optional<TabularBenchmark> bench;
  try {
    bench.emplace(TabularBenchmark(SearchSpace::from_json(header["space"]), id));
  } catch (const std::exception& e) {
    throw fail(e.what());
  }

  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto rec = nlohmann::json::parse(line);
      if (!rec.is_object()) throw ConfigError("record must be an object");
      TabularEntry entry{rec.at("val_err").get<double>(), std::nullopt,
                         rec.at("cost").get<double>()};
      if (rec.contains("test_err") && !rec["test_err"].is_null()) {
        entry.test_error = rec["test_err"].get<double>();
      }
      bench->add(key_from_json(rec.at("key"), bench->space()), entry);
    } catch (const nlohmann::json::exception& e) {
      throw fail(e.what());
    } catch (const ConfigError& e) {
      throw fail(e.what());
    }
  }
  try {
    bench->finish();
  } catch (const ConfigError& e) {
    throw LoadError(e.what());
  }
  return std::move(*bench);
}

TabularBenchmark load_tabular(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open tabular file " + path.string());
  try {
    return read_tabular(in, "tabular:" + path.stem().string());
  } catch (const LoadError& e) {
    throw LoadError(path.string() + ": " + e.what());
  }
}

void write_tabular(std::ostream& out, const TabularBenchmark& bench) {
  nlohmann::ordered_json header;
  header["id"] = bench.id();
  header["space"] = bench.space().to_json();
  out << header.dump() << '\n';
  for (const auto& [config, entry] : bench.rows()) {
    nlohmann::ordered_json rec;
    auto& key = rec["key"] = nlohmann::ordered_json::array();
    for (const auto& v : config.values) key.push_back(value_to_json(v));
    rec["val_err"] = entry.validation_error;
    if (entry.test_error) {
      rec["test_err"] = *entry.test_error;
    } else {
      rec["test_err"] = nullptr;
    }
    rec["cost"] = entry.cost_seconds;
    out << rec.dump() << '\n';
  }
}

void write_tabular(const std::filesystem::path& path,
                   const TabularBenchmark& bench) {
  std::ofstream out(path);
  if (!out) throw LoadError("cannot write " + path.string());
  write_tabular(out, bench);
  if (!out) throw LoadError("write failed for " + path.string());
}

}  // namespace denas
