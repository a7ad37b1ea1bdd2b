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

#ifndef DENAS_CLI_HPP_
#define DENAS_CLI_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "denas/benchmark.hpp"
#include "denas/harness.hpp"
#include "json.hpp"

namespace denas::cli {

// Everything an experiment needs. The JSON config file uses these field
// names; explicitly given flags override it.
struct ExperimentConfig {
  std::string optimizer = "de";
  std::vector<std::string> optimizers;  // compare only
  std::size_t np = 20;
  double f = 0.5;
  double cr = 0.5;
  std::string boundary = "resample";
  std::size_t population = 100;
  std::size_t sample = 10;
  std::string re_mutation = "phenotype";
  std::string benchmark;
  std::optional<std::uint64_t> evals;
  std::optional<double> cost;
  std::size_t runs = 1;
  std::uint64_t seed = 0;
  std::string out;
  std::string out_dir;
  std::size_t jobs = 1;

  // Throws ConfigError on unknown fields or wrong types.
  static ExperimentConfig from_json(const nlohmann::json& doc);
  static ExperimentConfig load(const std::string& path);

  Budget budget() const;
  // Throws ConfigError if name is not de, rs or re.
  OptimizerSpec optimizer_spec(std::string_view name) const;
};

// Benchmark sources:
//   synthetic:PxC[:invalid=FRACTION][:seed=K]
//   sphere:D[:lo=X][:hi=Y]    rastrigin:D[:lo=X][:hi=Y]
//   tabular:PATH              (or a bare path to an existing file)
std::unique_ptr<Benchmark> make_benchmark(std::string_view source);

// Writes to path.tmp and renames over path once the content is complete.
void write_file_atomically(const std::string& path, const std::string& content);

// Entry point behind the denas binary; args[0] is the program name.
// Returns 0 on success, 1 on runtime failures, 2 on usage errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace denas::cli

#endif  // DENAS_CLI_HPP_
