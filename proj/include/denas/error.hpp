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

#ifndef DENAS_ERROR_HPP_
#define DENAS_ERROR_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>

namespace denas {

// A caller broke a documented precondition (wrong dimension, value outside
// its domain, trace/benchmark mismatch).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// An optimizer, space, or benchmark was configured with invalid settings.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Reading a search space, tabular benchmark, or trace file failed.
class LoadError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A single run inside an experiment aborted; carries the run's seed.
class RunError : public std::runtime_error {
 public:
  RunError(std::uint64_t seed, const std::string& what)
      : std::runtime_error("run with seed " + std::to_string(seed) +
                           " failed: " + what),
        seed_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }

 private:
  std::uint64_t seed_;
};

}  // namespace denas

#endif  // DENAS_ERROR_HPP_
