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

#ifndef DENAS_TRACE_HPP_
#define DENAS_TRACE_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "denas/benchmark.hpp"
#include "json.hpp"

namespace denas {

// Stopping rule for one run. Checked before every evaluation; the first
// limit reached ends the run, so a cost limit may be overshot by the last
// evaluation.
struct Budget {
  std::optional<std::uint64_t> max_evaluations;
  std::optional<double> max_cost;

  // Throws ConfigError unless at least one limit is set and all are positive.
  void validate() const;
  nlohmann::ordered_json to_json() const;
};

struct TraceEvent {
  std::uint64_t eval_index = 0;
  double cumulative_cost = 0.0;
  double objective = 1.0;
  bool valid = false;
  double incumbent_objective = 1.0;
  // eval_index of the event that produced the incumbent.
  std::uint64_t incumbent_index = 0;
  std::optional<double> incumbent_test_error;

  friend bool operator==(const TraceEvent&, const TraceEvent&) = default;
};

struct RunTrace {
  std::uint64_t seed = 0;
  std::string optimizer;
  std::string benchmark;
  double best_validation_error = 0.0;
  std::optional<double> best_test_error;
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  std::vector<TraceEvent> events;

  friend bool operator==(const RunTrace&, const RunTrace&) = default;
};

// Evaluates genotypes against a benchmark on behalf of an optimizer and
// appends one TraceEvent per evaluation.
//
// Invalid configurations are scored 1.0 at zero cost. The incumbent is the
// best valid configuration seen so far; an invalid one is only the incumbent
// until the first valid evaluation.
class TraceRecorder {
 public:
  TraceRecorder(const Benchmark& bench, const Budget& budget,
                std::uint64_t seed, std::string optimizer,
                nlohmann::ordered_json config);

  bool exhausted() const noexcept;
  // Returns the fitness (validation error, or 1.0 if invalid).
  double evaluate(const Genotype& genotype);

  std::uint64_t evaluations() const noexcept { return trace_.events.size(); }
  double cumulative_cost() const noexcept { return cost_; }
  RunTrace finish() && { return std::move(trace_); }

 private:
  const Benchmark& bench_;
  Budget budget_;
  RunTrace trace_;
  double cost_ = 0.0;
  bool incumbent_valid_ = false;
};

// Throws ContractViolation if a trace breaks the event invariants: indices
// consecutive from 0, cost non-decreasing and flat exactly on invalid events,
// incumbent non-increasing and never invalid once a valid event exists, and
// regret against the recorded best value non-negative.
void check_trace_invariants(const RunTrace& trace);

// JSON Lines: per run, a {"type": "run", ...} header followed by one
// {"type": "event", ...} line per evaluation.
void write_traces(std::ostream& out, std::span<const RunTrace> traces);
std::vector<RunTrace> read_traces(std::istream& in);
std::vector<RunTrace> load_traces(const std::string& path);

}  // namespace denas

#endif  // DENAS_TRACE_HPP_
