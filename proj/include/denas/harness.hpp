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

#ifndef DENAS_HARNESS_HPP_
#define DENAS_HARNESS_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "denas/baselines.hpp"
#include "denas/benchmark.hpp"
#include "denas/de.hpp"
#include "denas/trace.hpp"

namespace denas {

struct RandomSearchConfig {
  Budget budget;
};

using OptimizerSpec = std::variant<DEConfig, RandomSearchConfig, REConfig>;

// "de", "rs" or "re".
std::string optimizer_name(const OptimizerSpec& spec);
RunTrace run_optimizer(const OptimizerSpec& spec, const Benchmark& bench,
                       std::uint64_t seed);

// Runs seeds base_seed .. base_seed + n_runs - 1 on up to `jobs` threads.
// Traces come back in seed order and are checked with
// check_trace_invariants. A failed run is rethrown as RunError.
std::vector<RunTrace> run_experiment(const OptimizerSpec& spec,
                                     const Benchmark& bench,
                                     std::size_t n_runs,
                                     std::uint64_t base_seed,
                                     std::size_t jobs = 1);

// Immediate regret per event: incumbent minus the best achievable value.
// test is empty unless every event has an incumbent test error and the
// trace records a best test error.
struct RegretSeries {
  std::vector<double> times;
  std::vector<double> validation;
  std::vector<double> test;
};

// Uses the reference values recorded in the trace header.
RegretSeries regret(const RunTrace& trace);
// Throws ContractViolation if the trace was not produced against bench.
RegretSeries regret(const RunTrace& trace, const Benchmark& bench);

struct GridSpec {
  enum class Kind { kUnionOfEventTimes, kLogSpaced };
  Kind kind = Kind::kLogSpaced;
  std::size_t points = 512;
};

struct AggregateCurve {
  std::vector<double> time_grid;
  std::vector<double> mean_regret;
  std::vector<std::size_t> n_runs;
};

// Each run is a right-continuous step function of cumulative cost. A run
// contributes to a grid point only from its first event on; the mean is over
// contributing runs.
//
// The log grid spans the earliest first-event time to the latest last-event
// time. A zero lower end is kept as its own first point and the log spacing
// starts at the smallest positive event time.
AggregateCurve aggregate(std::span<const RegretSeries> runs,
                         const GridSpec& grid);
// Validation regret of traces that must share one benchmark id.
AggregateCurve aggregate(std::span<const RunTrace> traces, const GridSpec& grid);

// CSV with header "time,mean_regret,n_runs".
void write_curve_csv(std::ostream& out, const AggregateCurve& curve);

struct FinalRegretSummary {
  std::size_t runs = 0;
  double mean = 0.0;
  double stddev = 0.0;      // sample standard deviation; 0 for one run
  double mean_cost = 0.0;   // mean estimated wall-clock seconds at the end
};

std::vector<double> final_regrets(std::span<const RunTrace> traces);
FinalRegretSummary summarize(std::span<const RunTrace> traces);

// One-sided paired sign test of "a tends to be smaller than b". Ties are
// dropped; returns P(X >= #{a < b}) for X ~ Binomial(#{a != b}, 1/2).
double sign_test_p_value(std::span<const double> a, std::span<const double> b);

}  // namespace denas

#endif  // DENAS_HARNESS_HPP_
