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

#include "denas/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <iomanip>
#include <limits>
#include <mutex>
#include <ostream>
#include <thread>

#include "denas/error.hpp"

namespace denas {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::vector<double> make_grid(std::span<const RegretSeries> runs,
                              const GridSpec& spec) {
  std::vector<double> grid;
  if (spec.kind == GridSpec::Kind::kUnionOfEventTimes) {
    for (const auto& r : runs) grid.insert(grid.end(), r.times.begin(), r.times.end());
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
  }

  if (spec.points == 0) throw ConfigError("log grid needs at least one point");
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  double smallest_positive = lo;
  for (const auto& r : runs) {
    lo = std::min(lo, r.times.front());
    hi = std::max(hi, r.times.back());
    for (const double t : r.times) {
      if (t > 0.0) smallest_positive = std::min(smallest_positive, t);
    }
  }
  std::size_t remaining = spec.points;
  if (lo <= 0.0) {
    grid.push_back(lo);
    --remaining;
    lo = smallest_positive;
    if (remaining == 0 || !std::isfinite(lo)) return grid;
  }
  if (remaining == 1 || lo >= hi) {
    grid.push_back(hi);
    return grid;
  }
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (std::size_t k = 0; k < remaining; ++k) {
    if (k == 0) {
      grid.push_back(lo);
    } else if (k + 1 == remaining) {
      grid.push_back(hi);
    } else {
      grid.push_back(std::exp(a + (b - a) * static_cast<double>(k) /
                                      static_cast<double>(remaining - 1)));
    }
  }
  return grid;
}

}  // namespace

std::string optimizer_name(const OptimizerSpec& spec) {
  return std::visit(Overloaded{[](const DEConfig&) { return "de"; },
                               [](const RandomSearchConfig&) { return "rs"; },
                               [](const REConfig&) { return "re"; }},
                    spec);
}

RunTrace run_optimizer(const OptimizerSpec& spec, const Benchmark& bench,
                       std::uint64_t seed) {
  return std::visit(
      Overloaded{[&](const DEConfig& c) { return run_de(bench, c, seed); },
                 [&](const RandomSearchConfig& c) {
                   return run_random_search(bench, c.budget, seed);
                 },
                 [&](const REConfig& c) {
                   return run_regularized_evolution(bench, c, seed);
                 }},
      spec);
}

std::vector<RunTrace> run_experiment(const OptimizerSpec& spec,
                                     const Benchmark& bench,
                                     std::size_t n_runs,
                                     std::uint64_t base_seed,
                                     std::size_t jobs) {
  if (n_runs == 0) throw ConfigError("n_runs must be at least 1");
  std::visit([](const auto& c) { c.budget.validate(); }, spec);
  if (const auto* de = std::get_if<DEConfig>(&spec)) de->validate();
  if (const auto* re = std::get_if<REConfig>(&spec)) re->validate();

  std::vector<RunTrace> traces(n_runs);
  std::vector<std::exception_ptr> errors(n_runs);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < n_runs; k = next++) {
      const std::uint64_t seed = base_seed + k;
      try {
        traces[k] = run_optimizer(spec, bench, seed);
        check_trace_invariants(traces[k]);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::clamp<std::size_t>(jobs, 1, n_runs);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  for (std::size_t k = 0; k < n_runs; ++k) {
    if (!errors[k]) continue;
    try {
      std::rethrow_exception(errors[k]);
    } catch (const std::exception& e) {
      throw RunError(base_seed + k, e.what());
    }
  }
  return traces;
}

RegretSeries regret(const RunTrace& trace) {
  RegretSeries r;
  r.times.reserve(trace.events.size());
  r.validation.reserve(trace.events.size());
  bool has_test = trace.best_test_error.has_value();
  for (const auto& ev : trace.events) {
    r.times.push_back(ev.cumulative_cost);
    r.validation.push_back(ev.incumbent_objective - trace.best_validation_error);
    has_test = has_test && ev.incumbent_test_error.has_value();
  }
  if (has_test) {
    r.test.reserve(trace.events.size());
    for (const auto& ev : trace.events) {
      r.test.push_back(*ev.incumbent_test_error - *trace.best_test_error);
    }
  }
  return r;
}

RegretSeries regret(const RunTrace& trace, const Benchmark& bench) {
  if (trace.benchmark != bench.id()) {
    throw ContractViolation("trace was recorded on '" + trace.benchmark +
                            "', not '" + bench.id() + "'");
  }
  RunTrace t = trace;
  t.best_validation_error = bench.best_validation_error();
  t.best_test_error = bench.best_test_error();
  return regret(t);
}

AggregateCurve aggregate(std::span<const RegretSeries> runs,
                         const GridSpec& grid) {
  if (runs.empty()) throw ContractViolation("aggregate: no runs");
  for (const auto& r : runs) {
    if (r.times.empty() || r.times.size() != r.validation.size()) {
      throw ContractViolation("aggregate: empty or malformed regret series");
    }
  }
  AggregateCurve curve;
  curve.time_grid = make_grid(runs, grid);
  curve.mean_regret.reserve(curve.time_grid.size());
  curve.n_runs.reserve(curve.time_grid.size());
  for (const double t : curve.time_grid) {
    double sum = 0.0;
    std::size_t count = 0;
    for (const auto& r : runs) {
      // Last event at or before t.
      const auto it = std::upper_bound(r.times.begin(), r.times.end(), t);
      if (it == r.times.begin()) continue;
      sum += r.validation[static_cast<std::size_t>(it - r.times.begin()) - 1];
      ++count;
    }
    curve.mean_regret.push_back(count ? sum / static_cast<double>(count)
                                      : std::numeric_limits<double>::quiet_NaN());
    curve.n_runs.push_back(count);
  }
  return curve;
}

AggregateCurve aggregate(std::span<const RunTrace> traces,
                         const GridSpec& grid) {
  if (traces.empty()) throw ContractViolation("aggregate: no traces");
  std::vector<RegretSeries> series;
  series.reserve(traces.size());
  for (const auto& t : traces) {
    if (t.benchmark != traces.front().benchmark) {
      throw ContractViolation("aggregate: traces mix benchmarks '" +
                              traces.front().benchmark + "' and '" +
                              t.benchmark + "'");
    }
    series.push_back(regret(t));
  }
  return aggregate(std::span<const RegretSeries>(series), grid);
}

void write_curve_csv(std::ostream& out, const AggregateCurve& curve) {
  const auto flags = out.flags();
  const auto precision = out.precision();
  out << "time,mean_regret,n_runs\n" << std::setprecision(12);
  for (std::size_t k = 0; k < curve.time_grid.size(); ++k) {
    out << curve.time_grid[k] << ',' << curve.mean_regret[k] << ','
        << curve.n_runs[k] << '\n';
  }
  out.flags(flags);
  out.precision(precision);
}

std::vector<double> final_regrets(std::span<const RunTrace> traces) {
  std::vector<double> out;
  out.reserve(traces.size());
  for (const auto& t : traces) {
    if (t.events.empty()) {
      throw ContractViolation("trace with seed " + std::to_string(t.seed) +
                              " has no events");
    }
    out.push_back(t.events.back().incumbent_objective - t.best_validation_error);
  }
  return out;
}

FinalRegretSummary summarize(std::span<const RunTrace> traces) {
  FinalRegretSummary s;
  const auto r = final_regrets(traces);
  s.runs = r.size();
  if (r.empty()) return s;
  for (std::size_t k = 0; k < r.size(); ++k) {
    s.mean += r[k];
    s.mean_cost += traces[k].events.back().cumulative_cost;
  }
  s.mean /= static_cast<double>(r.size());
  s.mean_cost /= static_cast<double>(r.size());
  if (r.size() > 1) {
    double ss = 0.0;
    for (const double x : r) ss += (x - s.mean) * (x - s.mean);
    s.stddev = std::sqrt(ss / static_cast<double>(r.size() - 1));
  }
  return s;
}

double sign_test_p_value(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw ContractViolation("sign test needs paired samples of equal size");
  }
  std::size_t wins = 0;
  std::size_t n = 0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] == b[k]) continue;
    ++n;
    if (a[k] < b[k]) ++wins;
  }
  if (n == 0) return 1.0;
  // Upper binomial tail, summed in log space.
  const double log_half_n = static_cast<double>(n) * std::log(0.5);
  const double log_n_fact = std::lgamma(static_cast<double>(n) + 1.0);
  double p = 0.0;
  for (std::size_t j = wins; j <= n; ++j) {
    const double log_choose = log_n_fact -
                              std::lgamma(static_cast<double>(j) + 1.0) -
                              std::lgamma(static_cast<double>(n - j) + 1.0);
    p += std::exp(log_choose + log_half_n);
  }
  return std::min(p, 1.0);
}

}  // namespace denas
