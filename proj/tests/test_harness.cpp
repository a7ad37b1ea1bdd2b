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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "denas/continuous.hpp"
#include "denas/error.hpp"
#include "denas/harness.hpp"
#include "denas/tabular.hpp"

using namespace denas;

namespace {

TraceEvent event(std::uint64_t k, double cost, double objective, bool valid,
                 double incumbent, std::uint64_t incumbent_index) {
  return TraceEvent{k, cost, objective, valid, incumbent, incumbent_index, {}};
}

RunTrace small_trace() {
  RunTrace t;
  t.optimizer = "rs";
  t.benchmark = "toy";
  t.best_validation_error = 0.05;
  t.best_test_error = 0.06;
  t.events = {
      event(0, 0.0, 1.0, false, 1.0, 0),
      event(1, 2.0, 0.30, true, 0.30, 1),
      event(2, 5.0, 0.40, true, 0.30, 1),
      event(3, 6.0, 0.06, true, 0.06, 3),
  };
  t.events[1].incumbent_test_error = 0.32;
  t.events[2].incumbent_test_error = 0.32;
  t.events[3].incumbent_test_error = 0.07;
  t.events[0].incumbent_test_error = std::nullopt;
  return t;
}

class ThrowingBenchmark final : public Benchmark {
 public:
  ThrowingBenchmark()
      : space_({ParameterSpec::categorical("a", {"x", "y"})}) {}
  const SearchSpace& space() const override { return space_; }
  EvaluationResult evaluate(const Configuration&) const override {
    throw std::runtime_error("boom");
  }
  double best_validation_error() const override { return 0.0; }
  std::optional<double> best_test_error() const override { return {}; }
  std::string id() const override { return "throwing"; }

 private:
  SearchSpace space_;
};

// Exact binomial upper tail by summing C(n, j) / 2^n.
double binomial_upper_tail(int n, int k) {
  double total = 0.0;
  for (int j = k; j <= n; ++j) {
    double c = 1.0;
    for (int i = 0; i < j; ++i) c = c * (n - i) / (i + 1);
    total += c;
  }
  return total / std::pow(2.0, n);
}

}  // namespace

TEST_CASE("regret arithmetic") {
  auto t = small_trace();
  const auto r = regret(t);
  REQUIRE(r.validation.size() == 4);
  CHECK(r.times == std::vector<double>{0.0, 2.0, 5.0, 6.0});
  CHECK(r.validation[0] == doctest::Approx(0.95));
  CHECK(r.validation[1] == doctest::Approx(0.25));
  CHECK(r.validation[3] == doctest::Approx(0.01));
  // No test error before the first valid event, so no test series.
  CHECK(r.test.empty());

  t.events.erase(t.events.begin());
  for (std::size_t k = 0; k < t.events.size(); ++k) t.events[k].eval_index = k;
  const auto r2 = regret(t);
  REQUIRE(r2.test.size() == 3);
  CHECK(r2.test[0] == doctest::Approx(0.26));
  CHECK(r2.test[2] == doctest::Approx(0.01));

  // Incumbent equal to the best value: zero regret.
  t.events.back().incumbent_objective = 0.05;
  t.events.back().objective = 0.05;
  CHECK(regret(t).validation.back() == 0.0);

  const auto sphere = continuous_function("sphere", 2);
  CHECK_THROWS_AS(regret(t, sphere), ContractViolation);
}

TEST_CASE("check_trace_invariants catches violations") {
  CHECK_NOTHROW(check_trace_invariants(small_trace()));
  const auto broken = [](auto edit) {
    auto t = small_trace();
    edit(t);
    return t;
  };
  CHECK_THROWS_AS(check_trace_invariants(broken([](RunTrace& t) { t.events[2].eval_index = 7; })),
                  ContractViolation);
  CHECK_THROWS_AS(
      check_trace_invariants(broken([](RunTrace& t) { t.events[2].incumbent_objective = 0.35; })),
      ContractViolation);
  CHECK_THROWS_AS(
      check_trace_invariants(broken([](RunTrace& t) { t.events[0].cumulative_cost = 1.0; })),
      ContractViolation);
  CHECK_THROWS_AS(
      check_trace_invariants(broken([](RunTrace& t) { t.events[2].cumulative_cost = 1.5; })),
      ContractViolation);
  CHECK_THROWS_AS(check_trace_invariants(broken([](RunTrace& t) {
                    t.events[3].incumbent_objective = 0.01;
                    t.events[3].objective = 0.01;
                  })),
                  ContractViolation);
  CHECK_THROWS_AS(check_trace_invariants(broken([](RunTrace& t) {
                    t.events[2].valid = false;
                    t.events[2].objective = 1.0;
                    t.events[2].cumulative_cost = 2.0;
                    t.events[2].incumbent_index = 2;
                    t.events[2].incumbent_objective = 1.0;
                  })),
                  ContractViolation);
}

TEST_CASE("trace JSON Lines round trip") {
  const auto bench = make_synthetic(SyntheticSpec{3, 4, 0.3, {}}, 2);
  Budget budget;
  budget.max_evaluations = 40;
  std::vector<RunTrace> traces;
  for (std::uint64_t s = 0; s < 5; ++s) {
    traces.push_back(run_optimizer(DEConfig{.population_size = 6, .budget = budget}, bench, s));
    traces.push_back(run_optimizer(RandomSearchConfig{budget}, bench, s));
    traces.push_back(
        run_optimizer(REConfig{.population_size = 8, .sample_size = 3, .budget = budget}, bench, s));
  }
  traces.push_back(small_trace());
  std::stringstream buf;
  write_traces(buf, traces);
  const auto back = read_traces(buf);
  CHECK(back == traces);

  std::stringstream again;
  write_traces(again, back);
  CHECK(again.str() == buf.str());

  std::istringstream truncated(buf.str().substr(0, buf.str().size() / 2));
  CHECK_THROWS_AS(read_traces(truncated), LoadError);
}

TEST_CASE("run_experiment") {
  const auto bench = make_synthetic(SyntheticSpec{}, 0);
  Budget budget;
  budget.max_evaluations = 30;
  const OptimizerSpec spec = DEConfig{.population_size = 10, .budget = budget};

  const auto traces = run_experiment(spec, bench, 500, 7);
  REQUIRE(traces.size() == 500);
  for (std::size_t k = 0; k < traces.size(); ++k) {
    CHECK(traces[k].seed == 7 + k);
    CHECK(traces[k].events.size() == 30);
    CHECK(traces[k].optimizer == "de");
    CHECK(traces[k].benchmark == bench.id());
  }
  CHECK(run_experiment(spec, bench, 500, 7) == traces);
  CHECK(run_experiment(spec, bench, 500, 7, 3) == traces);
  CHECK(run_optimizer(spec, bench, 7 + 123) == traces[123]);

  const ThrowingBenchmark throwing;
  try {
    run_experiment(RandomSearchConfig{budget}, throwing, 1, 42, 2);
    FAIL("expected RunError");
  } catch (const RunError& e) {
    CHECK(e.seed() == 42);
    CHECK(std::string(e.what()).find("boom") != std::string::npos);
  }
  CHECK_THROWS_AS(run_experiment(spec, bench, 0, 0), ConfigError);
}

TEST_CASE("aggregate over runs") {
  SUBCASE("worked example") {
    const std::vector<RegretSeries> runs = {
        RegretSeries{{1.0, 3.0}, {0.4, 0.2}, {}},
        RegretSeries{{2.0}, {0.3}, {}},
    };
    const auto c = aggregate(runs, GridSpec{GridSpec::Kind::kUnionOfEventTimes, 0});
    CHECK(c.time_grid == std::vector<double>{1.0, 2.0, 3.0});
    CHECK(c.n_runs == std::vector<std::size_t>{1, 2, 2});
    CHECK(c.mean_regret[0] == doctest::Approx(0.4));
    CHECK(c.mean_regret[1] == doctest::Approx(0.35));
    CHECK(c.mean_regret[2] == doctest::Approx(0.25));
  }
  SUBCASE("identity on one run") {
    const std::vector<RegretSeries> one = {RegretSeries{{0.0, 1.5, 1.5, 4.0}, {0.9, 0.5, 0.4, 0.1}, {}}};
    const auto c = aggregate(one, GridSpec{GridSpec::Kind::kUnionOfEventTimes, 0});
    CHECK(c.time_grid == std::vector<double>{0.0, 1.5, 4.0});
    CHECK(c.mean_regret == std::vector<double>{0.9, 0.4, 0.1});
  }
  SUBCASE("constant runs") {
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> u(0.0, 10.0);
    std::vector<RegretSeries> runs;
    for (int r = 0; r < 20; ++r) {
      RegretSeries s;
      double t = u(gen);
      for (int k = 0; k < 5; ++k, t += u(gen)) {
        s.times.push_back(t);
        s.validation.push_back(0.125);
      }
      runs.push_back(s);
    }
    const auto c = aggregate(runs, GridSpec{});
    CHECK(c.time_grid.size() == 512);
    for (const double m : c.mean_regret) CHECK(m == doctest::Approx(0.125));

    auto reversed = runs;
    std::reverse(reversed.begin(), reversed.end());
    const auto c2 = aggregate(reversed, GridSpec{GridSpec::Kind::kUnionOfEventTimes, 0});
    const auto c1 = aggregate(runs, GridSpec{GridSpec::Kind::kUnionOfEventTimes, 0});
    CHECK(c1.time_grid == c2.time_grid);
    CHECK(c1.n_runs == c2.n_runs);
    for (std::size_t k = 0; k < c1.mean_regret.size(); ++k)
      CHECK(c1.mean_regret[k] == doctest::Approx(c2.mean_regret[k]));
  }
  SUBCASE("log grid endpoints and contributions") {
    const std::vector<RegretSeries> runs = {
        RegretSeries{{2.0, 50.0}, {0.5, 0.1}, {}},
        RegretSeries{{10.0, 200.0}, {0.3, 0.2}, {}},
    };
    const auto c = aggregate(runs, GridSpec{GridSpec::Kind::kLogSpaced, 512});
    REQUIRE(c.time_grid.size() == 512);
    CHECK(c.time_grid.front() == 2.0);
    CHECK(c.time_grid.back() == 200.0);
    CHECK(std::is_sorted(c.time_grid.begin(), c.time_grid.end()));
    for (std::size_t k = 0; k < c.time_grid.size(); ++k) {
      const double t = c.time_grid[k];
      CHECK(c.n_runs[k] == (t < 10.0 ? 1u : 2u));
      // Brute-force step-function oracle.
      double sum = 0.0;
      std::size_t n = 0;
      for (const auto& r : runs) {
        double v = NAN;
        for (std::size_t e = 0; e < r.times.size(); ++e)
          if (r.times[e] <= t) v = r.validation[e];
        if (!std::isnan(v)) {
          sum += v;
          ++n;
        }
      }
      CHECK(c.mean_regret[k] == doctest::Approx(sum / static_cast<double>(n)));
    }
    // Log spacing: constant ratio between neighbours.
    CHECK(c.time_grid[2] / c.time_grid[1] == doctest::Approx(c.time_grid[1] / c.time_grid[0]));
  }
  SUBCASE("zero lower end") {
    const std::vector<RegretSeries> runs = {RegretSeries{{0.0, 1.0, 100.0}, {1.0, 0.5, 0.2}, {}}};
    const auto c = aggregate(runs, GridSpec{GridSpec::Kind::kLogSpaced, 10});
    REQUIRE(c.time_grid.size() == 10);
    CHECK(c.time_grid[0] == 0.0);
    CHECK(c.time_grid[1] == 1.0);
    CHECK(c.time_grid.back() == 100.0);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(aggregate(std::vector<RegretSeries>{}, GridSpec{}), ContractViolation);
    auto a = small_trace();
    auto b = small_trace();
    b.benchmark = "other";
    CHECK_THROWS_AS(aggregate(std::vector<RunTrace>{a, b}, GridSpec{}), ContractViolation);
    CHECK_NOTHROW(aggregate(std::vector<RunTrace>{a, a}, GridSpec{}));
  }
}

TEST_CASE("curve CSV") {
  AggregateCurve c{{1.0, 2.5}, {0.25, 0.125}, {2, 3}};
  std::ostringstream out;
  write_curve_csv(out, c);
  CHECK(out.str() == "time,mean_regret,n_runs\n1,0.25,2\n2.5,0.125,3\n");
}

TEST_CASE("summaries and the sign test") {
  const std::vector<RunTrace> traces = {small_trace(), small_trace()};
  const auto f = final_regrets(traces);
  CHECK(f.size() == 2);
  CHECK(f[0] == doctest::Approx(0.01));
  const auto s = summarize(traces);
  CHECK(s.runs == 2);
  CHECK(s.mean == doctest::Approx(0.01));
  CHECK(s.stddev == 0.0);
  CHECK(s.mean_cost == 6.0);

  const std::vector<double> zeros(14, 0.0), ones(14, 1.0);
  CHECK(sign_test_p_value(zeros, ones) == doctest::Approx(std::pow(0.5, 14)));
  CHECK(sign_test_p_value(ones, zeros) == doctest::Approx(1.0));
  CHECK(sign_test_p_value(zeros, zeros) == 1.0);

  std::mt19937_64 gen(9);
  std::uniform_int_distribution<int> d(0, 3);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> a(30), b(30);
    int wins = 0, n = 0;
    for (int k = 0; k < 30; ++k) {
      a[k] = d(gen);
      b[k] = d(gen);
      if (a[k] != b[k]) ++n;
      if (a[k] < b[k]) ++wins;
    }
    CHECK(sign_test_p_value(a, b) == doctest::Approx(binomial_upper_tail(n, wins)));
  }
  CHECK_THROWS_AS(sign_test_p_value(zeros, std::vector<double>(3)), ContractViolation);
}
