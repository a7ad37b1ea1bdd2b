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

#include <sstream>

#include "denas/cli.hpp"
#include "denas/error.hpp"
#include "denas/harness.hpp"
#include "test_util.hpp"

using namespace denas;
using denas::testing::read_file;
using denas::testing::temp_dir;
using denas::testing::write_file;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "denas");
  std::ostringstream out, err;
  const int code = cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string line_value(const std::string& out, const std::string& key) {
  const auto at = out.find(key + ": ");
  if (at == std::string::npos) return {};
  const auto start = at + key.size() + 2;
  return out.substr(start, out.find('\n', start) - start);
}

}  // namespace

TEST_CASE("run writes one trace per seed and a summary") {
  const auto dir = temp_dir("cli_run");
  const auto path = (dir / "de.jsonl").string();
  const auto r = invoke({"run", "--optimizer", "de", "--benchmark", "synthetic:5x4",
                      "--evals", "2000", "--runs", "100", "--seed", "0", "--out", path});
  REQUIRE(r.code == 0);
  CHECK(line_value(r.out, "benchmark") == "synthetic:5x4:invalid=0.0:seed=0");
  CHECK(line_value(r.out, "optimizer") == "de");
  CHECK(line_value(r.out, "runs") == "100");
  CHECK_FALSE(line_value(r.out, "mean_final_regret").empty());
  CHECK_FALSE(line_value(r.out, "std_final_regret").empty());
  CHECK_FALSE(line_value(r.out, "mean_estimated_wall_clock_s").empty());
  CHECK(line_value(r.out, "traces") == path);

  const auto traces = load_traces(path);
  REQUIRE(traces.size() == 100);
  for (std::size_t k = 0; k < traces.size(); ++k) {
    CHECK(traces[k].seed == k);
    CHECK(traces[k].events.size() == 2000);
  }
  CHECK(std::stod(line_value(r.out, "mean_final_regret")) ==
        doctest::Approx(summarize(traces).mean).epsilon(1e-5));

  // Same arguments: byte-identical file.
  const auto again = (dir / "de2.jsonl").string();
  REQUIRE(invoke({"run", "--optimizer", "de", "--benchmark", "synthetic:5x4", "--evals", "2000",
               "--runs", "100", "--seed", "0", "--out", again})
              .code == 0);
  CHECK(read_file(again) == read_file(path));
}

TEST_CASE("run: usage and load errors") {
  const auto dir = temp_dir("cli_errors");
  const auto out = (dir / "t.jsonl").string();
  CHECK(invoke({"run", "--evals", "10", "--out", out}).code == 2);
  CHECK(invoke({"run", "--benchmark", "synthetic:3x3", "--out", out}).code == 2);
  CHECK(invoke({"run", "--benchmark", "synthetic:3x3", "--evals", "10"}).code == 2);
  CHECK(invoke({"run", "--benchmark", "synthetic:3x3", "--evals", "10", "--out", out,
             "--optimizer", "bo"})
            .code == 2);
  CHECK(invoke({"run", "--benchmark", "synthetic:3x3", "--evals", "10", "--out", out, "--np",
             "3"})
            .code == 2);
  CHECK(invoke({"run", "--benchmark", "synthetic:3x3", "--evals", "10", "--out", out,
             "--bogus"})
            .code == 2);
  CHECK(invoke({"run", "--benchmark", "warp:3", "--evals", "10", "--out", out}).code == 2);
  CHECK(invoke({"frobnicate"}).code == 2);
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"--help"}).code == 0);

  const auto missing = invoke({"run", "--benchmark", (dir / "absent.jsonl").string(),
                            "--evals", "10", "--out", out});
  CHECK(missing.code != 0);
  write_file(dir / "broken.jsonl", "{\"space\": 3}\n");
  const auto broken = invoke({"run", "--benchmark", "tabular:" + (dir / "broken.jsonl").string(),
                           "--evals", "10", "--out", out});
  CHECK(broken.code == 1);
  CHECK_FALSE(broken.err.empty());
  CHECK_FALSE(std::filesystem::exists(out));
}

TEST_CASE("make_benchmark sources") {
  CHECK(cli::make_benchmark("synthetic:3x4:invalid=0.25:seed=9")->id() ==
        "synthetic:3x4:invalid=0.25:seed=9");
  CHECK(cli::make_benchmark("sphere:2")->id() == "sphere:2:lo=-5.0:hi=5.0");
  CHECK(cli::make_benchmark("rastrigin:4:lo=-2:hi=3")->id() == "rastrigin:4:lo=-2.0:hi=3.0");
  CHECK_THROWS_AS(cli::make_benchmark("synthetic:3"), ConfigError);
  CHECK_THROWS_AS(cli::make_benchmark("synthetic:3x4:colour=red"), ConfigError);
  CHECK_THROWS_AS(cli::make_benchmark("sphere:x"), ConfigError);

  const auto dir = temp_dir("cli_sources");
  cli::write_file_atomically((dir / "t.jsonl").string(),
                             R"({"space": {"params": [{"name": "a", "kind": "categorical", "choices": ["x", "y"]}]}})"
                             "\n"
                             R"({"key": ["y"], "val_err": 0.2, "cost": 1})"
                             "\n");
  CHECK(cli::make_benchmark("tabular:" + (dir / "t.jsonl").string())->id() == "tabular:t");
  CHECK(cli::make_benchmark((dir / "t.jsonl").string())->id() == "tabular:t");
  CHECK_FALSE(std::filesystem::exists(dir / "t.jsonl.tmp"));
}

TEST_CASE("compare writes a curve per optimizer") {
  const auto dir = temp_dir("cli_compare");
  const auto a = invoke({"compare", "--optimizers", "de,rs", "--benchmark", "synthetic:4x3",
                      "--evals", "150", "--runs", "10", "--out-dir", (dir / "a").string()});
  REQUIRE(a.code == 0);
  CHECK(a.out.find("optimizer") != std::string::npos);
  CHECK(a.out.find("mean_final_regret") != std::string::npos);
  CHECK(a.out.find("\nde ") != std::string::npos);
  CHECK(a.out.find("\nrs ") != std::string::npos);
  const auto de_csv = read_file(dir / "a" / "de.csv");
  CHECK(de_csv.rfind("time,mean_regret,n_runs\n", 0) == 0);
  CHECK(std::filesystem::exists(dir / "a" / "rs.csv"));

  // Order of --optimizers only changes the table order.
  const auto b = invoke({"compare", "--optimizers", "rs,de", "--benchmark", "synthetic:4x3",
                      "--evals", "150", "--runs", "10", "--out-dir", (dir / "b").string()});
  REQUIRE(b.code == 0);
  CHECK(read_file(dir / "b" / "de.csv") == de_csv);
  CHECK(read_file(dir / "b" / "rs.csv") == read_file(dir / "a" / "rs.csv"));
  CHECK(b.out.find("\nrs ") < b.out.find("\nde "));

  // The CSV matches aggregating the same traces in-process.
  const auto t = invoke({"run", "--optimizer", "de", "--benchmark", "synthetic:4x3", "--evals",
                      "150", "--runs", "10", "--out", (dir / "de.jsonl").string()});
  REQUIRE(t.code == 0);
  const auto traces = load_traces((dir / "de.jsonl").string());
  std::ostringstream csv;
  csv.precision(12);
  write_curve_csv(csv, aggregate(std::span(traces), GridSpec{}));
  CHECK(csv.str() == de_csv);

  CHECK(invoke({"compare", "--optimizers", "de", "--benchmark", "synthetic:4x3", "--evals", "10",
             "--out-dir", (dir / "c").string()})
            .code == 2);
  CHECK(invoke({"compare", "--optimizers", "de,de", "--benchmark", "synthetic:4x3", "--evals",
             "10", "--out-dir", (dir / "c").string()})
            .code == 2);
}

TEST_CASE("aggregate re-reads trace files") {
  const auto dir = temp_dir("cli_aggregate");
  const auto one = (dir / "one.jsonl").string();
  REQUIRE(invoke({"run", "--optimizer", "rs", "--benchmark", "synthetic:3x4:invalid=0.3",
               "--evals", "40", "--runs", "1", "--out", one})
              .code == 0);
  const auto r = invoke({"aggregate", one, "--grid", "union"});
  REQUIRE(r.code == 0);

  // For a single run the union-grid curve is the run's own step function.
  const auto trace = load_traces(one).at(0);
  const auto series = regret(trace);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "time,mean_regret,n_runs");
  std::size_t rows = 0;
  while (std::getline(lines, line)) {
    const auto c1 = line.find(','), c2 = line.rfind(',');
    // Times are printed to 12 significant digits.
    const double t = std::stod(line.substr(0, c1)) * (1 + 1e-11);
    const double m = std::stod(line.substr(c1 + 1, c2 - c1 - 1));
    std::size_t last = 0;
    for (std::size_t k = 0; k < series.times.size(); ++k)
      if (series.times[k] <= t) last = k;
    CHECK(m == doctest::Approx(series.validation[last]).epsilon(1e-10));
    CHECK(line.substr(c2 + 1) == "1");
    ++rows;
  }
  CHECK(rows >= 1);

  const auto other = (dir / "other.jsonl").string();
  REQUIRE(invoke({"run", "--optimizer", "rs", "--benchmark", "sphere:2", "--evals", "20",
               "--out", other})
              .code == 0);
  const auto mixed = invoke({"aggregate", one, other});
  CHECK(mixed.code != 0);
  CHECK(mixed.err.find("benchmark") != std::string::npos);

  const auto csv_path = (dir / "curve.csv").string();
  REQUIRE(invoke({"aggregate", one, "--out", csv_path}).code == 0);
  CHECK(read_file(csv_path).rfind("time,mean_regret,n_runs\n", 0) == 0);
  CHECK(invoke({"aggregate", (dir / "absent.jsonl").string()}).code == 2);
}

TEST_CASE("config file and flag overrides") {
  const auto dir = temp_dir("cli_config");
  const auto cfg = (dir / "exp.json").string();
  write_file(cfg, R"({"optimizer": "re", "population": 10, "sample": 3,
                      "benchmark": "synthetic:3x4", "evals": 60, "runs": 4, "seed": 5,
                      "out": ")" + (dir / "from_config.jsonl").string() + R"("})");
  REQUIRE(invoke({"run", "--config", cfg}).code == 0);
  const auto traces = load_traces((dir / "from_config.jsonl").string());
  REQUIRE(traces.size() == 4);
  CHECK(traces[0].optimizer == "re");
  CHECK(traces[0].seed == 5);
  CHECK(traces[0].config["population"] == 10);

  const auto over = (dir / "override.jsonl").string();
  REQUIRE(invoke({"run", "--config", cfg, "--runs", "2", "--optimizer", "rs", "--out", over}).code ==
          0);
  const auto t2 = load_traces(over);
  REQUIRE(t2.size() == 2);
  CHECK(t2[0].optimizer == "rs");
  CHECK(t2[0].seed == 5);
  CHECK(t2[0].events.size() == 60);

  write_file(dir / "bad.json", R"({"optimiser": "de"})");
  CHECK(invoke({"run", "--config", (dir / "bad.json").string()}).code == 2);
  write_file(dir / "garbled.json", "{");
  CHECK(invoke({"run", "--config", (dir / "garbled.json").string()}).code == 1);
}

TEST_CASE("jobs do not change the output") {
  const auto dir = temp_dir("cli_jobs");
  for (const std::string jobs : {"1", "4"}) {
    REQUIRE(invoke({"run", "--optimizer", "de", "--benchmark", "sphere:3", "--evals", "300",
                 "--runs", "12", "--jobs", jobs, "--out", (dir / (jobs + ".jsonl")).string()})
                .code == 0);
  }
  CHECK(read_file(dir / "1.jsonl") == read_file(dir / "4.jsonl"));
}
