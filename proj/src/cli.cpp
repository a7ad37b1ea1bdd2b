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

#include "denas/cli.hpp"

#include <cerrno>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "denas/continuous.hpp"
#include "denas/error.hpp"
#include "denas/tabular.hpp"

namespace denas::cli {

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.emplace_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

template <class T>
T parse_number(std::string_view text, std::string_view what) {
  T value{};
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  if constexpr (std::is_floating_point_v<T>) {
    // std::from_chars for double is missing from older libstdc++.
    std::string copy(text);
    char* end = nullptr;
    errno = 0;
    value = std::strtod(copy.c_str(), &end);
    if (copy.empty() || end != copy.c_str() + copy.size() || errno != 0) {
      throw ConfigError("bad number '" + copy + "' for " + std::string(what));
    }
  } else {
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) {
      throw ConfigError("bad integer '" + std::string(text) + "' for " +
                        std::string(what));
    }
  }
  return value;
}

std::unique_ptr<Benchmark> make_synthetic_source(
    const std::vector<std::string>& parts) {
  if (parts.size() < 2) throw ConfigError("synthetic benchmark needs PxC");
  const auto dims = split(parts[1], 'x');
  if (dims.size() != 2) {
    throw ConfigError("synthetic size must look like PxC, got '" + parts[1] + "'");
  }
  SyntheticSpec spec;
  spec.num_params = parse_number<std::size_t>(dims[0], "synthetic params");
  spec.choices_per_param = parse_number<std::size_t>(dims[1], "synthetic choices");
  std::uint64_t seed = 0;
  for (std::size_t k = 2; k < parts.size(); ++k) {
    const auto eq = parts[k].find('=');
    const std::string key = parts[k].substr(0, eq);
    const std::string val = eq == std::string::npos ? "" : parts[k].substr(eq + 1);
    if (key == "invalid") {
      spec.invalid_fraction = parse_number<double>(val, "invalid");
    } else if (key == "seed") {
      seed = parse_number<std::uint64_t>(val, "seed");
    } else {
      throw ConfigError("unknown synthetic option '" + parts[k] + "'");
    }
  }
  return std::make_unique<TabularBenchmark>(make_synthetic(spec, seed));
}

std::unique_ptr<Benchmark> make_continuous_source(
    const std::vector<std::string>& parts) {
  if (parts.size() < 2) {
    throw ConfigError(parts[0] + " benchmark needs a dimension");
  }
  const auto d = parse_number<std::size_t>(parts[1], "dimension");
  std::optional<double> lo;
  std::optional<double> hi;
  for (std::size_t k = 2; k < parts.size(); ++k) {
    const auto eq = parts[k].find('=');
    const std::string key = parts[k].substr(0, eq);
    const std::string val = eq == std::string::npos ? "" : parts[k].substr(eq + 1);
    if (key == "lo") {
      lo = parse_number<double>(val, "lo");
    } else if (key == "hi") {
      hi = parse_number<double>(val, "hi");
    } else {
      throw ConfigError("unknown option '" + parts[k] + "'");
    }
  }
  std::optional<FloatRange> bounds;
  if (lo || hi) {
    const auto defaults = continuous_function(parts[0], 1).space()[0].kind();
    const auto& r = std::get<FloatRange>(defaults);
    bounds = FloatRange{lo.value_or(r.lo), hi.value_or(r.hi)};
  }
  return std::make_unique<ContinuousBenchmark>(
      continuous_function(parts[0], d, bounds));
}

void print_summary_table(std::ostream& out,
                         const std::vector<std::string>& names,
                         const std::vector<FinalRegretSummary>& rows) {
  out << std::left << std::setw(10) << "optimizer" << std::right
      << std::setw(6) << "runs" << std::setw(20) << "mean_final_regret"
      << std::setw(20) << "std_final_regret" << std::setw(20)
      << "mean_final_cost" << '\n';
  out << std::fixed << std::setprecision(6);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    out << std::left << std::setw(10) << names[k] << std::right
        << std::setw(6) << rows[k].runs << std::setw(20) << rows[k].mean
        << std::setw(20) << rows[k].stddev << std::setw(20)
        << rows[k].mean_cost << '\n';
  }
  out << std::defaultfloat;
}

GridSpec parse_grid(const std::string& kind, std::size_t points) {
  GridSpec g;
  if (kind == "union") {
    g.kind = GridSpec::Kind::kUnionOfEventTimes;
  } else if (kind == "log") {
    g.kind = GridSpec::Kind::kLogSpaced;
  } else {
    throw ConfigError("--grid must be 'union' or 'log'");
  }
  g.points = points;
  return g;
}

std::string curve_csv(const AggregateCurve& curve) {
  std::ostringstream os;
  write_curve_csv(os, curve);
  return os.str();
}

// Flags shared by run and compare, bound to a scratch config so that only
// explicitly given flags override the config file.
struct ExperimentFlags {
  ExperimentConfig values;
  std::string config_path;
  std::vector<std::pair<CLI::Option*, std::function<void(ExperimentConfig&)>>>
      overrides;

  template <class T>
  void bind(CLI::App* app, const std::string& name, T ExperimentConfig::*field,
            const std::string& help) {
    auto* opt = app->add_option(name, values.*field, help);
    overrides.emplace_back(opt, [this, field](ExperimentConfig& c) {
      c.*field = values.*field;
    });
  }

  void add_to(CLI::App* app, bool compare) {
    app->add_option("--config", config_path, "JSON experiment config file")
        ->check(CLI::ExistingFile);
    if (compare) {
      bind(app, "--optimizers", &ExperimentConfig::optimizers,
           "Comma-separated optimizers (de, rs, re)");
      overrides.back().first->delimiter(',');
      bind(app, "--out-dir", &ExperimentConfig::out_dir,
           "Directory for per-optimizer curve CSVs");
    } else {
      bind(app, "--optimizer", &ExperimentConfig::optimizer,
           "Optimizer: de, rs or re");
      bind(app, "--out", &ExperimentConfig::out, "Trace output file (JSON Lines)");
    }
    bind(app, "--np", &ExperimentConfig::np, "DE population size");
    bind(app, "--f", &ExperimentConfig::f, "DE scaling factor");
    bind(app, "--cr", &ExperimentConfig::cr, "DE crossover rate");
    bind(app, "--boundary", &ExperimentConfig::boundary,
         "DE out-of-range mutant coordinates: resample or clip");
    bind(app, "--population", &ExperimentConfig::population,
         "RE population size");
    bind(app, "--sample", &ExperimentConfig::sample, "RE tournament size");
    bind(app, "--re-mutation", &ExperimentConfig::re_mutation,
         "RE mutation: phenotype or genotype");
    bind(app, "--benchmark", &ExperimentConfig::benchmark, "Benchmark source");
    bind(app, "--evals", &ExperimentConfig::evals, "Evaluation limit per run");
    bind(app, "--cost", &ExperimentConfig::cost,
         "Estimated wall-clock limit per run (seconds)");
    bind(app, "--runs", &ExperimentConfig::runs, "Number of seeds");
    bind(app, "--seed", &ExperimentConfig::seed, "First seed");
    bind(app, "--jobs", &ExperimentConfig::jobs, "Concurrent runs");
  }

  ExperimentConfig resolve() const {
    ExperimentConfig cfg;
    if (!config_path.empty()) cfg = ExperimentConfig::load(config_path);
    for (const auto& [opt, apply] : overrides) {
      if (opt->count() > 0) apply(cfg);
    }
    return cfg;
  }
};

void require(bool ok, const std::string& what) {
  if (!ok) throw CLI::ValidationError(what);
}

int cmd_run(const ExperimentConfig& cfg, std::ostream& out) {
  require(!cfg.benchmark.empty(), "--benchmark is required");
  require(!cfg.out.empty(), "--out is required");
  require(cfg.runs >= 1, "--runs must be at least 1");
  const OptimizerSpec spec = cfg.optimizer_spec(cfg.optimizer);
  const auto bench = make_benchmark(cfg.benchmark);
  const auto traces = run_experiment(spec, *bench, cfg.runs, cfg.seed, cfg.jobs);

  std::ostringstream os;
  write_traces(os, traces);
  write_file_atomically(cfg.out, os.str());

  const auto s = summarize(traces);
  out << "benchmark: " << bench->id() << '\n'
      << "optimizer: " << optimizer_name(spec) << '\n'
      << "runs: " << s.runs << '\n'
      << std::fixed << std::setprecision(6)
      << "mean_final_regret: " << s.mean << '\n'
      << "std_final_regret: " << s.stddev << '\n'
      << "mean_estimated_wall_clock_s: " << s.mean_cost << '\n'
      << std::defaultfloat << "traces: " << cfg.out << '\n';
  return 0;
}

int cmd_compare(const ExperimentConfig& cfg, const GridSpec& grid,
                std::ostream& out) {
  require(!cfg.benchmark.empty(), "--benchmark is required");
  require(!cfg.out_dir.empty(), "--out-dir is required");
  require(cfg.optimizers.size() >= 2, "--optimizers needs at least two entries");
  require(std::set<std::string>(cfg.optimizers.begin(), cfg.optimizers.end())
                  .size() == cfg.optimizers.size(),
          "--optimizers must not repeat an optimizer");
  require(cfg.runs >= 1, "--runs must be at least 1");
  std::vector<OptimizerSpec> specs;
  for (const auto& name : cfg.optimizers) specs.push_back(cfg.optimizer_spec(name));

  const auto bench = make_benchmark(cfg.benchmark);
  std::filesystem::create_directories(cfg.out_dir);
  std::vector<FinalRegretSummary> rows;
  std::vector<std::pair<std::string, std::string>> files;
  for (const auto& spec : specs) {
    const auto traces = run_experiment(spec, *bench, cfg.runs, cfg.seed, cfg.jobs);
    rows.push_back(summarize(traces));
    const auto path = (std::filesystem::path(cfg.out_dir) /
                       (optimizer_name(spec) + ".csv")).string();
    files.emplace_back(path, curve_csv(aggregate(std::span(traces), grid)));
  }
  for (const auto& [path, content] : files) write_file_atomically(path, content);

  out << "benchmark: " << bench->id() << '\n';
  print_summary_table(out, cfg.optimizers, rows);
  return 0;
}

int cmd_aggregate(const std::vector<std::string>& inputs,
                  const std::string& out_path, const GridSpec& grid,
                  std::ostream& out) {
  std::vector<RunTrace> traces;
  for (const auto& path : inputs) {
    auto t = load_traces(path);
    std::move(t.begin(), t.end(), std::back_inserter(traces));
  }
  if (traces.empty()) throw LoadError("no runs found in the trace files");
  const auto csv = curve_csv(aggregate(std::span(traces), grid));
  if (out_path.empty()) {
    out << csv;
  } else {
    write_file_atomically(out_path, csv);
  }
  return 0;
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ConfigError("experiment config must be an object");
  ExperimentConfig c;
  for (const auto& [key, v] : doc.items()) {
    try {
      if (key == "optimizer") c.optimizer = v.get<std::string>();
      else if (key == "optimizers") c.optimizers = v.get<std::vector<std::string>>();
      else if (key == "np") c.np = v.get<std::size_t>();
      else if (key == "f") c.f = v.get<double>();
      else if (key == "cr") c.cr = v.get<double>();
      else if (key == "boundary") c.boundary = v.get<std::string>();
      else if (key == "population") c.population = v.get<std::size_t>();
      else if (key == "sample") c.sample = v.get<std::size_t>();
      else if (key == "re_mutation") c.re_mutation = v.get<std::string>();
      else if (key == "benchmark") c.benchmark = v.get<std::string>();
      else if (key == "evals") c.evals = v.is_null() ? std::nullopt : std::optional(v.get<std::uint64_t>());
      else if (key == "cost") c.cost = v.is_null() ? std::nullopt : std::optional(v.get<double>());
      else if (key == "runs") c.runs = v.get<std::size_t>();
      else if (key == "seed") c.seed = v.get<std::uint64_t>();
      else if (key == "out") c.out = v.get<std::string>();
      else if (key == "out_dir") c.out_dir = v.get<std::string>();
      else if (key == "jobs") c.jobs = v.get<std::size_t>();
      else throw ConfigError("unknown experiment config field '" + key + "'");
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError("experiment config field '" + key + "': " + e.what());
    }
  }
  return c;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open config file " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw LoadError(path + ": " + e.what());
  }
  return from_json(doc);
}

Budget ExperimentConfig::budget() const {
  Budget b{evals, cost};
  b.validate();
  return b;
}

OptimizerSpec ExperimentConfig::optimizer_spec(std::string_view name) const {
  if (name == "de") {
    DEConfig c{np, f, cr, budget(), parse_boundary_handling(boundary)};
    c.validate();
    return c;
  }
  if (name == "rs") return RandomSearchConfig{budget()};
  if (name == "re") {
    REConfig c{population, sample, budget(), parse_re_mutation(re_mutation)};
    c.validate();
    return c;
  }
  throw ConfigError("unknown optimizer '" + std::string(name) +
                    "' (expected de, rs or re)");
}

std::unique_ptr<Benchmark> make_benchmark(std::string_view source) {
  if (source.starts_with("tabular:")) {
    return std::make_unique<TabularBenchmark>(
        load_tabular(std::string(source.substr(8))));
  }
  const auto parts = split(source, ':');
  if (parts[0] == "synthetic") return make_synthetic_source(parts);
  if (parts[0] == "sphere" || parts[0] == "rastrigin") {
    return make_continuous_source(parts);
  }
  if (std::filesystem::is_regular_file(std::string(source))) {
    return std::make_unique<TabularBenchmark>(load_tabular(std::string(source)));
  }
  throw ConfigError("unknown benchmark source '" + std::string(source) + "'");
}

void write_file_atomically(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw LoadError("cannot write " + tmp);
    f << content;
    f.flush();
    if (!f) throw LoadError("write failed for " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Differential evolution and baselines for tabular and "
               "continuous benchmarks"};
  app.require_subcommand(1);

  ExperimentFlags run_flags;
  auto* run = app.add_subcommand("run", "Run one optimizer over many seeds");
  run_flags.add_to(run, false);

  ExperimentFlags cmp_flags;
  std::string grid_kind = "log";
  std::size_t grid_points = 512;
  auto* compare = app.add_subcommand(
      "compare", "Run several optimizers on shared seeds and aggregate");
  cmp_flags.add_to(compare, true);
  compare->add_option("--grid", grid_kind, "Grid: union or log")
      ->check(CLI::IsMember({"union", "log"}));
  compare->add_option("--grid-points", grid_points, "Points of the log grid");

  std::vector<std::string> agg_inputs;
  std::string agg_out;
  std::string agg_grid = "log";
  std::size_t agg_points = 512;
  auto* agg = app.add_subcommand("aggregate",
                                 "Aggregate trace files into a regret curve");
  agg->add_option("traces", agg_inputs, "Trace files (JSON Lines)")
      ->required()
      ->check(CLI::ExistingFile);
  agg->add_option("--out", agg_out, "CSV output (default: standard output)");
  agg->add_option("--grid", agg_grid, "Grid: union or log")
      ->check(CLI::IsMember({"union", "log"}));
  agg->add_option("--grid-points", agg_points, "Points of the log grid");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
    if (run->parsed()) return cmd_run(run_flags.resolve(), out);
    if (compare->parsed()) {
      return cmd_compare(cmp_flags.resolve(), parse_grid(grid_kind, grid_points),
                         out);
    }
    return cmd_aggregate(agg_inputs, agg_out, parse_grid(agg_grid, agg_points),
                         out);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::Error& e) {
    app.exit(e, out, err);
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace denas::cli
