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

#include "denas/trace.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <utility>

#include "denas/error.hpp"

namespace denas {

namespace {

nlohmann::ordered_json optional_number(const std::optional<double>& v) {
  if (v) return *v;
  return nullptr;
}

std::optional<double> read_optional(const nlohmann::ordered_json& j, const char* key) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  return j[key].get<double>();
}

}  // namespace

void Budget::validate() const {
  if (!max_evaluations && !max_cost) {
    throw ConfigError("budget needs an evaluation limit or a cost limit");
  }
  if (max_evaluations && *max_evaluations == 0) {
    throw ConfigError("evaluation limit must be positive");
  }
  if (max_cost && !(*max_cost > 0.0)) {
    throw ConfigError("cost limit must be positive");
  }
}

nlohmann::ordered_json Budget::to_json() const {
  nlohmann::ordered_json j;
  if (max_evaluations) {
    j["evals"] = *max_evaluations;
  } else {
    j["evals"] = nullptr;
  }
  j["cost"] = optional_number(max_cost);
  return j;
}

TraceRecorder::TraceRecorder(const Benchmark& bench, const Budget& budget,
                             std::uint64_t seed, std::string optimizer,
                             nlohmann::ordered_json config)
    : bench_(bench), budget_(budget) {
  budget_.validate();
  trace_.seed = seed;
  trace_.optimizer = std::move(optimizer);
  trace_.benchmark = bench.id();
  trace_.best_validation_error = bench.best_validation_error();
  trace_.best_test_error = bench.best_test_error();
  trace_.config = std::move(config);
}

bool TraceRecorder::exhausted() const noexcept {
  if (budget_.max_evaluations &&
      trace_.events.size() >= *budget_.max_evaluations) {
    return true;
  }
  return budget_.max_cost && cost_ >= *budget_.max_cost;
}

double TraceRecorder::evaluate(const Genotype& genotype) {
  // The optimizer's genotype is never touched; only this copy is mapped.
  const Configuration config = bench_.space().discretize(genotype);
  EvaluationResult r = bench_.evaluate(config);
  if (!r.valid) r = EvaluationResult::invalid();

  TraceEvent ev;
  ev.eval_index = trace_.events.size();
  cost_ += r.cost_seconds;
  ev.cumulative_cost = cost_;
  ev.objective = r.validation_error;
  ev.valid = r.valid;

  const TraceEvent* prev = trace_.events.empty() ? nullptr : &trace_.events.back();
  const bool improves =
      prev == nullptr ||
      (r.valid && (!incumbent_valid_ || r.validation_error < prev->incumbent_objective));
  if (improves) {
    ev.incumbent_objective = r.validation_error;
    ev.incumbent_index = ev.eval_index;
    ev.incumbent_test_error = r.test_error;
    incumbent_valid_ = r.valid;
  } else {
    ev.incumbent_objective = prev->incumbent_objective;
    ev.incumbent_index = prev->incumbent_index;
    ev.incumbent_test_error = prev->incumbent_test_error;
  }
  trace_.events.push_back(ev);
  return r.validation_error;
}

void check_trace_invariants(const RunTrace& trace) {
  auto fail = [&trace](std::size_t k, const std::string& what) {
    throw ContractViolation("trace seed " + std::to_string(trace.seed) +
                            " event " + std::to_string(k) + ": " + what);
  };
  bool seen_valid = false;
  for (std::size_t k = 0; k < trace.events.size(); ++k) {
    const auto& ev = trace.events[k];
    if (ev.eval_index != k) fail(k, "eval_index not consecutive");
    if (ev.incumbent_index > k) fail(k, "incumbent_index in the future");
    const double prev_cost = k == 0 ? 0.0 : trace.events[k - 1].cumulative_cost;
    if (ev.valid ? ev.cumulative_cost < prev_cost
                 : ev.cumulative_cost != prev_cost) {
      fail(k, ev.valid ? "cumulative cost decreased"
                       : "invalid evaluation accrued cost");
    }
    if (!ev.valid && ev.objective != 1.0) {
      fail(k, "invalid evaluation not scored 1.0");
    }
    if (k > 0 &&
        ev.incumbent_objective > trace.events[k - 1].incumbent_objective) {
      fail(k, "incumbent objective increased");
    }
    seen_valid = seen_valid || ev.valid;
    if (seen_valid && !trace.events[ev.incumbent_index].valid) {
      fail(k, "invalid configuration is the incumbent");
    }
    if (ev.incumbent_objective != trace.events[ev.incumbent_index].objective) {
      fail(k, "incumbent objective does not match its event");
    }
    if (ev.incumbent_objective < trace.best_validation_error) {
      fail(k, "negative validation regret");
    }
  }
}

void write_traces(std::ostream& out, std::span<const RunTrace> traces) {
  for (const auto& t : traces) {
    nlohmann::ordered_json header;
    header["type"] = "run";
    header["seed"] = t.seed;
    header["optimizer"] = t.optimizer;
    header["benchmark"] = t.benchmark;
    header["best_validation_error"] = t.best_validation_error;
    header["best_test_error"] = optional_number(t.best_test_error);
    header["config"] = t.config;
    header["num_events"] = t.events.size();
    out << header.dump() << '\n';
    for (const auto& ev : t.events) {
      nlohmann::ordered_json j;
      j["type"] = "event";
      j["eval"] = ev.eval_index;
      j["cost"] = ev.cumulative_cost;
      j["objective"] = ev.objective;
      j["valid"] = ev.valid;
      j["incumbent"] = ev.incumbent_objective;
      j["incumbent_index"] = ev.incumbent_index;
      j["incumbent_test"] = optional_number(ev.incumbent_test_error);
      out << j.dump() << '\n';
    }
  }
}

std::vector<RunTrace> read_traces(std::istream& in) {
  std::vector<RunTrace> traces;
  std::string line;
  std::size_t line_no = 0;
  std::size_t expected = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto j = nlohmann::ordered_json::parse(line);
      const auto type = j.at("type").get<std::string>();
      if (type == "run") {
        if (!traces.empty() && traces.back().events.size() != expected) {
          throw LoadError("previous run has " +
                          std::to_string(traces.back().events.size()) +
                          " events, header promised " + std::to_string(expected));
        }
        RunTrace t;
        t.seed = j.at("seed").get<std::uint64_t>();
        t.optimizer = j.at("optimizer").get<std::string>();
        t.benchmark = j.at("benchmark").get<std::string>();
        t.best_validation_error = j.at("best_validation_error").get<double>();
        t.best_test_error = read_optional(j, "best_test_error");
        t.config = j.at("config");
        expected = j.at("num_events").get<std::size_t>();
        traces.push_back(std::move(t));
      } else if (type == "event") {
        if (traces.empty()) throw LoadError("event before any run header");
        TraceEvent ev;
        ev.eval_index = j.at("eval").get<std::uint64_t>();
        ev.cumulative_cost = j.at("cost").get<double>();
        ev.objective = j.at("objective").get<double>();
        ev.valid = j.at("valid").get<bool>();
        ev.incumbent_objective = j.at("incumbent").get<double>();
        ev.incumbent_index = j.at("incumbent_index").get<std::uint64_t>();
        ev.incumbent_test_error = read_optional(j, "incumbent_test");
        traces.back().events.push_back(ev);
      } else {
        throw LoadError("unknown record type '" + type + "'");
      }
    } catch (const nlohmann::json::exception& e) {
      throw LoadError("trace line " + std::to_string(line_no) + ": " + e.what());
    } catch (const LoadError& e) {
      throw LoadError("trace line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (!traces.empty() && traces.back().events.size() != expected) {
    throw LoadError("last run is truncated");
  }
  return traces;
}

std::vector<RunTrace> load_traces(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open trace file " + path);
  try {
    return read_traces(in);
  } catch (const LoadError& e) {
    throw LoadError(path + ": " + e.what());
  }
}

}  // namespace denas
