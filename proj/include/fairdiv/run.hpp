// Copyright 2026 The FairDiv Authors.
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

#pragma once

#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"

#include "fairdiv/coreset.hpp"
#include "fairdiv/error.hpp"
#include "fairdiv/io.hpp"
#include "fairdiv/mfd.hpp"
#include "fairdiv/mwu.hpp"
#include "fairdiv/streaming.hpp"

namespace fairdiv {

enum class RunMode { kOffline, kCoreset, kStream, kHighProb };

struct RunConfig {
  std::string input;
  std::string color_column = "color";
  double epsilon = 0.25;
  double g = 0.3;
  double delta = 0.01;
  RunMode mode = RunMode::kCoreset;
  std::string spec = "equal";  // equal | proportional | comma list
  long long k = 0;             // total; implied by an explicit list when 0
  SearchMode search = SearchMode::kDecay;
  std::uint64_t seed = 0;
  std::size_t repeat = 1;
  std::string output;
  std::size_t k_prime = 0;  // 0: max(k, max k_j)

  bool operator==(const RunConfig&) const = default;
};

struct RunResult {
  std::uint64_t seed = 0;
  std::vector<PointId> selected_ids;
  double gamma = 0.0;
  double diversity = 0.0;
  std::vector<std::size_t> required;
  std::vector<std::size_t> realized;
  std::vector<std::size_t> shortfalls;
  std::size_t shortfall_total = 0;
  std::size_t iterations = 0;
  std::size_t gammas_tried = 0;
  std::size_t round_attempts = 0;
  double coreset_seconds = 0.0;
  double solve_seconds = 0.0;
  double round_seconds = 0.0;
  double total_seconds = 0.0;

  bool operator==(const RunResult&) const = default;
};

struct RunAggregate {
  std::size_t runs = 0;
  double mean_diversity = 0.0;
  double mean_shortfall_total = 0.0;
  std::vector<double> mean_shortfalls;
  double mean_total_seconds = 0.0;

  bool operator==(const RunAggregate&) const = default;
};

struct RunReport {
  RunConfig config;
  std::vector<RunResult> runs;
  RunAggregate aggregate;

  bool operator==(const RunReport&) const = default;
};

inline std::string to_string(RunMode m) {
  switch (m) {
    case RunMode::kOffline: return "offline";
    case RunMode::kCoreset: return "coreset";
    case RunMode::kStream: return "stream";
    case RunMode::kHighProb: return "highprob";
  }
  return "coreset";
}

inline RunMode parse_run_mode(const std::string& s) {
  if (s == "offline") return RunMode::kOffline;
  if (s == "coreset") return RunMode::kCoreset;
  if (s == "stream") return RunMode::kStream;
  if (s == "highprob") return RunMode::kHighProb;
  fail(Errc::kInvalidArgument, "unknown mode '" + s + "'");
}

inline std::string to_string(SearchMode m) {
  return m == SearchMode::kBinary ? "binary" : "decay";
}

inline SearchMode parse_search_mode(const std::string& s) {
  if (s == "binary") return SearchMode::kBinary;
  if (s == "decay") return SearchMode::kDecay;
  fail(Errc::kInvalidArgument, "unknown gamma search '" + s + "'");
}

// Lower bounds for a dataset with the given color populations.
inline FairnessSpec resolve_spec(const RunConfig& config, std::span<const std::size_t> counts) {
  FairnessSpec spec;
  if (config.spec == "equal") {
    spec = make_spec(counts, SpecMode::kEqual, config.k);
  } else if (config.spec == "proportional") {
    spec = make_spec(counts, SpecMode::kProportional, config.k);
  } else {
    spec = parse_spec_list(config.spec);
    if (config.k != 0 && static_cast<long long>(spec.total()) != config.k) {
      fail(Errc::kInvalidArgument, "spec list sums to " + std::to_string(spec.total()) +
                                       " but k = " + std::to_string(config.k));
    }
  }
  if (spec.per_color.size() != counts.size()) {
    fail(Errc::kInvalidArgument, "spec has " + std::to_string(spec.per_color.size()) +
                                     " colors, dataset has " + std::to_string(counts.size()));
  }
  return spec;
}

inline RunAggregate aggregate_runs(const std::vector<RunResult>& runs) {
  RunAggregate agg;
  agg.runs = runs.size();
  if (runs.empty()) return agg;
  const double n = static_cast<double>(runs.size());
  agg.mean_shortfalls.assign(runs.front().shortfalls.size(), 0.0);
  for (const auto& r : runs) {
    agg.mean_diversity += r.diversity / n;
    agg.mean_shortfall_total += static_cast<double>(r.shortfall_total) / n;
    agg.mean_total_seconds += r.total_seconds / n;
    for (std::size_t j = 0; j < agg.mean_shortfalls.size(); ++j) {
      agg.mean_shortfalls[j] += static_cast<double>(r.shortfalls[j]) / n;
    }
  }
  return agg;
}

// One solve of `config` on `data` with the given seed.
inline RunResult run_once(const RunConfig& config, const Dataset& data, const FairnessSpec& spec,
                          std::uint64_t seed) {
  const auto start = std::chrono::steady_clock::now();
  MwuParams params;
  params.epsilon = config.epsilon;
  params.early_stop = config.g;
  SearchOptions options;
  options.search = config.search;
  std::mt19937_64 rng(seed);
  const std::size_t k_prime =
      config.k_prime != 0
          ? config.k_prime
          : std::max(spec.total(), *std::max_element(spec.per_color.begin(), spec.per_color.end()));

  Solution sol;
  switch (config.mode) {
    case RunMode::kOffline:
      sol = mfd(data.points, spec, params, options, rng);
      break;
    case RunMode::kCoreset:
      sol = mfd_with_coreset(data.points, spec, params, options, rng, k_prime);
      break;
    case RunMode::kHighProb:
      sol = mfd_high_prob_with_coreset(data.points, spec, params, options, config.delta, rng,
                                       k_prime);
      break;
    case RunMode::kStream: {
      const auto t0 = std::chrono::steady_clock::now();
      StreamState state(data.points.num_colors(), k_prime);
      for (std::size_t i = 0; i < data.points.size(); ++i) state.insert(data.points.at(i));
      const double replay = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      sol = stream_query(state, spec, params, options, rng);
      sol.coreset_seconds = replay;
      break;
    }
  }

  RunResult out;
  out.seed = seed;
  out.selected_ids = sol.selected_ids;
  out.gamma = sol.gamma;
  out.diversity = sol.diversity;
  out.required = spec.per_color;
  out.realized.assign(spec.per_color.size(), 0);
  for (PointId id : sol.selected_ids) {
    ++out.realized[static_cast<std::size_t>(data.points.color(id))];
  }
  out.shortfalls.resize(spec.per_color.size());
  for (std::size_t j = 0; j < out.required.size(); ++j) {
    out.shortfalls[j] = out.required[j] > out.realized[j] ? out.required[j] - out.realized[j] : 0;
    out.shortfall_total += out.shortfalls[j];
  }
  out.iterations = sol.iterations_used;
  out.gammas_tried = sol.gammas_tried;
  out.round_attempts = sol.round_attempts;
  out.coreset_seconds = sol.coreset_seconds;
  out.solve_seconds = sol.solve_seconds;
  out.round_seconds = sol.round_seconds;
  out.total_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

// Runs `config.repeat` times with seeds seed, seed+1, ...
inline RunReport run(const RunConfig& config, const Dataset& data) {
  if (config.repeat < 1) fail(Errc::kInvalidArgument, "repeat must be >= 1");
  if (!(config.delta > 0.0 && config.delta < 1.0)) {
    fail(Errc::kInvalidArgument, "delta must lie in (0, 1)");
  }
  const auto spec = resolve_spec(config, data.points.color_counts());
  RunReport report;
  report.config = config;
  for (std::size_t i = 0; i < config.repeat; ++i) {
    report.runs.push_back(run_once(config, data, spec, config.seed + i));
    log(LogLevel::kInfo, "run " + std::to_string(i) + " diversity " +
                             std::to_string(report.runs.back().diversity));
  }
  report.aggregate = aggregate_runs(report.runs);
  return report;
}

inline RunReport run(const RunConfig& config) {
  return run(config, load_csv(config.input, config.color_column));
}

namespace detail {

using Json = nlohmann::ordered_json;

// JSON has no infinities; +inf travels as null.
inline Json real_to_json(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

inline double real_from_json(const Json& j) {
  return j.is_null() ? std::numeric_limits<double>::infinity() : j.get<double>();
}

}  // namespace detail

inline nlohmann::ordered_json to_json(const RunReport& report) {
  using detail::Json;
  using detail::real_to_json;
  const auto& c = report.config;
  Json config = {{"input", c.input},
                 {"color_column", c.color_column},
                 {"epsilon", c.epsilon},
                 {"g", c.g},
                 {"delta", c.delta},
                 {"mode", to_string(c.mode)},
                 {"spec", c.spec},
                 {"k", c.k},
                 {"search", to_string(c.search)},
                 {"seed", c.seed},
                 {"repeat", c.repeat},
                 {"output", c.output},
                 {"k_prime", c.k_prime}};
  Json runs = Json::array();
  for (const auto& r : report.runs) {
    runs.push_back({{"seed", r.seed},
                    {"selected_ids", r.selected_ids},
                    {"gamma", real_to_json(r.gamma)},
                    {"diversity", real_to_json(r.diversity)},
                    {"required", r.required},
                    {"realized", r.realized},
                    {"shortfalls", r.shortfalls},
                    {"shortfall_total", r.shortfall_total},
                    {"iterations", r.iterations},
                    {"gammas_tried", r.gammas_tried},
                    {"round_attempts", r.round_attempts},
                    {"coreset_seconds", r.coreset_seconds},
                    {"solve_seconds", r.solve_seconds},
                    {"round_seconds", r.round_seconds},
                    {"total_seconds", r.total_seconds}});
  }
  const auto& a = report.aggregate;
  Json agg = {{"runs", a.runs},
              {"mean_diversity", real_to_json(a.mean_diversity)},
              {"mean_shortfall_total", a.mean_shortfall_total},
              {"mean_shortfalls", a.mean_shortfalls},
              {"mean_total_seconds", a.mean_total_seconds}};
  return {{"config", config}, {"runs", runs}, {"aggregate", agg}};
}

inline RunReport report_from_json(const nlohmann::ordered_json& j) {
  using detail::real_from_json;
  RunReport report;
  try {
    const auto& c = j.at("config");
    auto& rc = report.config;
    rc.input = c.at("input").get<std::string>();
    rc.color_column = c.at("color_column").get<std::string>();
    rc.epsilon = c.at("epsilon").get<double>();
    rc.g = c.at("g").get<double>();
    rc.delta = c.at("delta").get<double>();
    rc.mode = parse_run_mode(c.at("mode").get<std::string>());
    rc.spec = c.at("spec").get<std::string>();
    rc.k = c.at("k").get<long long>();
    rc.search = parse_search_mode(c.at("search").get<std::string>());
    rc.seed = c.at("seed").get<std::uint64_t>();
    rc.repeat = c.at("repeat").get<std::size_t>();
    rc.output = c.at("output").get<std::string>();
    rc.k_prime = c.at("k_prime").get<std::size_t>();
    for (const auto& r : j.at("runs")) {
      RunResult out;
      out.seed = r.at("seed").get<std::uint64_t>();
      out.selected_ids = r.at("selected_ids").get<std::vector<PointId>>();
      out.gamma = real_from_json(r.at("gamma"));
      out.diversity = real_from_json(r.at("diversity"));
      out.required = r.at("required").get<std::vector<std::size_t>>();
      out.realized = r.at("realized").get<std::vector<std::size_t>>();
      out.shortfalls = r.at("shortfalls").get<std::vector<std::size_t>>();
      out.shortfall_total = r.at("shortfall_total").get<std::size_t>();
      out.iterations = r.at("iterations").get<std::size_t>();
      out.gammas_tried = r.at("gammas_tried").get<std::size_t>();
      out.round_attempts = r.at("round_attempts").get<std::size_t>();
      out.coreset_seconds = r.at("coreset_seconds").get<double>();
      out.solve_seconds = r.at("solve_seconds").get<double>();
      out.round_seconds = r.at("round_seconds").get<double>();
      out.total_seconds = r.at("total_seconds").get<double>();
      report.runs.push_back(std::move(out));
    }
    const auto& a = j.at("aggregate");
    report.aggregate.runs = a.at("runs").get<std::size_t>();
    report.aggregate.mean_diversity = real_from_json(a.at("mean_diversity"));
    report.aggregate.mean_shortfall_total = a.at("mean_shortfall_total").get<double>();
    report.aggregate.mean_shortfalls = a.at("mean_shortfalls").get<std::vector<double>>();
    report.aggregate.mean_total_seconds = a.at("mean_total_seconds").get<double>();
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::kInvalidArgument, std::string("malformed run report: ") + e.what());
  }
  return report;
}

inline RunReport parse_report(const std::string& text) {
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::kInvalidArgument, std::string("run report is not JSON: ") + e.what());
  }
  return report_from_json(j);
}

inline std::string error_json(const std::string& code, const std::string& message) {
  nlohmann::ordered_json j = {{"error", {{"code", code}, {"message", message}}}};
  return j.dump(2);
}

namespace detail {

inline void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text << '\n';
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::kIo, "cannot write '" + path + "'");
  out << text << '\n';
  if (!out) fail(Errc::kIo, "write to '" + path + "' failed");
}

}  // namespace detail

// Writes the report to `path`, or stdout when the path is empty or "-".
inline void emit(const RunReport& report, const std::string& path) {
  detail::write_text(path, to_json(report).dump(2));
}

// Rows "k,diversity,runtime_s,shortfall_total", one per run.
inline void write_plot_csv(std::ostream& out, const RunReport& report) {
  out << "k,diversity,runtime_s,shortfall_total\n";
  for (const auto& r : report.runs) {
    std::size_t k = 0;
    for (auto v : r.required) k += v;
    out << k << ',' << detail::format_double(r.diversity) << ','
        << detail::format_double(r.total_seconds) << ',' << r.shortfall_total << '\n';
  }
}

inline void write_plot_csv(const std::string& path, const RunReport& report) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::kIo, "cannot write '" + path + "'");
  write_plot_csv(out, report);
}

}  // namespace fairdiv
