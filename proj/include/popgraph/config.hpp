// Copyright 2026 The popgraph Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef POPGRAPH_CONFIG_HPP_
#define POPGRAPH_CONFIG_HPP_

// Declarative experiment description and its JSON form.
//
//   {
//     "name": "gmm3_cycle",
//     "game": {"type": "gmm_rps", "n_modes": 3, "radius": 1.0, "stddev": 0.7},
//     "graph": "cycle",
//     "population_size": 4,
//     "learner": {"learning_rate": 0.05, "estimator": "exact_gradient", ...},
//     "updates_per_period": 200,
//     "total_periods": 500,
//     "seeds": [0, 1, 2],
//     "evaluators": [{"name": "ground_truth", "rule": "ground_truth_modes"}],
//     ...
//   }
//
// Omitted fields take the defaults below. "graph" may also be a list, in
// which case ExpandConfigs produces one experiment per graph kind.

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "popgraph/core.hpp"
#include "popgraph/game.hpp"
#include "popgraph/interaction_graph.hpp"
#include "popgraph/learner.hpp"
#include "popgraph/metrics.hpp"

namespace popgraph {

using Json = nlohmann::json;

// How to obtain a set of evaluator strategies.
struct EvaluatorSpec {
  enum class Rule { kGroundTruthModes, kFromRun, kParams };

  std::string name;
  Rule rule = Rule::kGroundTruthModes;
  // kFromRun: path to a run directory or a seed log file.
  std::string run;
  std::optional<std::uint64_t> seed;
  // kParams: explicit strategies.
  std::vector<PolicyParams> params;
};

struct MetricsConfig {
  int window = 50;
  // <= 0 means "one mode stddev".
  double coverage_radius = 0.0;
  ConvergenceMode convergence_mode = ConvergenceMode::kCentroid;
};

struct ExperimentConfig {
  std::string name = "experiment";
  Game game = MakeGmmRps(3);
  int population_size = 4;
  GraphKind graph = GraphKind::kAllToAll;
  LearnerConfig learner;
  int updates_per_period = 200;
  int total_periods = 500;
  std::vector<std::uint64_t> seeds = {0};
  std::vector<EvaluatorSpec> evaluators;
  // Rollouts per entry when evaluating the population for adaptive graphs.
  int mc_samples = 32;
  // Per-coordinate stddev of the initial parameters around the game's
  // neutral point (circle center / zero logits).
  double init_stddev = 0.3;
  GraphThresholds thresholds;
  double nash_tol = kDefaultNashTolerance;
  MetricsConfig metrics;
  bool log_trajectory = true;
  std::string output_dir = "runs";
};

// Defaults that depend on the game.
inline LearnerConfig DefaultLearnerConfig(const Game& game) {
  LearnerConfig c;
  c.learning_rate = IsBlotto(game) ? 0.02 : 0.05;
  return c;
}

inline double DefaultInitStddev(const Game& game) {
  return IsBlotto(game) ? 0.1 : 0.3;
}

inline void Validate(const ExperimentConfig& c) {
  if (c.population_size < 2) {
    throw ConfigError("population_size must be >= 2");
  }
  if (c.total_periods < 1) throw ConfigError("total_periods must be >= 1");
  if (c.updates_per_period < 0) {
    throw ConfigError("updates_per_period must be >= 0");
  }
  if (c.seeds.empty()) throw ConfigError("seeds must be non-empty");
  if (c.mc_samples < 0) throw ConfigError("mc_samples must be >= 0");
  if (!(c.init_stddev >= 0.0)) throw ConfigError("init_stddev must be >= 0");
  if (c.metrics.window < 2) throw ConfigError("metrics.window must be >= 2");
  if (!(c.nash_tol > 0.0)) throw ConfigError("nash_tol must be positive");
  if (c.name.empty() || c.name.find('/') != std::string::npos) {
    throw ConfigError("name must be non-empty and contain no '/'");
  }
  Validate(c.learner);
  if (const auto* b = std::get_if<BlottoSpec>(&c.game)) Validate(*b);
  for (const auto& e : c.evaluators) {
    if (e.name.empty()) throw ConfigError("evaluator without a name");
    if (e.rule == EvaluatorSpec::Rule::kGroundTruthModes && !IsGmmRps(c.game)) {
      throw UnsupportedError(
          "ground_truth_modes evaluators need a GMM-RPS game; the Blotto "
          "strategy space is too large to enumerate");
    }
  }
}

// ---------------------------------------------------------------------------
// JSON

inline Json GameToJson(const Game& game) {
  return std::visit(
      [](const auto& spec) -> Json {
        using T = std::decay_t<decltype(spec)>;
        if constexpr (std::is_same_v<T, GmmRpsSpec>) {
          return {{"type", "gmm_rps"},
                  {"n_modes", spec.n_modes},
                  {"radius", spec.radius},
                  {"stddev", spec.mode_stddev}};
        } else if constexpr (std::is_same_v<T, BlottoSpec>) {
          return {{"type", "blotto"},
                  {"tokens", spec.tokens},
                  {"areas", spec.areas},
                  {"temperature", spec.smoothing_temperature}};
        } else {
          return {{"type", "monotone"},
                  {"dimension", spec.dimension},
                  {"rating", spec.rating.name},
                  {"link", spec.link.name}};
        }
      },
      game);
}

inline Game GameFromJson(const Json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "gmm_rps") {
    return MakeGmmRps(j.value("n_modes", 3), j.value("radius", 1.0),
                      j.value("stddev", 0.7));
  }
  if (type == "blotto") {
    BlottoSpec b;
    b.tokens = j.value("tokens", b.tokens);
    b.areas = j.value("areas", b.areas);
    b.smoothing_temperature = j.value("temperature", b.smoothing_temperature);
    Validate(b);
    return b;
  }
  if (type == "monotone") {
    return MakeMonotoneGame(j.value("dimension", 2),
                            j.value("rating", std::string("nonconvex")),
                            j.value("link", std::string("sigmoid")));
  }
  throw ConfigError("unknown game type '" + type + "'");
}

inline Json ParamsToJson(const std::vector<PolicyParams>& ps) {
  Json out = Json::array();
  for (const auto& p : ps) out.push_back(p.values);
  return out;
}

inline std::vector<PolicyParams> ParamsFromJson(const Json& j) {
  std::vector<PolicyParams> out;
  for (const auto& row : j) out.emplace_back(row.get<Vector>());
  return out;
}

inline Json EvaluatorToJson(const EvaluatorSpec& e) {
  Json j = {{"name", e.name}};
  switch (e.rule) {
    case EvaluatorSpec::Rule::kGroundTruthModes:
      j["rule"] = "ground_truth_modes";
      break;
    case EvaluatorSpec::Rule::kFromRun:
      j["rule"] = "from_run";
      j["run"] = e.run;
      if (e.seed) j["seed"] = *e.seed;
      break;
    case EvaluatorSpec::Rule::kParams:
      j["rule"] = "params";
      j["params"] = ParamsToJson(e.params);
      break;
  }
  return j;
}

inline EvaluatorSpec EvaluatorFromJson(const Json& j) {
  EvaluatorSpec e;
  e.name = j.at("name").get<std::string>();
  const std::string rule = j.at("rule").get<std::string>();
  if (rule == "ground_truth_modes") {
    e.rule = EvaluatorSpec::Rule::kGroundTruthModes;
  } else if (rule == "from_run") {
    e.rule = EvaluatorSpec::Rule::kFromRun;
    e.run = j.at("run").get<std::string>();
    if (j.contains("seed")) e.seed = j.at("seed").get<std::uint64_t>();
  } else if (rule == "params") {
    e.rule = EvaluatorSpec::Rule::kParams;
    e.params = ParamsFromJson(j.at("params"));
  } else {
    throw ConfigError("unknown evaluator rule '" + rule + "'");
  }
  return e;
}

inline Json ToJson(const ExperimentConfig& c) {
  Json evaluators = Json::array();
  for (const auto& e : c.evaluators) evaluators.push_back(EvaluatorToJson(e));
  return {
      {"name", c.name},
      {"game", GameToJson(c.game)},
      {"population_size", c.population_size},
      {"graph", ToString(c.graph)},
      {"learner",
       {{"learning_rate", c.learner.learning_rate},
        {"estimator", ToString(c.learner.estimator)},
        {"baseline_decay", c.learner.baseline_decay},
        {"exploration_stddev", c.learner.exploration_stddev},
        {"snapshot_interval", c.learner.snapshot_interval}}},
      {"updates_per_period", c.updates_per_period},
      {"total_periods", c.total_periods},
      {"seeds", c.seeds},
      {"evaluators", evaluators},
      {"mc_samples", c.mc_samples},
      {"init_stddev", c.init_stddev},
      {"tie_eps", c.thresholds.tie_eps},
      {"support_eps", c.thresholds.support_eps},
      {"nash_tol", c.nash_tol},
      {"metrics",
       {{"window", c.metrics.window},
        {"coverage_radius", c.metrics.coverage_radius},
        {"convergence_mode", ToString(c.metrics.convergence_mode)}}},
      {"log_trajectory", c.log_trajectory},
      {"output_dir", c.output_dir},
  };
}

// Parses one experiment; `graph` must be a single kind here.
inline ExperimentConfig FromJson(const Json& j) {
  try {
    ExperimentConfig c;
    c.name = j.value("name", c.name);
    if (j.contains("game")) c.game = GameFromJson(j.at("game"));
    c.learner = DefaultLearnerConfig(c.game);
    c.init_stddev = DefaultInitStddev(c.game);
    c.population_size = j.value("population_size", c.population_size);
    if (j.contains("graph")) {
      c.graph = GraphKindFromString(j.at("graph").get<std::string>());
    }
    if (j.contains("learner")) {
      const Json& l = j.at("learner");
      c.learner.learning_rate = l.value("learning_rate", c.learner.learning_rate);
      if (l.contains("estimator")) {
        c.learner.estimator =
            EstimatorFromString(l.at("estimator").get<std::string>());
      }
      c.learner.baseline_decay =
          l.value("baseline_decay", c.learner.baseline_decay);
      c.learner.exploration_stddev =
          l.value("exploration_stddev", c.learner.exploration_stddev);
      c.learner.snapshot_interval =
          l.value("snapshot_interval", c.learner.snapshot_interval);
    }
    c.updates_per_period = j.value("updates_per_period", c.updates_per_period);
    c.total_periods = j.value("total_periods", c.total_periods);
    if (j.contains("seeds")) {
      c.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    }
    if (j.contains("evaluators")) {
      for (const auto& e : j.at("evaluators")) {
        c.evaluators.push_back(EvaluatorFromJson(e));
      }
    }
    c.mc_samples = j.value("mc_samples", c.mc_samples);
    c.init_stddev = j.value("init_stddev", c.init_stddev);
    c.thresholds.tie_eps = j.value("tie_eps", c.thresholds.tie_eps);
    c.thresholds.support_eps = j.value("support_eps", c.thresholds.support_eps);
    c.nash_tol = j.value("nash_tol", c.nash_tol);
    if (j.contains("metrics")) {
      const Json& m = j.at("metrics");
      c.metrics.window = m.value("window", c.metrics.window);
      c.metrics.coverage_radius =
          m.value("coverage_radius", c.metrics.coverage_radius);
      if (m.contains("convergence_mode")) {
        c.metrics.convergence_mode = ConvergenceModeFromString(
            m.at("convergence_mode").get<std::string>());
      }
    }
    c.log_trajectory = j.value("log_trajectory", c.log_trajectory);
    c.output_dir = j.value("output_dir", c.output_dir);
    Validate(c);
    return c;
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

// A config document whose "graph" is a list expands to one experiment per
// kind, named "<name>_<kind>".
inline std::vector<ExperimentConfig> ExpandConfigs(const Json& j) {
  if (!j.contains("graph") || !j.at("graph").is_array()) return {FromJson(j)};
  std::vector<ExperimentConfig> out;
  for (const auto& kind : j.at("graph")) {
    Json one = j;
    one["graph"] = kind;
    one["name"] = j.value("name", std::string("experiment")) + "_" +
                  kind.get<std::string>();
    out.push_back(FromJson(one));
  }
  return out;
}

inline Json ReadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw InputError("'" + path + "': " + e.what());
  }
}

inline double CoverageRadius(const ExperimentConfig& c) {
  if (c.metrics.coverage_radius > 0.0) return c.metrics.coverage_radius;
  if (const auto* g = std::get_if<GmmRpsSpec>(&c.game)) return g->mode_stddev;
  return 0.0;
}

}  // namespace popgraph

#endif  // POPGRAPH_CONFIG_HPP_
