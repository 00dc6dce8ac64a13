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

#ifndef POPGRAPH_LEARNER_HPP_
#define POPGRAPH_LEARNER_HPP_

// One-step policy-gradient agents. Every game here is stateless, so an
// actor-critic update collapses to REINFORCE with a scalar running baseline;
// the exact-gradient estimator skips sampling altogether.

#include <random>
#include <string>

#include "popgraph/core.hpp"
#include "popgraph/game.hpp"

namespace popgraph {

enum class Estimator { kExactGradient, kScoreFunction };

inline std::string ToString(Estimator e) {
  return e == Estimator::kExactGradient ? "exact_gradient" : "score_function";
}

inline Estimator EstimatorFromString(const std::string& s) {
  if (s == "exact_gradient") return Estimator::kExactGradient;
  if (s == "score_function") return Estimator::kScoreFunction;
  throw ConfigError("unknown estimator '" + s + "'");
}

struct LearnerConfig {
  double learning_rate = 0.05;
  Estimator estimator = Estimator::kExactGradient;
  double baseline_decay = 0.9;
  double exploration_stddev = 0.1;
  // Measured in graph-update periods.
  int snapshot_interval = 5;
};

inline void Validate(const LearnerConfig& c) {
  if (!(c.learning_rate >= 0.0) || !std::isfinite(c.learning_rate)) {
    throw ConfigError("learner: learning_rate must be finite and >= 0");
  }
  if (!(c.baseline_decay >= 0.0 && c.baseline_decay < 1.0)) {
    throw ConfigError("learner: baseline_decay must lie in [0, 1)");
  }
  if (!(c.exploration_stddev >= 0.0) || !std::isfinite(c.exploration_stddev)) {
    throw ConfigError("learner: exploration_stddev must be finite and >= 0");
  }
  if (c.estimator == Estimator::kScoreFunction &&
      !(c.exploration_stddev > 0.0)) {
    throw ConfigError("learner: score_function needs exploration_stddev > 0");
  }
  if (c.snapshot_interval < 1) {
    throw ConfigError("learner: snapshot_interval must be >= 1");
  }
}

struct Agent {
  int id = 0;
  PolicyParams params;
  double exploration_stddev = 0.1;
  double baseline = 0.0;
  // Frozen past copy used when the agent is its own opponent.
  PolicyParams snapshot;

  void TakeSnapshot() { snapshot = params; }
};

inline Agent MakeAgent(int id, PolicyParams params, double exploration_stddev) {
  Agent a;
  a.id = id;
  a.params = std::move(params);
  a.exploration_stddev = exploration_stddev;
  a.snapshot = a.params;
  return a;
}

// Gaussian perturbation of `params`, one draw per coordinate.
inline PolicyParams SampleAction(const PolicyParams& params, double stddev,
                                 RngStream& rng) {
  if (stddev < 0.0) throw ConfigError("SampleAction: negative stddev");
  if (stddev == 0.0) return params;
  std::normal_distribution<double> noise(0.0, stddev);
  PolicyParams action = params;
  for (double& x : action.values) x += noise(rng);
  return action;
}

inline PolicyParams SampleAction(const Agent& agent, RngStream& rng) {
  return SampleAction(agent.params, agent.exploration_stddev, rng);
}

struct UpdateResult {
  Agent agent;
  bool skipped = false;
  std::string reason;
};

// One learning step for `agent` against a fixed opponent strategy. Only the
// returned agent differs from the input; the opponent is never touched.
inline UpdateResult Update(const Agent& agent,
                           const PolicyParams& opponent_params,
                           const Game& game, const LearnerConfig& config,
                           RngStream& rng) {
  CheckParams(game, opponent_params);
  UpdateResult result{agent, false, {}};
  Agent& next = result.agent;

  Vector step;
  double reward = 0.0;
  if (config.estimator == Estimator::kExactGradient) {
    step = PayoffGrad(game, agent.params, opponent_params);
  } else {
    const double s = agent.exploration_stddev;
    const PolicyParams action = SampleAction(agent, rng);
    const PolicyParams opponent_action =
        SampleAction(opponent_params, s, rng);
    reward = PayoffTrain(game, action, opponent_action);
    const double advantage = reward - agent.baseline;
    step.resize(action.size());
    // grad_mu log N(a; mu, s^2) = (a - mu) / s^2
    for (int i = 0; i < action.size(); ++i) {
      step[i] = advantage * (action[i] - agent.params[i]) / (s * s);
    }
  }

  if (!AllFinite(step) || !std::isfinite(reward)) {
    result.skipped = true;
    result.reason = "non-finite gradient";
    return result;
  }
  for (int i = 0; i < next.params.size(); ++i) {
    next.params[i] += config.learning_rate * step[i];
  }
  if (config.estimator == Estimator::kScoreFunction) {
    next.baseline = config.baseline_decay * agent.baseline +
                    (1.0 - config.baseline_decay) * reward;
  }
  if (!next.params.finite()) {
    result.agent = agent;
    result.skipped = true;
    result.reason = "non-finite parameters after step";
  }
  return result;
}

}  // namespace popgraph

#endif  // POPGRAPH_LEARNER_HPP_
