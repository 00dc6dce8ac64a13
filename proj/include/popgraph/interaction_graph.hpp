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

#ifndef POPGRAPH_INTERACTION_GRAPH_HPP_
#define POPGRAPH_INTERACTION_GRAPH_HPP_

// Directed interaction graphs over a population. weights(i, j) is how
// strongly agent i trains on experience against agent j; j == i means agent
// i's frozen snapshot.

#include <array>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "popgraph/core.hpp"
#include "popgraph/metagame.hpp"

namespace popgraph {

enum class GraphKind {
  kAllToAll,
  kSelfPlay,
  kCycle,
  kHierarchicalCycle,
  kPsro,
  kPlayBetter,
  kPlayWorse,
  kPlayWorseAndSelf,
  kRectifiedNash,
};

inline constexpr std::array<GraphKind, 9> kAllGraphKinds = {
    GraphKind::kAllToAll,   GraphKind::kSelfPlay,
    GraphKind::kCycle,      GraphKind::kHierarchicalCycle,
    GraphKind::kPsro,       GraphKind::kPlayBetter,
    GraphKind::kPlayWorse,  GraphKind::kPlayWorseAndSelf,
    GraphKind::kRectifiedNash,
};

inline std::string ToString(GraphKind k) {
  switch (k) {
    case GraphKind::kAllToAll: return "all_to_all";
    case GraphKind::kSelfPlay: return "self_play";
    case GraphKind::kCycle: return "cycle";
    case GraphKind::kHierarchicalCycle: return "hierarchical_cycle";
    case GraphKind::kPsro: return "psro";
    case GraphKind::kPlayBetter: return "play_better";
    case GraphKind::kPlayWorse: return "play_worse";
    case GraphKind::kPlayWorseAndSelf: return "play_worse_and_self";
    case GraphKind::kRectifiedNash: return "rectified_nash";
  }
  return "unknown";
}

inline GraphKind GraphKindFromString(const std::string& s) {
  for (GraphKind k : kAllGraphKinds)
    if (ToString(k) == s) return k;
  throw ConfigError("unknown graph kind '" + s + "'");
}

inline bool IsAdaptive(GraphKind k) {
  return k == GraphKind::kPlayBetter || k == GraphKind::kPlayWorse ||
         k == GraphKind::kPlayWorseAndSelf || k == GraphKind::kRectifiedNash;
}

struct GraphThresholds {
  double tie_eps = 1e-6;
  double support_eps = 1e-6;
};

class InteractionGraph {
 public:
  InteractionGraph() = default;

  // Takes any nonnegative finite matrix; all-zero rows become self-play.
  // The rows that needed the fallback are kept for logging.
  explicit InteractionGraph(Matrix weights) : weights_(std::move(weights)) {
    if (!weights_.square() || weights_.rows() == 0) {
      throw InputError("InteractionGraph: weights must be square, non-empty");
    }
    for (double w : weights_.data()) {
      if (!std::isfinite(w) || w < 0.0) {
        throw InputError("InteractionGraph: weights must be finite and >= 0");
      }
    }
    for (int i = 0; i < size(); ++i) {
      bool any = false;
      for (double w : weights_.row(i)) any = any || w > 0.0;
      if (!any) {
        weights_(i, i) = 1.0;
        fallback_rows_.push_back(i);
      }
    }
  }

  int size() const { return weights_.rows(); }
  const Matrix& weights() const { return weights_; }
  double operator()(int i, int j) const { return weights_(i, j); }
  const std::vector<int>& fallback_rows() const { return fallback_rows_; }

  friend bool operator==(const InteractionGraph& a, const InteractionGraph& b) {
    return a.weights_ == b.weights_;
  }

 private:
  Matrix weights_;
  std::vector<int> fallback_rows_;
};

inline InteractionGraph BuildFixed(GraphKind kind, int n) {
  if (IsAdaptive(kind)) {
    throw UnsupportedError("BuildFixed: '" + ToString(kind) +
                           "' is adaptive; use UpdateAdaptive");
  }
  if (n < 2) throw ConfigError("BuildFixed: population size must be >= 2");
  Matrix w(n, n);
  switch (kind) {
    case GraphKind::kAllToAll:
      w = Matrix(n, n, 1.0);
      break;
    case GraphKind::kSelfPlay:
      w = Matrix::Identity(n);
      break;
    case GraphKind::kCycle:
      for (int i = 0; i < n; ++i) w(i, (i + 1) % n) = 1.0;
      break;
    case GraphKind::kHierarchicalCycle:
      // Cycle over 0..n-2; the last agent trains against all of them.
      if (n == 2) {
        w(0, 0) = 1.0;
      } else {
        for (int i = 0; i < n - 1; ++i) w(i, (i + 1) % (n - 1)) = 1.0;
      }
      for (int j = 0; j < n - 1; ++j) w(n - 1, j) = 1.0;
      break;
    case GraphKind::kPsro:
      // Everyone plays all lower indices; agent 0 gets the self-play fallback.
      for (int i = 1; i < n; ++i)
        for (int j = 0; j < i; ++j) w(i, j) = 1.0;
      break;
    default:
      break;
  }
  return InteractionGraph(std::move(w));
}

// Recompute an adaptive graph from the population's self-play payoff matrix.
// The matrix must carry the sign of "who beats whom" (for general-sum games
// pass RelativeOutcomeMatrix). `nash` is only read for rectified Nash.
inline InteractionGraph UpdateAdaptive(GraphKind kind,
                                       const PayoffMatrix& payoff,
                                       const MixedStrategy& nash,
                                       const GraphThresholds& th = {}) {
  if (!IsAdaptive(kind)) {
    throw UnsupportedError("UpdateAdaptive: '" + ToString(kind) +
                           "' is a fixed graph");
  }
  if (!payoff.entries.square() || payoff.rows() == 0) {
    throw InputError("UpdateAdaptive: payoff matrix must be square");
  }
  if (!payoff.entries.AllFinite()) {
    throw InputError("UpdateAdaptive: payoff matrix has non-finite entries");
  }
  const int n = payoff.rows();
  if (kind == GraphKind::kRectifiedNash && nash.size() != n) {
    throw InputError("UpdateAdaptive: Nash size does not match population");
  }
  Matrix w(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double a = payoff(i, j);
      switch (kind) {
        case GraphKind::kPlayBetter:
          w(i, j) = a < -th.tie_eps ? 1.0 : 0.0;
          break;
        case GraphKind::kPlayWorse:
        case GraphKind::kPlayWorseAndSelf:
          w(i, j) = a > th.tie_eps ? 1.0 : 0.0;
          break;
        case GraphKind::kRectifiedNash:
          if (nash[i] > th.support_eps) {
            w(i, j) = a >= -th.tie_eps ? 1.0 : 0.0;
          } else {
            w(i, j) = i == j ? 1.0 : 0.0;
          }
          break;
        default:
          break;
      }
    }
    if (kind == GraphKind::kPlayWorseAndSelf) w(i, i) = 1.0;
  }
  return InteractionGraph(std::move(w));
}

// Learner uniform over agents, opponent proportional to the learner's row.
inline std::pair<int, int> SamplePair(const InteractionGraph& graph,
                                      RngStream& rng) {
  const int n = graph.size();
  std::uniform_int_distribution<int> pick(0, n - 1);
  const int learner = pick(rng);
  const auto row = graph.weights().row(learner);
  double total = 0.0;
  for (double w : row) total += w;
  std::uniform_real_distribution<double> u(0.0, total);
  const double target = u(rng);
  double acc = 0.0;
  int last_positive = learner;
  for (int j = 0; j < n; ++j) {
    if (row[j] <= 0.0) continue;
    acc += row[j];
    last_positive = j;
    if (target < acc) return {learner, j};
  }
  return {learner, last_positive};
}

}  // namespace popgraph

#endif  // POPGRAPH_INTERACTION_GRAPH_HPP_
