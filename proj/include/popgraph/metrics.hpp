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

#ifndef POPGRAPH_METRICS_HPP_
#define POPGRAPH_METRICS_HPP_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "popgraph/core.hpp"
#include "popgraph/game.hpp"

namespace popgraph {

// Per-agent time series of mean policies, one point per graph-update period.
class TrajectoryLog {
 public:
  TrajectoryLog() = default;
  explicit TrajectoryLog(int num_agents) : series_(num_agents) {}

  void Append(int period, const std::vector<PolicyParams>& points) {
    if (static_cast<int>(points.size()) != num_agents()) {
      throw InputError("TrajectoryLog: expected one point per agent");
    }
    if (!periods_.empty() && period <= periods_.back()) {
      throw InputError("TrajectoryLog: periods must be strictly increasing");
    }
    periods_.push_back(period);
    for (int a = 0; a < num_agents(); ++a) series_[a].push_back(points[a]);
  }

  int num_agents() const { return static_cast<int>(series_.size()); }
  int length() const { return static_cast<int>(periods_.size()); }
  const std::vector<int>& periods() const { return periods_; }
  const std::vector<PolicyParams>& agent(int a) const { return series_[a]; }

  // The last `window` points of agent a.
  std::span<const PolicyParams> Window(int a, int window) const {
    const auto& s = series_[a];
    return std::span<const PolicyParams>(s).last(window);
  }

 private:
  std::vector<int> periods_;
  std::vector<std::vector<PolicyParams>> series_;
};

enum class ConvergenceMode {
  kCentroid,    // RMSD of the windowed points from their centroid
  kSuccessive,  // RMS of consecutive displacements
};

inline std::string ToString(ConvergenceMode m) {
  return m == ConvergenceMode::kCentroid ? "centroid" : "successive";
}

inline ConvergenceMode ConvergenceModeFromString(const std::string& s) {
  if (s == "centroid") return ConvergenceMode::kCentroid;
  if (s == "successive") return ConvergenceMode::kSuccessive;
  throw ConfigError("unknown convergence mode '" + s + "'");
}

inline PolicyParams Centroid(std::span<const PolicyParams> points) {
  PolicyParams c(Vector(points.front().size(), 0.0));
  for (const auto& p : points)
    for (int k = 0; k < c.size(); ++k) c[k] += p[k];
  for (double& v : c.values) v /= static_cast<double>(points.size());
  return c;
}

// Negative RMSD averaged over agents; 0 means every agent sat still.
inline double Convergence(const TrajectoryLog& traj, int window,
                          ConvergenceMode mode = ConvergenceMode::kCentroid) {
  if (window < 2) throw InputError("Convergence: window must be >= 2");
  if (window > traj.length()) {
    throw InputError("Convergence: window " + std::to_string(window) +
                     " exceeds trajectory length " +
                     std::to_string(traj.length()));
  }
  if (traj.num_agents() == 0) throw InputError("Convergence: no agents");
  double total = 0.0;
  for (int a = 0; a < traj.num_agents(); ++a) {
    const auto pts = traj.Window(a, window);
    double sq = 0.0;
    if (mode == ConvergenceMode::kCentroid) {
      const PolicyParams c = Centroid(pts);
      for (const auto& p : pts) {
        const double d = Distance(p.span(), c.span());
        sq += d * d;
      }
      sq /= static_cast<double>(pts.size());
    } else {
      for (std::size_t t = 1; t < pts.size(); ++t) {
        const double d = Distance(pts[t].span(), pts[t - 1].span());
        sq += d * d;
      }
      sq /= static_cast<double>(pts.size() - 1);
    }
    total += std::sqrt(sq);
  }
  return -total / traj.num_agents();
}

// Fraction of modes with some agent's windowed mean policy within `radius` of
// the mode center.
inline double CoverageOfPoints(const std::vector<PolicyParams>& points,
                               const GmmRpsSpec& spec, double radius) {
  if (!(radius > 0.0)) throw InputError("Coverage: radius must be positive");
  int covered = 0;
  for (const auto& c : spec.mode_centers) {
    for (const auto& p : points) {
      if (Distance(p.span(), c) <= radius) {
        ++covered;
        break;
      }
    }
  }
  return static_cast<double>(covered) / spec.n_modes;
}

inline double Coverage(const TrajectoryLog& traj, const GmmRpsSpec& spec,
                       double radius, int window) {
  if (window < 1 || window > traj.length()) {
    throw InputError("Coverage: window must lie in [1, trajectory length]");
  }
  std::vector<PolicyParams> means;
  for (int a = 0; a < traj.num_agents(); ++a) {
    means.push_back(Centroid(traj.Window(a, window)));
  }
  return CoverageOfPoints(means, spec, radius);
}

inline double Coverage(const TrajectoryLog& traj, const Game& game,
                       double radius, int window) {
  const auto* spec = std::get_if<GmmRpsSpec>(&game);
  if (spec == nullptr) {
    throw UnsupportedError("Coverage: only defined for GMM-RPS games");
  }
  return Coverage(traj, *spec, radius, window);
}

struct MetricsRecord {
  int period = 0;
  double effective_diversity = 0.0;
  std::map<std::string, double> rpp_vs_evaluators;
  double convergence = 0.0;
  std::optional<double> coverage;  // GMM-RPS only
  int graph_snapshot_ref = 0;      // period at which the graph was built
};

}  // namespace popgraph

#endif  // POPGRAPH_METRICS_HPP_
