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

#ifndef POPGRAPH_GAME_HPP_
#define POPGRAPH_GAME_HPP_

// Two-player one-shot games on continuous strategy parameters:
//
//   * GMM-RPS(n): a point in the plane is mapped through n Gaussian mode pdfs
//     into an n-strategy cyclic matrix game with a 0.5 diagonal bonus.
//   * Colonel Blotto: logits over areas decode to a token allocation.
//   * Monotone games: phi(v, w) = link(rating(v) - rating(w)).
//
// All functions here are pure.

#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <numeric>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "popgraph/core.hpp"

namespace popgraph {

// An agent's deterministic strategy: a 2D point for GMM-RPS, area logits for
// Blotto, a rating-function argument for monotone games.
struct PolicyParams {
  Vector values;

  PolicyParams() = default;
  explicit PolicyParams(Vector v) : values(std::move(v)) {}
  PolicyParams(std::initializer_list<double> v) : values(v) {}

  int size() const { return static_cast<int>(values.size()); }
  double& operator[](int i) { return values[i]; }
  double operator[](int i) const { return values[i]; }
  std::span<const double> span() const { return values; }
  bool finite() const { return AllFinite(values); }

  friend bool operator==(const PolicyParams&, const PolicyParams&) = default;
};

using Point2 = std::array<double, 2>;

// ---------------------------------------------------------------------------
// GMM-RPS

struct GmmRpsSpec {
  int n_modes = 3;
  std::vector<Point2> mode_centers;
  double mode_stddev = 0.7;
  Matrix game_matrix;
  double radius = 1.0;  // circle the modes sit on, centred at the origin

  Point2 circle_center() const { return {0.0, 0.0}; }
  // Peak value of a single mode's pdf.
  double peak_density() const {
    return 1.0 / (2.0 * std::numbers::pi * mode_stddev * mode_stddev);
  }
};

// Cyclic game matrix: 0.5 on the diagonal, mode i beats the (n-1)/2 modes
// that follow it (mod n) and loses to the rest.
inline Matrix CyclicGameMatrix(int n) {
  if (n < 3 || n % 2 == 0) {
    throw ConfigError("CyclicGameMatrix: n must be odd and >= 3, got " +
                      std::to_string(n));
  }
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) {
    m(i, i) = 0.5;
    for (int k = 1; k < n; ++k) {
      m(i, (i + k) % n) = (k <= (n - 1) / 2) ? 1.0 : -1.0;
    }
  }
  return m;
}

// Modes equally spaced on a circle around the origin, mode 0 at angle pi/2,
// counter-clockwise.
inline GmmRpsSpec MakeGmmRps(int n_modes = 3, double radius = 1.0,
                             double stddev = 0.7) {
  if (!(radius > 0.0) || !(stddev > 0.0)) {
    throw ConfigError("MakeGmmRps: radius and stddev must be positive");
  }
  GmmRpsSpec spec;
  spec.n_modes = n_modes;
  spec.mode_stddev = stddev;
  spec.radius = radius;
  spec.game_matrix = CyclicGameMatrix(n_modes);
  for (int i = 0; i < n_modes; ++i) {
    const double angle =
        std::numbers::pi / 2.0 + 2.0 * std::numbers::pi * i / n_modes;
    spec.mode_centers.push_back({radius * std::cos(angle),
                                 radius * std::sin(angle)});
  }
  return spec;
}

// Isotropic bivariate Gaussian pdf of every mode at x. Not normalized across
// modes: the magnitude carries the "strength" of the strategy.
inline Vector GmmWeights(const GmmRpsSpec& spec, std::span<const double> x) {
  if (x.size() != 2) throw InputError("GmmWeights: expected a 2D point");
  if (!AllFinite(x)) throw InputError("GmmWeights: non-finite point");
  const double var = spec.mode_stddev * spec.mode_stddev;
  const double norm = spec.peak_density();
  Vector w(spec.n_modes);
  for (int i = 0; i < spec.n_modes; ++i) {
    const double dx = x[0] - spec.mode_centers[i][0];
    const double dy = x[1] - spec.mode_centers[i][1];
    w[i] = norm * std::exp(-(dx * dx + dy * dy) / (2.0 * var));
  }
  return w;
}

inline Vector GmmWeights(const GmmRpsSpec& spec, const PolicyParams& x) {
  return GmmWeights(spec, x.span());
}

// ---------------------------------------------------------------------------
// Colonel Blotto

struct BlottoSpec {
  int tokens = 100;
  int areas = 7;
  // Width of the tanh surrogate used for training only.
  double smoothing_temperature = 5.0;
};

inline void Validate(const BlottoSpec& spec) {
  if (spec.areas < 1 || spec.tokens < spec.areas) {
    throw ConfigError("BlottoSpec: need tokens >= areas >= 1");
  }
  if (!(spec.smoothing_temperature > 0.0)) {
    throw ConfigError("BlottoSpec: smoothing_temperature must be positive");
  }
}

namespace internal {
// Logits beyond this magnitude saturate the softmax anyway; clamping lets
// +/-inf through without producing NaN.
inline constexpr double kLogitClamp = 1e6;

inline Vector Softmax(std::span<const double> logits) {
  Vector s(logits.size());
  double max_logit = -INFINITY;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    if (std::isnan(logits[i])) throw InputError("Softmax: NaN logit");
    s[i] = std::clamp(logits[i], -kLogitClamp, kLogitClamp);
    max_logit = std::max(max_logit, s[i]);
  }
  double total = 0.0;
  for (double& v : s) {
    v = std::exp(v - max_logit);
    total += v;
  }
  for (double& v : s) v /= total;
  return s;
}
}  // namespace internal

// Continuous allocation tokens * softmax(params).
inline Vector ContinuousAllocation(const BlottoSpec& spec,
                                   const PolicyParams& params) {
  if (params.size() != spec.areas) {
    throw InputError("Blotto: expected " + std::to_string(spec.areas) +
                     " logits, got " + std::to_string(params.size()));
  }
  Vector alloc = internal::Softmax(params.span());
  for (double& a : alloc) a *= spec.tokens;
  return alloc;
}

// Largest-remainder rounding of the continuous allocation; ties on the
// fractional part go to the lower area index. Sums to exactly `tokens`.
inline std::vector<int> DecodeAllocation(const BlottoSpec& spec,
                                         const PolicyParams& params) {
  const Vector alloc = ContinuousAllocation(spec, params);
  const int a = spec.areas;
  std::vector<int> out(a);
  Vector frac(a);
  int assigned = 0;
  for (int i = 0; i < a; ++i) {
    const double fl = std::floor(alloc[i]);
    out[i] = static_cast<int>(fl);
    frac[i] = alloc[i] - fl;
    assigned += out[i];
  }
  std::vector<int> order(a);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int x, int y) { return frac[x] > frac[y]; });
  // Floors sum to at most `tokens`; the remainder is < a up to rounding of
  // the softmax, hence the modulo.
  int remaining = spec.tokens - assigned;
  for (int r = 0; remaining > 0; ++r, --remaining) ++out[order[r % a]];
  return out;
}

// (areas won - areas lost) / areas. Ties count for neither player.
inline double BlottoOutcome(std::span<const int> v, std::span<const int> w) {
  if (v.size() != w.size() || v.empty()) {
    throw InputError("BlottoOutcome: allocation size mismatch");
  }
  int score = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] > w[i]) ++score;
    if (v[i] < w[i]) --score;
  }
  return static_cast<double>(score) / static_cast<double>(v.size());
}

// Mean over areas of tanh((v_i - w_i) / temperature) on continuous
// allocations. Odd in (v, w) and tends to BlottoOutcome as temperature -> 0.
inline double SmoothedBlottoOutcome(std::span<const double> v,
                                    std::span<const double> w,
                                    double temperature) {
  if (!(temperature > 0.0)) {
    throw ConfigError("Blotto: smoothing temperature must be positive");
  }
  if (v.size() != w.size() || v.empty()) {
    throw InputError("SmoothedBlottoOutcome: allocation size mismatch");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    total += std::tanh((v[i] - w[i]) / temperature);
  }
  return total / static_cast<double>(v.size());
}

// ---------------------------------------------------------------------------
// Monotone games

// A scalar function of a parameter vector together with its gradient. The
// gradient may be left empty for rating functions that are not
// differentiable, in which case payoff_grad reports UnsupportedError.
struct RatingFunction {
  std::string name;
  std::function<double(std::span<const double>)> value;
  std::function<Vector(std::span<const double>)> gradient;
};

struct LinkFunction {
  std::string name;
  std::function<double(double)> value;
  std::function<double(double)> derivative;
  bool odd = false;  // link(-x) = -link(x), makes the game exactly zero-sum
};

inline RatingFunction NamedRating(const std::string& name) {
  if (name == "first_coordinate") {
    return {name, [](std::span<const double> v) { return v[0]; },
            [](std::span<const double> v) {
              Vector g(v.size(), 0.0);
              g[0] = 1.0;
              return g;
            }};
  }
  if (name == "sum") {
    return {name,
            [](std::span<const double> v) {
              return std::accumulate(v.begin(), v.end(), 0.0);
            },
            [](std::span<const double> v) { return Vector(v.size(), 1.0); }};
  }
  if (name == "nonconvex") {
    // sum_i sin(2 v_i) + 0.1 (sum_i v_i)^2: smooth, many local optima.
    return {name,
            [](std::span<const double> v) {
              double s = 0.0, total = 0.0;
              for (double x : v) {
                s += std::sin(2.0 * x);
                total += x;
              }
              return s + 0.1 * total * total;
            },
            [](std::span<const double> v) {
              const double total = std::accumulate(v.begin(), v.end(), 0.0);
              Vector g(v.size());
              for (std::size_t i = 0; i < v.size(); ++i) {
                g[i] = 2.0 * std::cos(2.0 * v[i]) + 0.2 * total;
              }
              return g;
            }};
  }
  throw ConfigError("unknown rating function '" + name + "'");
}

inline LinkFunction NamedLink(const std::string& name) {
  if (name == "identity") {
    return {name, [](double x) { return x; }, [](double) { return 1.0; },
            true};
  }
  if (name == "tanh") {
    return {name, [](double x) { return std::tanh(x); },
            [](double x) {
              const double t = std::tanh(x);
              return 1.0 - t * t;
            },
            true};
  }
  if (name == "sigmoid") {
    return {name, [](double x) { return 1.0 / (1.0 + std::exp(-x)); },
            [](double x) {
              const double s = 1.0 / (1.0 + std::exp(-x));
              return s * (1.0 - s);
            },
            false};
  }
  throw ConfigError("unknown link function '" + name + "'");
}

struct MonotoneGameSpec {
  int dimension = 2;
  RatingFunction rating = NamedRating("first_coordinate");
  LinkFunction link = NamedLink("tanh");
};

inline MonotoneGameSpec MakeMonotoneGame(int dimension,
                                         const std::string& rating,
                                         const std::string& link) {
  if (dimension < 1) throw ConfigError("MonotoneGame: dimension must be >= 1");
  return {dimension, NamedRating(rating), NamedLink(link)};
}

// ---------------------------------------------------------------------------
// Game dispatch

using Game = std::variant<GmmRpsSpec, BlottoSpec, MonotoneGameSpec>;

inline bool IsGmmRps(const Game& g) {
  return std::holds_alternative<GmmRpsSpec>(g);
}
inline bool IsBlotto(const Game& g) {
  return std::holds_alternative<BlottoSpec>(g);
}

inline int ParamDimension(const Game& game) {
  return std::visit(
      [](const auto& spec) -> int {
        using T = std::decay_t<decltype(spec)>;
        if constexpr (std::is_same_v<T, GmmRpsSpec>) return 2;
        else if constexpr (std::is_same_v<T, BlottoSpec>) return spec.areas;
        else return spec.dimension;
      },
      game);
}

// Whether payoff(v, w) = -payoff(w, v) holds for every pair.
inline bool IsZeroSum(const Game& game) {
  return std::visit(
      [](const auto& spec) -> bool {
        using T = std::decay_t<decltype(spec)>;
        if constexpr (std::is_same_v<T, GmmRpsSpec>) return false;
        else if constexpr (std::is_same_v<T, BlottoSpec>) return true;
        else return spec.link.odd;
      },
      game);
}

inline std::string GameName(const Game& game) {
  return std::visit(
      [](const auto& spec) -> std::string {
        using T = std::decay_t<decltype(spec)>;
        if constexpr (std::is_same_v<T, GmmRpsSpec>) {
          return "gmm_rps_" + std::to_string(spec.n_modes);
        } else if constexpr (std::is_same_v<T, BlottoSpec>) {
          return "blotto";
        } else {
          return "monotone";
        }
      },
      game);
}

inline void CheckParams(const Game& game, const PolicyParams& p) {
  if (p.size() != ParamDimension(game)) {
    throw InputError(GameName(game) + ": expected parameter dimension " +
                     std::to_string(ParamDimension(game)) + ", got " +
                     std::to_string(p.size()));
  }
  if (!p.finite()) throw InputError(GameName(game) + ": non-finite parameters");
}

// Evaluation payoff phi(v, w) to the first player.
inline double Payoff(const Game& game, const PolicyParams& v,
                     const PolicyParams& w) {
  CheckParams(game, v);
  CheckParams(game, w);
  return std::visit(
      [&](const auto& spec) -> double {
        using T = std::decay_t<decltype(spec)>;
        if constexpr (std::is_same_v<T, GmmRpsSpec>) {
          const Vector gv = GmmWeights(spec, v);
          const Vector gw = GmmWeights(spec, w);
          return spec.game_matrix.Bilinear(gv, gw);
        } else if constexpr (std::is_same_v<T, BlottoSpec>) {
          const auto av = DecodeAllocation(spec, v);
          const auto aw = DecodeAllocation(spec, w);
          return BlottoOutcome(av, aw);
        } else {
          return spec.link.value(spec.rating.value(v.span()) -
                                 spec.rating.value(w.span()));
        }
      },
      game);
}

// Differentiable payoff used for learning. Equal to Payoff except for Blotto,
// where the per-area win indicator is replaced by tanh(diff / temperature) on
// the continuous allocations.
inline double PayoffTrain(const Game& game, const PolicyParams& v,
                          const PolicyParams& w) {
  if (const auto* blotto = std::get_if<BlottoSpec>(&game)) {
    Validate(*blotto);
    CheckParams(game, v);
    CheckParams(game, w);
    return SmoothedBlottoOutcome(ContinuousAllocation(*blotto, v),
                                 ContinuousAllocation(*blotto, w),
                                 blotto->smoothing_temperature);
  }
  return Payoff(game, v, w);
}

// Analytic gradient of PayoffTrain(v, w) with respect to v.
inline Vector PayoffGrad(const Game& game, const PolicyParams& v,
                         const PolicyParams& w) {
  CheckParams(game, v);
  CheckParams(game, w);
  return std::visit(
      [&](const auto& spec) -> Vector {
        using T = std::decay_t<decltype(spec)>;
        if constexpr (std::is_same_v<T, GmmRpsSpec>) {
          // d/dv sum_i g_i(v) (M g(w))_i, with dg_i/dv = -g_i (v - c_i) / s^2.
          const Vector gv = GmmWeights(spec, v);
          const Vector coeff = spec.game_matrix.Apply(GmmWeights(spec, w));
          const double var = spec.mode_stddev * spec.mode_stddev;
          Vector grad(2, 0.0);
          for (int i = 0; i < spec.n_modes; ++i) {
            const double scale = -coeff[i] * gv[i] / var;
            grad[0] += scale * (v[0] - spec.mode_centers[i][0]);
            grad[1] += scale * (v[1] - spec.mode_centers[i][1]);
          }
          return grad;
        } else if constexpr (std::is_same_v<T, BlottoSpec>) {
          Validate(spec);
          const Vector share = internal::Softmax(v.span());
          const Vector aw = ContinuousAllocation(spec, w);
          const double tau = spec.smoothing_temperature;
          // d payoff / d alloc_i
          Vector dalloc(spec.areas);
          for (int i = 0; i < spec.areas; ++i) {
            const double t = std::tanh((spec.tokens * share[i] - aw[i]) / tau);
            dalloc[i] = (1.0 - t * t) / (tau * spec.areas);
          }
          // Through alloc = tokens * softmax(v).
          const double mean = Dot(share, dalloc);
          Vector grad(spec.areas);
          for (int i = 0; i < spec.areas; ++i) {
            grad[i] = spec.tokens * share[i] * (dalloc[i] - mean);
          }
          return grad;
        } else {
          if (!spec.rating.gradient || !spec.link.derivative) {
            throw UnsupportedError(
                "payoff_grad: monotone game without analytic derivatives");
          }
          const double diff =
              spec.rating.value(v.span()) - spec.rating.value(w.span());
          Vector grad = spec.rating.gradient(v.span());
          const double slope = spec.link.derivative(diff);
          for (double& g : grad) g *= slope;
          return grad;
        }
      },
      game);
}

// payoff(v, w) - payoff(w, v). For zero-sum games this is 2 * payoff(v, w);
// for general-sum GMM-RPS it is the quantity whose sign says who wins.
inline double RelativeOutcome(const Game& game, const PolicyParams& v,
                              const PolicyParams& w) {
  return Payoff(game, v, w) - Payoff(game, w, v);
}

// "v beats w": payoff(v, w) > payoff(w, v).
inline bool Beats(const Game& game, const PolicyParams& v,
                  const PolicyParams& w) {
  return RelativeOutcome(game, v, w) > 0.0;
}

}  // namespace popgraph

#endif  // POPGRAPH_GAME_HPP_
