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

#ifndef POPGRAPH_METAGAME_HPP_
#define POPGRAPH_METAGAME_HPP_

// Empirical game theory on populations: evaluation matrices, zero-sum Nash
// via linear programming, relative population performance and effective
// diversity.
//
// Convention: the row player receives A(i, j) and maximizes it; the column
// player minimizes it.

#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "popgraph/core.hpp"
#include "popgraph/game.hpp"
#include "popgraph/learner.hpp"

namespace popgraph {

inline constexpr double kDefaultNashTolerance = 1e-8;
inline constexpr double kAntisymmetryTolerance = 1e-9;

struct PayoffMatrix {
  Matrix entries;
  std::vector<int> row_labels;
  std::vector<int> col_labels;
  int mc_samples = 0;

  int rows() const { return entries.rows(); }
  int cols() const { return entries.cols(); }
  double operator()(int i, int j) const { return entries(i, j); }
};

// Wraps a raw matrix with labels 0..n-1.
inline PayoffMatrix MakePayoffMatrix(Matrix entries) {
  PayoffMatrix a;
  a.row_labels.resize(entries.rows());
  a.col_labels.resize(entries.cols());
  std::iota(a.row_labels.begin(), a.row_labels.end(), 0);
  std::iota(a.col_labels.begin(), a.col_labels.end(), 0);
  a.entries = std::move(entries);
  return a;
}

struct MixedStrategy {
  Vector probabilities;
  double support_eps = 1e-6;

  int size() const { return static_cast<int>(probabilities.size()); }
  double operator[](int i) const { return probabilities[i]; }
  bool InSupport(int i) const { return probabilities[i] > support_eps; }
  std::vector<int> Support() const {
    std::vector<int> s;
    for (int i = 0; i < size(); ++i)
      if (InSupport(i)) s.push_back(i);
    return s;
  }
};

inline MixedStrategy Uniform(int n) {
  return {Vector(n, 1.0 / n)};
}

struct NashSolution {
  MixedStrategy row;
  MixedStrategy col;
  double value = 0.0;
  double exploitability = 0.0;
};

class SolverError : public Error {
 public:
  SolverError(const std::string& what, NashSolution best)
      : Error(what), best_(std::move(best)) {}
  const NashSolution& best() const { return best_; }

 private:
  NashSolution best_;
};

struct NashOptions {
  double tol = kDefaultNashTolerance;
  // Simplex pivot budget.
  std::int64_t max_iterations = 1'000'000;
};

// Sum of both players' gains from a best pure deviation:
//   max_i (A q)_i - min_j (p^T A)_j  >= 0, zero exactly at equilibrium.
inline double Exploitability(const Matrix& a, std::span<const double> p,
                             std::span<const double> q) {
  const Vector aq = a.Apply(q);
  const Vector pa = a.ApplyLeft(p);
  return *std::max_element(aq.begin(), aq.end()) -
         *std::min_element(pa.begin(), pa.end());
}

namespace internal {

inline Vector NormalizeDistribution(Vector x) {
  double total = 0.0;
  for (double& v : x) {
    if (!(v > 0.0)) v = 0.0;
    total += v;
  }
  if (total <= 0.0) return Vector(x.size(), 1.0 / x.size());
  for (double& v : x) v /= total;
  return x;
}

// Dense tableau simplex for
//   max 1^T y  s.t.  B y <= 1, y >= 0,       (B > 0 entrywise)
// whose dual min 1^T x s.t. B^T x >= 1 gives the row strategy. Bland's rule
// makes the pivot sequence, and hence the returned equilibrium, a
// deterministic function of the matrix.
struct SimplexResult {
  Vector x;  // dual (row player), unnormalized
  Vector y;  // primal (column player), unnormalized
  bool converged = false;
};

inline SimplexResult SolvePositiveGameLp(const Matrix& b,
                                         std::int64_t max_iterations) {
  const int m = b.rows();
  const int n = b.cols();
  const int width = n + m + 1;
  const int rhs = n + m;
  constexpr double kPivotEps = 1e-12;

  Matrix t(m + 1, width);
  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) t(i, j) = b(i, j);
    t(i, n + i) = 1.0;
    t(i, rhs) = 1.0;
    basis[i] = n + i;
  }
  for (int j = 0; j < n; ++j) t(m, j) = -1.0;

  SimplexResult result;
  for (std::int64_t iter = 0; iter < max_iterations; ++iter) {
    int enter = -1;
    for (int j = 0; j < n + m; ++j) {
      if (t(m, j) < -kPivotEps) {
        enter = j;
        break;
      }
    }
    if (enter < 0) {
      result.converged = true;
      break;
    }
    int leave = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
      if (t(i, enter) > kPivotEps) {
        const double ratio = t(i, rhs) / t(i, enter);
        if (ratio < best_ratio - 1e-15 ||
            (std::abs(ratio - best_ratio) <= 1e-15 && leave >= 0 &&
             basis[i] < basis[leave])) {
          best_ratio = ratio;
          leave = i;
        }
      }
    }
    if (leave < 0) break;  // unbounded; cannot happen for B > 0

    const double pivot = t(leave, enter);
    for (int j = 0; j < width; ++j) t(leave, j) /= pivot;
    for (int i = 0; i <= m; ++i) {
      if (i == leave) continue;
      const double factor = t(i, enter);
      if (factor == 0.0) continue;
      for (int j = 0; j < width; ++j) t(i, j) -= factor * t(leave, j);
    }
    basis[leave] = enter;
  }

  result.y.assign(n, 0.0);
  for (int i = 0; i < m; ++i) {
    if (basis[i] < n) result.y[basis[i]] = t(i, rhs);
  }
  result.x.assign(m, 0.0);
  for (int i = 0; i < m; ++i) result.x[i] = t(m, n + i);
  return result;
}

}  // namespace internal

// Minimax equilibrium of the zero-sum game with row payoff A. Antisymmetric
// matrices get a symmetric solution (p, p) with value 0. Throws SolverError,
// carrying the best solution found, if the certified exploitability exceeds
// options.tol.
inline NashSolution SolveNash(const Matrix& a, const NashOptions& options = {}) {
  if (a.rows() == 0 || a.cols() == 0) {
    throw InputError("SolveNash: empty matrix");
  }
  if (!a.AllFinite()) throw InputError("SolveNash: non-finite entries");

  double min_entry = a(0, 0);
  for (double v : a.data()) min_entry = std::min(min_entry, v);
  const double shift = 1.0 - min_entry;
  Matrix b = a;
  for (int i = 0; i < a.rows(); ++i)
    for (double& v : b.row(i)) v += shift;

  const internal::SimplexResult lp =
      internal::SolvePositiveGameLp(b, options.max_iterations);

  NashSolution sol;
  sol.row.probabilities = internal::NormalizeDistribution(lp.x);
  const bool symmetric =
      a.square() && AntisymmetryDefect(a) <= kAntisymmetryTolerance;
  if (symmetric) {
    sol.col.probabilities = sol.row.probabilities;
    sol.value = 0.0;
  } else {
    sol.col.probabilities = internal::NormalizeDistribution(lp.y);
    sol.value = a.Bilinear(sol.row.probabilities, sol.col.probabilities);
  }
  sol.exploitability =
      Exploitability(a, sol.row.probabilities, sol.col.probabilities);

  if (!lp.converged) {
    throw SolverError("SolveNash: iteration budget exhausted", sol);
  }
  if (!(sol.exploitability <= options.tol)) {
    throw SolverError("SolveNash: exploitability " +
                          std::to_string(sol.exploitability) +
                          " above tolerance",
                      sol);
  }
  return sol;
}

inline NashSolution SolveNash(const PayoffMatrix& a,
                              const NashOptions& options = {}) {
  return SolveNash(a.entries, options);
}

// Nash-weighted payoff p^T A q of the row population against the column
// population.
inline double RelativePopulationPerformance(const PayoffMatrix& a,
                                            const NashOptions& options = {}) {
  return SolveNash(a, options).value;
}

// p^T relu(A) p for the self-play matrix of a zero-sum game.
inline double EffectiveDiversity(const PayoffMatrix& a,
                                 const NashOptions& options = {}) {
  if (!a.entries.square() ||
      AntisymmetryDefect(a.entries) >
          kAntisymmetryTolerance * std::max(1.0, a.entries.MaxAbs())) {
    throw InputError(
        "EffectiveDiversity: matrix is not antisymmetric; use "
        "EffectiveDiversityGeneral for general-sum games");
  }
  const NashSolution nash = SolveNash(a, options);
  const Vector& p = nash.row.probabilities;
  double d = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      d += p[i] * p[j] * std::max(a(i, j), 0.0);
  return d;
}

// p^T relu(A - u) q with (p, q, u) the Nash of A. Reduces to
// EffectiveDiversity on antisymmetric inputs.
inline double EffectiveDiversityGeneral(const PayoffMatrix& a,
                                        const NashOptions& options = {}) {
  const NashSolution nash = SolveNash(a, options);
  const Vector& p = nash.row.probabilities;
  const Vector& q = nash.col.probabilities;
  double d = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      d += p[i] * q[j] * std::max(a(i, j) - nash.value, 0.0);
  return d;
}

// Worst case of the mixture v over the evaluator columns: min_j (v^T A)_j.
inline double PerformanceVsEvaluators(const MixedStrategy& v,
                                      const PayoffMatrix& a) {
  if (a.cols() == 0) throw InputError("PerformanceVsEvaluators: no evaluators");
  if (v.size() != a.rows()) {
    throw InputError("PerformanceVsEvaluators: mixture size != rows");
  }
  const Vector va = a.entries.ApplyLeft(v.probabilities);
  return *std::min_element(va.begin(), va.end());
}

// ---------------------------------------------------------------------------
// Building evaluation matrices.

// Entry (i, j) = payoff(P_i, Q_j) on the deterministic strategies when
// mc_samples == 0, else the mean over mc_samples rollouts where both sides act
// through SampleAction. Each entry draws from its own sub-stream of a seed
// taken from `rng`, so entries may be evaluated in any order.
inline PayoffMatrix BuildPayoffMatrix(const std::vector<Agent>& p,
                                      const std::vector<Agent>& q,
                                      const Game& game, int mc_samples,
                                      RngStream& rng) {
  if (p.empty() || q.empty()) {
    throw InputError("BuildPayoffMatrix: empty population");
  }
  if (mc_samples < 0) throw ConfigError("BuildPayoffMatrix: mc_samples < 0");
  const std::uint64_t base = rng();
  PayoffMatrix a;
  a.entries = Matrix(static_cast<int>(p.size()), static_cast<int>(q.size()));
  a.mc_samples = mc_samples;
  for (const Agent& x : p) a.row_labels.push_back(x.id);
  for (const Agent& x : q) a.col_labels.push_back(x.id);
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) {
      if (mc_samples == 0) {
        a.entries(i, j) = Payoff(game, p[i].params, q[j].params);
        continue;
      }
      RngStream entry_rng = MakeStream(base, StreamPurpose::kUser, i, j);
      double total = 0.0;
      for (int s = 0; s < mc_samples; ++s) {
        const PolicyParams av = SampleAction(p[i], entry_rng);
        const PolicyParams aw = SampleAction(q[j], entry_rng);
        total += Payoff(game, av, aw);
      }
      a.entries(i, j) = total / mc_samples;
    }
  }
  return a;
}

// Deterministic evaluation of strategies without agent bookkeeping.
inline PayoffMatrix BuildPayoffMatrix(const std::vector<PolicyParams>& p,
                                      const std::vector<PolicyParams>& q,
                                      const Game& game) {
  if (p.empty() || q.empty()) {
    throw InputError("BuildPayoffMatrix: empty population");
  }
  Matrix m(static_cast<int>(p.size()), static_cast<int>(q.size()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) m(i, j) = Payoff(game, p[i], q[j]);
  return MakePayoffMatrix(std::move(m));
}

// R = A - A^T for a self-play matrix: antisymmetric, and positive exactly
// where the row agent beats the column agent.
inline PayoffMatrix RelativeOutcomeMatrix(const PayoffMatrix& self_play) {
  if (!self_play.entries.square()) {
    throw InputError("RelativeOutcomeMatrix: matrix must be square");
  }
  PayoffMatrix r = self_play;
  const int n = self_play.rows();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      r.entries(i, j) = self_play(i, j) - self_play(j, i);
  return r;
}

}  // namespace popgraph

#endif  // POPGRAPH_METAGAME_HPP_
