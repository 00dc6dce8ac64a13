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

#include "popgraph/interaction_graph.hpp"

#include <gtest/gtest.h>

#include <random>
#include <vector>

namespace popgraph {
namespace {

const Matrix kRps = {{0, 1, -1}, {-1, 0, 1}, {1, -1, 0}};

bool RowsPositive(const InteractionGraph& g) {
  for (int i = 0; i < g.size(); ++i) {
    double total = 0.0;
    for (double w : g.weights().row(i)) {
      if (!(w >= 0.0) || !std::isfinite(w)) return false;
      total += w;
    }
    if (!(total > 0.0)) return false;
  }
  return true;
}

Matrix RandomAntisymmetric(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(-2, 2);
  Matrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      a(i, j) = 0.5 * pick(rng);
      a(j, i) = -a(i, j);
    }
  return a;
}

TEST(BuildFixedTest, Cycle) {
  EXPECT_EQ(BuildFixed(GraphKind::kCycle, 4).weights(),
            (Matrix{{0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {1, 0, 0, 0}}));
}

TEST(BuildFixedTest, SelfPlayIsIdentity) {
  EXPECT_EQ(BuildFixed(GraphKind::kSelfPlay, 3).weights(), Matrix::Identity(3));
}

TEST(BuildFixedTest, AllToAllIncludesDiagonal) {
  EXPECT_EQ(BuildFixed(GraphKind::kAllToAll, 3).weights(), Matrix(3, 3, 1.0));
}

TEST(BuildFixedTest, PsroFirstAgentFallsBackToSelfPlay) {
  const InteractionGraph g = BuildFixed(GraphKind::kPsro, 4);
  EXPECT_EQ(g.weights(),
            (Matrix{{1, 0, 0, 0}, {1, 0, 0, 0}, {1, 1, 0, 0}, {1, 1, 1, 0}}));
  EXPECT_EQ(g.fallback_rows(), std::vector<int>{0});
  EXPECT_TRUE(RowsPositive(g));
}

TEST(BuildFixedTest, HierarchicalCycle) {
  EXPECT_EQ(BuildFixed(GraphKind::kHierarchicalCycle, 4).weights(),
            (Matrix{{0, 1, 0, 0}, {0, 0, 1, 0}, {1, 0, 0, 0}, {1, 1, 1, 0}}));
  EXPECT_EQ(BuildFixed(GraphKind::kHierarchicalCycle, 2).weights(),
            (Matrix{{1, 0}, {1, 0}}));
}

TEST(BuildFixedTest, RowPositiveAndIdempotent) {
  for (GraphKind k : kAllGraphKinds) {
    if (IsAdaptive(k)) continue;
    for (int n = 2; n <= 9; ++n) {
      const InteractionGraph g = BuildFixed(k, n);
      EXPECT_TRUE(RowsPositive(g)) << ToString(k) << " n=" << n;
      EXPECT_EQ(g, BuildFixed(k, n));
    }
  }
}

TEST(BuildFixedTest, Errors) {
  EXPECT_THROW(BuildFixed(GraphKind::kPlayBetter, 4), UnsupportedError);
  EXPECT_THROW(BuildFixed(GraphKind::kRectifiedNash, 4), UnsupportedError);
  EXPECT_THROW(BuildFixed(GraphKind::kCycle, 1), ConfigError);
}

TEST(UpdateAdaptiveTest, PlayBetterOnRps) {
  const InteractionGraph g = UpdateAdaptive(
      GraphKind::kPlayBetter, MakePayoffMatrix(kRps), Uniform(3));
  EXPECT_EQ(g.weights(), (Matrix{{0, 0, 1}, {1, 0, 0}, {0, 1, 0}}));
  EXPECT_TRUE(g.fallback_rows().empty());
}

TEST(UpdateAdaptiveTest, PlayWorseOnRps) {
  const InteractionGraph g = UpdateAdaptive(
      GraphKind::kPlayWorse, MakePayoffMatrix(kRps), Uniform(3));
  EXPECT_EQ(g.weights(), (Matrix{{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}));
  const InteractionGraph s = UpdateAdaptive(
      GraphKind::kPlayWorseAndSelf, MakePayoffMatrix(kRps), Uniform(3));
  EXPECT_EQ(s.weights(), (Matrix{{1, 1, 0}, {0, 1, 1}, {1, 0, 1}}));
}

TEST(UpdateAdaptiveTest, RectifiedNashOnRpsBeatOrTie) {
  const PayoffMatrix a = MakePayoffMatrix(kRps);
  const InteractionGraph g =
      UpdateAdaptive(GraphKind::kRectifiedNash, a, Uniform(3));
  // Entrywise beat-or-tie rule.
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      EXPECT_EQ(g(i, j), kRps(i, j) >= -1e-6 ? 1.0 : 0.0);
  EXPECT_EQ(g.weights(), (Matrix{{1, 1, 0}, {0, 1, 1}, {1, 0, 1}}));
}

TEST(UpdateAdaptiveTest, RectifiedNashOutsideSupportSelfPlays) {
  const PayoffMatrix a = MakePayoffMatrix(kRps);
  const MixedStrategy nash{{1.0, 0.0, 0.0}};
  const InteractionGraph g = UpdateAdaptive(GraphKind::kRectifiedNash, a, nash);
  EXPECT_EQ(g.weights(), (Matrix{{1, 1, 0}, {0, 1, 0}, {0, 0, 1}}));
  EXPECT_THROW(UpdateAdaptive(GraphKind::kRectifiedNash, a, Uniform(2)),
               InputError);
}

TEST(UpdateAdaptiveTest, UndefeatedAgentFallsBack) {
  // Agent 0 beats everyone, so nobody beats it under play_better.
  const Matrix a = {{0, 1, 1}, {-1, 0, 1}, {-1, -1, 0}};
  const InteractionGraph g =
      UpdateAdaptive(GraphKind::kPlayBetter, MakePayoffMatrix(a), Uniform(3));
  EXPECT_EQ(g.fallback_rows(), std::vector<int>{0});
  EXPECT_EQ(g(0, 0), 1.0);
  EXPECT_TRUE(RowsPositive(g));
}

TEST(UpdateAdaptiveTest, TiesWithinEpsilonAreNotEdges) {
  const Matrix a = {{0, 5e-7}, {-5e-7, 0}};
  const InteractionGraph g =
      UpdateAdaptive(GraphKind::kPlayWorse, MakePayoffMatrix(a), Uniform(2));
  EXPECT_EQ(g.weights(), Matrix::Identity(2));
  EXPECT_EQ(g.fallback_rows().size(), 2);
}

TEST(UpdateAdaptiveTest, PlayBetterMirrorsPlayWorse) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 100; ++t) {
    const int n = 2 + t % 7;
    const PayoffMatrix a = MakePayoffMatrix(RandomAntisymmetric(n, rng));
    const Matrix better =
        UpdateAdaptive(GraphKind::kPlayBetter, a, Uniform(n)).weights();
    const Matrix worse =
        UpdateAdaptive(GraphKind::kPlayWorse, a, Uniform(n)).weights();
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i != j) {
          EXPECT_EQ(better(i, j), worse(j, i));
        }
      }
    }
  }
}

TEST(UpdateAdaptiveTest, RowPositiveAndPure) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 100; ++t) {
    const int n = 2 + t % 7;
    const PayoffMatrix a = MakePayoffMatrix(RandomAntisymmetric(n, rng));
    MixedStrategy nash = Uniform(n);
    nash.probabilities.assign(n, 0.0);
    nash.probabilities[t % n] = 1.0;
    for (GraphKind k : kAllGraphKinds) {
      if (!IsAdaptive(k)) continue;
      const InteractionGraph g = UpdateAdaptive(k, a, nash);
      EXPECT_TRUE(RowsPositive(g));
      EXPECT_EQ(g, UpdateAdaptive(k, a, nash));
    }
  }
}

TEST(UpdateAdaptiveTest, Errors) {
  EXPECT_THROW(UpdateAdaptive(GraphKind::kPlayWorse,
                              MakePayoffMatrix(Matrix(2, 3)), Uniform(2)),
               InputError);
  Matrix nan = kRps;
  nan(0, 1) = NAN;
  EXPECT_THROW(
      UpdateAdaptive(GraphKind::kPlayWorse, MakePayoffMatrix(nan), Uniform(3)),
      InputError);
  EXPECT_THROW(
      UpdateAdaptive(GraphKind::kCycle, MakePayoffMatrix(kRps), Uniform(3)),
      UnsupportedError);
}

TEST(InteractionGraphTest, RejectsBadWeights) {
  EXPECT_THROW(InteractionGraph(Matrix(2, 3)), InputError);
  EXPECT_THROW(InteractionGraph(Matrix{{1, -1}, {0, 1}}), InputError);
  EXPECT_THROW(InteractionGraph(Matrix{{1, NAN}, {0, 1}}), InputError);
}

TEST(SamplePairTest, IdentityAlwaysSelf) {
  const InteractionGraph g = BuildFixed(GraphKind::kSelfPlay, 5);
  RngStream rng(1);
  for (int t = 0; t < 1000; ++t) {
    const auto [l, o] = SamplePair(g, rng);
    EXPECT_EQ(l, o);
  }
}

TEST(SamplePairTest, CycleSuccessorOnly) {
  const InteractionGraph g = BuildFixed(GraphKind::kCycle, 4);
  RngStream rng(2);
  int seen = 0;
  for (int t = 0; t < 2000; ++t) {
    const auto [l, o] = SamplePair(g, rng);
    EXPECT_EQ(o, (l + 1) % 4);
    seen += l == 2;
  }
  EXPECT_GT(seen, 0);
}

TEST(SamplePairTest, AllToAllUniformByChiSquare) {
  const InteractionGraph g = BuildFixed(GraphKind::kAllToAll, 4);
  RngStream rng = MakeStream(123, StreamPurpose::kPairSampling);
  constexpr int kSamples = 100000;
  std::vector<int> learners(4, 0), opponents(4, 0);
  for (int t = 0; t < kSamples; ++t) {
    const auto [l, o] = SamplePair(g, rng);
    ++learners[l];
    ++opponents[o];
  }
  auto chi2 = [](const std::vector<int>& counts) {
    const double e = kSamples / 4.0;
    double x = 0.0;
    for (int c : counts) x += (c - e) * (c - e) / e;
    return x;
  };
  // 99th percentile of chi-square with 3 degrees of freedom.
  EXPECT_LT(chi2(opponents), 11.345);
  EXPECT_LT(chi2(learners), 11.345);
}

TEST(SamplePairTest, FollowsEdgeWeights) {
  const InteractionGraph g(Matrix{{0, 3, 1}, {1, 0, 0}, {0, 0, 2}});
  RngStream rng(9);
  int to1 = 0, from0 = 0;
  for (int t = 0; t < 60000; ++t) {
    const auto [l, o] = SamplePair(g, rng);
    EXPECT_GT(g(l, o), 0.0);
    if (l == 0) {
      ++from0;
      to1 += o == 1;
    }
  }
  EXPECT_NEAR(static_cast<double>(to1) / from0, 0.75, 0.015);
}

TEST(GraphKindTest, NamesRoundTrip) {
  for (GraphKind k : kAllGraphKinds) EXPECT_EQ(GraphKindFromString(ToString(k)), k);
  EXPECT_THROW(GraphKindFromString("star"), ConfigError);
}

}  // namespace
}  // namespace popgraph
