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

#include "popgraph/metagame.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "oracles.hpp"

namespace popgraph {
namespace {

using oracle::Mat;
using oracle::Vec;

const Matrix kRps = {{0, 1, -1}, {-1, 0, 1}, {1, -1, 0}};

Matrix RandomAntisymmetric(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      a(i, j) = u(rng);
      a(j, i) = -a(i, j);
    }
  return a;
}

Matrix RandomMatrix(int m, int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix a(m, n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = u(rng);
  return a;
}

std::vector<PolicyParams> RandomPopulation(int size, int dim, double scale,
                                           std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, scale);
  std::vector<PolicyParams> out;
  for (int i = 0; i < size; ++i) {
    auto p = PolicyParams(Vector(dim));
    for (double& v : p.values) v = n(rng);
    out.push_back(p);
  }
  return out;
}

std::vector<PolicyParams> Positions(const std::vector<Agent>& agents) {
  std::vector<PolicyParams> out;
  for (const auto& a : agents) out.push_back(a.params);
  return out;
}

void ExpectDistribution(const MixedStrategy& s) {
  double total = 0.0;
  for (double p : s.probabilities) {
    EXPECT_GE(p, 0.0);
    total += p;
  }
  EXPECT_NEAR(total, 1.0, 1e-9);
}

TEST(SolveNashTest, RockPaperScissorsIsUniform) {
  const NashSolution s = SolveNash(kRps);
  for (int i = 0; i < 3; ++i) {
    EXPECT_NEAR(s.row[i], 1.0 / 3.0, 1e-6);
    EXPECT_NEAR(s.col[i], 1.0 / 3.0, 1e-6);
  }
  EXPECT_EQ(s.value, 0.0);
  EXPECT_LE(s.exploitability, 1e-8);
  EXPECT_LE(oracle::PureBestResponseGap(kRps.ToRows(), s.row.probabilities,
                                        s.col.probabilities),
            1e-8);
}

TEST(SolveNashTest, DominantRowIsPure) {
  const Matrix a = {{0.2, -0.4, 0.1}, {0.5, 0.1, 0.3}, {-0.3, -0.5, 0.0}};
  const NashSolution s = SolveNash(a);
  EXPECT_NEAR(s.row[0], 0.0, 1e-12);
  EXPECT_NEAR(s.row[1], 1.0, 1e-12);
  EXPECT_NEAR(s.row[2], 0.0, 1e-12);
  EXPECT_NEAR(s.value, 0.1, 1e-12);
  EXPECT_EQ(s.row.Support(), std::vector<int>{1});
}

TEST(SolveNashTest, RandomAntisymmetricCertifiedByOracle) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 100; ++t) {
    const Matrix a = RandomAntisymmetric(5, rng);
    const NashSolution s = SolveNash(a);
    ExpectDistribution(s.row);
    EXPECT_EQ(s.row.probabilities, s.col.probabilities);
    EXPECT_EQ(s.value, 0.0);
    EXPECT_LE(oracle::PureBestResponseGap(a.ToRows(), s.row.probabilities,
                                          s.col.probabilities),
              1e-8);
  }
}

TEST(SolveNashTest, GeneralMatricesMatchSupportEnumeration) {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 100; ++t) {
    const int m = 2 + t % 4, n = 2 + (t / 4) % 4;
    const Matrix a = RandomMatrix(m, n, rng);
    const NashSolution s = SolveNash(a);
    ExpectDistribution(s.row);
    ExpectDistribution(s.col);
    EXPECT_NEAR(s.value, a.Bilinear(s.row.probabilities, s.col.probabilities),
                1e-9);
    EXPECT_LE(s.exploitability, 1e-8);
    const auto ref = oracle::SupportEnumerationNash(a.ToRows());
    ASSERT_TRUE(ref.has_value());
    EXPECT_NEAR(s.value, ref->value, 1e-9);
  }
}

TEST(SolveNashTest, ExploitabilityMatchesOracle) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 50; ++t) {
    const Matrix a = RandomMatrix(4, 3, rng);
    const Vec p = {0.1, 0.2, 0.3, 0.4}, q = {0.5, 0.25, 0.25};
    EXPECT_NEAR(Exploitability(a, p, q),
                oracle::PureBestResponseGap(a.ToRows(), p, q), 1e-14);
  }
}

TEST(SolveNashTest, BudgetExhaustionCarriesBestSolution) {
  NashOptions opts;
  opts.max_iterations = 0;
  try {
    SolveNash(kRps, opts);
    FAIL() << "expected SolverError";
  } catch (const SolverError& e) {
    EXPECT_EQ(e.best().row.size(), 3);
    EXPECT_NEAR(e.best().exploitability,
                oracle::PureBestResponseGap(kRps.ToRows(),
                                            e.best().row.probabilities,
                                            e.best().col.probabilities),
                1e-12);
  }
}

TEST(SolveNashTest, RejectsBadInput) {
  EXPECT_THROW(SolveNash(Matrix(0, 0)), InputError);
  EXPECT_THROW(SolveNash(Matrix{{0, NAN}, {1, 0}}), InputError);
}

TEST(SolveNashTest, DegenerateMatrices) {
  const NashSolution zero = SolveNash(Matrix(1, 1));
  EXPECT_EQ(zero.row.probabilities, Vec{1.0});
  const NashSolution constant = SolveNash(Matrix(3, 4, 2.5));
  EXPECT_NEAR(constant.value, 2.5, 1e-12);
  EXPECT_LE(constant.exploitability, 1e-12);
}

TEST(RppTest, SamePopulationOnZeroSumIsZero) {
  std::mt19937_64 rng(4);
  const Game game = BlottoSpec{};
  const auto pop = RandomPopulation(5, 7, 1.0, rng);
  EXPECT_NEAR(RelativePopulationPerformance(BuildPayoffMatrix(pop, pop, game)),
              0.0, 1e-8);
}

TEST(RppTest, RockAgainstPaper) {
  const Matrix rock_vs_paper = {{-1.0}};
  EXPECT_EQ(RelativePopulationPerformance(MakePayoffMatrix(rock_vs_paper)),
            -1.0);
}

TEST(RppTest, AntisymmetricAcrossPopulations) {
  std::mt19937_64 rng(5);
  const Game blotto = BlottoSpec{};
  const Game monotone = MakeMonotoneGame(3, "nonconvex", "tanh");
  for (int t = 0; t < 50; ++t) {
    const Game& game = t % 2 ? blotto : monotone;
    const int dim = ParamDimension(game);
    const auto p = RandomPopulation(2 + t % 4, dim, 1.0, rng);
    const auto q = RandomPopulation(2 + (t / 2) % 4, dim, 1.0, rng);
    const double u = RelativePopulationPerformance(BuildPayoffMatrix(p, q, game));
    const double v = RelativePopulationPerformance(BuildPayoffMatrix(q, p, game));
    EXPECT_LE(std::abs(u + v), 2e-8);
  }
}

TEST(EffectiveDiversityTest, RockPaperScissorsIsOneThird) {
  const double d = EffectiveDiversity(MakePayoffMatrix(kRps));
  const Vec third(3, 1.0 / 3.0);
  EXPECT_NEAR(d, oracle::RectifiedMass(kRps.ToRows(), third, third, 0.0), 1e-9);
  EXPECT_NEAR(d, 1.0 / 3.0, 1e-9);
}

TEST(EffectiveDiversityTest, DominantAgentGivesZero) {
  const Matrix a = {{0, 0.3, 0.7, 0.1},
                    {-0.3, 0, 1, -1},
                    {-0.7, -1, 0, 1},
                    {-0.1, 1, -1, 0}};
  EXPECT_NEAR(EffectiveDiversity(MakePayoffMatrix(a)), 0.0, 1e-12);
  EXPECT_EQ(EffectiveDiversity(MakePayoffMatrix(Matrix(1, 1))), 0.0);
}

TEST(EffectiveDiversityTest, NonnegativeAndPermutationInvariant) {
  std::mt19937_64 rng(6);
  for (int t = 0; t < 50; ++t) {
    const int n = 2 + t % 6;
    const Matrix a = RandomAntisymmetric(n, rng);
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    Matrix b(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) b(i, j) = a(perm[i], perm[j]);
    const double da = EffectiveDiversity(MakePayoffMatrix(a));
    EXPECT_GE(da, 0.0);
    EXPECT_NEAR(da, EffectiveDiversity(MakePayoffMatrix(b)), 1e-9);
  }
}

TEST(EffectiveDiversityTest, RejectsGeneralSum) {
  EXPECT_THROW(EffectiveDiversity(MakePayoffMatrix(Matrix{{0.5, 1}, {-1, 0.5}})),
               InputError);
}

TEST(EffectiveDiversityGeneralTest, ReducesOnAntisymmetricInputs) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 50; ++t) {
    const PayoffMatrix a = MakePayoffMatrix(RandomAntisymmetric(2 + t % 6, rng));
    EXPECT_NEAR(EffectiveDiversityGeneral(a), EffectiveDiversity(a), 1e-9);
  }
}

TEST(EffectiveDiversityGeneralTest, ConstantMatrixIsZero) {
  EXPECT_NEAR(EffectiveDiversityGeneral(MakePayoffMatrix(Matrix(3, 3, 0.7))),
              0.0, 1e-12);
}

TEST(EffectiveDiversityGeneralTest, ModeCenterPopulationMatchesArithmetic) {
  const Game game = MakeGmmRps(3);
  const auto& spec = std::get<GmmRpsSpec>(game);
  std::vector<PolicyParams> pop;
  for (const auto& c : spec.mode_centers) pop.push_back({c[0], c[1]});
  const PayoffMatrix a = BuildPayoffMatrix(pop, pop, game);
  const auto ref = oracle::SupportEnumerationNash(a.entries.ToRows());
  ASSERT_TRUE(ref.has_value());
  const double expected =
      oracle::RectifiedMass(a.entries.ToRows(), ref->p, ref->q, ref->value);
  const double d = EffectiveDiversityGeneral(a);
  EXPECT_GT(d, 0.0);
  EXPECT_NEAR(d, expected, 1e-9);
}

TEST(PerformanceVsEvaluatorsTest, SingleEvaluatorIsColumnValue) {
  const Matrix a = {{0.2}, {-0.4}, {1.0}};
  const MixedStrategy v{{0.5, 0.25, 0.25}};
  EXPECT_DOUBLE_EQ(PerformanceVsEvaluators(v, MakePayoffMatrix(a)),
                   0.5 * 0.2 - 0.25 * 0.4 + 0.25);
}

TEST(PerformanceVsEvaluatorsTest, UniformRpsAgainstPureEvaluatorsIsZero) {
  EXPECT_NEAR(PerformanceVsEvaluators(Uniform(3), MakePayoffMatrix(kRps)), 0.0,
              1e-15);
}

TEST(PerformanceVsEvaluatorsTest, MonotoneInEvaluatorSet) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 50; ++t) {
    const Matrix full = RandomMatrix(4, 6, rng);
    const MixedStrategy v{{0.1, 0.2, 0.3, 0.4}};
    double previous = INFINITY;
    for (int k = 1; k <= 6; ++k) {
      Matrix sub(4, k);
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < k; ++j) sub(i, j) = full(i, j);
      const double f = PerformanceVsEvaluators(v, MakePayoffMatrix(sub));
      EXPECT_LE(f, previous);
      previous = f;
    }
  }
}

TEST(PerformanceVsEvaluatorsTest, Errors) {
  EXPECT_THROW(PerformanceVsEvaluators(Uniform(3), MakePayoffMatrix(Matrix(3, 0))),
               InputError);
  EXPECT_THROW(PerformanceVsEvaluators(Uniform(2), MakePayoffMatrix(kRps)),
               InputError);
}

TEST(BuildPayoffMatrixTest, BlottoSelfPlayIsAntisymmetric) {
  std::mt19937_64 rng(9);
  const Game game = BlottoSpec{};
  std::vector<Agent> agents;
  for (const auto& p : RandomPopulation(3, 7, 1.0, rng)) {
    agents.push_back(MakeAgent(static_cast<int>(agents.size()), p, 0.1));
  }
  RngStream stream(1);
  const PayoffMatrix a = BuildPayoffMatrix(agents, agents, game, 0, stream);
  EXPECT_EQ(AntisymmetryDefect(a.entries), 0.0);
  for (int i = 0; i < 3; ++i) EXPECT_EQ(a(i, i), 0.0);
  EXPECT_EQ(a.row_labels, (std::vector<int>{0, 1, 2}));
}

TEST(BuildPayoffMatrixTest, SingleAgents) {
  const Game game = MakeGmmRps(3);
  const PolicyParams v = {0.1, 0.2}, w = {-0.3, 0.4};
  const PayoffMatrix a = BuildPayoffMatrix({v}, {w}, game);
  EXPECT_EQ(a.rows(), 1);
  EXPECT_EQ(a.cols(), 1);
  EXPECT_EQ(a(0, 0), Payoff(game, v, w));
}

TEST(BuildPayoffMatrixTest, ModeCentersGiveWeightedGameMatrix) {
  for (double radius : {1.0, 6.0}) {
    const GmmRpsSpec spec = MakeGmmRps(3, radius, 0.5);
    std::vector<PolicyParams> pop;
    for (const auto& c : spec.mode_centers) pop.push_back({c[0], c[1]});
    const PayoffMatrix a = BuildPayoffMatrix(pop, pop, spec);
    // W M W^T with W[k][i] = pdf_i(center_k).
    Mat w(3, Vec(3));
    for (int k = 0; k < 3; ++k)
      for (int i = 0; i < 3; ++i)
        w[k][i] = oracle::BivariateNormalPdf(
            {spec.mode_centers[k][0], spec.mode_centers[k][1]},
            {spec.mode_centers[i][0], spec.mode_centers[i][1]}, 0.25, 0, 0.25);
    const double g = spec.peak_density();
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) {
        double expected = 0.0;
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j)
            expected += w[r][i] * spec.game_matrix(i, j) * w[c][j];
        EXPECT_NEAR(a(r, c), expected, 1e-12);
        if (radius > 5.0) {
          EXPECT_NEAR(a(r, c), g * g * spec.game_matrix(r, c), 1e-12);
        }
      }
  }
}

TEST(BuildPayoffMatrixTest, MonteCarloIsSeededPerEntry) {
  const Game game = MakeGmmRps(3);
  std::vector<Agent> agents = {MakeAgent(0, {0.1, 0.9}, 0.1),
                               MakeAgent(1, {-0.8, -0.4}, 0.1),
                               MakeAgent(2, {0.7, -0.5}, 0.1)};
  RngStream s1(5), s2(5);
  const PayoffMatrix a = BuildPayoffMatrix(agents, agents, game, 32, s1);
  const PayoffMatrix b = BuildPayoffMatrix(agents, agents, game, 32, s2);
  EXPECT_EQ(a.entries, b.entries);
  EXPECT_EQ(a.mc_samples, 32);
  // Zero noise reduces to deterministic evaluation.
  for (auto& x : agents) x.exploration_stddev = 0.0;
  RngStream s3(5);
  const PayoffMatrix c = BuildPayoffMatrix(agents, agents, game, 8, s3);
  const PayoffMatrix exact =
      BuildPayoffMatrix(Positions(agents), Positions(agents), game);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      EXPECT_NEAR(c.entries(i, j), exact.entries(i, j), 1e-15);
    }
  }
  RngStream s4(5);
  EXPECT_THROW(BuildPayoffMatrix(agents, agents, game, -1, s4), ConfigError);
  EXPECT_THROW(BuildPayoffMatrix(std::vector<Agent>{}, agents, game, 0, s4),
               InputError);
}

TEST(RelativeOutcomeMatrixTest, IsAntisymmetricAndDiagonalFree) {
  const Game game = MakeGmmRps(3);
  std::mt19937_64 rng(10);
  const auto pop = RandomPopulation(5, 2, 0.8, rng);
  const PayoffMatrix a = BuildPayoffMatrix(pop, pop, game);
  const PayoffMatrix r = RelativeOutcomeMatrix(a);
  EXPECT_EQ(AntisymmetryDefect(r.entries), 0.0);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j)
      EXPECT_EQ(r(i, j), RelativeOutcome(game, pop[i], pop[j]));
  EXPECT_THROW(RelativeOutcomeMatrix(MakePayoffMatrix(Matrix(2, 3))), InputError);
}

}  // namespace
}  // namespace popgraph
