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

#ifndef POPGRAPH_EXPERIMENT_HPP_
#define POPGRAPH_EXPERIMENT_HPP_

// Graph-scheduled population training and its run logs.
//
// A run is one (config, seed) pair. Each period:
//   1. refresh the interaction graph (adaptive kinds only; fixed graphs are
//      built once),
//   2. perform `updates_per_period` sample_pair -> update steps,
//   3. refresh snapshots every `snapshot_interval` periods,
//   4. record the trajectory point and a MetricsRecord.
//
// Logs are line-delimited JSON, one file per seed, flushed per record so any
// prefix of the file is valid.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "popgraph/config.hpp"
#include "popgraph/core.hpp"
#include "popgraph/game.hpp"
#include "popgraph/interaction_graph.hpp"
#include "popgraph/learner.hpp"
#include "popgraph/metagame.hpp"
#include "popgraph/metrics.hpp"

namespace popgraph {

class IoError : public Error {
 public:
  using Error::Error;
};

inline constexpr const char* kOutputRootEnv = "POPGRAPH_OUTPUT_ROOT";

// Output root: $POPGRAPH_OUTPUT_ROOT when set, else the config's output_dir.
inline std::filesystem::path OutputRoot(const ExperimentConfig& c) {
  if (const char* env = std::getenv(kOutputRootEnv); env && *env) return env;
  return c.output_dir;
}

inline std::filesystem::path SeedLogPath(const std::filesystem::path& run_dir,
                                         std::uint64_t seed) {
  return run_dir / ("seed_" + std::to_string(seed) + ".jsonl");
}

// ---------------------------------------------------------------------------
// Run log records

class RunLogWriter {
 public:
  RunLogWriter() = default;
  explicit RunLogWriter(const std::filesystem::path& path)
      : out_(std::make_unique<std::ofstream>(path, std::ios::trunc)) {
    if (!*out_) throw IoError("cannot open log '" + path.string() + "'");
  }

  void Write(const Json& record) {
    if (!out_) return;
    *out_ << record.dump() << '\n';
    out_->flush();
    if (!*out_) throw IoError("write to run log failed");
  }

 private:
  std::unique_ptr<std::ofstream> out_;
};

inline Json MatrixToJson(const Matrix& m) { return m.ToRows(); }

inline Matrix MatrixFromJson(const Json& j) {
  return Matrix::FromRows(j.get<std::vector<Vector>>());
}

inline Json MetricsToJson(const MetricsRecord& r) {
  Json j = {{"effective_diversity", r.effective_diversity},
            {"rpp", r.rpp_vs_evaluators},
            {"convergence", r.convergence},
            {"graph_ref", r.graph_snapshot_ref}};
  if (r.coverage) j["coverage"] = *r.coverage;
  return j;
}

inline MetricsRecord MetricsFromJson(const Json& j) {
  MetricsRecord r;
  r.period = j.at("period").get<int>();
  r.effective_diversity = j.at("effective_diversity").get<double>();
  r.rpp_vs_evaluators =
      j.at("rpp").get<std::map<std::string, double>>();
  r.convergence = j.at("convergence").get<double>();
  if (j.contains("coverage")) r.coverage = j.at("coverage").get<double>();
  r.graph_snapshot_ref = j.at("graph_ref").get<int>();
  return r;
}

// ---------------------------------------------------------------------------
// Evaluators

struct EvaluatorSet {
  std::string name;
  std::vector<PolicyParams> strategies;
};

struct ParsedRun;
inline ParsedRun ReadRunLog(const std::filesystem::path& path);

// The n mode centers of a GMM-RPS game as deterministic strategies.
inline std::vector<PolicyParams> GroundTruthModes(const Game& game) {
  const auto* spec = std::get_if<GmmRpsSpec>(&game);
  if (spec == nullptr) {
    throw UnsupportedError(
        "ground_truth_modes: only GMM-RPS has an enumerable Nash support; "
        "the Blotto strategy space is too large to enumerate");
  }
  std::vector<PolicyParams> out;
  for (const auto& c : spec->mode_centers) out.push_back({c[0], c[1]});
  return out;
}

inline std::vector<PolicyParams> FinalParamsFromRun(
    const std::string& run, std::optional<std::uint64_t> seed);

inline std::vector<PolicyParams> MakeEvaluators(const EvaluatorSpec& spec,
                                                const Game& game) {
  std::vector<PolicyParams> out;
  switch (spec.rule) {
    case EvaluatorSpec::Rule::kGroundTruthModes:
      out = GroundTruthModes(game);
      break;
    case EvaluatorSpec::Rule::kFromRun:
      out = FinalParamsFromRun(spec.run, spec.seed);
      break;
    case EvaluatorSpec::Rule::kParams:
      out = spec.params;
      break;
  }
  if (out.empty()) throw InputError("evaluator '" + spec.name + "' is empty");
  for (const auto& p : out) CheckParams(game, p);
  return out;
}

// ---------------------------------------------------------------------------
// Population-level measurements

namespace internal {
// Nash of `a`, falling back to the solver's best candidate on failure.
inline NashSolution SolveOrBest(const Matrix& a, double tol,
                                std::vector<std::string>* failures) {
  try {
    return SolveNash(a, {tol});
  } catch (const SolverError& e) {
    if (failures) failures->push_back(e.what());
    return e.best();
  }
}
}  // namespace internal

// Effective diversity of a population's deterministic strategies. Zero-sum
// games use p^T relu(A) p; general-sum games the u-shifted variant.
inline double PopulationDiversity(const std::vector<PolicyParams>& pop,
                                  const Game& game, double tol,
                                  std::vector<std::string>* failures = nullptr) {
  const PayoffMatrix a = BuildPayoffMatrix(pop, pop, game);
  const NashSolution nash = internal::SolveOrBest(a.entries, tol, failures);
  const Vector& p = nash.row.probabilities;
  const Vector& q = nash.col.probabilities;
  const double offset = IsZeroSum(game) ? 0.0 : nash.value;
  double d = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      d += p[i] * q[j] * std::max(a(i, j) - offset, 0.0);
  return d;
}

// Relative population performance u(P, E) of P against an evaluator set.
inline double PopulationRpp(const std::vector<PolicyParams>& pop,
                            const std::vector<PolicyParams>& evaluators,
                            const Game& game, double tol,
                            std::vector<std::string>* failures = nullptr) {
  const PayoffMatrix a = BuildPayoffMatrix(pop, evaluators, game);
  return internal::SolveOrBest(a.entries, tol, failures).value;
}

inline std::vector<PolicyParams> ParamsOf(const std::vector<Agent>& agents) {
  std::vector<PolicyParams> out;
  for (const auto& a : agents) out.push_back(a.params);
  return out;
}

// ---------------------------------------------------------------------------
// Training

struct RunResult {
  std::string run_id;
  std::uint64_t seed = 0;
  GraphKind graph = GraphKind::kAllToAll;
  std::vector<MetricsRecord> metrics;
  std::vector<Agent> final_agents;
  TrajectoryLog trajectory;
  int skipped_updates = 0;
  int fallback_events = 0;
  int solver_failures = 0;
};

struct RunOptions {
  bool write_logs = true;
  // Observer for every sampled (period, learner, opponent).
  std::function<void(int, int, int)> on_pair;
};

inline std::vector<Agent> InitialAgents(const ExperimentConfig& c,
                                        std::uint64_t seed) {
  std::vector<Agent> agents;
  const int dim = ParamDimension(c.game);
  for (int i = 0; i < c.population_size; ++i) {
    RngStream rng = MakeStream(seed, StreamPurpose::kInit, i);
    std::normal_distribution<double> noise(0.0, 1.0);
    PolicyParams p(Vector(dim, 0.0));
    if (const auto* g = std::get_if<GmmRpsSpec>(&c.game)) {
      p[0] = g->circle_center()[0];
      p[1] = g->circle_center()[1];
    }
    for (double& v : p.values) v += c.init_stddev * noise(rng);
    agents.push_back(MakeAgent(i, std::move(p), c.learner.exploration_stddev));
  }
  return agents;
}

inline RunResult RunSeed(const ExperimentConfig& config, std::uint64_t seed,
                         const RunOptions& options = {}) {
  Validate(config);
  const Game& game = config.game;
  const int n = config.population_size;

  std::vector<EvaluatorSet> evaluators;
  for (const auto& e : config.evaluators) {
    evaluators.push_back({e.name, MakeEvaluators(e, game)});
  }

  RunResult result;
  result.run_id = config.name;
  result.seed = seed;
  result.graph = config.graph;
  result.trajectory = TrajectoryLog(n);

  RunLogWriter log;
  if (options.write_logs) {
    const auto dir = OutputRoot(config) / config.name;
    std::filesystem::create_directories(dir);
    log = RunLogWriter(SeedLogPath(dir, seed));
  }
  auto record = [&](const std::string& type, int period, Json body) {
    body["type"] = type;
    body["run_id"] = config.name;
    body["seed"] = seed;
    body["period"] = period;
    log.Write(body);
  };
  auto event = [&](int period, const std::string& what, Json detail) {
    record("event", period, {{"event", what}, {"detail", std::move(detail)}});
  };
  record("config", -1, {{"config", ToJson(config)}});

  std::vector<Agent> agents = InitialAgents(config, seed);
  const bool adaptive = IsAdaptive(config.graph);
  InteractionGraph graph = adaptive ? BuildFixed(GraphKind::kAllToAll, n)
                                    : BuildFixed(config.graph, n);
  int graph_period = 0;
  auto log_graph = [&](int period) {
    record("graph", period,
           {{"kind", ToString(config.graph)},
            {"weights", MatrixToJson(graph.weights())}});
    if (!graph.fallback_rows().empty()) {
      ++result.fallback_events;
      event(period, "fallback_self_play", {{"rows", graph.fallback_rows()}});
    }
  };
  log_graph(0);

  const int window = config.metrics.window;
  const double radius = CoverageRadius(config);

  for (int period = 0; period < config.total_periods; ++period) {
    // Adaptive graphs start fully connected and are re-derived from a fresh
    // stochastic evaluation at the start of every later period.
    if (adaptive && period > 0) {
      RngStream eval_rng =
          MakeStream(seed, StreamPurpose::kGraphEvaluation, period);
      const PayoffMatrix a =
          BuildPayoffMatrix(agents, agents, game, config.mc_samples, eval_rng);
      const PayoffMatrix rel = RelativeOutcomeMatrix(a);
      try {
        MixedStrategy nash = Uniform(n);
        if (config.graph == GraphKind::kRectifiedNash) {
          nash = SolveNash(rel, {config.nash_tol}).row;
          nash.support_eps = config.thresholds.support_eps;
        }
        graph = UpdateAdaptive(config.graph, rel, nash, config.thresholds);
        graph_period = period;
        log_graph(period);
      } catch (const SolverError& e) {
        ++result.solver_failures;
        event(period, "solver_failure_graph_reused", {{"what", e.what()}});
      }
    }

    int skipped = 0;
    for (int u = 0; u < config.updates_per_period; ++u) {
      RngStream pair_rng =
          MakeStream(seed, StreamPurpose::kPairSampling, period, u);
      const auto [learner, opponent] = SamplePair(graph, pair_rng);
      if (options.on_pair) options.on_pair(period, learner, opponent);
      const PolicyParams& opponent_params =
          learner == opponent ? agents[learner].snapshot
                              : agents[opponent].params;
      RngStream update_rng =
          MakeStream(seed, StreamPurpose::kLearnerUpdate, period, u);
      UpdateResult step = Update(agents[learner], opponent_params, game,
                                 config.learner, update_rng);
      if (step.skipped) ++skipped;
      agents[learner] = std::move(step.agent);
    }
    if (skipped > 0) {
      result.skipped_updates += skipped;
      event(period, "update_skipped", {{"count", skipped}});
    }
    if ((period + 1) % config.learner.snapshot_interval == 0) {
      for (auto& a : agents) a.TakeSnapshot();
    }

    const std::vector<PolicyParams> positions = ParamsOf(agents);
    result.trajectory.Append(period, positions);
    if (config.log_trajectory) {
      record("trajectory", period, {{"params", ParamsToJson(positions)}});
    }

    std::vector<std::string> failures;
    MetricsRecord m;
    m.period = period;
    m.graph_snapshot_ref = graph_period;
    m.effective_diversity =
        PopulationDiversity(positions, game, config.nash_tol, &failures);
    for (const auto& e : evaluators) {
      m.rpp_vs_evaluators[e.name] =
          PopulationRpp(positions, e.strategies, game, config.nash_tol,
                        &failures);
    }
    const int w = std::min(window, result.trajectory.length());
    m.convergence = w >= 2 ? Convergence(result.trajectory, w,
                                         config.metrics.convergence_mode)
                           : 0.0;
    if (const auto* spec = std::get_if<GmmRpsSpec>(&game)) {
      m.coverage = Coverage(result.trajectory, *spec, radius, w);
    }
    for (const auto& f : failures) {
      ++result.solver_failures;
      event(period, "solver_failure_metrics", {{"what", f}});
    }
    Json body = MetricsToJson(m);
    record("metrics", period, body);
    result.metrics.push_back(std::move(m));
  }

  const auto final_params = ParamsOf(agents);
  const PayoffMatrix final_matrix =
      BuildPayoffMatrix(final_params, final_params, game);
  std::vector<std::string> failures;
  const NashSolution final_nash =
      internal::SolveOrBest(final_matrix.entries, config.nash_tol, &failures);
  record("final", config.total_periods - 1,
         {{"agents", ParamsToJson(final_params)},
          {"payoff", MatrixToJson(final_matrix.entries)},
          {"nash",
           {{"row", final_nash.row.probabilities},
            {"col", final_nash.col.probabilities},
            {"value", final_nash.value},
            {"exploitability", final_nash.exploitability}}}});
  result.final_agents = std::move(agents);
  return result;
}

// Runs every (config, seed) job on `threads` workers. Results come back in
// job order and do not depend on the thread count.
inline std::vector<RunResult> RunExperiments(
    const std::vector<ExperimentConfig>& configs, int threads = 1,
    const RunOptions& options = {}) {
  std::vector<std::pair<const ExperimentConfig*, std::uint64_t>> jobs;
  for (const auto& c : configs) {
    Validate(c);
    if (options.write_logs) {
      const auto dir = OutputRoot(c) / c.name;
      std::filesystem::create_directories(dir);
      std::ofstream(dir / "config.json") << ToJson(c).dump(2) << '\n';
    }
    for (auto s : c.seeds) jobs.emplace_back(&c, s);
  }
  std::vector<RunResult> results(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < jobs.size(); k = next++) {
      try {
        results[k] = RunSeed(*jobs[k].first, jobs[k].second, options);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  const int nthreads =
      std::max(1, std::min<int>(threads, static_cast<int>(jobs.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return results;
}

inline std::vector<RunResult> RunExperiment(const ExperimentConfig& config,
                                            int threads = 1,
                                            const RunOptions& options = {}) {
  return RunExperiments({config}, threads, options);
}

// ---------------------------------------------------------------------------
// Reading logs back

struct ParsedRun {
  std::string run_id;
  std::uint64_t seed = 0;
  Json config;
  GraphKind graph = GraphKind::kAllToAll;
  std::vector<MetricsRecord> metrics;
  std::vector<PolicyParams> final_params;
  bool complete = false;  // has a "final" record
};

inline ParsedRun ReadRunLog(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open run log '" + path.string() + "'");
  ParsedRun run;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    Json j;
    try {
      j = Json::parse(line);
    } catch (const Json::exception& e) {
      throw InputError(path.string() + ":" + std::to_string(lineno) + ": " +
                       e.what());
    }
    const std::string type = j.at("type").get<std::string>();
    if (type == "config") {
      run.run_id = j.at("run_id").get<std::string>();
      run.seed = j.at("seed").get<std::uint64_t>();
      run.config = j.at("config");
      run.graph = GraphKindFromString(run.config.at("graph").get<std::string>());
    } else if (type == "metrics") {
      run.metrics.push_back(MetricsFromJson(j));
    } else if (type == "trajectory") {
      run.final_params = ParamsFromJson(j.at("params"));
    } else if (type == "final") {
      run.final_params = ParamsFromJson(j.at("agents"));
      run.complete = true;
    }
  }
  if (run.config.is_null()) {
    throw InputError("'" + path.string() + "' has no config record");
  }
  return run;
}

// All seed logs under a run directory, ordered by seed.
inline std::vector<std::filesystem::path> SeedLogs(
    const std::filesystem::path& run_dir) {
  std::vector<std::pair<std::uint64_t, std::filesystem::path>> found;
  if (!std::filesystem::is_directory(run_dir)) return {};
  for (const auto& entry : std::filesystem::directory_iterator(run_dir)) {
    const std::string name = entry.path().filename().string();
    if (name.rfind("seed_", 0) == 0 && entry.path().extension() == ".jsonl") {
      found.emplace_back(std::stoull(name.substr(5)), entry.path());
    }
  }
  std::sort(found.begin(), found.end());
  std::vector<std::filesystem::path> out;
  for (auto& f : found) out.push_back(std::move(f.second));
  return out;
}

// Final agent parameters of a logged run. `run` is either a seed log file or
// a run directory; for directories the seed picks the file (default: lowest).
inline std::vector<PolicyParams> FinalParamsFromRun(
    const std::string& run, std::optional<std::uint64_t> seed) {
  std::filesystem::path path = run;
  if (std::filesystem::is_directory(path)) {
    if (seed) {
      path = SeedLogPath(path, *seed);
    } else {
      const auto logs = SeedLogs(path);
      if (logs.empty()) throw InputError("no seed logs under '" + run + "'");
      path = logs.front();
    }
  }
  ParsedRun parsed = ReadRunLog(path);
  if (parsed.final_params.empty()) {
    throw InputError("'" + path.string() + "' has no agent parameters");
  }
  return parsed.final_params;
}

// Every seed log below `log_dir` (one level of run directories).
inline std::vector<ParsedRun> ReadRunLogs(const std::filesystem::path& log_dir) {
  std::vector<std::filesystem::path> dirs;
  for (const auto& entry : std::filesystem::directory_iterator(log_dir)) {
    if (entry.is_directory()) dirs.push_back(entry.path());
  }
  std::sort(dirs.begin(), dirs.end());
  std::vector<ParsedRun> runs;
  for (const auto& d : dirs)
    for (const auto& f : SeedLogs(d)) runs.push_back(ReadRunLog(f));
  return runs;
}

// ---------------------------------------------------------------------------
// Summaries

inline constexpr int kSummaryWindow = 50;

// One run reduced to its end-of-training numbers.
struct RunStats {
  std::string run_id;
  std::uint64_t seed = 0;
  GraphKind graph = GraphKind::kAllToAll;
  // Means over the last `window` metric records.
  double effective_diversity = 0.0;
  std::map<std::string, double> rpp;
  // Taken from the last record; both are already windowed over the
  // trajectory.
  double convergence = 0.0;
  std::optional<double> coverage;
};

inline RunStats ComputeRunStats(const std::string& run_id, std::uint64_t seed,
                                GraphKind graph,
                                const std::vector<MetricsRecord>& metrics,
                                int window = kSummaryWindow) {
  if (metrics.empty()) {
    throw InputError("run '" + run_id + "' has no metric records");
  }
  RunStats s;
  s.run_id = run_id;
  s.seed = seed;
  s.graph = graph;
  const int n = std::min<int>(window, static_cast<int>(metrics.size()));
  const auto first = metrics.end() - n;
  for (auto it = first; it != metrics.end(); ++it) {
    s.effective_diversity += it->effective_diversity;
    for (const auto& [name, v] : it->rpp_vs_evaluators) s.rpp[name] += v;
  }
  s.effective_diversity /= n;
  for (auto& [name, v] : s.rpp) v /= n;
  s.convergence = metrics.back().convergence;
  s.coverage = metrics.back().coverage;
  return s;
}

inline RunStats ComputeRunStats(const RunResult& r,
                                int window = kSummaryWindow) {
  return ComputeRunStats(r.run_id, r.seed, r.graph, r.metrics, window);
}

inline RunStats ComputeRunStats(const ParsedRun& r,
                                int window = kSummaryWindow) {
  return ComputeRunStats(r.run_id, r.seed, r.graph, r.metrics, window);
}

struct MeanStderr {
  double mean = 0.0;
  double stderr_ = 0.0;
  int n = 0;
};

inline MeanStderr Aggregate(const std::vector<double>& xs) {
  MeanStderr m;
  m.n = static_cast<int>(xs.size());
  if (xs.empty()) return m;
  for (double x : xs) m.mean += x;
  m.mean /= m.n;
  if (m.n > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - m.mean) * (x - m.mean);
    m.stderr_ = std::sqrt(ss / (m.n - 1)) / std::sqrt(static_cast<double>(m.n));
  }
  return m;
}

struct GraphSummary {
  GraphKind graph = GraphKind::kAllToAll;
  int runs_total = 0;
  std::vector<RunStats> selected;  // top-k by effective diversity
  MeanStderr effective_diversity;
  std::map<std::string, MeanStderr> rpp;
  MeanStderr convergence;
  std::optional<MeanStderr> coverage;
};

struct SummaryReport {
  std::vector<GraphSummary> graphs;  // ordered as kAllGraphKinds
  std::vector<RunStats> runs;        // every run, for scatter plots
  std::vector<std::string> warnings;
};

// Per graph kind: keep the top_k runs by windowed effective diversity and
// report mean and standard error of each metric over them.
inline SummaryReport Summarize(const std::vector<RunStats>& runs, int top_k) {
  if (top_k < 1) throw InputError("summarize: top_k must be >= 1");
  SummaryReport report;
  report.runs = runs;
  for (GraphKind kind : kAllGraphKinds) {
    std::vector<RunStats> group;
    for (const auto& r : runs)
      if (r.graph == kind) group.push_back(r);
    if (group.empty()) continue;
    GraphSummary g;
    g.graph = kind;
    g.runs_total = static_cast<int>(group.size());
    if (static_cast<int>(group.size()) < top_k) {
      report.warnings.push_back(ToString(kind) + ": only " +
                                std::to_string(group.size()) +
                                " runs, fewer than top_k=" +
                                std::to_string(top_k) + "; using all");
    }
    std::stable_sort(group.begin(), group.end(),
                     [](const RunStats& a, const RunStats& b) {
                       return a.effective_diversity > b.effective_diversity;
                     });
    if (static_cast<int>(group.size()) > top_k) group.resize(top_k);
    std::vector<double> ed, conv, cov;
    std::map<std::string, std::vector<double>> rpp;
    bool all_cov = true;
    for (const auto& r : group) {
      ed.push_back(r.effective_diversity);
      conv.push_back(r.convergence);
      for (const auto& [name, v] : r.rpp) rpp[name].push_back(v);
      if (r.coverage) cov.push_back(*r.coverage);
      else all_cov = false;
    }
    g.effective_diversity = Aggregate(ed);
    g.convergence = Aggregate(conv);
    for (const auto& [name, xs] : rpp) g.rpp[name] = Aggregate(xs);
    if (all_cov) g.coverage = Aggregate(cov);
    g.selected = std::move(group);
    report.graphs.push_back(std::move(g));
  }
  return report;
}

inline std::vector<std::string> EvaluatorNames(const SummaryReport& report) {
  std::vector<std::string> names;
  for (const auto& r : report.runs)
    for (const auto& [name, v] : r.rpp)
      if (std::find(names.begin(), names.end(), name) == names.end())
        names.push_back(name);
  std::sort(names.begin(), names.end());
  return names;
}

// Tab-separated table, one row per graph kind.
inline std::string SummaryTable(const SummaryReport& report) {
  const auto names = EvaluatorNames(report);
  std::ostringstream out;
  out.precision(6);
  out << "graph\truns\tselected\tdiversity_mean\tdiversity_stderr";
  for (const auto& n : names) out << "\trpp_" << n << "_mean\trpp_" << n << "_stderr";
  out << "\tconvergence_mean\tconvergence_stderr\tcoverage_mean\tcoverage_stderr\n";
  for (const auto& g : report.graphs) {
    out << ToString(g.graph) << '\t' << g.runs_total << '\t'
        << g.selected.size() << '\t' << g.effective_diversity.mean << '\t'
        << g.effective_diversity.stderr_;
    for (const auto& n : names) {
      auto it = g.rpp.find(n);
      if (it == g.rpp.end()) out << "\tNA\tNA";
      else out << '\t' << it->second.mean << '\t' << it->second.stderr_;
    }
    out << '\t' << g.convergence.mean << '\t' << g.convergence.stderr_;
    if (g.coverage) out << '\t' << g.coverage->mean << '\t' << g.coverage->stderr_;
    else out << "\tNA\tNA";
    out << '\n';
  }
  return out.str();
}

// Tab-separated per-run rows: diversity vs RPP, convergence vs coverage.
inline std::string ScatterTable(const SummaryReport& report) {
  const auto names = EvaluatorNames(report);
  std::ostringstream out;
  out.precision(8);
  out << "graph\trun_id\tseed\tdiversity";
  for (const auto& n : names) out << "\trpp_" << n;
  out << "\tconvergence\tcoverage\n";
  for (const auto& r : report.runs) {
    out << ToString(r.graph) << '\t' << r.run_id << '\t' << r.seed << '\t'
        << r.effective_diversity;
    for (const auto& n : names) {
      auto it = r.rpp.find(n);
      if (it == r.rpp.end()) out << "\tNA";
      else out << '\t' << it->second;
    }
    out << '\t' << r.convergence << '\t';
    if (r.coverage) out << *r.coverage;
    else out << "NA";
    out << '\n';
  }
  return out.str();
}

}  // namespace popgraph

#endif  // POPGRAPH_EXPERIMENT_HPP_
