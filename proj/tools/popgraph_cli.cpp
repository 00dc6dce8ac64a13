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

// popgraph command line:
//
//   popgraph run <config.json> [--threads N]
//   popgraph summarize <log-dir> [--top-k 10] [--scatter out.tsv]
//   popgraph nash <matrix-file> [--tol 1e-8]
//   popgraph eval <run-id> --against <ground_truth_modes|from_run:PATH[:SEED]>
//
// Logs go to $POPGRAPH_OUTPUT_ROOT when set, else the config's output_dir.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "popgraph/popgraph.hpp"

namespace fs = std::filesystem;
using namespace popgraph;

namespace {

Matrix ReadMatrixFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::vector<Vector> rows;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    for (char& ch : line)
      if (ch == ',' || ch == ';') ch = ' ';
    std::istringstream ls(line);
    Vector row;
    std::string tok;
    while (ls >> tok) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size()) {
        throw InputError("'" + path + "': not a number: '" + tok + "'");
      }
      row.push_back(v);
    }
    if (!row.empty()) rows.push_back(std::move(row));
  }
  if (rows.empty()) throw InputError("'" + path + "': empty matrix");
  return Matrix::FromRows(rows);
}

void PrintVector(const char* label, const Vector& v) {
  std::cout << label;
  for (double x : v) std::cout << ' ' << x;
  std::cout << '\n';
}

int CmdRun(const std::string& config_path, int threads) {
  const Json doc = ReadJsonFile(config_path);
  const auto configs = ExpandConfigs(doc);
  const auto results = RunExperiments(configs, threads);
  for (const auto& r : results) {
    const RunStats s = ComputeRunStats(r);
    std::cout << r.run_id << "\tseed=" << r.seed
              << "\tdiversity=" << s.effective_diversity
              << "\tconvergence=" << s.convergence;
    if (s.coverage) std::cout << "\tcoverage=" << *s.coverage;
    for (const auto& [name, v] : s.rpp) std::cout << "\trpp_" << name << '=' << v;
    std::cout << '\n';
  }
  std::cout << "logs: " << fs::absolute(OutputRoot(configs.front())).string()
            << '\n';
  return 0;
}

int CmdSummarize(const std::string& log_dir, int top_k, int window,
                 const std::string& scatter_path) {
  if (!fs::is_directory(log_dir)) {
    throw InputError("'" + log_dir + "' is not a directory");
  }
  std::vector<RunStats> stats;
  for (const auto& run : ReadRunLogs(log_dir)) {
    stats.push_back(ComputeRunStats(run, window));
  }
  if (stats.empty()) throw InputError("no run logs under '" + log_dir + "'");
  const SummaryReport report = Summarize(stats, top_k);
  for (const auto& w : report.warnings) std::cerr << "warning: " << w << '\n';
  std::cout << SummaryTable(report);
  if (!scatter_path.empty()) {
    std::ofstream out(scatter_path);
    if (!out) throw IoError("cannot write '" + scatter_path + "'");
    out << ScatterTable(report);
  }
  return 0;
}

int CmdNash(const std::string& path, double tol) {
  const Matrix a = ReadMatrixFile(path);
  std::cout << std::setprecision(12);
  try {
    const NashSolution s = SolveNash(a, {tol});
    PrintVector("row", s.row.probabilities);
    PrintVector("col", s.col.probabilities);
    std::cout << "value " << s.value << '\n'
              << "exploitability " << s.exploitability << '\n';
  } catch (const SolverError& e) {
    PrintVector("row", e.best().row.probabilities);
    PrintVector("col", e.best().col.probabilities);
    std::cout << "exploitability " << e.best().exploitability << '\n';
    throw;
  }
  return 0;
}

// "ground_truth_modes" or "from_run:PATH[:SEED]".
EvaluatorSpec ParseEvaluatorRule(const std::string& rule) {
  EvaluatorSpec e;
  e.name = rule;
  if (rule == "ground_truth_modes") return e;
  const std::string prefix = "from_run:";
  if (rule.rfind(prefix, 0) != 0) {
    throw ConfigError("unknown evaluator rule '" + rule + "'");
  }
  e.rule = EvaluatorSpec::Rule::kFromRun;
  std::string rest = rule.substr(prefix.size());
  const auto colon = rest.rfind(':');
  if (colon != std::string::npos && !fs::exists(rest)) {
    e.seed = std::stoull(rest.substr(colon + 1));
    rest = rest.substr(0, colon);
  }
  e.run = rest;
  return e;
}

int CmdEval(const std::string& run_id, const std::string& against) {
  fs::path run_dir = run_id;
  if (!fs::is_directory(run_dir)) {
    const char* env = std::getenv(kOutputRootEnv);
    run_dir = fs::path(env && *env ? env : "runs") / run_id;
  }
  const auto logs = SeedLogs(run_dir);
  if (logs.empty()) throw InputError("no seed logs for run '" + run_id + "'");
  const EvaluatorSpec rule = ParseEvaluatorRule(against);
  std::cout << "seed\trpp\tperformance_uniform\n";
  for (const auto& path : logs) {
    const ParsedRun run = ReadRunLog(path);
    const Game game = GameFromJson(run.config.at("game"));
    const auto evaluators = MakeEvaluators(rule, game);
    const PayoffMatrix a = BuildPayoffMatrix(run.final_params, evaluators, game);
    const NashSolution nash = SolveNash(a);
    std::cout << run.seed << '\t' << nash.value << '\t'
              << PerformanceVsEvaluators(Uniform(a.rows()), a) << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Population training on interaction graphs"};
  app.require_subcommand(1);

  std::string config_path;
  int threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  auto* run = app.add_subcommand("run", "Train populations from a config file");
  run->add_option("config", config_path, "Experiment config (JSON)")
      ->required()->check(CLI::ExistingFile);
  run->add_option("--threads", threads, "Worker threads");

  std::string log_dir, scatter;
  int top_k = 10;
  int window = kSummaryWindow;
  auto* summarize = app.add_subcommand("summarize", "Summarize run logs");
  summarize->add_option("log-dir", log_dir, "Directory of run directories")
      ->required();
  summarize->add_option("--top-k", top_k, "Runs kept per graph kind");
  summarize->add_option("--window", window, "Trailing periods averaged");
  summarize->add_option("--scatter", scatter, "Write per-run rows here");

  std::string matrix_path;
  double tol = kDefaultNashTolerance;
  auto* nash = app.add_subcommand("nash", "Solve a zero-sum matrix game");
  nash->add_option("matrix-file", matrix_path, "Whitespace-separated rows")
      ->required();
  nash->add_option("--tol", tol, "Exploitability tolerance");

  std::string run_id, against;
  auto* eval = app.add_subcommand("eval", "Evaluate a run against evaluators");
  eval->add_option("run-id", run_id, "Run directory or id under the output root")
      ->required();
  eval->add_option("--against", against,
                   "ground_truth_modes | from_run:PATH[:SEED]")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*run) return CmdRun(config_path, threads);
    if (*summarize) return CmdSummarize(log_dir, top_k, window, scatter);
    if (*nash) return CmdNash(matrix_path, tol);
    if (*eval) return CmdEval(run_id, against);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
