// Copyright 2026 The BPSDM Authors.
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

// Command-line experiment runner: offline solving, online learning runs,
// exploration trade-off sweeps, and the lower-bound demonstration.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bpsdm/environment.h"
#include "bpsdm/errors.h"
#include "bpsdm/generators.h"
#include "bpsdm/io.h"
#include "bpsdm/learning.h"
#include "bpsdm/oracle.h"
#include "bpsdm/persuasion.h"
#include "json.hpp"

namespace {

using bpsdm::AlgoKind;
using bpsdm::LearnerConfig;
using bpsdm::RegretTrace;
using bpsdm::Role;
using bpsdm::SeqVector;
using bpsdm::SequenceIndex;
using bpsdm::TreeInstance;
using json = nlohmann::ordered_json;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_trace_csv(const std::string& path, const RegretTrace& trace) {
  std::ofstream out(path);
  if (!out) {
    throw bpsdm::BpsdmError(bpsdm::ErrorCode::kInvalidArgument,
                            "cannot open output file", path);
  }
  out << "# instance_hash=" << trace.instance_hash << "\n";
  out << "# algo=" << trace.algo << "\n";
  out << "# T=" << trace.T << "\n";
  if (trace.algo == "bandit") {
    out << "# N=" << trace.N << "\n";
    out << "# alpha=" << fmt(trace.alpha) << "\n";
  }
  out << "# delta=" << fmt(trace.delta) << "\n";
  out << "# seed=" << trace.seed << "\n";
  out << "# f_star=" << fmt(trace.f_star) << "\n";
  out << "t,sender_value,receiver_gain,cum_sender_regret,cum_receiver_regret,"
         "phase\n";
  for (const auto& row : trace.rows) {
    out << row.t << "," << fmt(row.sender_value) << ","
        << fmt(row.receiver_gain) << "," << fmt(row.cum_sender_regret) << ","
        << fmt(row.cum_receiver_regret) << "," << row.phase << "\n";
  }
}

struct Stats {
  double mean = 0.0;
  double stdev = 0.0;
};

Stats stats_of(const std::vector<double>& xs) {
  Stats s;
  if (xs.empty()) return s;
  for (double x : xs) s.mean += x;
  s.mean /= static_cast<double>(xs.size());
  double var = 0.0;
  for (double x : xs) var += (x - s.mean) * (x - s.mean);
  if (xs.size() > 1) var /= static_cast<double>(xs.size() - 1);
  s.stdev = std::sqrt(var);
  return s;
}

std::vector<RegretTrace> run_replicates(const SequenceIndex& index,
                                        const LearnerConfig& config, int T,
                                        uint64_t seed, int replicates) {
  std::vector<RegretTrace> traces;
  for (int i = 0; i < replicates; ++i) {
    traces.push_back(bpsdm::run_experiment(index, config, T, seed + i));
  }
  return traces;
}

int cmd_solve(const std::string& instance_path) {
  TreeInstance tree = bpsdm::load_instance_file(instance_path);
  SequenceIndex index = bpsdm::build_index(tree);
  SeqVector mu = bpsdm::true_prior(index);
  if (const char* flag = std::getenv("BPSDM_LP_EXPORT");
      flag != nullptr && std::string(flag) == "1") {
    bpsdm::PersuasivePolytope poly =
        bpsdm::build_persuasive_polytope(index, mu, 0.0);
    for (const bpsdm::TerminalInfo& t : index.terminals) {
      poly.lp.objective[t.sseq] += mu[t.cseq] * t.us;
    }
    std::ofstream lp_out(instance_path + ".lp");
    lp_out << bpsdm::to_lp_text(poly.lp);
    std::cerr << "wrote " << instance_path << ".lp\n";
  }
  SeqVector phi = bpsdm::solve_constrained_best(index, mu, 0.0, mu);
  auto [f, v] = bpsdm::expected_utilities(index, phi, mu);
  double gain = bpsdm::max_deviation_gain(index, phi, mu);
  std::cout << "F(phi*, mu) = " << fmt(f) << "\n";
  std::cout << "V(phi*, mu) = " << fmt(v) << "\n";
  std::cout << "max_deviation_gain = " << fmt(gain) << "\n";
  std::cout << "phi*:\n";
  for (size_t s = 0; s < phi.size(); ++s) {
    std::cout << "  " << index.seq_name(Role::kSender, static_cast<int>(s))
              << " = " << fmt(phi[s]) << "\n";
  }
  return 0;
}

int cmd_run(const std::string& instance_path, const std::string& algo, int T,
            double delta, double alpha, int N, uint64_t seed, int replicates,
            const std::string& out_dir) {
  TreeInstance tree = bpsdm::load_instance_file(instance_path);
  SequenceIndex index = bpsdm::build_index(tree);
  LearnerConfig config;
  config.algo = algo == "full" ? AlgoKind::kFull : AlgoKind::kBandit;
  config.delta = delta;
  config.alpha = alpha;
  config.N = N;

  std::filesystem::create_directories(out_dir);
  auto traces = run_replicates(index, config, T, seed, replicates);
  std::vector<double> rs, rr;
  for (const RegretTrace& trace : traces) {
    write_trace_csv(out_dir + "/trace_" + std::to_string(trace.seed) + ".csv",
                    trace);
    rs.push_back(trace.rows.empty() ? 0.0
                                    : trace.rows.back().cum_sender_regret);
    rr.push_back(trace.rows.empty() ? 0.0
                                    : trace.rows.back().cum_receiver_regret);
  }

  double exponent =
      algo == "full" ? 0.5 : std::max(config.alpha, 1.0 - config.alpha / 2.0);
  double norm = std::pow(static_cast<double>(std::max(T, 1)), exponent);
  std::vector<double> rs_n, rr_n;
  for (double x : rs) rs_n.push_back(x / norm);
  for (double x : rr) rr_n.push_back(x / norm);

  json summary;
  summary["algo"] = algo;
  summary["T"] = T;
  if (algo == "bandit") {
    summary["N"] = traces.front().N;
    summary["alpha"] = alpha;
  }
  summary["delta"] = delta;
  summary["seed"] = seed;
  summary["replicates"] = replicates;
  summary["instance_hash"] = traces.front().instance_hash;
  summary["f_star"] = traces.front().f_star;
  summary["normalization_exponent"] = exponent;
  auto put = [&](const char* key, const Stats& s) {
    summary[key] = json{{"mean", s.mean}, {"stdev", s.stdev}};
  };
  put("sender_regret", stats_of(rs));
  put("receiver_regret", stats_of(rr));
  put("sender_regret_normalized", stats_of(rs_n));
  put("receiver_regret_normalized", stats_of(rr_n));
  std::ofstream(out_dir + "/summary.json") << summary.dump(2) << "\n";
  std::cout << summary.dump(2) << "\n";
  return 0;
}

int cmd_tradeoff(const std::string& instance_path, int T, double delta,
                 std::vector<double> alphas, uint64_t seed, int replicates,
                 const std::string& out_dir) {
  TreeInstance tree = bpsdm::load_instance_file(instance_path);
  SequenceIndex index = bpsdm::build_index(tree);
  std::sort(alphas.begin(), alphas.end());
  std::filesystem::create_directories(out_dir);
  std::ofstream out(out_dir + "/tradeoff.csv");
  out << "# instance_hash=" << bpsdm::instance_hash(tree) << "\n";
  out << "# T=" << T << "\n";
  out << "# delta=" << fmt(delta) << "\n";
  out << "# seed=" << seed << "\n";
  out << "# replicates=" << replicates << "\n";
  out << "alpha,N,mean_sender_regret,mean_receiver_regret\n";
  for (double alpha : alphas) {
    LearnerConfig config;
    config.algo = AlgoKind::kBandit;
    config.delta = delta;
    config.alpha = alpha;
    auto traces = run_replicates(index, config, T, seed, replicates);
    std::vector<double> rs, rr;
    for (const RegretTrace& trace : traces) {
      rs.push_back(trace.rows.empty() ? 0.0
                                      : trace.rows.back().cum_sender_regret);
      rr.push_back(trace.rows.empty() ? 0.0
                                      : trace.rows.back().cum_receiver_regret);
    }
    out << fmt(alpha) << "," << traces.front().N << ","
        << fmt(stats_of(rs).mean) << "," << fmt(stats_of(rr).mean) << "\n";
  }
  std::cout << "wrote " << out_dir << "/tradeoff.csv\n";
  return 0;
}

int cmd_impossibility(int T, double eps_override, double delta, uint64_t seed,
                      int replicates, const std::string& out_dir) {
  double eps = eps_override > 0.0
                   ? eps_override
                   : 1.0 / (16.0 * std::sqrt(static_cast<double>(T)));
  json report;
  report["T"] = T;
  report["eps"] = eps;
  report["delta"] = delta;
  report["seed"] = seed;
  report["replicates"] = replicates;
  report["instances"] = json::array();
  for (char variant : {'i', 'j'}) {
    TreeInstance tree = bpsdm::gen_hard_instance(5, variant, eps);
    SequenceIndex index = bpsdm::build_index(tree);
    SeqVector mu = bpsdm::true_prior(index);
    json entry;
    entry["variant"] = std::string(1, variant);
    std::vector<long> violations;
    for (int r = 0; r < replicates; ++r) {
      bpsdm::Rng root(seed + r);
      bpsdm::Rng chance_rng = root.split(1);
      bpsdm::Rng rec_rng = root.split(2);
      bpsdm::FullFeedbackLearner learner(index, T, delta);
      long count = 0;
      for (int t = 1; t <= T; ++t) {
        SeqVector phi = learner.select();
        if (bpsdm::brute_max_deviation_gain(index, phi, mu) > 1e-7) ++count;
        bpsdm::EpisodeOutcome ep =
            bpsdm::play_episode(index, phi, true, chance_rng, rec_rng);
        learner.update(ep.y);
      }
      violations.push_back(count);
    }
    entry["violations_per_seed"] = violations;
    long nonzero = 0;
    for (long c : violations) {
      if (c > 0) ++nonzero;
    }
    entry["seeds_with_violations"] = nonzero;
    report["instances"].push_back(std::move(entry));
  }
  std::filesystem::create_directories(out_dir);
  std::ofstream(out_dir + "/impossibility.json") << report.dump(2) << "\n";
  std::cout << report.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Persuasive signaling in sequential decision problems"};
  app.require_subcommand(1);

  std::string instance_path, algo = "full", out_dir = "out";
  int T = 10000, N = 0, replicates = 20;
  double delta = 0.05, alpha = 2.0 / 3.0, eps = 0.0;
  uint64_t seed = 0;
  std::vector<double> alphas;

  CLI::App* solve = app.add_subcommand("solve", "offline optimal scheme");
  solve->add_option("--instance", instance_path)->required();

  CLI::App* run = app.add_subcommand("run", "online learning experiment");
  run->add_option("--instance", instance_path)->required();
  run->add_option("--algo", algo)->check(CLI::IsMember({"full", "bandit"}));
  run->add_option("--T", T);
  run->add_option("--delta", delta);
  run->add_option("--alpha", alpha);
  run->add_option("--N", N);
  run->add_option("--seed", seed);
  run->add_option("--replicates", replicates);
  run->add_option("--out", out_dir);

  CLI::App* tradeoff = app.add_subcommand("tradeoff", "exploration sweep");
  tradeoff->add_option("--instance", instance_path)->required();
  tradeoff->add_option("--T", T);
  tradeoff->add_option("--delta", delta);
  tradeoff->add_option("--alphas", alphas)->required()->delimiter(',');
  tradeoff->add_option("--seed", seed);
  tradeoff->add_option("--replicates", replicates);
  tradeoff->add_option("--out", out_dir);

  CLI::App* imposs =
      app.add_subcommand("impossibility", "lower-bound demonstration");
  imposs->add_option("--T", T);
  imposs->add_option("--eps", eps);
  imposs->add_option("--delta", delta);
  imposs->add_option("--seed", seed);
  imposs->add_option("--replicates", replicates);
  imposs->add_option("--out", out_dir);

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) return cmd_solve(instance_path);
    if (run->parsed()) {
      return cmd_run(instance_path, algo, T, delta, alpha, N, seed, replicates,
                     out_dir);
    }
    if (tradeoff->parsed()) {
      return cmd_tradeoff(instance_path, T, delta, alphas, seed, replicates,
                          out_dir);
    }
    if (imposs->parsed()) {
      return cmd_impossibility(T, eps, delta, seed, replicates, out_dir);
    }
  } catch (const bpsdm::BpsdmError& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.code()) {
      case bpsdm::ErrorCode::kLpInfeasible:
      case bpsdm::ErrorCode::kLpUnbounded:
      case bpsdm::ErrorCode::kNumericalFailure:
        return 3;
      default:
        return 2;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
