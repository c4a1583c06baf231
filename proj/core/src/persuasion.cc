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

#include "bpsdm/persuasion.h"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "bpsdm/errors.h"

namespace bpsdm {

namespace {

void check_vec(const SequenceIndex& index, const SeqVector& x, Role role,
               const char* what) {
  if (x.role != role || x.size() != index.num_seqs(role)) {
    throw BpsdmError(ErrorCode::kIndexMismatch, what);
  }
}

}  // namespace

std::pair<double, double> expected_utilities(const SequenceIndex& index,
                                             const SeqVector& phi,
                                             const SeqVector& mu) {
  check_vec(index, phi, Role::kSender, "phi");
  check_vec(index, mu, Role::kChance, "mu");
  double f = 0.0, v = 0.0;
  for (const TerminalInfo& t : index.terminals) {
    double w = mu[t.cseq] * phi[t.sseq];
    f += w * t.us;
    v += w * t.ur;
  }
  return {f, v};
}

double best_spdp_value(const SequenceIndex& index, const SeqVector& phi,
                       const SeqVector& mu, int rseq) {
  check_vec(index, phi, Role::kSender, "phi");
  check_vec(index, mu, Role::kChance, "mu");
  if (rseq <= 0 || rseq >= static_cast<int>(index.num_seqs(Role::kReceiver))) {
    throw BpsdmError(ErrorCode::kInvalidArgument, "bad receiver sequence");
  }
  const Sequence& s = index.seq(Role::kReceiver, rseq);
  const int iroot = s.owner;
  const int trigger_action = s.action;

  // Weight of each terminal of Z(I): recommendation mass of the trigger
  // action at the member on its path, times chance and utility. Keyed by
  // the terminal's own last receiver sequence.
  std::unordered_map<int, double> bucket;
  for (const auto& [t, didx] : index.infosets[iroot].terminals) {
    const TerminalInfo& info = index.terminals[t];
    double w = phi[index.decisions[didx].ext_sseq[trigger_action]] *
               mu[info.cseq] * info.ur;
    bucket[info.rseq] += w;
  }

  std::vector<int> sub = index.subtree_infosets(iroot);
  std::unordered_map<int, double> value;  // infoset -> continuation optimum
  for (auto it = sub.rbegin(); it != sub.rend(); ++it) {
    const InfosetInfo& info = index.infosets[*it];
    double best = -kLpInf;
    for (size_t a = 0; a < info.ext_rseq.size(); ++a) {
      double v = 0.0;
      auto bit = bucket.find(info.ext_rseq[a]);
      if (bit != bucket.end()) v = bit->second;
      for (int child : info.child_infosets[a]) v += value.at(child);
      best = std::max(best, v);
    }
    value[*it] = best;
  }
  return value.at(iroot);
}

double spdp_gain(const SequenceIndex& index, const SeqVector& phi,
                 const SeqVector& mu, int rseq) {
  double on_path = 0.0;
  for (int t : index.terminals_with_rseq[rseq]) {
    const TerminalInfo& info = index.terminals[t];
    on_path += phi[info.sseq] * mu[info.cseq] * info.ur;
  }
  return best_spdp_value(index, phi, mu, rseq) - on_path;
}

double max_deviation_gain(const SequenceIndex& index, const SeqVector& phi,
                          const SeqVector& mu) {
  check_vec(index, phi, Role::kSender, "phi");
  check_vec(index, mu, Role::kChance, "mu");
  // g[sigma]: best total gain from deviations at or below sigma. Distinct
  // sequences of one infoset (and distinct child infosets of one sequence)
  // are path-disjoint, so sums respect the one-deviation-per-path rule.
  std::vector<double> g(index.num_seqs(Role::kReceiver), 0.0);
  std::vector<double> infoset_sum(index.infosets.size(), 0.0);
  double total = 0.0;
  for (int i = static_cast<int>(index.infosets.size()) - 1; i >= 0; --i) {
    const InfosetInfo& info = index.infosets[i];
    double isum = 0.0;
    for (size_t a = 0; a < info.ext_rseq.size(); ++a) {
      int sigma = info.ext_rseq[a];
      double hold = 0.0;
      for (int child : info.child_infosets[a]) hold += infoset_sum[child];
      g[sigma] = std::max(spdp_gain(index, phi, mu, sigma), hold);
      isum += g[sigma];
    }
    infoset_sum[i] = isum;
    if (info.parent_infoset == -1) total += isum;
  }
  return total;
}

PersuasivePolytope build_persuasive_polytope(const SequenceIndex& index,
                                             const SeqVector& mu, double eps) {
  check_vec(index, mu, Role::kChance, "mu");
  if (eps < 0.0) {
    throw BpsdmError(ErrorCode::kInvalidArgument, "eps must be >= 0");
  }
  PersuasivePolytope poly;
  poly.eps = eps;
  LinearProgram& lp = poly.lp;

  const int num_s = static_cast<int>(index.num_seqs(Role::kSender));
  poly.num_phi = num_s;
  // Flow plus phi[0] = 1 already imply phi <= 1, so no upper bounds.
  lp.add_var(1.0, 1.0, 0.0, "phi_0");
  for (int s = 1; s < num_s; ++s) {
    lp.add_var(0.0, kLpInf, 0.0, "phi_" + std::to_string(s));
  }
  for (const DecisionInfo& d : index.decisions) {
    std::vector<std::pair<int, double>> terms = {{d.parent_sseq, 1.0}};
    for (int s : d.ext_sseq) terms.emplace_back(s, -1.0);
    lp.add_row(std::move(terms), RowSense::kEq, 0.0);
  }

  const double cap = eps / static_cast<double>(index.num_seqs(Role::kReceiver));
  for (size_t i = 0; i < index.infosets.size(); ++i) {
    const InfosetInfo& iroot = index.infosets[i];
    std::vector<int> sub = index.subtree_infosets(static_cast<int>(i));
    for (size_t ai = 0; ai < iroot.ext_rseq.size(); ++ai) {
      const int sigma = iroot.ext_rseq[ai];
      const std::string tag =
          "s" + std::to_string(sigma);
      // One dual block per sigma: y over {empty} + subtree infosets.
      int y_empty = lp.add_var(0.0, kLpInf, 0.0, "y" + tag + "_e");
      std::unordered_map<int, int> yvar;
      for (int j : sub) {
        yvar[j] = lp.add_var(0.0, kLpInf, 0.0,
                             "y" + tag + "_" + std::to_string(j));
      }
      // mu * u_r * phi[(h_I(z), a)] terms, grouped by sigma_r(z).
      std::unordered_map<int, std::vector<std::pair<int, double>>> bucket;
      for (const auto& [t, didx] : iroot.terminals) {
        const TerminalInfo& info = index.terminals[t];
        double c = mu[info.cseq] * info.ur;
        if (c != 0.0) {
          bucket[info.rseq].emplace_back(
              index.decisions[didx].ext_sseq[ai], c);
        }
      }
      for (int j : sub) {
        const InfosetInfo& info = index.infosets[j];
        for (size_t a = 0; a < info.ext_rseq.size(); ++a) {
          std::vector<std::pair<int, double>> terms = {{yvar[j], 1.0}};
          for (int child : info.child_infosets[a]) {
            terms.emplace_back(yvar[child], -1.0);
          }
          auto bit = bucket.find(info.ext_rseq[a]);
          if (bit != bucket.end()) {
            for (const auto& [var, c] : bit->second) {
              terms.emplace_back(var, -c);
            }
          }
          lp.add_row(std::move(terms), RowSense::kGe, 0.0);
        }
      }
      lp.add_row({{y_empty, 1.0}, {yvar[static_cast<int>(i)], -1.0}},
                 RowSense::kGe, 0.0);
      // Cap: y_empty minus the on-recommendation utility below sigma.
      std::vector<std::pair<int, double>> cap_terms = {{y_empty, 1.0}};
      for (int t : index.terminals_with_rseq[sigma]) {
        const TerminalInfo& info = index.terminals[t];
        double c = mu[info.cseq] * info.ur;
        if (c != 0.0) cap_terms.emplace_back(info.sseq, -c);
      }
      lp.add_row(std::move(cap_terms), RowSense::kLe, cap);
    }
  }
  return poly;
}

SeqVector solve_constrained_best(const SequenceIndex& index,
                                 const SeqVector& mu_pers, double eps,
                                 const SeqVector& mu_obj) {
  check_vec(index, mu_obj, Role::kChance, "mu_obj");
  PersuasivePolytope poly = build_persuasive_polytope(index, mu_pers, eps);
  for (const TerminalInfo& t : index.terminals) {
    poly.lp.objective[t.sseq] += mu_obj[t.cseq] * t.us;
  }
  poly.lp.maximize = true;
  LPSolution sol = solve_lp(poly.lp);
  if (sol.status == LPStatus::kInfeasible) {
    throw BpsdmError(ErrorCode::kLpInfeasible, "persuasive polytope empty");
  }
  if (sol.status == LPStatus::kUnbounded) {
    throw BpsdmError(ErrorCode::kLpUnbounded, "signaling LP unbounded");
  }
  SeqVector phi(Role::kSender, index.num_seqs(Role::kSender), 0.0);
  for (int s = 0; s < poly.num_phi; ++s) {
    double v = sol.x[s];
    if (v < -1e-7) {
      throw BpsdmError(ErrorCode::kNumericalFailure, "negative phi entry");
    }
    phi[s] = std::max(v, 0.0);
  }
  // Tolerance audit: the LP certificate must survive an exact gain check.
  const double cap =
      eps / static_cast<double>(index.num_seqs(Role::kReceiver));
  for (size_t sigma = 1; sigma < index.num_seqs(Role::kReceiver); ++sigma) {
    double gain = spdp_gain(index, phi, mu_pers, static_cast<int>(sigma));
    if (gain > cap + 1e-5) {
      throw BpsdmError(ErrorCode::kNumericalFailure,
                       "persuasiveness audit failed",
                       index.seq_name(Role::kReceiver, static_cast<int>(sigma)));
    }
  }
  return phi;
}

double dp_value(const SequenceIndex& index, const SeqVector& phi,
                const SeqVector& mu, const DeviationPolicy& policy) {
  check_vec(index, phi, Role::kSender, "phi");
  check_vec(index, mu, Role::kChance, "mu");
  check_vec(index, policy.omega, Role::kReceiver, "omega");
  const SeqVector& omega = policy.omega;
  for (double w : omega.v) {
    if (w != 0.0 && w != 1.0) {
      throw BpsdmError(ErrorCode::kInvalidArgument, "omega must be 0/1");
    }
  }
  for (const TerminalInfo& t : index.terminals) {
    double sum = 0.0;
    for (int s : t.r_chain) sum += omega[s];
    if (sum > 1.0) {
      throw BpsdmError(ErrorCode::kInvalidArgument,
                       "omega exceeds one deviation on a path");
    }
  }

  // On-recommendation mass: the path survives iff no deviation point lies
  // on it.
  std::vector<double> p(index.num_terminals(), 0.0);
  for (size_t t = 0; t < index.num_terminals(); ++t) {
    const TerminalInfo& info = index.terminals[t];
    double on = 1.0;
    for (int s : info.r_chain) on -= omega[s];
    p[t] = phi[info.sseq] * mu[info.cseq] * on;
  }
  // Deviation mass: every sequence (I,a) with I on the path to z diverts
  // phi's recommendation mass of a at h_I(z) into the continuation rho.
  for (size_t i = 0; i < index.infosets.size(); ++i) {
    const InfosetInfo& info = index.infosets[i];
    for (size_t a = 0; a < info.ext_rseq.size(); ++a) {
      int sigma = info.ext_rseq[a];
      if (omega[sigma] != 1.0) continue;
      auto rit = policy.rho.find(sigma);
      if (rit == policy.rho.end()) {
        throw BpsdmError(ErrorCode::kInvalidArgument,
                         "missing continuation for active deviation",
                         index.seq_name(Role::kReceiver, sigma));
      }
      const SeqVector& rho = rit->second;
      check_vec(index, rho, Role::kReceiver, "rho");
      for (const auto& [t, didx] : info.terminals) {
        const TerminalInfo& tinfo = index.terminals[t];
        p[t] += phi[index.decisions[didx].ext_sseq[a]] * rho[tinfo.rseq] *
                mu[tinfo.cseq];
      }
    }
  }
  double v = 0.0;
  for (size_t t = 0; t < index.num_terminals(); ++t) {
    v += p[t] * index.terminals[t].ur;
  }
  return v;
}

}  // namespace bpsdm
