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

#include "bpsdm/oracle.h"

#include <algorithm>
#include <cmath>

#include "bpsdm/errors.h"

namespace bpsdm {

namespace {

constexpr size_t kVertexCap = 1000000;

// Enumerates 0/1 flows: at every reachable owner pick one extension, leave
// unreachable extensions at zero. Owners must be listed so parents come
// before children (preorder).
struct FlowEnum {
  struct Owner {
    int parent;
    const std::vector<int>* exts;
  };
  std::vector<Owner> owners;
  Role role;
  size_t dim;
  std::vector<SeqVector> out;

  void recurse(size_t k, SeqVector& x) {
    if (k == owners.size()) {
      if (out.size() >= kVertexCap) {
        throw BpsdmError(ErrorCode::kTooLarge, "vertex enumeration cap hit");
      }
      out.push_back(x);
      return;
    }
    const Owner& o = owners[k];
    if (x[o.parent] == 0.0) {
      recurse(k + 1, x);
      return;
    }
    for (int s : *o.exts) {
      x[s] = 1.0;
      recurse(k + 1, x);
      x[s] = 0.0;
    }
  }
};

}  // namespace

std::vector<SeqVector> enumerate_deterministic(const SequenceIndex& index,
                                               Role role, int rooted_at) {
  if (role == Role::kChance || (rooted_at >= 0 && role != Role::kReceiver)) {
    throw BpsdmError(ErrorCode::kInvalidArgument,
                     "enumeration supports sender and receiver roles");
  }
  FlowEnum fe;
  fe.role = role;
  fe.dim = index.num_seqs(role);
  if (role == Role::kSender) {
    for (const DecisionInfo& d : index.decisions) {
      fe.owners.push_back({d.parent_sseq, &d.ext_sseq});
    }
  } else {
    for (const InfosetInfo& i : index.infosets) {
      fe.owners.push_back({i.parent_rseq, &i.ext_rseq});
    }
  }
  SeqVector x(role, fe.dim, 0.0);
  x[0] = 1.0;
  fe.recurse(0, x);
  if (rooted_at >= 0) {
    int pin = index.infosets[rooted_at].parent_rseq;
    std::vector<SeqVector> kept;
    for (SeqVector& v : fe.out) {
      if (v[pin] == 1.0) kept.push_back(std::move(v));
    }
    return kept;
  }
  return fe.out;
}

std::vector<SeqVector> enumerate_omega(const SequenceIndex& index) {
  const size_t n = index.num_seqs(Role::kReceiver);
  if (n > 24) {
    throw BpsdmError(ErrorCode::kTooLarge, "omega enumeration needs <= 24 sequences");
  }
  std::vector<SeqVector> out;
  SeqVector omega(Role::kReceiver, n, 0.0);
  std::vector<int> path_hits(index.num_terminals(), 0);
  // Include/exclude each sequence; a sequence is eligible only while all
  // its terminals are untouched, so only feasible points are visited.
  auto recurse = [&](auto&& self, size_t sigma) -> void {
    if (sigma == n) {
      out.push_back(omega);
      return;
    }
    self(self, sigma + 1);
    bool ok = true;
    for (int t : index.terminals_with_rseq[sigma]) {
      if (path_hits[t] != 0) { ok = false; break; }
    }
    if (ok) {
      omega[sigma] = 1.0;
      for (int t : index.terminals_with_rseq[sigma]) ++path_hits[t];
      self(self, sigma + 1);
      for (int t : index.terminals_with_rseq[sigma]) --path_hits[t];
      omega[sigma] = 0.0;
    }
  };
  recurse(recurse, 1);
  return out;
}

double brute_max_deviation_gain(const SequenceIndex& index,
                                const SeqVector& phi, const SeqVector& mu) {
  const double v0 = expected_utilities(index, phi, mu).second;
  const size_t n = index.num_seqs(Role::kReceiver);

  // Per-sequence best deterministic continuation, each evaluated through
  // dp_value with a single active deviation.
  std::vector<double> best_gain(n, 0.0);
  std::vector<SeqVector> best_rho(n);
  for (size_t sigma = 1; sigma < n; ++sigma) {
    const Sequence& s = index.seq(Role::kReceiver, static_cast<int>(sigma));
    auto candidates = enumerate_deterministic(index, Role::kReceiver, s.owner);
    DeviationPolicy pol;
    pol.omega = SeqVector(Role::kReceiver, n, 0.0);
    pol.omega[sigma] = 1.0;
    double best = -kLpInf;
    for (const SeqVector& rho : candidates) {
      pol.rho[static_cast<int>(sigma)] = rho;
      double gain = dp_value(index, phi, mu, pol) - v0;
      if (gain > best) {
        best = gain;
        best_rho[sigma] = rho;
      }
    }
    best_gain[sigma] = best;
  }

  // dp_value is additive over active sequences, so each omega's value is
  // the sum of its per-sequence optima.
  double result = 0.0;
  for (const SeqVector& omega : enumerate_omega(index)) {
    double total = 0.0;
    for (size_t sigma = 1; sigma < n; ++sigma) {
      if (omega[sigma] == 1.0) total += best_gain[sigma];
    }
    result = std::max(result, total);
  }
  return result;
}

bool brute_classic_persuasive_check(const ClassicBp& bp,
                                    const std::vector<std::vector<double>>& phi,
                                    double tol) {
  const size_t d = bp.states.size(), m = bp.actions.size();
  if (phi.size() != d) {
    throw BpsdmError(ErrorCode::kInvalidArgument, "phi table shape");
  }
  for (const auto& row : phi) {
    if (row.size() != m) {
      throw BpsdmError(ErrorCode::kInvalidArgument, "phi table shape");
    }
  }
  for (size_t a = 0; a < m; ++a) {
    double follow = 0.0;
    for (size_t th = 0; th < d; ++th) {
      follow += bp.prior[th] * phi[th][a] * bp.ur[th][a];
    }
    for (size_t alt = 0; alt < m; ++alt) {
      double dev = 0.0;
      for (size_t th = 0; th < d; ++th) {
        dev += bp.prior[th] * phi[th][a] * bp.ur[th][alt];
      }
      if (dev > follow + tol) return false;
    }
  }
  return true;
}

}  // namespace bpsdm
