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

#include "bpsdm/lp.h"

#include <cmath>
#include <sstream>

#include "bpsdm/errors.h"

namespace bpsdm {

namespace {

constexpr double kReducedCostTol = 1e-9;
constexpr double kPivotTol = 1e-9;
constexpr double kFeasTol = 1e-7;
constexpr int kStallWindow = 200;

// How each original variable maps into the nonnegative standard form.
struct VarMap {
  enum Kind { kShifted, kFlipped, kSplit } kind = kShifted;
  int col = -1;       // primary column
  int col_neg = -1;   // negative part for kSplit
  double offset = 0.0;
};

struct Tableau {
  int m = 0;
  int ncols = 0;
  std::vector<std::vector<double>> a;
  std::vector<double> b;
  std::vector<int> basis;
  std::vector<bool> active;

  // Two reduced-cost rows kept in sync through pivots.
  std::vector<double> d1, d2;
  double z1 = 0.0, z2 = 0.0;

  void pivot(int r, int j) {
    double p = a[r][j];
    for (double& v : a[r]) v /= p;
    b[r] /= p;
    for (int i = 0; i < m; ++i) {
      if (i == r || !active[i]) continue;
      double f = a[i][j];
      if (f == 0.0) continue;
      for (int k = 0; k < ncols; ++k) a[i][k] -= f * a[r][k];
      a[i][j] = 0.0;
      b[i] -= f * b[r];
    }
    double f1 = d1[j], f2 = d2[j];
    if (f1 != 0.0) {
      for (int k = 0; k < ncols; ++k) d1[k] -= f1 * a[r][k];
      d1[j] = 0.0;
      z1 += f1 * b[r];
    }
    if (f2 != 0.0) {
      for (int k = 0; k < ncols; ++k) d2[k] -= f2 * a[r][k];
      d2[j] = 0.0;
      z2 += f2 * b[r];
    }
    basis[r] = j;
  }
};

enum class PhaseResult { kOptimal, kUnbounded };

PhaseResult run_phase(Tableau& t, std::vector<double>& d, double& z,
                      int allowed_cols) {
  const long cap = 20000 + 100L * (t.m + t.ncols);
  bool bland = false;
  int stall = 0;
  double last_z = z;
  for (long iter = 0; iter < cap; ++iter) {
    int enter = -1;
    if (bland) {
      for (int j = 0; j < allowed_cols; ++j) {
        if (d[j] < -kReducedCostTol) { enter = j; break; }
      }
    } else {
      double best = -kReducedCostTol;
      for (int j = 0; j < allowed_cols; ++j) {
        if (d[j] < best) { best = d[j]; enter = j; }
      }
    }
    if (enter == -1) return PhaseResult::kOptimal;

    int leave = -1;
    double best_ratio = 0.0;
    for (int i = 0; i < t.m; ++i) {
      if (!t.active[i] || t.a[i][enter] <= kPivotTol) continue;
      double ratio = t.b[i] / t.a[i][enter];
      if (leave == -1 || ratio < best_ratio - 1e-12 ||
          (ratio <= best_ratio + 1e-12 && t.basis[i] < t.basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave == -1) return PhaseResult::kUnbounded;

    t.pivot(leave, enter);
    if (z > last_z - 1e-12) {
      if (++stall >= kStallWindow) bland = true;
    } else {
      stall = 0;
      last_z = z;
    }
  }
  throw BpsdmError(ErrorCode::kNumericalFailure, "simplex iteration cap hit");
}

}  // namespace

int LinearProgram::add_var(double lo, double hi, double obj, std::string name) {
  if (lo > hi || std::isnan(lo) || std::isnan(hi) || !std::isfinite(obj)) {
    throw BpsdmError(ErrorCode::kInvalidArgument, "bad variable bounds", name);
  }
  lower.push_back(lo);
  upper.push_back(hi);
  objective.push_back(obj);
  if (name.empty()) name = "x" + std::to_string(lower.size() - 1);
  var_names.push_back(std::move(name));
  return static_cast<int>(lower.size()) - 1;
}

void LinearProgram::add_row(std::vector<std::pair<int, double>> terms,
                            RowSense sense, double rhs, std::string name) {
  for (const auto& [j, c] : terms) {
    if (j < 0 || j >= static_cast<int>(num_vars()) || !std::isfinite(c)) {
      throw BpsdmError(ErrorCode::kInvalidArgument, "bad row term", name);
    }
  }
  if (!std::isfinite(rhs)) {
    throw BpsdmError(ErrorCode::kInvalidArgument, "bad row rhs", name);
  }
  if (name.empty()) name = "c" + std::to_string(rows.size());
  rows.push_back({std::move(terms), sense, rhs, std::move(name)});
}

LPSolution solve_lp(const LinearProgram& lp) {
  const int n = static_cast<int>(lp.num_vars());

  // Map every variable into nonnegative columns.
  std::vector<VarMap> vmap(n);
  int cols = 0;
  std::vector<std::pair<int, double>> upper_rows;  // (col, cap) for x' <= cap
  for (int j = 0; j < n; ++j) {
    double lo = lp.lower[j], hi = lp.upper[j];
    VarMap& vm = vmap[j];
    if (lo > -kLpInf) {
      vm.kind = VarMap::kShifted;
      vm.col = cols++;
      vm.offset = lo;
      if (hi < kLpInf) upper_rows.emplace_back(vm.col, hi - lo);
    } else if (hi < kLpInf) {
      vm.kind = VarMap::kFlipped;
      vm.col = cols++;
      vm.offset = hi;
    } else {
      vm.kind = VarMap::kSplit;
      vm.col = cols++;
      vm.col_neg = cols++;
    }
  }
  const int n_struct = cols;

  // Dense rows of the standard system, before slack/artificial columns.
  struct StdRow {
    std::vector<double> coef;
    RowSense sense;
    double rhs;
  };
  std::vector<StdRow> srows;
  auto push_row = [&](const std::vector<std::pair<int, double>>& terms,
                      RowSense sense, double rhs) {
    StdRow r{std::vector<double>(n_struct, 0.0), sense, rhs};
    for (const auto& [j, c] : terms) {
      const VarMap& vm = vmap[j];
      switch (vm.kind) {
        case VarMap::kShifted:
          r.coef[vm.col] += c;
          r.rhs -= c * vm.offset;
          break;
        case VarMap::kFlipped:
          r.coef[vm.col] -= c;
          r.rhs -= c * vm.offset;
          break;
        case VarMap::kSplit:
          r.coef[vm.col] += c;
          r.coef[vm.col_neg] -= c;
          break;
      }
    }
    if (r.rhs < 0.0) {
      for (double& v : r.coef) v = -v;
      r.rhs = -r.rhs;
      r.sense = r.sense == RowSense::kLe
                    ? RowSense::kGe
                    : (r.sense == RowSense::kGe ? RowSense::kLe : RowSense::kEq);
    }
    srows.push_back(std::move(r));
  };
  for (const auto& row : lp.rows) push_row(row.terms, row.sense, row.rhs);
  for (const auto& [col, cap] : upper_rows) {
    StdRow r{std::vector<double>(n_struct, 0.0), RowSense::kLe, cap};
    r.coef[col] = 1.0;
    srows.push_back(std::move(r));
  }

  const int m = static_cast<int>(srows.size());
  int slack_count = 0, art_count = 0;
  for (const StdRow& r : srows) {
    if (r.sense != RowSense::kEq) ++slack_count;
    if (r.sense != RowSense::kLe) ++art_count;
  }

  Tableau t;
  t.m = m;
  t.ncols = n_struct + slack_count + art_count;
  t.a.assign(m, std::vector<double>(t.ncols, 0.0));
  t.b.resize(m);
  t.basis.assign(m, -1);
  t.active.assign(m, true);
  const int art_begin = n_struct + slack_count;

  // Minimization costs for phase 2 (negate when maximizing); the constant
  // from bound offsets is irrelevant because the objective is recomputed
  // from the recovered point.
  std::vector<double> cost(t.ncols, 0.0);
  for (int j = 0; j < n; ++j) {
    double c = lp.maximize ? -lp.objective[j] : lp.objective[j];
    const VarMap& vm = vmap[j];
    switch (vm.kind) {
      case VarMap::kShifted:
        cost[vm.col] += c;
        break;
      case VarMap::kFlipped:
        cost[vm.col] -= c;
        break;
      case VarMap::kSplit:
        cost[vm.col] += c;
        cost[vm.col_neg] -= c;
        break;
    }
  }

  t.d1.assign(t.ncols, 0.0);
  t.d2 = cost;
  int slack_at = n_struct, art_at = art_begin;
  for (int i = 0; i < m; ++i) {
    StdRow& r = srows[i];
    for (int k = 0; k < n_struct; ++k) t.a[i][k] = r.coef[k];
    t.b[i] = r.rhs;
    if (r.sense == RowSense::kLe) {
      t.a[i][slack_at] = 1.0;
      t.basis[i] = slack_at++;
    } else if (r.sense == RowSense::kGe) {
      t.a[i][slack_at++] = -1.0;
      t.a[i][art_at] = 1.0;
      t.basis[i] = art_at;
      t.d1[art_at++] = 1.0;
    } else {
      t.a[i][art_at] = 1.0;
      t.basis[i] = art_at;
      t.d1[art_at++] = 1.0;
    }
  }
  // Price out the artificial basis in the phase-1 cost row.
  for (int i = 0; i < m; ++i) {
    if (t.basis[i] < art_begin) continue;
    for (int k = 0; k < t.ncols; ++k) t.d1[k] -= t.a[i][k];
    t.d1[t.basis[i]] = 0.0;
    t.z1 += t.b[i];
  }
  // z1 tracks the sum of artificials; the system is feasible iff it hits 0.

  if (art_count > 0) {
    PhaseResult pr = run_phase(t, t.d1, t.z1, t.ncols);
    if (pr == PhaseResult::kUnbounded) {
      throw BpsdmError(ErrorCode::kNumericalFailure, "phase 1 unbounded");
    }
    if (t.z1 > kFeasTol) return {LPStatus::kInfeasible, 0.0, {}};
    // Pivot basic artificials out; a row with no eligible column is
    // redundant and dropped from further pivoting.
    for (int i = 0; i < m; ++i) {
      if (t.basis[i] < art_begin) continue;
      int piv = -1;
      for (int k = 0; k < art_begin; ++k) {
        if (std::abs(t.a[i][k]) > kFeasTol) { piv = k; break; }
      }
      if (piv != -1) {
        t.pivot(i, piv);
      } else {
        t.active[i] = false;
      }
    }
  }

  PhaseResult pr = run_phase(t, t.d2, t.z2, art_begin);
  if (pr == PhaseResult::kUnbounded) return {LPStatus::kUnbounded, 0.0, {}};

  std::vector<double> xt(t.ncols, 0.0);
  for (int i = 0; i < m; ++i) {
    if (t.active[i]) xt[t.basis[i]] = t.b[i];
  }
  LPSolution sol;
  sol.status = LPStatus::kOptimal;
  sol.x.resize(n);
  for (int j = 0; j < n; ++j) {
    const VarMap& vm = vmap[j];
    switch (vm.kind) {
      case VarMap::kShifted: sol.x[j] = vm.offset + xt[vm.col]; break;
      case VarMap::kFlipped: sol.x[j] = vm.offset - xt[vm.col]; break;
      case VarMap::kSplit: sol.x[j] = xt[vm.col] - xt[vm.col_neg]; break;
    }
    sol.objective += lp.objective[j] * sol.x[j];
  }
  return sol;
}

std::string to_lp_text(const LinearProgram& lp) {
  std::ostringstream out;
  out.precision(17);
  auto write_terms = [&](const std::vector<std::pair<int, double>>& terms) {
    bool first = true;
    for (const auto& [j, c] : terms) {
      if (c >= 0.0 && !first) out << " + " << c;
      else if (c >= 0.0) out << c;
      else out << (first ? "- " : " - ") << -c;
      out << " " << lp.var_names[j];
      first = false;
    }
    if (first) out << "0 " << (lp.var_names.empty() ? "x0" : lp.var_names[0]);
  };
  out << (lp.maximize ? "Maximize" : "Minimize") << "\n obj: ";
  std::vector<std::pair<int, double>> obj_terms;
  for (size_t j = 0; j < lp.num_vars(); ++j) {
    if (lp.objective[j] != 0.0) obj_terms.emplace_back(static_cast<int>(j), lp.objective[j]);
  }
  write_terms(obj_terms);
  out << "\nSubject To\n";
  for (const auto& row : lp.rows) {
    out << " " << row.name << ": ";
    write_terms(row.terms);
    switch (row.sense) {
      case RowSense::kLe: out << " <= "; break;
      case RowSense::kEq: out << " = "; break;
      case RowSense::kGe: out << " >= "; break;
    }
    out << row.rhs << "\n";
  }
  out << "Bounds\n";
  for (size_t j = 0; j < lp.num_vars(); ++j) {
    double lo = lp.lower[j], hi = lp.upper[j];
    out << " ";
    if (lo <= -kLpInf && hi >= kLpInf) {
      out << lp.var_names[j] << " free";
    } else {
      if (lo <= -kLpInf) out << "-inf";
      else out << lo;
      out << " <= " << lp.var_names[j] << " <= ";
      if (hi >= kLpInf) out << "+inf";
      else out << hi;
    }
    out << "\n";
  }
  out << "End\n";
  return out.str();
}

}  // namespace bpsdm
