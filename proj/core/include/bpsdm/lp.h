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

#ifndef BPSDM_LP_H_
#define BPSDM_LP_H_

#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace bpsdm {

inline constexpr double kLpInf = std::numeric_limits<double>::infinity();

enum class RowSense { kLe, kEq, kGe };

struct LinearProgram {
  struct Row {
    std::vector<std::pair<int, double>> terms;
    RowSense sense = RowSense::kLe;
    double rhs = 0.0;
    std::string name;
  };

  bool maximize = true;
  std::vector<double> lower, upper, objective;
  std::vector<std::string> var_names;
  std::vector<Row> rows;

  int add_var(double lo, double hi, double obj = 0.0, std::string name = "");
  void add_row(std::vector<std::pair<int, double>> terms, RowSense sense,
               double rhs, std::string name = "");
  size_t num_vars() const { return lower.size(); }
};

enum class LPStatus { kOptimal, kInfeasible, kUnbounded };

struct LPSolution {
  LPStatus status = LPStatus::kInfeasible;
  double objective = 0.0;
  std::vector<double> x;
};

// Dense two-phase primal simplex. Deterministic: Dantzig pricing with
// lowest-index tie-breaks, falling back to Bland's rule after a stall so
// degenerate LPs cannot cycle. Feasibility tolerance 1e-7, reduced-cost
// tolerance 1e-9. Throws BpsdmError(kNumericalFailure) when the iteration
// cap is hit or phase 1 stalls above tolerance without a certificate.
LPSolution solve_lp(const LinearProgram& lp);

// CPLEX-style LP text for cross-checking against external solvers.
std::string to_lp_text(const LinearProgram& lp);

}  // namespace bpsdm

#endif  // BPSDM_LP_H_
