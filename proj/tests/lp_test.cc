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

#include <string>

#include "bpsdm/errors.h"
#include "bpsdm/lp.h"
#include "doctest.h"

using namespace bpsdm;

TEST_CASE("one variable with an upper bound row") {
  LinearProgram lp;
  int x = lp.add_var(0.0, kLpInf, 1.0);
  lp.add_row({{x, 1.0}}, RowSense::kLe, 3.0);
  LPSolution sol = solve_lp(lp);
  REQUIRE(sol.status == LPStatus::kOptimal);
  CHECK(sol.objective == doctest::Approx(3.0).epsilon(1e-9));
}

TEST_CASE("simplex corner of two variables") {
  LinearProgram lp;
  int x = lp.add_var(0.0, kLpInf, 1.0);
  int y = lp.add_var(0.0, kLpInf, 1.0);
  lp.add_row({{x, 1.0}, {y, 1.0}}, RowSense::kLe, 1.0);
  LPSolution sol = solve_lp(lp);
  REQUIRE(sol.status == LPStatus::kOptimal);
  CHECK(sol.objective == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("contradictory bounds are infeasible") {
  LinearProgram lp;
  int x = lp.add_var(0.0, kLpInf, 0.0);
  lp.maximize = false;
  lp.add_row({{x, 1.0}}, RowSense::kLe, -1.0);
  CHECK(solve_lp(lp).status == LPStatus::kInfeasible);
}

TEST_CASE("missing cap means unbounded") {
  LinearProgram lp;
  lp.add_var(0.0, kLpInf, 1.0);
  CHECK(solve_lp(lp).status == LPStatus::kUnbounded);
}

TEST_CASE("mixed bounds, senses and a free variable") {
  // max 3x + 2y + 4z, x+y+z <= 10, x - y >= -5, 2x + z = 8,
  // x in [0,6], y in [-3,5], z >= 0. Optimum 36 at (0, 2, 8).
  LinearProgram lp;
  int x = lp.add_var(0.0, 6.0, 3.0);
  int y = lp.add_var(-3.0, 5.0, 2.0);
  int z = lp.add_var(0.0, kLpInf, 4.0);
  lp.add_row({{x, 1.0}, {y, 1.0}, {z, 1.0}}, RowSense::kLe, 10.0);
  lp.add_row({{x, 1.0}, {y, -1.0}}, RowSense::kGe, -5.0);
  lp.add_row({{x, 2.0}, {z, 1.0}}, RowSense::kEq, 8.0);
  LPSolution sol = solve_lp(lp);
  REQUIRE(sol.status == LPStatus::kOptimal);
  CHECK(sol.objective == doctest::Approx(36.0).epsilon(1e-9));
  CHECK(sol.x[0] == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(sol.x[1] == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(sol.x[2] == doctest::Approx(8.0).epsilon(1e-9));
}

TEST_CASE("free variable equality") {
  LinearProgram lp;
  lp.maximize = false;
  int x = lp.add_var(-kLpInf, kLpInf, 1.0);
  int y = lp.add_var(0.0, 1.0, 1.0);
  lp.add_row({{x, 1.0}, {y, 1.0}}, RowSense::kEq, 2.0);
  LPSolution sol = solve_lp(lp);
  REQUIRE(sol.status == LPStatus::kOptimal);
  CHECK(sol.objective == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("identical bytes give identical solutions") {
  auto build = [] {
    LinearProgram lp;
    int x = lp.add_var(0.0, kLpInf, 1.0);
    int y = lp.add_var(0.0, kLpInf, 1.5);
    int z = lp.add_var(0.0, kLpInf, 1.5);
    lp.add_row({{x, 1.0}, {y, 1.0}}, RowSense::kLe, 1.0);
    lp.add_row({{x, 1.0}, {z, 1.0}}, RowSense::kLe, 1.0);
    return lp;
  };
  LPSolution a = solve_lp(build());
  LPSolution b = solve_lp(build());
  REQUIRE(a.status == LPStatus::kOptimal);
  CHECK(a.objective == b.objective);
  CHECK(a.x == b.x);
}

TEST_CASE("lp text export mentions every section") {
  LinearProgram lp;
  int x = lp.add_var(0.0, 1.0, 2.0, "alpha");
  lp.add_var(-kLpInf, kLpInf, 0.0, "beta");
  lp.add_row({{x, 1.0}}, RowSense::kLe, 0.5, "cap");
  std::string text = to_lp_text(lp);
  CHECK(text.find("Maximize") != std::string::npos);
  CHECK(text.find("Subject To") != std::string::npos);
  CHECK(text.find("cap:") != std::string::npos);
  CHECK(text.find("beta free") != std::string::npos);
  CHECK(text.find("End") != std::string::npos);
}
