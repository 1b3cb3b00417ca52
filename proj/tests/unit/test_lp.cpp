// Copyright 2026 The iRouting Authors
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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "mdg/error.hpp"
#include "mdg/lp.hpp"

using namespace mdg;

namespace {

Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

// Brute force over vertices of {x >= 0, y >= 0, A x <= b} in the plane.
double vertex_oracle(const std::vector<std::array<double, 3>>& rows,
                     double cx, double cy) {
  std::vector<std::array<double, 3>> all = rows;
  all.push_back({-1, 0, 0});
  all.push_back({0, -1, 0});
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = i + 1; j < all.size(); ++j) {
      const auto& p = all[i];
      const auto& q = all[j];
      const double det = p[0] * q[1] - p[1] * q[0];
      if (std::abs(det) < 1e-12) continue;
      const double x = (p[2] * q[1] - p[1] * q[2]) / det;
      const double y = (p[0] * q[2] - p[2] * q[0]) / det;
      bool ok = true;
      for (const auto& r : all) ok = ok && r[0] * x + r[1] * y <= r[2] + 1e-9;
      if (ok) best = std::max(best, cx * x + cy * y);
    }
  }
  return best;
}

}  // namespace

TEST_CASE("one free variable bounded by zero") {
  LinearProgram lp(1);
  lp.objective = vec({1});
  lp.lower[0] = -LinearProgram::kInf;
  lp.add_constraint(vec({1}), Sense::less_equal, 0.0);
  lp.add_constraint(vec({1}), Sense::less_equal, 0.0);
  const auto s = solve_lp(lp);
  CHECK(s.objective == doctest::Approx(0.0));
}

TEST_CASE("textbook maximization") {
  LinearProgram lp(2);
  lp.objective = vec({3, 5});
  lp.add_constraint(vec({1, 0}), Sense::less_equal, 4);
  lp.add_constraint(vec({0, 2}), Sense::less_equal, 12);
  lp.add_constraint(vec({3, 2}), Sense::less_equal, 18);
  const auto s = solve_lp(lp);
  CHECK(s.objective == doctest::Approx(36.0));
  CHECK(s.values(0) == doctest::Approx(2.0));
  CHECK(s.values(1) == doctest::Approx(6.0));
}

TEST_CASE("covering constraints need phase one") {
  LinearProgram lp(2);
  lp.objective = vec({-1, -1});
  lp.add_constraint(vec({1, 2}), Sense::greater_equal, 4);
  lp.add_constraint(vec({3, 1}), Sense::greater_equal, 6);
  const auto s = solve_lp(lp);
  CHECK(s.objective == doctest::Approx(-2.8));
  CHECK(s.values(0) == doctest::Approx(1.6));
  CHECK(s.values(1) == doctest::Approx(1.2));
}

TEST_CASE("equality, negative right-hand side and bounds") {
  LinearProgram lp(3);
  lp.objective = vec({1, 1, 1});
  lp.add_constraint(vec({1, 1, 1}), Sense::equal, 1);
  lp.add_constraint(vec({-1, 0, 0}), Sense::less_equal, -0.25);
  lp.upper[2] = 0.1;
  const auto s = solve_lp(lp);
  CHECK(s.objective == doctest::Approx(1.0));
  CHECK(s.values(0) >= 0.25 - 1e-12);
  CHECK(s.values(2) <= 0.1 + 1e-12);
}

TEST_CASE("infeasible and unbounded") {
  LinearProgram bad(1);
  bad.objective = vec({1});
  bad.add_constraint(vec({1}), Sense::greater_equal, 2);
  bad.add_constraint(vec({1}), Sense::less_equal, 1);
  CHECK(solve_lp_status(bad).status == LpStatus::infeasible);
  CHECK_THROWS_AS(solve_lp(bad), StructuralError);

  LinearProgram open(2);
  open.objective = vec({1, 0});
  open.add_constraint(vec({0, 1}), Sense::less_equal, 1);
  CHECK(solve_lp_status(open).status == LpStatus::unbounded);
}

TEST_CASE("degenerate problem that cycles without an anti-cycling rule") {
  LinearProgram lp(4);
  lp.objective = vec({0.75, -150, 0.02, -6});
  lp.add_constraint(vec({0.25, -60, -0.04, 9}), Sense::less_equal, 0);
  lp.add_constraint(vec({0.5, -90, -0.02, 3}), Sense::less_equal, 0);
  lp.add_constraint(vec({0, 0, 1, 0}), Sense::less_equal, 1);
  const auto s = solve_lp(lp);
  CHECK(s.objective == doctest::Approx(0.05));
}

TEST_CASE("random planar programs agree with vertex enumeration") {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> coef(-2.0, 3.0), rhs(0.5, 6.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::array<double, 3>> rows{{1, 0, 10}, {0, 1, 10}};
    const int extra = 1 + trial % 4;
    for (int k = 0; k < extra; ++k) rows.push_back({coef(gen), coef(gen), rhs(gen)});
    const double cx = coef(gen), cy = coef(gen);
    LinearProgram lp(2);
    lp.objective = vec({cx, cy});
    for (const auto& r : rows) lp.add_constraint(vec({r[0], r[1]}), Sense::less_equal, r[2]);
    const auto s = solve_lp(lp);
    CHECK(s.objective == doctest::Approx(vertex_oracle(rows, cx, cy)).epsilon(1e-9));
  }
}
