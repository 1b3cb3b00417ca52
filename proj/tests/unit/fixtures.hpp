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

// Small hand-built profiles and games shared by the unit tests.

#ifndef MDG_TESTS_FIXTURES_HPP_
#define MDG_TESTS_FIXTURES_HPP_

#include <initializer_list>
#include <string>
#include <vector>

#include "mdg/game_model.hpp"

namespace mdg::testing {

// One OS, malware m1..mM with the given damages, controls a1..aK, and the
// given efficacy rows.
inline SecurityProfile make_profile(
    std::vector<double> damages,
    std::initializer_list<std::initializer_list<double>> efficacy) {
  std::vector<MalwareSpec> malware;
  for (std::size_t i = 0; i < damages.size(); ++i) {
    malware.push_back({"m" + std::to_string(i + 1), "ios", damages[i]});
  }
  const std::size_t k = efficacy.begin()->size();
  std::vector<ControlSpec> controls;
  for (std::size_t j = 0; j < k; ++j) {
    controls.push_back({"a" + std::to_string(j + 1), "ios"});
  }
  Matrix d(static_cast<Eigen::Index>(damages.size()),
           static_cast<Eigen::Index>(k));
  Eigen::Index i = 0;
  for (const auto& row : efficacy) {
    Eigen::Index j = 0;
    for (double x : row) d(i, j++) = x;
    ++i;
  }
  return SecurityProfile({"ios"}, std::move(malware), std::move(controls),
                         std::move(d));
}

inline Matrix mat(std::initializer_list<std::initializer_list<double>> rows) {
  Matrix m(static_cast<Eigen::Index>(rows.size()),
           static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (double x : row) m(i, j++) = x;
    ++i;
  }
  return m;
}

// Zero-sum game whose defender matrix is `d`.
inline GameInstance zero_sum(const Matrix& d) {
  return GameInstance::from_matrices(d, -d);
}

inline GameInstance toy_game() {
  return GameInstance::from_matrices(mat({{-3, -1}, {-4, -2}}),
                                     mat({{1, 0}, {0, 1}}));
}

}  // namespace mdg::testing

#endif  // MDG_TESTS_FIXTURES_HPP_
