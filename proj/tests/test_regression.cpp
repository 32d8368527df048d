// Copyright 2026 The dronesim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "dronesim/regression.hpp"
#include "dronesim/rng.hpp"

using namespace dronesim;

TEST(Ols, ExactLine) {
  std::vector<std::vector<double>> x;
  std::vector<double> y;
  for (int i = 0; i < 10; ++i) {
    x.push_back({static_cast<double>(i)});
    y.push_back(1.0 + 2.0 * i);
  }
  const RegressionResult r = ols_fit(x, y);
  ASSERT_EQ(r.betas.size(), 2u);
  EXPECT_NEAR(r.betas[0], 1.0, 1e-9);
  EXPECT_NEAR(r.betas[1], 2.0, 1e-9);
  EXPECT_NEAR(r.r_squared, 1.0, 1e-12);
}

TEST(Ols, ConstantResponse) {
  std::vector<std::vector<double>> x{{1}, {2}, {3}, {5}};
  const RegressionResult r = ols_fit(x, {4, 4, 4, 4});
  EXPECT_NEAR(r.betas[0], 4.0, 1e-12);
  EXPECT_NEAR(r.betas[1], 0.0, 1e-12);
  EXPECT_EQ(r.r_squared, 0.0);
}

TEST(Ols, ThreeRegressorsNoiseless) {
  // Same shape as the flight regression: counts, volumes and distances.
  Rng rng(2);
  const std::vector<double> beta{1.3329, -0.0315, 0.0023, -0.2101};
  std::vector<std::vector<double>> x;
  std::vector<double> y;
  for (int i = 0; i < 200; ++i) {
    const std::vector<double> row{static_cast<double>(rng.uniform_int(0, 10)), rng.uniform(0, 20),
                                  rng.uniform(0.3, 4.0)};
    x.push_back(row);
    y.push_back(beta[0] + beta[1] * row[0] + beta[2] * row[1] + beta[3] * row[2]);
  }
  const RegressionResult r = ols_fit(x, y);
  for (std::size_t j = 0; j < 4; ++j) EXPECT_NEAR(r.betas[j], beta[j], 1e-9) << j;
  EXPECT_NEAR(r.r_squared, 1.0, 1e-12);
}

TEST(Ols, ResidualsOrthogonalToEveryColumn) {
  Rng rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 50 + static_cast<std::size_t>(rng.uniform_int(0, 200));
    std::vector<std::vector<double>> x;
    std::vector<double> y;
    for (std::size_t i = 0; i < n; ++i) {
      x.push_back({rng.uniform(0, 10), rng.uniform(0, 20), rng.uniform(0, 4)});
      y.push_back(rng.uniform() < 0.5 ? 1.0 : 0.0);
    }
    const RegressionResult r = ols_fit(x, y);
    ASSERT_EQ(r.residuals.size(), n);
    double dot0 = 0.0;
    for (std::size_t i = 0; i < n; ++i) dot0 += r.residuals[i];
    EXPECT_LT(std::abs(dot0), 1e-8 * static_cast<double>(n));
    for (std::size_t j = 0; j < 3; ++j) {
      double d = 0.0;
      for (std::size_t i = 0; i < n; ++i) d += r.residuals[i] * x[i][j];
      EXPECT_LT(std::abs(d), 1e-8 * static_cast<double>(n)) << j;
    }
    EXPECT_GE(r.r_squared, 0.0);
    EXPECT_LE(r.r_squared, 1.0);
  }
}

TEST(Ols, RankDeficiency) {
  std::vector<std::vector<double>> dup;
  std::vector<double> y;
  for (int i = 0; i < 8; ++i) {
    dup.push_back({static_cast<double>(i), 2.0 * i});
    y.push_back(i % 2);
  }
  EXPECT_THROW(ols_fit(dup, y), RankDeficient);
  std::vector<std::vector<double>> zero(8, std::vector<double>{0.0});
  EXPECT_THROW(ols_fit(zero, y), RankDeficient);
  std::vector<std::vector<double>> constant(8, std::vector<double>{3.0});
  EXPECT_THROW(ols_fit(constant, y), RankDeficient);
}

TEST(Ols, ShapeErrors) {
  EXPECT_THROW(ols_fit({{1}, {2}, {3}}, {1, 2, 3}), InvalidArgument);
  EXPECT_THROW(ols_fit({{1}, {2}, {3}, {4}}, {1, 2, 3}), InvalidArgument);
  EXPECT_THROW(ols_fit({{1}, {2, 3}, {3}, {4}}, {1, 2, 3, 4}), InvalidArgument);
  EXPECT_THROW(ols_fit({}, {}), InvalidArgument);
}
