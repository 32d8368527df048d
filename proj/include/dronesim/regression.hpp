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

#pragma once

#include <vector>

#include <Eigen/Dense>

#include "dronesim/errors.hpp"

namespace dronesim {

struct RegressionResult {
  std::vector<double> betas;  // intercept first
  double r_squared = 0.0;
  std::vector<double> residuals;
};

/// Ordinary least squares with an intercept column, solved through the
/// normal equations. R^2 is 0 when y has no variance.
inline RegressionResult ols_fit(const std::vector<std::vector<double>>& rows,
                                const std::vector<double>& y) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  if (static_cast<std::size_t>(n) != y.size() || n == 0) {
    throw InvalidArgument("design rows and responses must be nonempty and equal in number");
  }
  const auto k = static_cast<Eigen::Index>(rows.front().size());
  const Eigen::Index p = k + 1;
  if (n < p + 2) throw InvalidArgument("need at least two more rows than parameters");

  Eigen::MatrixXd x(n, p);
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (static_cast<Eigen::Index>(rows[i].size()) != k) throw InvalidArgument("ragged design rows");
    x(i, 0) = 1.0;
    for (Eigen::Index j = 0; j < k; ++j) x(i, j + 1) = rows[i][j];
    v(i) = y[i];
  }

  // Rank is judged on the column-scaled design so unit choices do not matter.
  Eigen::VectorXd scale = x.colwise().norm().transpose();
  for (Eigen::Index j = 0; j < p; ++j) {
    if (scale(j) == 0.0) throw RankDeficient("design column " + std::to_string(j) + " is zero");
  }
  const Eigen::MatrixXd xs = x * scale.cwiseInverse().asDiagonal();
  Eigen::FullPivLU<Eigen::MatrixXd> lu(xs);
  lu.setThreshold(1e-10);
  if (lu.rank() < p) throw RankDeficient("design matrix is rank deficient");

  const Eigen::MatrixXd xtx = x.transpose() * x;
  const Eigen::VectorXd beta = xtx.ldlt().solve(x.transpose() * v);
  const Eigen::VectorXd resid = v - x * beta;

  RegressionResult r;
  r.betas.assign(beta.data(), beta.data() + p);
  r.residuals.assign(resid.data(), resid.data() + n);
  const double mean = v.mean();
  const double sst = (v.array() - mean).square().sum();
  const double ssr = resid.squaredNorm();
  r.r_squared = sst == 0.0 ? 0.0 : 1.0 - ssr / sst;
  return r;
}

}  // namespace dronesim
