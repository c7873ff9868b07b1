// Copyright 2026 The Affine Transport Authors
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

#include "affine_transport/gaussian_ot.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "affine_transport/error.hpp"

namespace at {
namespace {

void require_same_dim(const GaussianModel& p, const GaussianModel& q) {
  if (p.dim() != q.dim()) {
    throw Error(ErrorKind::kDimensionMismatch,
                "Gaussian dimensions differ: " + std::to_string(p.dim()) +
                    " vs " + std::to_string(q.dim()));
  }
}

}  // namespace

GaussianModel::GaussianModel(Eigen::VectorXd mu, SpdMatrix sigma)
    : mean(std::move(mu)), covariance(std::move(sigma)) {
  if (mean.size() != covariance.dim()) {
    throw Error(ErrorKind::kDimensionMismatch,
                "mean has size " + std::to_string(mean.size()) +
                    " but covariance is " + std::to_string(covariance.dim()) +
                    "x" + std::to_string(covariance.dim()));
  }
  require_finite(mean, "Gaussian mean");
}

GaussianModel GaussianModel::from_moments(const MomentEstimate& moments) {
  return GaussianModel(moments.mean, moments.covariance);
}

AffineMap::AffineMap(Eigen::MatrixXd linear, Eigen::VectorXd offset)
    : linear_(std::move(linear)), offset_(std::move(offset)) {
  if (linear_.rows() != offset_.size()) {
    throw Error(ErrorKind::kDimensionMismatch,
                "affine map offset size " + std::to_string(offset_.size()) +
                    " does not match output dimension " +
                    std::to_string(linear_.rows()));
  }
}

AffineMap AffineMap::identity(Eigen::Index dim) {
  return AffineMap(Eigen::MatrixXd::Identity(dim, dim), Eigen::VectorXd::Zero(dim));
}

Eigen::VectorXd AffineMap::apply(const Eigen::VectorXd& x) const {
  if (x.size() != dim_in()) {
    throw Error(ErrorKind::kDimensionMismatch,
                "input has size " + std::to_string(x.size()) + ", map expects " +
                    std::to_string(dim_in()));
  }
  return linear_ * x + offset_;
}

Eigen::MatrixXd AffineMap::apply_rows(const Eigen::MatrixXd& rows) const {
  if (rows.cols() != dim_in()) {
    throw Error(ErrorKind::kDimensionMismatch,
                "rows have width " + std::to_string(rows.cols()) +
                    ", map expects " + std::to_string(dim_in()));
  }
  Eigen::MatrixXd out = rows * linear_.transpose();
  out.rowwise() += offset_.transpose();
  return out;
}

double trace_sqrt_product(const SpdMatrix& sigma1, const SpdMatrix& sigma2) {
  if (sigma1.dim() != sigma2.dim()) {
    throw Error(ErrorKind::kDimensionMismatch, "covariance dimensions differ");
  }
  const Eigen::MatrixXd factor =
      spd_sqrt(sigma2).matrix() * spd_sqrt(sigma1).matrix();
  return svd(factor).singular_values.sum();
}

double gaussian_w2(const GaussianModel& p, const GaussianModel& q) {
  require_same_dim(p, q);
  const double squared = (p.mean - q.mean).squaredNorm() + p.covariance.trace() +
                         q.covariance.trace() -
                         2.0 * trace_sqrt_product(p.covariance, q.covariance);
  return std::sqrt(std::max(squared, 0.0));
}

AffineMap gaussian_ot_map(const GaussianModel& p, const GaussianModel& q) {
  require_same_dim(p, q);
  const Eigen::Index d = p.dim();
  if (d == 0) return AffineMap::identity(0);

  const Eigen::MatrixXd root1 = spd_sqrt(p.covariance).matrix();
  const Eigen::MatrixXd root2 = spd_sqrt(q.covariance).matrix();

  // (S2 Sigma1 S2) = F F^T with F = S2 S1; with F = U D V^T the inverse
  // root is U D^{-1} U^T.
  const SvdResult factor = svd(root2 * root1);
  const Eigen::VectorXd& sv = factor.singular_values;
  const double sv_max = sv(0);
  const double sv_min = sv(sv.size() - 1);
  if (!(sv_max > 0.0) || sv_min < kSingularRatio * sv_max) {
    throw Error(ErrorKind::kSingularMatrix,
                "Sigma2^{1/2} Sigma1 Sigma2^{1/2} is numerically singular "
                "(singular value ratio " +
                    std::to_string(sv_max > 0.0 ? sv_min / sv_max : 0.0) + ")");
  }
  const Eigen::MatrixXd u = factor.u.leftCols(d);
  const Eigen::MatrixXd inner_inv_sqrt =
      u * sv.cwiseInverse().asDiagonal() * u.transpose();

  Eigen::MatrixXd a = root2 * inner_inv_sqrt * root2;
  a = 0.5 * (a + a.transpose());
  Eigen::VectorXd b = q.mean - a * p.mean;
  return AffineMap(std::move(a), std::move(b));
}

AffineMap at_map(const Eigen::MatrixXd& source, const Eigen::MatrixXd& target) {
  if (source.cols() != target.cols()) {
    throw Error(ErrorKind::kDimensionMismatch,
                "source dimension " + std::to_string(source.cols()) +
                    " != target dimension " + std::to_string(target.cols()));
  }
  const GaussianModel p = GaussianModel::from_moments(estimate_moments(source));
  const GaussianModel q = GaussianModel::from_moments(estimate_moments(target));
  return gaussian_ot_map(p, q);
}

double gelbrich_gap_bound(const GaussianModel& p, const GaussianModel& q) {
  require_same_dim(p, q);
  const double total = p.covariance.trace() + q.covariance.trace();
  if (!(total > 0.0)) {
    throw Error(ErrorKind::kDegenerateInput, "both covariances have zero trace");
  }
  return 2.0 * trace_sqrt_product(p.covariance, q.covariance) / std::sqrt(total);
}

double normal_approx_bound(const SpdMatrix& sigma) {
  return std::sqrt(2.0) * std::sqrt(std::max(sigma.trace(), 0.0));
}

}  // namespace at
