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

// Closed-form 2-Wasserstein geometry between Gaussians, and the affine
// transport (AT) map between two sample sets: the Gaussian OT map between
// their normal approximations.

#ifndef AFFINE_TRANSPORT_GAUSSIAN_OT_HPP_
#define AFFINE_TRANSPORT_GAUSSIAN_OT_HPP_

#include <Eigen/Dense>

#include "affine_transport/linalg.hpp"

namespace at {

struct GaussianModel {
  GaussianModel(Eigen::VectorXd mean, SpdMatrix covariance);

  // Normal approximation of a sample set (rows are samples).
  static GaussianModel from_moments(const MomentEstimate& moments);

  Eigen::Index dim() const { return mean.size(); }

  Eigen::VectorXd mean;
  SpdMatrix covariance;
};

// x -> A x + b.
class AffineMap {
 public:
  AffineMap(Eigen::MatrixXd linear, Eigen::VectorXd offset);

  static AffineMap identity(Eigen::Index dim);

  Eigen::Index dim_in() const { return linear_.cols(); }
  Eigen::Index dim_out() const { return linear_.rows(); }
  const Eigen::MatrixXd& linear() const { return linear_; }
  const Eigen::VectorXd& offset() const { return offset_; }

  Eigen::VectorXd apply(const Eigen::VectorXd& x) const;
  // Row-wise application to an n x dim_in matrix.
  Eigen::MatrixXd apply_rows(const Eigen::MatrixXd& rows) const;

 private:
  Eigen::MatrixXd linear_;
  Eigen::VectorXd offset_;
};

// Tr (Sigma2^{1/2} Sigma1 Sigma2^{1/2})^{1/2}, computed as the sum of the
// singular values of Sigma2^{1/2} Sigma1^{1/2}.
double trace_sqrt_product(const SpdMatrix& sigma1, const SpdMatrix& sigma2);

// W2 (not squared) between two Gaussians.
double gaussian_w2(const GaussianModel& p, const GaussianModel& q);

// OT map from p to q:
//   A = S2 (S2 Sigma1 S2)^{-1/2} S2,  b = mu2 - A mu1,  S2 = Sigma2^{1/2}.
// The inner inverse root is formed from the SVD of S2 * Sigma1^{1/2}, which
// keeps ridge-regularized (nearly singular) covariances resolvable. Throws
// kSingularMatrix if that factor's singular values span more than 12 orders
// of magnitude.
AffineMap gaussian_ot_map(const GaussianModel& p, const GaussianModel& q);

// T_aff[source, target] from row-sample matrices via moment plug-in.
AffineMap at_map(const Eigen::MatrixXd& source, const Eigen::MatrixXd& target);

// Upper bound on |W2(N_X, N_Y) - W2(X, Y)|:
//   2 Tr[(Sigma_X Sigma_Y)^{1/2}] / sqrt(Tr Sigma_X + Tr Sigma_Y).
double gelbrich_gap_bound(const GaussianModel& p, const GaussianModel& q);

// sqrt(2) * Tr[sigma]^{1/2}. Bounds W2(N_X, X) and W2(T_aff X, Y).
double normal_approx_bound(const SpdMatrix& sigma);

}  // namespace at

#endif  // AFFINE_TRANSPORT_GAUSSIAN_OT_HPP_
