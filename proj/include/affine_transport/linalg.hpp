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

// Dense linear-algebra primitives: symmetric matrix roots, SVD and sample
// moments. Samples are always stored one per row.

#ifndef AFFINE_TRANSPORT_LINALG_HPP_
#define AFFINE_TRANSPORT_LINALG_HPP_

#include <Eigen/Dense>

namespace at {

struct MomentEstimate;
MomentEstimate estimate_moments(const Eigen::MatrixXd& samples);

// Symmetric positive semi-definite matrix. Construction validates
// symmetry (max|M_ij - M_ji| <= 1e-10 (1 + max|M_ij|)) and that no
// eigenvalue is below -1e-10 lambda_max, then stores the exact symmetric
// part.
class SpdMatrix {
 public:
  explicit SpdMatrix(const Eigen::MatrixXd& m);

  static SpdMatrix identity(Eigen::Index dim);
  static SpdMatrix zero(Eigen::Index dim);

  const Eigen::MatrixXd& matrix() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }
  double trace() const { return m_.trace(); }

 private:
  struct Unchecked {};
  SpdMatrix(Unchecked, Eigen::MatrixXd m) : m_(std::move(m)) {}
  friend SpdMatrix spd_sqrt(const Eigen::MatrixXd& m);
  friend SpdMatrix spd_inv_sqrt(const Eigen::MatrixXd& m);
  friend MomentEstimate estimate_moments(const Eigen::MatrixXd& samples);

  Eigen::MatrixXd m_;
};

inline constexpr double kSymmetryTolerance = 1e-10;
inline constexpr double kPsdTolerance = 1e-10;
// Eigenvalues below -kIndefiniteTolerance * lambda_max are rejected by the
// root functions; anything between that and kClampRatio * lambda_max is
// clamped up to kClampRatio * lambda_max.
inline constexpr double kIndefiniteTolerance = 1e-6;
inline constexpr double kClampRatio = 1e-12;
inline constexpr double kSingularRatio = 1e-12;

bool is_symmetric(const Eigen::MatrixXd& m, double tolerance = kSymmetryTolerance);

// Principal square root via symmetric eigendecomposition.
SpdMatrix spd_sqrt(const Eigen::MatrixXd& m);
inline SpdMatrix spd_sqrt(const SpdMatrix& m) { return spd_sqrt(m.matrix()); }

// Inverse principal square root. Throws kSingularMatrix when
// lambda_min / lambda_max < 1e-12.
SpdMatrix spd_inv_sqrt(const Eigen::MatrixXd& m);
inline SpdMatrix spd_inv_sqrt(const SpdMatrix& m) {
  return spd_inv_sqrt(m.matrix());
}

struct SvdResult {
  Eigen::MatrixXd u;                // m x m orthogonal
  Eigen::VectorXd singular_values;  // min(m, n), descending
  Eigen::MatrixXd v;                // n x n orthogonal

  // U * diag(D) * V^T, with D zero-padded to m x n.
  Eigen::MatrixXd reconstruct() const;
};

// Full two-sided Jacobi SVD. Deterministic for identical input bits.
SvdResult svd(const Eigen::MatrixXd& m);

struct MomentEstimate {
  Eigen::VectorXd mean;
  SpdMatrix covariance;  // includes `ridge` on the diagonal
  double ridge = 0.0;
  Eigen::Index sample_count = 0;
};

// lambda = max(1e-10, 1e-9 * trace / d), added to every estimated covariance.
double covariance_ridge(double trace, Eigen::Index dim);

// Mean and maximum-likelihood (1/n) covariance of the rows of `samples`,
// plus the ridge above.
MomentEstimate estimate_moments(const Eigen::MatrixXd& samples);

void require_finite(const Eigen::MatrixXd& m, const char* what);

}  // namespace at

#endif  // AFFINE_TRANSPORT_LINALG_HPP_
