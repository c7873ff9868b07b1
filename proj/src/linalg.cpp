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

#include "affine_transport/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "affine_transport/error.hpp"

namespace at {
namespace {

void require_square(const Eigen::MatrixXd& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorKind::kDimensionMismatch,
                std::string(what) + " must be square, got " +
                    std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

struct ClampedEigen {
  Eigen::VectorXd values;  // ascending, clamped
  Eigen::MatrixXd vectors;
  double raw_min = 0.0;
  double max = 0.0;
};

// Shared front half of spd_sqrt / spd_inv_sqrt.
ClampedEigen clamped_eigen(const Eigen::MatrixXd& m, const char* what) {
  require_square(m, what);
  require_finite(m, what);
  if (!is_symmetric(m)) {
    throw Error(ErrorKind::kNotSymmetric, std::string(what) + " is not symmetric");
  }
  const Eigen::MatrixXd sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym);
  if (eig.info() != Eigen::Success) {
    throw Error(ErrorKind::kNonFinite,
                std::string(what) + ": eigendecomposition did not converge");
  }
  ClampedEigen out;
  out.values = eig.eigenvalues();
  out.vectors = eig.eigenvectors();
  if (out.values.size() == 0) return out;
  out.raw_min = out.values.minCoeff();
  out.max = out.values.maxCoeff();
  const double scale = out.values.cwiseAbs().maxCoeff();
  if (out.max <= 0.0) {
    if (scale > 0.0) {
      throw Error(ErrorKind::kIndefiniteMatrix,
                  std::string(what) + " has no positive eigenvalue");
    }
    out.values.setZero();
    return out;
  }
  if (out.raw_min < -kIndefiniteTolerance * out.max) {
    throw Error(ErrorKind::kIndefiniteMatrix,
                std::string(what) + " has eigenvalue " +
                    std::to_string(out.raw_min) + " below -1e-6 lambda_max");
  }
  const double floor = kClampRatio * out.max;
  out.values = out.values.cwiseMax(floor);
  return out;
}

}  // namespace

void require_finite(const Eigen::MatrixXd& m, const char* what) {
  if (!m.allFinite()) {
    throw Error(ErrorKind::kNonFinite, std::string(what) + " contains NaN or Inf");
  }
}

bool is_symmetric(const Eigen::MatrixXd& m, double tolerance) {
  if (m.rows() != m.cols()) return false;
  if (m.size() == 0) return true;
  const double scale = m.cwiseAbs().maxCoeff();
  const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  return asym <= tolerance * (1.0 + scale);
}

SpdMatrix::SpdMatrix(const Eigen::MatrixXd& m) {
  require_square(m, "SpdMatrix");
  require_finite(m, "SpdMatrix");
  if (!is_symmetric(m)) {
    throw Error(ErrorKind::kNotSymmetric, "SpdMatrix input is not symmetric");
  }
  m_ = 0.5 * (m + m.transpose());
  if (m_.size() == 0) return;
  const Eigen::VectorXd values =
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m_, Eigen::EigenvaluesOnly)
          .eigenvalues();
  const double lambda_max = std::max(values.maxCoeff(), 0.0);
  if (values.minCoeff() < -kPsdTolerance * lambda_max) {
    throw Error(ErrorKind::kIndefiniteMatrix,
                "SpdMatrix has eigenvalue " + std::to_string(values.minCoeff()));
  }
}

SpdMatrix SpdMatrix::identity(Eigen::Index dim) {
  return SpdMatrix(Unchecked{}, Eigen::MatrixXd::Identity(dim, dim));
}

SpdMatrix SpdMatrix::zero(Eigen::Index dim) {
  return SpdMatrix(Unchecked{}, Eigen::MatrixXd::Zero(dim, dim));
}

SpdMatrix spd_sqrt(const Eigen::MatrixXd& m) {
  const ClampedEigen eig = clamped_eigen(m, "spd_sqrt input");
  Eigen::MatrixXd root = eig.vectors * eig.values.cwiseSqrt().asDiagonal() *
                         eig.vectors.transpose();
  return SpdMatrix(SpdMatrix::Unchecked{}, 0.5 * (root + root.transpose()));
}

SpdMatrix spd_inv_sqrt(const Eigen::MatrixXd& m) {
  const ClampedEigen eig = clamped_eigen(m, "spd_inv_sqrt input");
  if (eig.values.size() == 0) {
    return SpdMatrix(SpdMatrix::Unchecked{}, Eigen::MatrixXd(0, 0));
  }
  if (eig.max <= 0.0 || eig.raw_min < kSingularRatio * eig.max) {
    throw Error(ErrorKind::kSingularMatrix,
                "lambda_min / lambda_max = " +
                    std::to_string(eig.max > 0.0 ? eig.raw_min / eig.max : 0.0) +
                    " below 1e-12");
  }
  Eigen::MatrixXd root = eig.vectors *
                         eig.values.cwiseSqrt().cwiseInverse().asDiagonal() *
                         eig.vectors.transpose();
  return SpdMatrix(SpdMatrix::Unchecked{}, 0.5 * (root + root.transpose()));
}

Eigen::MatrixXd SvdResult::reconstruct() const {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(u.cols(), v.cols());
  for (Eigen::Index i = 0; i < singular_values.size(); ++i) {
    d(i, i) = singular_values(i);
  }
  return u * d * v.transpose();
}

SvdResult svd(const Eigen::MatrixXd& m) {
  require_finite(m, "svd input");
  Eigen::JacobiSVD<Eigen::MatrixXd> solver(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return SvdResult{solver.matrixU(), solver.singularValues(), solver.matrixV()};
}

double covariance_ridge(double trace, Eigen::Index dim) {
  return std::max(1e-10, 1e-9 * trace / static_cast<double>(dim));
}

MomentEstimate estimate_moments(const Eigen::MatrixXd& samples) {
  const Eigen::Index n = samples.rows();
  const Eigen::Index d = samples.cols();
  if (n < 2) {
    throw Error(ErrorKind::kTooFewSamples,
                "need at least 2 samples, got " + std::to_string(n));
  }
  require_finite(samples, "samples");

  const Eigen::VectorXd mean = samples.colwise().mean().transpose();
  const Eigen::MatrixXd centered = samples.rowwise() - mean.transpose();
  Eigen::MatrixXd cov = (centered.transpose() * centered) / static_cast<double>(n);
  cov = 0.5 * (cov + cov.transpose());
  const double ridge = covariance_ridge(cov.trace(), d);
  cov.diagonal().array() += ridge;

  return MomentEstimate{mean, SpdMatrix(SpdMatrix::Unchecked{}, std::move(cov)),
                        ridge, n};
}

}  // namespace at
