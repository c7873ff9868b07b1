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

// Exact 2-Wasserstein distance between two equal-size, uniformly weighted
// empirical measures. With uniform weights the Kantorovich problem has a
// permutation optimum, so it reduces to linear assignment.

#ifndef AFFINE_TRANSPORT_DISCRETE_OT_HPP_
#define AFFINE_TRANSPORT_DISCRETE_OT_HPP_

#include <vector>

#include <Eigen/Dense>

namespace at {

inline constexpr Eigen::Index kMaxAssignmentSize = 4096;
inline constexpr Eigen::Index kMaxBruteForceSize = 8;

// Permutation coupling with mass 1/n on each (i, assignment[i]).
class TransportPlan {
 public:
  TransportPlan(std::vector<Eigen::Index> assignment, double total_cost);

  Eigen::Index size() const { return static_cast<Eigen::Index>(assignment_.size()); }
  const std::vector<Eigen::Index>& assignment() const { return assignment_; }
  // Sum_ij gamma_ij ||x_i - y_j||^2.
  double total_cost() const { return total_cost_; }

  Eigen::VectorXd source_weights() const;
  Eigen::VectorXd target_weights() const;
  // Dense n x n coupling matrix. Allocates n^2 doubles.
  Eigen::MatrixXd coupling() const;

 private:
  std::vector<Eigen::Index> assignment_;
  double total_cost_;
};

struct EmpiricalW2 {
  double distance;
  TransportPlan plan;
};

// Rows of x and y are samples. Solved exactly with a shortest augmenting
// path (Hungarian) assignment; ties go to the lowest column index.
EmpiricalW2 empirical_w2(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y);

// Enumerates all n! permutations. Test oracle for n <= 8.
double brute_force_w2(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y);

struct PointwiseError {
  double mean;
  double std;  // population
  Eigen::VectorXd per_sample;
};

// Euclidean distance between rows paired by index.
PointwiseError pointwise_error(const Eigen::MatrixXd& predicted,
                               const Eigen::MatrixXd& actual);

}  // namespace at

#endif  // AFFINE_TRANSPORT_DISCRETE_OT_HPP_
