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

#include "affine_transport/discrete_ot.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "affine_transport/error.hpp"
#include "affine_transport/linalg.hpp"

namespace at {
namespace {

void check_pair(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) {
  if (x.rows() != y.rows()) {
    throw Error(ErrorKind::kSizeMismatch,
                "sample counts differ: " + std::to_string(x.rows()) + " vs " +
                    std::to_string(y.rows()));
  }
  if (x.cols() != y.cols()) {
    throw Error(ErrorKind::kDimensionMismatch,
                "sample dimensions differ: " + std::to_string(x.cols()) + " vs " +
                    std::to_string(y.cols()));
  }
  if (x.rows() == 0) {
    throw Error(ErrorKind::kTooFewSamples, "empty sample sets");
  }
  require_finite(x, "x");
  require_finite(y, "y");
}

// Row-major n x n matrix of squared Euclidean distances.
std::vector<double> squared_distances(const Eigen::MatrixXd& x,
                                      const Eigen::MatrixXd& y) {
  const Eigen::Index n = x.rows();
  const Eigen::Index d = x.cols();
  // Row-major copies keep the per-pair loop contiguous.
  const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> xr = x;
  const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> yr = y;
  std::vector<double> cost(static_cast<std::size_t>(n * n));
  for (Eigen::Index i = 0; i < n; ++i) {
    const double* xi = xr.data() + i * d;
    double* row = cost.data() + i * n;
    for (Eigen::Index j = 0; j < n; ++j) {
      const double* yj = yr.data() + j * d;
      double acc = 0.0;
      for (Eigen::Index k = 0; k < d; ++k) {
        const double diff = xi[k] - yj[k];
        acc += diff * diff;
      }
      row[j] = acc;
    }
  }
  return cost;
}

double mean_assigned_cost(const std::vector<double>& cost, Eigen::Index n,
                          const std::vector<Eigen::Index>& assignment) {
  double total = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    total += cost[static_cast<std::size_t>(i * n + assignment[i])];
  }
  return total / static_cast<double>(n);
}

// Minimum-cost perfect matching on a dense square cost matrix: one
// Dijkstra-style shortest augmenting path per row over reduced costs, with
// dual potentials updated after each augmentation. O(n^3). Returns the
// column assigned to each row.
std::vector<Eigen::Index> solve_assignment(const std::vector<double>& cost,
                                           Eigen::Index n) {
  using Index = Eigen::Index;
  constexpr double kInf = std::numeric_limits<double>::infinity();
  const auto un = static_cast<std::size_t>(n);
  std::vector<double> u(un, 0.0), v(un, 0.0), shortest(un);
  std::vector<Index> col4row(un, -1), row4col(un, -1), path(un, -1), remaining(un);
  std::vector<char> row_seen(un), col_seen(un);

  for (Index cur = 0; cur < n; ++cur) {
    std::iota(remaining.begin(), remaining.end(), Index{0});
    Index num_remaining = n;
    std::fill(row_seen.begin(), row_seen.end(), 0);
    std::fill(col_seen.begin(), col_seen.end(), 0);
    std::fill(shortest.begin(), shortest.end(), kInf);

    double min_val = 0.0;
    Index i = cur;
    Index sink = -1;
    while (sink == -1) {
      row_seen[i] = 1;
      const double* row = cost.data() + i * n;
      const double base = min_val - u[i];
      Index best = -1;
      double lowest = kInf;
      for (Index it = 0; it < num_remaining; ++it) {
        const Index j = remaining[it];
        const double reduced = base + row[j] - v[j];
        if (reduced < shortest[j]) {
          path[j] = i;
          shortest[j] = reduced;
        }
        // Ties go to the lowest column index.
        if (best == -1 || shortest[j] < lowest ||
            (shortest[j] == lowest && j < remaining[best])) {
          lowest = shortest[j];
          best = it;
        }
      }
      min_val = lowest;
      const Index j = remaining[best];
      col_seen[j] = 1;
      remaining[best] = remaining[--num_remaining];
      if (row4col[j] == -1) {
        sink = j;
      } else {
        i = row4col[j];
      }
    }

    u[cur] += min_val;
    for (Index r = 0; r < n; ++r) {
      if (row_seen[r] && r != cur) u[r] += min_val - shortest[col4row[r]];
    }
    for (Index c = 0; c < n; ++c) {
      if (col_seen[c]) v[c] -= min_val - shortest[c];
    }
    for (Index j = sink;;) {
      const Index r = path[j];
      row4col[j] = r;
      std::swap(col4row[r], j);
      if (r == cur) break;
    }
  }
  return col4row;
}

}  // namespace

TransportPlan::TransportPlan(std::vector<Eigen::Index> assignment, double total_cost)
    : assignment_(std::move(assignment)), total_cost_(total_cost) {}

Eigen::VectorXd TransportPlan::source_weights() const {
  return Eigen::VectorXd::Constant(size(), 1.0 / static_cast<double>(size()));
}

Eigen::VectorXd TransportPlan::target_weights() const {
  return Eigen::VectorXd::Constant(size(), 1.0 / static_cast<double>(size()));
}

Eigen::MatrixXd TransportPlan::coupling() const {
  const Eigen::Index n = size();
  Eigen::MatrixXd gamma = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    gamma(i, assignment_[i]) = 1.0 / static_cast<double>(n);
  }
  return gamma;
}

EmpiricalW2 empirical_w2(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) {
  check_pair(x, y);
  const Eigen::Index n = x.rows();
  if (n > kMaxAssignmentSize) {
    throw Error(ErrorKind::kTooLarge,
                "empirical W2 supports at most " + std::to_string(kMaxAssignmentSize) +
                    " samples, got " + std::to_string(n));
  }
  const std::vector<double> cost = squared_distances(x, y);
  std::vector<Eigen::Index> assignment = solve_assignment(cost, n);
  const double total = mean_assigned_cost(cost, n, assignment);
  return EmpiricalW2{std::sqrt(total), TransportPlan(std::move(assignment), total)};
}

double brute_force_w2(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) {
  check_pair(x, y);
  const Eigen::Index n = x.rows();
  if (n > kMaxBruteForceSize) {
    throw Error(ErrorKind::kTooLarge,
                "brute force supports at most " + std::to_string(kMaxBruteForceSize) +
                    " samples, got " + std::to_string(n));
  }
  const std::vector<double> cost = squared_distances(x, y);
  std::vector<Eigen::Index> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    best = std::min(best, mean_assigned_cost(cost, n, perm));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::sqrt(best);
}

PointwiseError pointwise_error(const Eigen::MatrixXd& predicted,
                               const Eigen::MatrixXd& actual) {
  if (predicted.rows() != actual.rows() || predicted.cols() != actual.cols()) {
    throw Error(ErrorKind::kSizeMismatch,
                "shapes differ: " + std::to_string(predicted.rows()) + "x" +
                    std::to_string(predicted.cols()) + " vs " +
                    std::to_string(actual.rows()) + "x" +
                    std::to_string(actual.cols()));
  }
  const Eigen::Index n = predicted.rows();
  if (n == 0) return PointwiseError{0.0, 0.0, Eigen::VectorXd()};
  Eigen::VectorXd per_sample = (predicted - actual).rowwise().norm();
  const double mean = per_sample.mean();
  const double var = (per_sample.array() - mean).square().mean();
  return PointwiseError{mean, std::sqrt(var), std::move(per_sample)};
}

}  // namespace at
