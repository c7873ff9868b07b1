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

// Source-to-target transfer maps: Procrustes rotation followed by affine
// transport, T = T_aff[R X_s, X_t] o R, fitted on paired transition
// triplets.

#ifndef AFFINE_TRANSPORT_TRANSFER_HPP_
#define AFFINE_TRANSPORT_TRANSFER_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <Eigen/Dense>

#include "affine_transport/data.hpp"
#include "affine_transport/gaussian_ot.hpp"

namespace at {

inline constexpr int kModelFormatVersion = 1;
inline constexpr double kOrthogonalityTolerance = 1e-8;

struct ModelMeta {
  Eigen::Index n_fit = 0;
  Eigen::Index state_dim = 0;
  Eigen::Index action_dim = 0;
  std::string source_hash;
  std::string target_hash;
  std::optional<std::uint64_t> seed;
};

class TransferModel {
 public:
  // Throws kMalformedModel if R is not orthogonal within 1e-8 or the
  // dimensions disagree.
  TransferModel(Eigen::MatrixXd rotation, AffineMap at, ModelMeta meta);

  Eigen::Index dim() const { return rotation_.rows(); }
  const Eigen::MatrixXd& rotation() const { return rotation_; }
  const AffineMap& at() const { return at_; }
  // A_c = A R, b_c = b.
  const AffineMap& composed() const { return composed_; }
  const ModelMeta& meta() const { return meta_; }

  // Row-wise x -> A (R x) + b on n x dim triplets.
  Eigen::MatrixXd apply(const Eigen::MatrixXd& triplets) const;
  // Trailing state block of apply().
  Eigen::MatrixXd predict_next_states(const Eigen::MatrixXd& triplets) const;

 private:
  Eigen::MatrixXd rotation_;
  AffineMap at_;
  AffineMap composed_;
  ModelMeta meta_;
};

// Orthogonal R minimizing ||R A - B||_F for d x n matrices whose columns are
// paired: R = V1 V2^T where B A^T = V1 D V2^T.
Eigen::MatrixXd procrustes(const Eigen::MatrixXd& source, const Eigen::MatrixXd& target);

// Both sample sets are mean-centered before the Procrustes step; the means
// re-enter through the AT offset.
TransferModel fit_rows(const Eigen::MatrixXd& source_rows,
                       const Eigen::MatrixXd& target_rows, ModelMeta meta = {});
TransferModel fit(const TransitionDataset& source, const TransitionDataset& target,
                  std::optional<std::uint64_t> seed = std::nullopt);

Eigen::MatrixXd apply(const TransferModel& model, const Eigen::MatrixXd& triplets);

struct AffinityScore {
  double value;      // clamped into [0, 1]
  double unclamped;  // 1 - w2 / bound
  double w2;
  double bound;
};

// rho_aff = 1 - W2(transported, target) / (sqrt(2) Tr[Sigma(target)]^{1/2}),
// with the exact empirical W2.
AffinityScore affinity_score(const Eigen::MatrixXd& transported,
                             const Eigen::MatrixXd& target);

// rho_aff(X, Y) of the plain AT map.
AffinityScore at_affinity(const Eigen::MatrixXd& source, const Eigen::MatrixXd& target);

void save_model(const TransferModel& model, const std::filesystem::path& path);
TransferModel load_model(const std::filesystem::path& path);
std::string serialize_model(const TransferModel& model);
TransferModel parse_model(const std::string& text);

struct ErrorSummary {
  double mean = 0.0;
  double std = 0.0;
};

struct TransferReport {
  ErrorSummary error_before;  // source next state vs target next state
  ErrorSummary error_after;   // transported source next state vs target
  double w2_before = 0.0;     // over full triplets
  double w2_after = 0.0;
  double rho_aff = 0.0;
  double rho_aff_unclamped = 0.0;
  double bound_value = 0.0;
  Eigen::Index n_source = 0;
  Eigen::Index n_target = 0;
};

// Pointwise and distributional comparison of paired held-out data before and
// after transfer. kDimensionMismatch if the datasets do not fit the model,
// kPairingMismatch if their sizes differ.
TransferReport evaluate(const TransferModel& model, const TransitionDataset& source,
                        const TransitionDataset& target);

}  // namespace at

#endif  // AFFINE_TRANSPORT_TRANSFER_HPP_
