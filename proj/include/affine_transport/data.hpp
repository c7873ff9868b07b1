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

// Transition datasets (state, action, next state), their CSV/manifest
// files, and synthetic source/target domain generators.

#ifndef AFFINE_TRANSPORT_DATA_HPP_
#define AFFINE_TRANSPORT_DATA_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace at {

// Rows are (s, a, g(s, a)) with widths (state_dim, action_dim, state_dim).
class TransitionDataset {
 public:
  TransitionDataset(Eigen::Index state_dim, Eigen::Index action_dim,
                    Eigen::MatrixXd rows, std::string domain_label = {},
                    std::optional<std::uint64_t> seed = std::nullopt);

  Eigen::Index state_dim() const { return state_dim_; }
  Eigen::Index action_dim() const { return action_dim_; }
  Eigen::Index width() const { return 2 * state_dim_ + action_dim_; }
  Eigen::Index size() const { return rows_.rows(); }
  const Eigen::MatrixXd& rows() const { return rows_; }
  const std::string& domain_label() const { return domain_label_; }
  const std::optional<std::uint64_t>& seed() const { return seed_; }

  Eigen::MatrixXd states() const { return rows_.leftCols(state_dim_); }
  Eigen::MatrixXd actions() const { return rows_.middleCols(state_dim_, action_dim_); }
  Eigen::MatrixXd next_states() const { return rows_.rightCols(state_dim_); }

  TransitionDataset select(const std::vector<Eigen::Index>& indices) const;

 private:
  Eigen::Index state_dim_;
  Eigen::Index action_dim_;
  Eigen::MatrixXd rows_;
  std::string domain_label_;
  std::optional<std::uint64_t> seed_;
};

// 64-bit FNV-1a over the dimensions and the raw row-major values, as 16 hex
// digits.
std::string fingerprint(const TransitionDataset& dataset);

struct Manifest {
  Eigen::Index state_dim = 0;
  Eigen::Index action_dim = 0;
  std::string domain_label;
  std::optional<std::uint64_t> seed;
};

// `data/source.csv` -> `data/source.manifest.json`.
std::filesystem::path manifest_path_for(const std::filesystem::path& csv_path);

Manifest load_manifest(const std::filesystem::path& path);
void save_manifest(const Manifest& manifest, const std::filesystem::path& path);
Manifest manifest_of(const TransitionDataset& dataset);

std::string csv_header(Eigen::Index state_dim, Eigen::Index action_dim);
TransitionDataset load_csv(const std::filesystem::path& path, const Manifest& manifest);
// Reads the manifest first; kMissingManifest if it does not exist.
TransitionDataset load_csv(const std::filesystem::path& path,
                           const std::filesystem::path& manifest_path);
void save_csv(const TransitionDataset& dataset, const std::filesystem::path& path);

// Writes `<stem>.csv` and `<stem>.manifest.json`.
void save_dataset(const TransitionDataset& dataset, const std::filesystem::path& csv_path);

enum class GeneratorKind { kLinear, kPuck };

// Domain randomization applied to the linear generator's base dynamics.
// Empty `scale` means all ones. A disabled coordinate is frozen: its rows
// of the dynamics and control matrices are zeroed and it receives no noise,
// which wins over inversion.
struct Randomization {
  Eigen::VectorXd scale;
  std::vector<Eigen::Index> inverted;
  std::vector<Eigen::Index> disabled;
};

struct LinearParams {
  Eigen::MatrixXd dynamics;  // d x d
  Eigen::MatrixXd control;   // d x k
};

struct PuckParams {
  double friction_x = 0.1;
  double friction_y = 0.1;
  double curl = 0.0;  // radians
  double gravity = 9.81;
};

struct DomainSpec {
  std::string name;
  GeneratorKind kind = GeneratorKind::kLinear;
  LinearParams linear;
  PuckParams puck;
  Randomization randomization;
  double noise = 0.0;

  Eigen::Index state_dim() const;
  Eigen::Index action_dim() const;
  // Throws kBadSpec.
  void validate() const;
};

// s ~ N(0, I) from stream (seed, "states"); next = M' s + B' a + noise * eta
// with eta from stream (seed, "noise:" + spec.name).
TransitionDataset gen_linear(const DomainSpec& spec, const Eigen::MatrixXd& actions,
                             std::uint64_t seed);

// Puck launched from the origin with velocity a = (v_x, v_y). Rest position
// per axis is sign(v_i) v_i^2 / (2 mu_i g), rotated by the curl angle, plus
// noise. The state block is the (fixed) start position (0, 0).
TransitionDataset gen_puck(const DomainSpec& spec, const Eigen::MatrixXd& actions,
                           std::uint64_t seed);

TransitionDataset generate(const DomainSpec& spec, const Eigen::MatrixXd& actions,
                           std::uint64_t seed);

// Launch velocities used by the synthesis command: each component uniform
// on [-1.5, 1.5] from stream (seed, "actions").
Eigen::MatrixXd puck_actions(Eigen::Index n, std::uint64_t seed);
// N(0, I_k) from stream (seed, "actions").
Eigen::MatrixXd gaussian_actions(Eigen::Index n, Eigen::Index action_dim,
                                 std::uint64_t seed);

// Parses the JSON object form of a DomainSpec (see README).
DomainSpec parse_domain_spec(const std::string& json_text);

struct SplitFractions {
  double train = 1.0;
  double test = 0.0;
};

struct SplitIndices {
  std::vector<Eigen::Index> train;  // ascending
  std::vector<Eigen::Index> test;   // ascending
};

// Shuffles 0..n-1 with stream (seed, "split") and cuts it at
// round(train * n). Both parts are returned in ascending order, so the same
// seed partitions a paired dataset identically.
SplitIndices split_indices(Eigen::Index n, SplitFractions fractions, std::uint64_t seed);

std::pair<TransitionDataset, TransitionDataset> split(const TransitionDataset& dataset,
                                                      SplitFractions fractions,
                                                      std::uint64_t seed);

}  // namespace at

#endif  // AFFINE_TRANSPORT_DATA_HPP_
