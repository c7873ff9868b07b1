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

#include "affine_transport/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "affine_transport/discrete_ot.hpp"
#include "affine_transport/error.hpp"
#include "affine_transport/linalg.hpp"
#include "affine_transport/numeric_format.hpp"

namespace at {
namespace {

using json = nlohmann::json;

[[noreturn]] void malformed(const std::string& message) {
  throw Error(ErrorKind::kMalformedModel, message);
}

std::string json_array(const double* values, Eigen::Index count) {
  std::string out = "[";
  for (Eigen::Index i = 0; i < count; ++i) {
    if (i > 0) out += ", ";
    out += detail::format_double(values[i]);
  }
  return out + "]";
}

std::string json_row_major(const Eigen::MatrixXd& m) {
  const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rm = m;
  return json_array(rm.data(), rm.size());
}

Eigen::MatrixXd read_row_major(const json& j, const char* key, Eigen::Index rows,
                               Eigen::Index cols) {
  const json& arr = j.at(key);
  if (!arr.is_array() || static_cast<Eigen::Index>(arr.size()) != rows * cols) {
    malformed(std::string("field ") + key + " must hold " + std::to_string(rows * cols) +
              " numbers");
  }
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      const json& cell = arr[static_cast<std::size_t>(r * cols + c)];
      if (!cell.is_number()) malformed(std::string("field ") + key + " has a non-number");
      m(r, c) = cell.get<double>();
    }
  }
  if (!m.allFinite()) malformed(std::string("field ") + key + " has non-finite values");
  return m;
}

std::string quoted(const std::string& s) { return json(s).dump(); }

}  // namespace

TransferModel::TransferModel(Eigen::MatrixXd rotation, AffineMap at, ModelMeta meta)
    : rotation_(std::move(rotation)),
      at_(std::move(at)),
      composed_(at_.linear() * rotation_, at_.offset()),
      meta_(std::move(meta)) {
  const Eigen::Index d = rotation_.rows();
  if (rotation_.cols() != d || at_.dim_in() != d || at_.dim_out() != d) {
    malformed("rotation and AT map dimensions disagree");
  }
  if (!rotation_.allFinite()) malformed("rotation has non-finite entries");
  const double orth_err =
      (rotation_.transpose() * rotation_ - Eigen::MatrixXd::Identity(d, d)).cwiseAbs().maxCoeff();
  if (!(orth_err <= kOrthogonalityTolerance)) {
    malformed("rotation is not orthogonal (max |R^T R - I| = " + std::to_string(orth_err) + ")");
  }
}

Eigen::MatrixXd TransferModel::apply(const Eigen::MatrixXd& triplets) const {
  if (triplets.cols() != dim()) {
    throw Error(ErrorKind::kDimensionMismatch,
                "triplets have width " + std::to_string(triplets.cols()) +
                    ", model expects " + std::to_string(dim()));
  }
  return at_.apply_rows(triplets * rotation_.transpose());
}

Eigen::MatrixXd TransferModel::predict_next_states(const Eigen::MatrixXd& triplets) const {
  return apply(triplets).rightCols(meta_.state_dim > 0 ? meta_.state_dim : dim());
}

Eigen::MatrixXd procrustes(const Eigen::MatrixXd& source, const Eigen::MatrixXd& target) {
  if (source.rows() != target.rows() || source.cols() != target.cols()) {
    throw Error(ErrorKind::kShapeMismatch,
                "procrustes inputs differ in shape: " + std::to_string(source.rows()) +
                    "x" + std::to_string(source.cols()) + " vs " +
                    std::to_string(target.rows()) + "x" + std::to_string(target.cols()));
  }
  const SvdResult cross = svd(target * source.transpose());
  return cross.u * cross.v.transpose();
}

TransferModel fit_rows(const Eigen::MatrixXd& source_rows,
                       const Eigen::MatrixXd& target_rows, ModelMeta meta) {
  if (source_rows.cols() != target_rows.cols()) {
    throw Error(ErrorKind::kDimensionMismatch,
                "source width " + std::to_string(source_rows.cols()) +
                    " != target width " + std::to_string(target_rows.cols()));
  }
  if (source_rows.rows() != target_rows.rows()) {
    throw Error(ErrorKind::kPairingMismatch,
                "source has " + std::to_string(source_rows.rows()) +
                    " rows, target has " + std::to_string(target_rows.rows()));
  }
  if (source_rows.rows() < 2) {
    throw Error(ErrorKind::kTooFewSamples, "need at least 2 paired samples");
  }
  require_finite(source_rows, "source");
  require_finite(target_rows, "target");

  const Eigen::RowVectorXd source_mean = source_rows.colwise().mean();
  const Eigen::RowVectorXd target_mean = target_rows.colwise().mean();
  const Eigen::MatrixXd source_centered = source_rows.rowwise() - source_mean;
  const Eigen::MatrixXd target_centered = target_rows.rowwise() - target_mean;

  Eigen::MatrixXd rotation =
      procrustes(source_centered.transpose(), target_centered.transpose());
  const Eigen::MatrixXd rotated = source_rows * rotation.transpose();
  AffineMap at = at_map(rotated, target_rows);

  meta.n_fit = source_rows.rows();
  return TransferModel(std::move(rotation), std::move(at), std::move(meta));
}

TransferModel fit(const TransitionDataset& source, const TransitionDataset& target,
                  std::optional<std::uint64_t> seed) {
  if (source.state_dim() != target.state_dim() || source.action_dim() != target.action_dim()) {
    throw Error(ErrorKind::kDimensionMismatch,
                "source (d=" + std::to_string(source.state_dim()) +
                    ", k=" + std::to_string(source.action_dim()) + ") and target (d=" +
                    std::to_string(target.state_dim()) +
                    ", k=" + std::to_string(target.action_dim()) + ") differ");
  }
  ModelMeta meta;
  meta.state_dim = source.state_dim();
  meta.action_dim = source.action_dim();
  meta.source_hash = fingerprint(source);
  meta.target_hash = fingerprint(target);
  meta.seed = seed;
  return fit_rows(source.rows(), target.rows(), std::move(meta));
}

Eigen::MatrixXd apply(const TransferModel& model, const Eigen::MatrixXd& triplets) {
  return model.apply(triplets);
}

AffinityScore affinity_score(const Eigen::MatrixXd& transported,
                             const Eigen::MatrixXd& target) {
  const EmpiricalW2 w2 = empirical_w2(transported, target);
  const MomentEstimate moments = estimate_moments(target);
  const double raw_trace =
      moments.covariance.trace() - moments.ridge * static_cast<double>(target.cols());
  if (!(raw_trace > 1e-24 * (1.0 + moments.mean.squaredNorm()))) {
    throw Error(ErrorKind::kDegenerateTarget, "target covariance has zero trace");
  }
  const double bound = normal_approx_bound(moments.covariance);
  const double unclamped = 1.0 - w2.distance / bound;
  return AffinityScore{std::clamp(unclamped, 0.0, 1.0), unclamped, w2.distance, bound};
}

AffinityScore at_affinity(const Eigen::MatrixXd& source, const Eigen::MatrixXd& target) {
  return affinity_score(at_map(source, target).apply_rows(source), target);
}

std::string serialize_model(const TransferModel& model) {
  const ModelMeta& meta = model.meta();
  std::ostringstream out;
  out << "{\n"
      << "  \"version\": " << kModelFormatVersion << ",\n"
      << "  \"dim\": " << model.dim() << ",\n"
      << "  \"state_dim\": " << meta.state_dim << ",\n"
      << "  \"action_dim\": " << meta.action_dim << ",\n"
      << "  \"R\": " << json_row_major(model.rotation()) << ",\n"
      << "  \"A\": " << json_row_major(model.at().linear()) << ",\n"
      << "  \"b\": " << json_array(model.at().offset().data(), model.at().offset().size())
      << ",\n"
      << "  \"meta\": {\n"
      << "    \"n_fit\": " << meta.n_fit << ",\n"
      << "    \"seed\": " << (meta.seed ? std::to_string(*meta.seed) : "null") << ",\n"
      << "    \"source_hash\": " << quoted(meta.source_hash) << ",\n"
      << "    \"target_hash\": " << quoted(meta.target_hash) << "\n"
      << "  }\n"
      << "}\n";
  return out.str();
}

TransferModel parse_model(const std::string& text) {
  try {
    const json j = json::parse(text);
    if (!j.is_object()) malformed("model file must be a JSON object");
    if (!j.contains("version") || !j.at("version").is_number_integer()) {
      malformed("model file has no integer version field");
    }
    const int version = j.at("version").get<int>();
    if (version != kModelFormatVersion) {
      malformed("unsupported model version " + std::to_string(version) + " (expected " +
                std::to_string(kModelFormatVersion) + ")");
    }
    const auto d = j.at("dim").get<Eigen::Index>();
    ModelMeta meta;
    meta.state_dim = j.at("state_dim").get<Eigen::Index>();
    meta.action_dim = j.at("action_dim").get<Eigen::Index>();
    if (d <= 0 || meta.state_dim <= 0 || meta.action_dim <= 0 ||
        d != 2 * meta.state_dim + meta.action_dim) {
      malformed("dim must equal 2 * state_dim + action_dim");
    }
    Eigen::MatrixXd rotation = read_row_major(j, "R", d, d);
    Eigen::MatrixXd a = read_row_major(j, "A", d, d);
    Eigen::VectorXd b = read_row_major(j, "b", d, 1);
    if (!is_symmetric(a, kOrthogonalityTolerance)) malformed("A is not symmetric");
    const Eigen::VectorXd eig =
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(0.5 * (a + a.transpose()),
                                                       Eigen::EigenvaluesOnly)
            .eigenvalues();
    if (eig.minCoeff() < -kOrthogonalityTolerance * std::max(1.0, eig.maxCoeff())) {
      malformed("A is not positive semi-definite");
    }
    const json& m = j.at("meta");
    meta.n_fit = m.at("n_fit").get<Eigen::Index>();
    if (m.contains("seed") && !m.at("seed").is_null()) {
      meta.seed = m.at("seed").get<std::uint64_t>();
    }
    meta.source_hash = m.at("source_hash").get<std::string>();
    meta.target_hash = m.at("target_hash").get<std::string>();
    return TransferModel(std::move(rotation), AffineMap(std::move(a), std::move(b)),
                         std::move(meta));
  } catch (const json::exception& e) {
    malformed(std::string("cannot parse model: ") + e.what());
  }
}

void save_model(const TransferModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::kIoError, "cannot write " + path.string());
  out << serialize_model(model);
  out.flush();
  if (!out) throw Error(ErrorKind::kIoError, "failed writing " + path.string());
}

TransferModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIoError, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_model(buffer.str());
}

TransferReport evaluate(const TransferModel& model, const TransitionDataset& source,
                        const TransitionDataset& target) {
  const ModelMeta& meta = model.meta();
  for (const TransitionDataset* ds : {&source, &target}) {
    if (ds->state_dim() != meta.state_dim || ds->action_dim() != meta.action_dim) {
      throw Error(ErrorKind::kDimensionMismatch,
                  "dataset (d=" + std::to_string(ds->state_dim()) +
                      ", k=" + std::to_string(ds->action_dim()) + ") does not match model (d=" +
                      std::to_string(meta.state_dim) +
                      ", k=" + std::to_string(meta.action_dim) + ")");
    }
  }
  if (source.size() != target.size()) {
    throw Error(ErrorKind::kPairingMismatch,
                "held-out source has " + std::to_string(source.size()) +
                    " rows, target has " + std::to_string(target.size()));
  }

  const Eigen::MatrixXd transported = model.apply(source.rows());
  const Eigen::Index d = meta.state_dim;
  const PointwiseError before = pointwise_error(source.next_states(), target.next_states());
  const PointwiseError after = pointwise_error(transported.rightCols(d), target.next_states());
  const AffinityScore score = affinity_score(transported, target.rows());

  TransferReport report;
  report.error_before = {before.mean, before.std};
  report.error_after = {after.mean, after.std};
  report.w2_before = empirical_w2(source.rows(), target.rows()).distance;
  report.w2_after = score.w2;
  report.rho_aff = score.value;
  report.rho_aff_unclamped = score.unclamped;
  report.bound_value = score.bound;
  report.n_source = source.size();
  report.n_target = target.size();
  return report;
}

}  // namespace at
