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

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "affine_transport/discrete_ot.hpp"
#include "affine_transport/transfer.hpp"
#include "oracle_values.hpp"
#include "test_util.hpp"

namespace at {
namespace {

using test::row_major;

TransferModel scaled_identity(Eigen::Index dim, double scale) {
  return TransferModel(Eigen::MatrixXd::Identity(dim, dim),
                       AffineMap(scale * Eigen::MatrixXd::Identity(dim, dim),
                                 Eigen::VectorXd::Zero(dim)),
                       ModelMeta{});
}

TEST(Procrustes, IdenticalIsIdentity) {
  Stream rng = make_stream(41, "procrustes-id");
  const Eigen::MatrixXd a = standard_normal(3, 20, rng);
  EXPECT_LE((procrustes(a, a) - Eigen::MatrixXd::Identity(3, 3)).norm(), 1e-12);
}

TEST(Procrustes, QuarterTurn) {
  Eigen::MatrixXd rot(2, 2);
  rot << 0, -1, 1, 0;
  const Eigen::MatrixXd a = Eigen::MatrixXd::Identity(2, 2);
  EXPECT_LE((procrustes(a, rot * a) - rot).norm(), 1e-12);
}

TEST(Procrustes, MatchesOracle) {
  const Eigen::MatrixXd r =
      procrustes(row_major(oracle::kProcA, 3, 5), row_major(oracle::kProcB, 3, 5));
  EXPECT_LE((r - row_major(oracle::kProcR, 3, 3)).norm(), 1e-12);
}

TEST(Procrustes, RecoversRandomOrthogonal) {
  Stream rng = make_stream(42, "procrustes-q");
  for (Eigen::Index d : {2, 3, 5, 8}) {
    const Eigen::MatrixXd q = test::random_orthogonal(d, rng);
    const Eigen::MatrixXd a = standard_normal(d, 3 * d, rng);
    const Eigen::MatrixXd r = procrustes(a, q * a);
    EXPECT_LE((r - q).norm(), 1e-8) << "d=" << d;
    EXPECT_LE((r * a - q * a).norm(), 1e-8) << "d=" << d;
    EXPECT_LE((r.transpose() * r - Eigen::MatrixXd::Identity(d, d)).norm(), 1e-12);
  }
}

TEST(Procrustes, ShapeMismatch) {
  EXPECT_AT_ERROR(procrustes(Eigen::MatrixXd::Zero(2, 3), Eigen::MatrixXd::Zero(2, 4)),
                  ErrorKind::kShapeMismatch);
}

TEST(TransferModel, RejectsNonOrthogonalRotation) {
  EXPECT_AT_ERROR(TransferModel(2.0 * Eigen::MatrixXd::Identity(2, 2), AffineMap::identity(2),
                                ModelMeta{}),
                  ErrorKind::kMalformedModel);
}

TEST(TransferModel, ComposedMatchesTwoStage) {
  Stream rng = make_stream(43, "composed");
  const Eigen::MatrixXd r = test::random_orthogonal(4, rng);
  const AffineMap at(test::random_spd(4, rng), standard_normal(4, 1, rng));
  const TransferModel model(r, at, ModelMeta{});
  EXPECT_LE((model.composed().linear() - at.linear() * r).norm(), 1e-15);
  EXPECT_EQ(model.composed().offset(), at.offset());
  const Eigen::MatrixXd x = standard_normal(10, 4, rng);
  const Eigen::MatrixXd two_stage = at.apply_rows(x * r.transpose());
  EXPECT_EQ(model.apply(x), two_stage);
  EXPECT_LE((model.composed().apply_rows(x) - two_stage).norm(), 1e-12);
}

TEST(Apply, IdentityModel) {
  Stream rng = make_stream(44, "apply-id");
  const Eigen::MatrixXd x = standard_normal(5, 5, rng);
  EXPECT_EQ(apply(scaled_identity(5, 1.0), x), x);
}

TEST(Apply, ScalingModel) {
  const Eigen::MatrixXd ones = Eigen::MatrixXd::Ones(1, 5);
  EXPECT_EQ(apply(scaled_identity(5, 2.0), ones), 2.0 * ones);
  EXPECT_AT_ERROR(apply(scaled_identity(5, 2.0), Eigen::MatrixXd::Ones(1, 4)),
                  ErrorKind::kDimensionMismatch);
}

TEST(Fit, IdenticalDomainsGiveIdentity) {
  Stream rng = make_stream(45, "fit-id");
  const Eigen::MatrixXd x = standard_normal(1000, 5, rng) * 2.0 + Eigen::MatrixXd::Ones(1000, 5);
  const TransferModel model = fit_rows(x, x);
  EXPECT_LE((model.composed().linear() - Eigen::MatrixXd::Identity(5, 5)).norm(), 1e-4);
  EXPECT_EQ(model.meta().n_fit, 1000);
}

TEST(Fit, RecoversSpdMap) {
  Stream rng = make_stream(46, "fit-spd");
  const Eigen::MatrixXd p = test::random_spd(5, rng);
  const Eigen::MatrixXd x = standard_normal(20000, 5, rng);
  const TransferModel model = fit_rows(x, x * p.transpose());
  EXPECT_LE(test::rel_frobenius(model.composed().linear(), p), 0.05);
}

TEST(Fit, RecoversGeneralInvertibleMap) {
  Stream rng = make_stream(47, "fit-general");
  const Eigen::MatrixXd m = test::random_spd(4, rng) * test::random_orthogonal(4, rng);
  const Eigen::VectorXd b = standard_normal(4, 1, rng);
  const Eigen::MatrixXd x = standard_normal(20000, 4, rng);
  const Eigen::MatrixXd y = (x * m.transpose()).rowwise() + b.transpose();
  const TransferModel model = fit_rows(x, y);
  EXPECT_LE(test::rel_frobenius(model.composed().linear(), m), 0.08);
  // Direct least-squares oracle for the same data.
  Eigen::MatrixXd design(x.rows(), 5);
  design << x, Eigen::VectorXd::Ones(x.rows());
  const Eigen::MatrixXd ls = design.colPivHouseholderQr().solve(y);
  EXPECT_LE(test::rel_frobenius(model.composed().linear(), ls.topRows(4).transpose()), 0.08);
  EXPECT_LE((model.composed().offset() - b).norm(), 0.05 * b.norm());
}

TEST(Fit, HeldOutErrorReductionOnSpdPair) {
  const Eigen::Index d = 2;
  const Eigen::Index k = 1;
  const Eigen::Index w = 2 * d + k;
  Stream truth = make_stream(48, "fit-heldout-truth");
  const Eigen::MatrixXd p = test::random_spd(w, truth, 0.3, 3.0);
  Stream train = make_stream(48, "fit-heldout-train");
  Stream test_rng = make_stream(49, "fit-heldout-test");
  const Eigen::MatrixXd x = standard_normal(2000, w, train);
  ModelMeta meta;
  meta.state_dim = d;
  meta.action_dim = k;
  const TransferModel model = fit_rows(x, x * p.transpose(), meta);
  const Eigen::MatrixXd xt = standard_normal(500, w, test_rng);
  const Eigen::MatrixXd yt = xt * p.transpose();
  const double before = pointwise_error(xt.rightCols(d), yt.rightCols(d)).mean;
  const double after = pointwise_error(model.predict_next_states(xt), yt.rightCols(d)).mean;
  EXPECT_LE(5.0 * after, before);
}

TEST(Fit, Errors) {
  EXPECT_AT_ERROR(fit_rows(Eigen::MatrixXd::Zero(5, 3), Eigen::MatrixXd::Zero(6, 3)),
                  ErrorKind::kPairingMismatch);
  EXPECT_AT_ERROR(fit_rows(Eigen::MatrixXd::Zero(5, 3), Eigen::MatrixXd::Zero(5, 4)),
                  ErrorKind::kDimensionMismatch);
  const TransitionDataset a(1, 1, Eigen::MatrixXd::Random(4, 3));
  const TransitionDataset b(1, 2, Eigen::MatrixXd::Random(4, 4));
  EXPECT_AT_ERROR(fit(a, b), ErrorKind::kDimensionMismatch);
}

TEST(Fit, OrthogonalEquivariance) {
  Stream rng = make_stream(50, "fit-equivariance");
  const Eigen::MatrixXd x = standard_normal(300, 4, rng) * test::random_spd(4, rng);
  const Eigen::MatrixXd y =
      x * test::random_spd(4, rng) + 0.1 * standard_normal(300, 4, rng);
  const Eigen::MatrixXd w = test::random_orthogonal(4, rng);
  const TransferModel base = fit_rows(x, y);
  const TransferModel rotated = fit_rows(x * w.transpose(), y * w.transpose());
  EXPECT_LE((rotated.composed().linear() - w * base.composed().linear() * w.transpose()).norm(),
            1e-6);
}

TEST(Fit, SamplingErrorShrinks) {
  double err_n = 0.0;
  double err_4n = 0.0;
  Stream truth = make_stream(51, "fit-shrink-truth");
  const Eigen::MatrixXd m = test::random_spd(4, truth) * test::random_orthogonal(4, truth);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Stream rng = make_stream(seed, "fit-shrink");
    const Eigen::MatrixXd small = standard_normal(500, 4, rng);
    const Eigen::MatrixXd large = standard_normal(2000, 4, rng);
    err_n += (fit_rows(small, small * m.transpose()).composed().linear() - m).norm();
    err_4n += (fit_rows(large, large * m.transpose()).composed().linear() - m).norm();
  }
  EXPECT_LE(err_4n, 0.6 * err_n);
}

TEST(AffinityScore, Examples) {
  Stream rng = make_stream(52, "affinity");
  const Eigen::MatrixXd y = standard_normal(100, 3, rng);
  EXPECT_EQ(affinity_score(y, y).value, 1.0);
  const AffinityScore far = affinity_score(y.array() + 1e3, y);
  EXPECT_EQ(far.value, 0.0);
  EXPECT_LT(far.unclamped, 0.0);
  EXPECT_AT_ERROR(affinity_score(y, Eigen::MatrixXd::Ones(100, 3)), ErrorKind::kDegenerateTarget);
}

TEST(AffinityScore, AffinePairScoresHigh) {
  Stream rng = make_stream(53, "affinity-pair");
  const Eigen::MatrixXd p = test::random_spd(3, rng);
  const Eigen::MatrixXd x = standard_normal(500, 3, rng);
  const Eigen::MatrixXd y = (x * p.transpose()).array() + 2.0;
  const AffinityScore score = at_affinity(x, y);
  EXPECT_GE(score.value, 0.95);
  EXPECT_NEAR(score.value, 1.0 - score.w2 / score.bound, 1e-15);
}

TEST(Bounds, TransportedDistanceRespectsNormalApproxBound) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Stream rng = make_stream(seed, "prop-bound");
    const Eigen::MatrixXd x = uniform(300, 4, -1, 1, rng);
    const Eigen::MatrixXd y = x * test::random_spd(4, rng) * test::random_orthogonal(4, rng) +
                              0.2 * standard_normal(300, 4, rng);
    const TransferModel model = fit_rows(x, y);
    const AffinityScore s = affinity_score(model.apply(x), y);
    EXPECT_LE(s.w2, 1.1 * s.bound) << "seed " << seed;
    EXPECT_GE(s.unclamped, 0.0) << "seed " << seed;
  }
}

TransferModel sample_model() {
  Stream rng = make_stream(54, "model-io");
  const Eigen::MatrixXd x = standard_normal(200, 5, rng);
  const Eigen::MatrixXd y = x * test::random_spd(5, rng) + standard_normal(200, 5, rng) * 0.1;
  const TransitionDataset src(2, 1, x, "source", 54);
  const TransitionDataset tgt(2, 1, y, "target", 54);
  return fit(src, tgt, 54);
}

TEST(ModelIo, RoundTripIsBitExact) {
  const TransferModel model = sample_model();
  const auto path = test::scratch_dir("model") / "model.json";
  save_model(model, path);
  const TransferModel loaded = load_model(path);
  EXPECT_EQ(loaded.rotation(), model.rotation());
  EXPECT_EQ(loaded.at().linear(), model.at().linear());
  EXPECT_EQ(loaded.at().offset(), model.at().offset());
  EXPECT_EQ(loaded.composed().linear(), model.composed().linear());
  EXPECT_EQ(loaded.meta().n_fit, 200);
  EXPECT_EQ(loaded.meta().state_dim, 2);
  EXPECT_EQ(loaded.meta().action_dim, 1);
  EXPECT_EQ(loaded.meta().seed, std::optional<std::uint64_t>(54));
  EXPECT_EQ(loaded.meta().source_hash, model.meta().source_hash);
  EXPECT_EQ(loaded.meta().source_hash.size(), 16u);
  EXPECT_EQ(serialize_model(loaded), serialize_model(model));
}

TEST(ModelIo, TamperedRotationIsRejected) {
  nlohmann::json j = nlohmann::json::parse(serialize_model(sample_model()));
  j["R"][0] = 1.5;
  EXPECT_AT_ERROR(parse_model(j.dump()), ErrorKind::kMalformedModel);
}

TEST(ModelIo, VersionMismatchIsRejected) {
  nlohmann::json j = nlohmann::json::parse(serialize_model(sample_model()));
  j["version"] = 2;
  try {
    parse_model(j.dump());
    ADD_FAILURE() << "expected MalformedModel";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kMalformedModel);
    EXPECT_NE(std::string(e.what()).find("version"), std::string::npos);
  }
}

TEST(ModelIo, MalformedInputs) {
  EXPECT_AT_ERROR(parse_model("not json"), ErrorKind::kMalformedModel);
  nlohmann::json j = nlohmann::json::parse(serialize_model(sample_model()));
  j["b"].erase(0);
  EXPECT_AT_ERROR(parse_model(j.dump()), ErrorKind::kMalformedModel);
  EXPECT_AT_ERROR(load_model("/nonexistent/dir/model.json"), ErrorKind::kIoError);
}

TEST(Evaluate, ReportInvariants) {
  Stream rng = make_stream(55, "evaluate");
  const Eigen::MatrixXd x = standard_normal(300, 5, rng);
  const Eigen::MatrixXd y = x * test::random_spd(5, rng) + 0.05 * standard_normal(300, 5, rng);
  const TransitionDataset src(2, 1, x);
  const TransitionDataset tgt(2, 1, y);
  const TransferModel model = fit(src, tgt);
  const TransferReport r = evaluate(model, src, tgt);
  EXPECT_GE(r.rho_aff, 0.0);
  EXPECT_LE(r.rho_aff, 1.0);
  EXPECT_NEAR(r.rho_aff, std::clamp(1.0 - r.w2_after / r.bound_value, 0.0, 1.0), 1e-15);
  EXPECT_LT(r.error_after.mean, r.error_before.mean);
  EXPECT_LT(r.w2_after, r.w2_before);
  EXPECT_EQ(r.n_source, 300);

  const TransitionDataset shorter(2, 1, y.topRows(200));
  EXPECT_AT_ERROR(evaluate(model, src, shorter), ErrorKind::kPairingMismatch);
  const TransitionDataset wider(2, 2, Eigen::MatrixXd::Zero(300, 6));
  EXPECT_AT_ERROR(evaluate(model, wider, wider), ErrorKind::kDimensionMismatch);
}

}  // namespace
}  // namespace at
