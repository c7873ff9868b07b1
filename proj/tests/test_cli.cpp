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

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <json.hpp>

#include "affine_transport/transfer.hpp"
#include "cli.hpp"
#include "test_util.hpp"

namespace at {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "atx");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string read(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path synth_puck(const fs::path& dir, int n, const std::string& seed = "7") {
  const Result r = run({"synth", "--kind", "puck", "--n", std::to_string(n), "--noise", "0.01",
                        "--seed", seed, "--out", dir.string()});
  EXPECT_EQ(r.code, 0) << r.err;
  return dir;
}

TEST(Cli, SynthWritesPairedFilesDeterministically) {
  const fs::path a = test::scratch_dir("a");
  const fs::path b = test::scratch_dir("b");
  synth_puck(a, 100);
  synth_puck(b, 100);
  EXPECT_EQ(read(a / "source.csv"), read(b / "source.csv"));
  EXPECT_EQ(read(a / "target.csv"), read(b / "target.csv"));
  EXPECT_EQ(read(a / "source.manifest.json"), read(b / "source.manifest.json"));
  const TransitionDataset src =
      load_csv(a / "source.csv", manifest_path_for(a / "source.csv"));
  const TransitionDataset tgt =
      load_csv(a / "target.csv", manifest_path_for(a / "target.csv"));
  EXPECT_EQ(src.size(), 100);
  EXPECT_EQ(src.actions(), tgt.actions());
}

TEST(Cli, SynthMissingOutputDirectory) {
  EXPECT_EQ(run({"synth", "--n", "10", "--out", "/nonexistent/affine"}).code, cli::kExitIo);
}

TEST(Cli, SynthBadSpecIsConfigurationError) {
  const fs::path dir = test::scratch_dir("d");
  EXPECT_EQ(run({"synth", "--n", "10", "--source-friction", "0,0.1", "--out", dir.string()}).code,
            cli::kExitConfiguration);
}

TEST(Cli, SynthFromSpecFile) {
  const fs::path dir = test::scratch_dir("d");
  std::ofstream(dir / "spec.json")
      << R"({"source": {"kind": "linear", "dynamics": [[0.5, 0], [0.1, 0.9]], "control": [[1], [0]]},
             "target": {"kind": "linear", "dynamics": [[0.5, 0], [0.1, 0.9]], "control": [[1], [0]],
                        "inverted": [1]}})";
  const Result r =
      run({"synth", "--spec", (dir / "spec.json").string(), "--n", "50", "--out", dir.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(load_manifest(dir / "source.manifest.json").state_dim, 2);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, cli::kExitUsage);
  EXPECT_EQ(run({"bogus"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"fit", "--source", "x.csv"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"--help"}).code, cli::kExitOk);
}

TEST(Cli, FitIdenticalFilesGivesIdentity) {
  const fs::path dir = synth_puck(test::scratch_dir("d"), 200);
  const std::string src = (dir / "source.csv").string();
  const Result r = run({"fit", "--source", src, "--target", src, "--out",
                        (dir / "model.json").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("n_fit=200"), std::string::npos);
  EXPECT_NE(r.out.find("rho_aff_fit=1"), std::string::npos) << r.out;
  const TransferModel model = load_model(dir / "model.json");
  EXPECT_LE((model.composed().linear() - Eigen::MatrixXd::Identity(6, 6)).norm(), 1e-4);
}

TEST(Cli, FitPairingMismatch) {
  const fs::path a = synth_puck(test::scratch_dir("a"), 100);
  const fs::path b = synth_puck(test::scratch_dir("b"), 120);
  EXPECT_EQ(run({"fit", "--source", (a / "source.csv").string(), "--target",
                 (b / "target.csv").string(), "--out", (a / "m.json").string()})
                .code,
            cli::kExitPairing);
}

TEST(Cli, FitMissingInput) {
  const fs::path dir = test::scratch_dir("d");
  EXPECT_EQ(run({"fit", "--source", (dir / "none.csv").string(), "--target",
                 (dir / "none.csv").string(), "--out", (dir / "m.json").string()})
                .code,
            cli::kExitIo);
}

TEST(Cli, EvalReportsOnAnisotropicPuck) {
  const fs::path train = synth_puck(test::scratch_dir("train"), 200, "1");
  const fs::path held = synth_puck(test::scratch_dir("held"), 200, "2");
  ASSERT_EQ(run({"fit", "--source", (train / "source.csv").string(), "--target",
                 (train / "target.csv").string(), "--out", (train / "model.json").string()})
                .code,
            0);
  const Result r = run({"eval", "--model", (train / "model.json").string(), "--source",
                        (held / "source.csv").string(), "--target",
                        (held / "target.csv").string(), "--out",
                        (held / "report.json").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const nlohmann::json j = nlohmann::json::parse(read(held / "report.json"));
  EXPECT_EQ(j["schema"], "affine-transport/transfer-report/1");
  EXPECT_LE(2.0 * j["error_after"]["mean"].get<double>(), j["error_before"]["mean"].get<double>());
  EXPECT_GE(j["rho_aff"].get<double>(), 0.0);
  EXPECT_LE(j["rho_aff"].get<double>(), 1.0);

  ASSERT_EQ(run({"eval", "--model", (train / "model.json").string(), "--source",
                 (held / "source.csv").string(), "--target", (held / "target.csv").string(),
                 "--out", (held / "report.csv").string(), "--format", "csv"})
                .code,
            0);
  const std::string csv = read(held / "report.csv");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 2);
}

TEST(Cli, EvalDimensionMismatch) {
  const fs::path puck = synth_puck(test::scratch_dir("puck"), 100);
  ASSERT_EQ(run({"fit", "--source", (puck / "source.csv").string(), "--target",
                 (puck / "target.csv").string(), "--out", (puck / "model.json").string()})
                .code,
            0);
  const fs::path lin = test::scratch_dir("linear");
  ASSERT_EQ(run({"synth", "--kind", "linear", "--n", "100", "--out", lin.string()}).code, 0);
  EXPECT_EQ(run({"eval", "--model", (puck / "model.json").string(), "--source",
                 (lin / "source.csv").string(), "--target", (lin / "target.csv").string(),
                 "--out", (lin / "r.json").string()})
                .code,
            cli::kExitDimension);
}

TEST(Cli, LearningCurveSinglePointMatchesEval) {
  const fs::path train = synth_puck(test::scratch_dir("train"), 150, "3");
  const fs::path held = synth_puck(test::scratch_dir("held"), 100, "4");
  const Result lc = run({"learning-curve", "--source", (train / "source.csv").string(),
                         "--target", (train / "target.csv").string(), "--eval-source",
                         (held / "source.csv").string(), "--eval-target",
                         (held / "target.csv").string(), "--sizes", "150", "--repeats", "1",
                         "--out", (held / "lc.json").string()});
  ASSERT_EQ(lc.code, 0) << lc.err;
  ASSERT_EQ(run({"fit", "--source", (train / "source.csv").string(), "--target",
                 (train / "target.csv").string(), "--out", (train / "model.json").string()})
                .code,
            0);
  ASSERT_EQ(run({"eval", "--model", (train / "model.json").string(), "--source",
                 (held / "source.csv").string(), "--target", (held / "target.csv").string(),
                 "--out", (held / "report.json").string()})
                .code,
            0);
  const auto curve = nlohmann::json::parse(read(held / "lc.json"));
  const auto report = nlohmann::json::parse(read(held / "report.json"));
  EXPECT_EQ(curve["points"][0]["mean_error"].get<double>(),
            report["error_after"]["mean"].get<double>());
  EXPECT_EQ(curve["protocol"]["subsampling"], "without replacement");
}

TEST(Cli, LearningCurveErrors) {
  const fs::path dir = synth_puck(test::scratch_dir("d"), 40);
  const std::string src = (dir / "source.csv").string();
  const std::string tgt = (dir / "target.csv").string();
  const std::string out = (dir / "lc.csv").string();
  EXPECT_EQ(run({"learning-curve", "--source", src, "--target", tgt, "--sizes", "8",
                 "--repeats", "0", "--out", out})
                .code,
            cli::kExitUsage);
  EXPECT_EQ(run({"learning-curve", "--source", src, "--target", tgt, "--sizes", "8,64",
                 "--out", out})
                .code,
            cli::kExitConfiguration);
}

TEST(Cli, ScoreAffinePair) {
  const fs::path dir = synth_puck(test::scratch_dir("d"), 300);
  const Result r = run({"score", "--source", (dir / "source.csv").string(), "--target",
                        (dir / "target.csv").string(), "--out",
                        (dir / "score.json").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("n=300"), std::string::npos);
  const auto j = nlohmann::json::parse(read(dir / "score.json"));
  EXPECT_GE(j["rho_aff"].get<double>(), 0.95);
}

TEST(Cli, ScoreTooLarge) {
  const fs::path dir = test::scratch_dir("d");
  ASSERT_EQ(run({"synth", "--n", "4097", "--out", dir.string()}).code, 0);
  const Result r = run({"score", "--source", (dir / "source.csv").string(), "--target",
                        (dir / "target.csv").string()});
  EXPECT_EQ(r.code, cli::kExitConfiguration);
  EXPECT_NE(r.err.find("TooLarge"), std::string::npos);
}

TEST(Cli, ExitCodeMapping) {
  EXPECT_EQ(cli::exit_code_for(ErrorKind::kMalformedCsv), 2);
  EXPECT_EQ(cli::exit_code_for(ErrorKind::kMissingManifest), 2);
  EXPECT_EQ(cli::exit_code_for(ErrorKind::kPairingMismatch), 3);
  EXPECT_EQ(cli::exit_code_for(ErrorKind::kDimensionMismatch), 4);
  EXPECT_EQ(cli::exit_code_for(ErrorKind::kBadSpec), 5);
}

}  // namespace
}  // namespace at
