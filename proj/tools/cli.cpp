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

#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>
#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include "affine_transport/discrete_ot.hpp"
#include "affine_transport/numeric_format.hpp"
#include "affine_transport/rng.hpp"
#include "affine_transport/transfer.hpp"

namespace at::cli {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

constexpr const char* kReportSchema = "affine-transport/transfer-report/1";
constexpr const char* kCurveSchema = "affine-transport/learning-curve/1";
constexpr const char* kScoreSchema = "affine-transport/score/1";
constexpr const char* kCentering = "mean-centered before Procrustes";

std::shared_ptr<spdlog::logger> logger() {
  static std::shared_ptr<spdlog::logger> log = [] {
    auto l = spdlog::stderr_logger_mt("affine_transport");
    l->set_pattern("[%l] %v");
    spdlog::level::level_enum level = spdlog::level::warn;
    if (const char* env = std::getenv("AT_LOG_LEVEL")) {
      const std::string v = env;
      if (v == "error") level = spdlog::level::err;
      else if (v == "warn") level = spdlog::level::warn;
      else if (v == "info") level = spdlog::level::info;
      else if (v == "debug") level = spdlog::level::debug;
    }
    l->set_level(level);
    return l;
  }();
  return log;
}

std::string fmt_num(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.6g", v);
  return buffer;
}

// Global flags every subcommand accepts.
struct CommonFlags {
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "json";
};

void add_common(CLI::App* cmd, CommonFlags& flags, bool out_required) {
  cmd->add_option("--seed", flags.seed, "Seed for every random stream")
      ->capture_default_str();
  auto* out = cmd->add_option("--out", flags.out, "Output path");
  if (out_required) out->required();
  cmd->add_option("--format", flags.format, "Report format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
}

void require_input(const std::string& path) {
  if (!fs::is_regular_file(path)) {
    throw Error(ErrorKind::kIoError, "input file not found: " + path);
  }
}

void require_output_parent(const std::string& path) {
  const fs::path parent = fs::path(path).parent_path();
  if (!parent.empty() && !fs::is_directory(parent)) {
    throw Error(ErrorKind::kIoError, "output directory does not exist: " + parent.string());
  }
}

// A CSV plus its manifest; the manifest defaults to <stem>.manifest.json.
struct DatasetArg {
  std::string csv;
  std::string manifest;

  void add(CLI::App* cmd, const std::string& name, bool required, const std::string& help) {
    auto* opt = cmd->add_option("--" + name, csv, help);
    if (required) opt->required();
    cmd->add_option("--" + name + "-manifest", manifest,
                    "Manifest for --" + name + " (default: <stem>.manifest.json)");
  }
  bool given() const { return !csv.empty(); }
  fs::path manifest_path() const {
    return manifest.empty() ? manifest_path_for(csv) : fs::path(manifest);
  }
  void validate() const {
    require_input(csv);
    if (!fs::is_regular_file(manifest_path())) {
      throw Error(ErrorKind::kMissingManifest, "manifest not found: " + manifest_path().string());
    }
  }
  TransitionDataset load() const { return load_csv(csv, manifest_path()); }
};

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::kIoError, "cannot write " + path);
  out << text;
  out.flush();
  if (!out) throw Error(ErrorKind::kIoError, "failed writing " + path);
}

// ---- synth ---------------------------------------------------------------

struct SynthFlags {
  CommonFlags common;
  std::string spec_file;
  std::string kind = "puck";
  Eigen::Index n = 0;
  double noise = 0.0;
  std::vector<double> source_friction{0.1, 0.1};
  std::vector<double> target_friction{0.1, 0.4};
  double source_curl = 0.0;
  double target_curl = 0.0;
  Eigen::Index state_dim = 3;
  Eigen::Index action_dim = 2;
  std::vector<double> target_scale;
  std::vector<Eigen::Index> target_invert;
  std::vector<Eigen::Index> target_disable;
};

std::pair<DomainSpec, DomainSpec> domain_pair(const SynthFlags& f) {
  DomainSpec source;
  DomainSpec target;
  if (!f.spec_file.empty()) {
    std::ifstream in(f.spec_file, std::ios::binary);
    if (!in) throw Error(ErrorKind::kIoError, "cannot open " + f.spec_file);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    json j;
    try {
      j = json::parse(buffer.str());
    } catch (const json::exception& e) {
      throw Error(ErrorKind::kBadSpec, std::string("malformed spec file: ") + e.what());
    }
    if (!j.is_object() || !j.contains("source") || !j.contains("target")) {
      throw Error(ErrorKind::kBadSpec, "spec file needs \"source\" and \"target\" objects");
    }
    json js = j.at("source");
    json jt = j.at("target");
    if (!js.contains("name")) js["name"] = "source";
    if (!jt.contains("name")) jt["name"] = "target";
    source = parse_domain_spec(js.dump());
    target = parse_domain_spec(jt.dump());
  } else if (f.kind == "puck") {
    if (f.source_friction.size() != 2 || f.target_friction.size() != 2) {
      throw Error(ErrorKind::kBadSpec, "friction takes two comma-separated values");
    }
    source.kind = target.kind = GeneratorKind::kPuck;
    source.name = "source";
    target.name = "target";
    source.noise = target.noise = f.noise;
    source.puck.friction_x = f.source_friction[0];
    source.puck.friction_y = f.source_friction[1];
    source.puck.curl = f.source_curl;
    target.puck.friction_x = f.target_friction[0];
    target.puck.friction_y = f.target_friction[1];
    target.puck.curl = f.target_curl;
  } else {
    if (f.state_dim <= 0 || f.action_dim <= 0) {
      throw Error(ErrorKind::kBadSpec, "state and action dimensions must be positive");
    }
    Stream rng = make_stream(f.common.seed, "base-dynamics");
    LinearParams base;
    base.dynamics = 0.5 * standard_normal(f.state_dim, f.state_dim, rng);
    base.control = standard_normal(f.state_dim, f.action_dim, rng);
    source.kind = target.kind = GeneratorKind::kLinear;
    source.name = "source";
    target.name = "target";
    source.linear = target.linear = base;
    source.noise = target.noise = f.noise;
    if (!f.target_scale.empty()) {
      target.randomization.scale = Eigen::Map<const Eigen::VectorXd>(
          f.target_scale.data(), static_cast<Eigen::Index>(f.target_scale.size()));
    }
    target.randomization.inverted = f.target_invert;
    target.randomization.disabled = f.target_disable;
  }
  source.validate();
  target.validate();
  if (source.kind != target.kind || source.state_dim() != target.state_dim() ||
      source.action_dim() != target.action_dim()) {
    throw Error(ErrorKind::kBadSpec, "source and target domains must share kind and dimensions");
  }
  return {source, target};
}

int cmd_synth(const SynthFlags& f, std::ostream& out) {
  if (f.common.out.empty() || !fs::is_directory(f.common.out)) {
    throw Error(ErrorKind::kIoError, "output directory does not exist: " + f.common.out);
  }
  if (!f.spec_file.empty()) require_input(f.spec_file);
  if (f.n < 2) throw ConfigurationError("--n must be at least 2");

  const auto [source_spec, target_spec] = domain_pair(f);
  const Eigen::MatrixXd actions =
      source_spec.kind == GeneratorKind::kPuck
          ? puck_actions(f.n, f.common.seed)
          : gaussian_actions(f.n, source_spec.action_dim(), f.common.seed);
  logger()->info("generating {} paired transitions (seed {})", f.n, f.common.seed);
  const TransitionDataset source = generate(source_spec, actions, f.common.seed);
  const TransitionDataset target = generate(target_spec, actions, f.common.seed);

  const fs::path dir(f.common.out);
  save_dataset(source, dir / "source.csv");
  save_dataset(target, dir / "target.csv");
  out << "wrote " << (dir / "source.csv").string() << " (" << source.size() << " rows)\n";
  out << "wrote " << (dir / "target.csv").string() << " (" << target.size() << " rows)\n";
  return kExitOk;
}

// ---- fit -----------------------------------------------------------------

struct FitFlags {
  CommonFlags common;
  DatasetArg source;
  DatasetArg target;
};

int cmd_fit(const FitFlags& f, std::ostream& out) {
  f.source.validate();
  f.target.validate();
  require_output_parent(f.common.out);

  const TransitionDataset source = f.source.load();
  const TransitionDataset target = f.target.load();
  const TransferModel model = fit(source, target, f.common.seed);
  save_model(model, f.common.out);

  const PointwiseError before = pointwise_error(source.next_states(), target.next_states());
  const PointwiseError after =
      pointwise_error(model.predict_next_states(source.rows()), target.next_states());
  out << "n_fit=" << model.meta().n_fit << " state_dim=" << model.meta().state_dim
      << " action_dim=" << model.meta().action_dim << " dim=" << model.dim() << "\n";
  out << "norm_A_composed=" << fmt_num(model.composed().linear().norm())
      << " norm_A_at=" << fmt_num(model.at().linear().norm()) << "\n";
  out << "in_sample_error_before=" << fmt_num(before.mean) << "+-" << fmt_num(before.std)
      << " in_sample_error_after=" << fmt_num(after.mean) << "+-" << fmt_num(after.std)
      << "\n";
  if (source.size() <= kMaxAssignmentSize) {
    const AffinityScore score = affinity_score(model.apply(source.rows()), target.rows());
    out << "rho_aff_fit=" << fmt_num(score.value) << "\n";
  } else {
    out << "rho_aff_fit=n/a (more than " << kMaxAssignmentSize << " rows)\n";
  }
  out << "wrote " << f.common.out << "\n";
  return kExitOk;
}

// ---- eval ----------------------------------------------------------------

struct EvalFlags {
  CommonFlags common;
  std::string model;
  DatasetArg source;
  DatasetArg target;
};

json report_json(const TransferReport& r, const TransferModel& model,
                 const TransitionDataset& source, const TransitionDataset& target) {
  json j;
  j["schema"] = kReportSchema;
  j["n"] = r.n_source;
  j["error_before"] = {{"mean", r.error_before.mean}, {"std", r.error_before.std}};
  j["error_after"] = {{"mean", r.error_after.mean}, {"std", r.error_after.std}};
  j["w2_before"] = r.w2_before;
  j["w2_after"] = r.w2_after;
  j["rho_aff"] = r.rho_aff;
  j["rho_aff_unclamped"] = r.rho_aff_unclamped;
  j["bound_value"] = r.bound_value;
  j["centering"] = kCentering;
  j["w2_estimator"] = "exact empirical assignment, uniform weights";
  j["model"] = {{"n_fit", model.meta().n_fit},
                {"state_dim", model.meta().state_dim},
                {"action_dim", model.meta().action_dim},
                {"source_hash", model.meta().source_hash},
                {"target_hash", model.meta().target_hash},
                {"seed", model.meta().seed ? json(*model.meta().seed) : json(nullptr)}};
  j["data"] = {{"source_hash", fingerprint(source)}, {"target_hash", fingerprint(target)}};
  return j;
}

std::string report_csv(const TransferReport& r) {
  std::string s =
      "n,error_before_mean,error_before_std,error_after_mean,error_after_std,"
      "w2_before,w2_after,rho_aff,bound_value\n";
  s += std::to_string(r.n_source);
  for (double v : {r.error_before.mean, r.error_before.std, r.error_after.mean,
                   r.error_after.std, r.w2_before, r.w2_after, r.rho_aff, r.bound_value}) {
    s += ',';
    s += detail::format_double(v);
  }
  return s + "\n";
}

int cmd_eval(const EvalFlags& f, std::ostream& out) {
  require_input(f.model);
  f.source.validate();
  f.target.validate();
  require_output_parent(f.common.out);

  const TransferModel model = load_model(f.model);
  const TransitionDataset source = f.source.load();
  const TransitionDataset target = f.target.load();
  const TransferReport report = evaluate(model, source, target);
  if (f.common.format == "csv") {
    write_text(f.common.out, report_csv(report));
  } else {
    write_text(f.common.out, report_json(report, model, source, target).dump(2) + "\n");
  }
  out << "error_before=" << fmt_num(report.error_before.mean) << "+-"
      << fmt_num(report.error_before.std) << " error_after="
      << fmt_num(report.error_after.mean) << "+-" << fmt_num(report.error_after.std)
      << " rho_aff=" << fmt_num(report.rho_aff) << "\n";
  out << "wrote " << f.common.out << "\n";
  return kExitOk;
}

// ---- learning-curve ------------------------------------------------------

struct CurveFlags {
  CommonFlags common;
  DatasetArg source;
  DatasetArg target;
  DatasetArg eval_source;
  DatasetArg eval_target;
  double test_fraction = 0.5;
  std::vector<Eigen::Index> sizes;
  int repeats = 20;
};

int cmd_learning_curve(const CurveFlags& f, std::ostream& out) {
  if (f.repeats < 1) {
    throw CLI::ValidationError("--repeats", "must be at least 1");
  }
  if (f.eval_source.given() != f.eval_target.given()) {
    throw CLI::ValidationError("--eval-source/--eval-target", "must be given together");
  }
  f.source.validate();
  f.target.validate();
  if (f.eval_source.given()) {
    f.eval_source.validate();
    f.eval_target.validate();
  }
  require_output_parent(f.common.out);

  TransitionDataset train_source = f.source.load();
  TransitionDataset train_target = f.target.load();
  if (train_source.size() != train_target.size()) {
    throw Error(ErrorKind::kPairingMismatch, "source and target row counts differ");
  }
  std::optional<TransitionDataset> eval_source;
  std::optional<TransitionDataset> eval_target;
  std::string held_out;
  if (f.eval_source.given()) {
    eval_source = f.eval_source.load();
    eval_target = f.eval_target.load();
    held_out = "fixed, from --eval-source/--eval-target";
  } else {
    const SplitIndices idx = split_indices(
        train_source.size(), SplitFractions{1.0 - f.test_fraction, f.test_fraction},
        f.common.seed);
    eval_source = train_source.select(idx.test);
    eval_target = train_target.select(idx.test);
    train_source = train_source.select(idx.train);
    train_target = train_target.select(idx.train);
    held_out = "fixed, split from the input with --test-fraction";
  }

  const std::vector<LearningCurvePoint> points =
      learning_curve(train_source, train_target, *eval_source, *eval_target, f.sizes,
                     f.repeats, f.common.seed);

  if (f.common.format == "csv") {
    std::string s = "n_fit,mean_error,std_error,repeats\n";
    for (const auto& p : points) {
      s += std::to_string(p.n_fit) + ',' + detail::format_double(p.mean_error) + ',' +
           detail::format_double(p.std_error) + ',' + std::to_string(p.repeats) + '\n';
    }
    write_text(f.common.out, s);
  } else {
    json j;
    j["schema"] = kCurveSchema;
    j["protocol"] = {{"subsampling", "without replacement"},
                     {"held_out", held_out},
                     {"train_pool", train_source.size()},
                     {"held_out_size", eval_source->size()},
                     {"seed", f.common.seed},
                     {"centering", kCentering}};
    json arr = json::array();
    for (const auto& p : points) {
      arr.push_back({{"n_fit", p.n_fit},
                     {"mean_error", p.mean_error},
                     {"std_error", p.std_error},
                     {"repeats", p.repeats}});
    }
    j["points"] = arr;
    write_text(f.common.out, j.dump(2) + "\n");
  }
  for (const auto& p : points) {
    out << "n_fit=" << p.n_fit << " mean_error=" << fmt_num(p.mean_error)
        << " std_error=" << fmt_num(p.std_error) << "\n";
  }
  out << "wrote " << f.common.out << "\n";
  return kExitOk;
}

// ---- score ---------------------------------------------------------------

struct ScoreFlags {
  CommonFlags common;
  DatasetArg source;
  DatasetArg target;
};

int cmd_score(const ScoreFlags& f, std::ostream& out) {
  f.source.validate();
  f.target.validate();
  if (!f.common.out.empty()) require_output_parent(f.common.out);

  const TransitionDataset source = f.source.load();
  const TransitionDataset target = f.target.load();
  if (source.width() != target.width()) {
    throw Error(ErrorKind::kDimensionMismatch, "source and target widths differ");
  }
  if (source.size() != target.size()) {
    throw Error(ErrorKind::kPairingMismatch, "source and target row counts differ");
  }
  if (source.size() > kMaxAssignmentSize) {
    throw Error(ErrorKind::kTooLarge, "score supports at most " +
                                          std::to_string(kMaxAssignmentSize) +
                                          " rows, got " + std::to_string(source.size()));
  }
  const AffinityScore score = at_affinity(source.rows(), target.rows());
  out << "rho_aff=" << fmt_num(score.value) << " n=" << source.size() << "\n";
  if (!f.common.out.empty()) {
    if (f.common.format == "csv") {
      write_text(f.common.out, "n,rho_aff,rho_aff_unclamped,w2,bound_value\n" +
                                   std::to_string(source.size()) + ',' +
                                   detail::format_double(score.value) + ',' +
                                   detail::format_double(score.unclamped) + ',' +
                                   detail::format_double(score.w2) + ',' +
                                   detail::format_double(score.bound) + '\n');
    } else {
      json j;
      j["schema"] = kScoreSchema;
      j["n"] = source.size();
      j["rho_aff"] = score.value;
      j["rho_aff_unclamped"] = score.unclamped;
      j["w2"] = score.w2;
      j["bound_value"] = score.bound;
      write_text(f.common.out, j.dump(2) + "\n");
    }
  }
  return kExitOk;
}

}  // namespace

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kIoError:
    case ErrorKind::kMalformedCsv:
    case ErrorKind::kMissingManifest:
    case ErrorKind::kMalformedModel:
      return kExitIo;
    case ErrorKind::kPairingMismatch:
    case ErrorKind::kSizeMismatch:
      return kExitPairing;
    case ErrorKind::kDimensionMismatch:
    case ErrorKind::kShapeMismatch:
      return kExitDimension;
    default:
      return kExitConfiguration;
  }
}

std::vector<LearningCurvePoint> learning_curve(const TransitionDataset& train_source,
                                               const TransitionDataset& train_target,
                                               const TransitionDataset& eval_source,
                                               const TransitionDataset& eval_target,
                                               const std::vector<Eigen::Index>& sizes,
                                               int repeats, std::uint64_t seed) {
  if (repeats < 1) throw ConfigurationError("repeats must be at least 1");
  if (sizes.empty()) throw ConfigurationError("no fit sizes given");
  const Eigen::Index pool = train_source.size();
  for (Eigen::Index n : sizes) {
    if (n < 2 || n > pool) {
      throw ConfigurationError("fit size " + std::to_string(n) + " outside [2, " +
                               std::to_string(pool) + "] available training rows");
    }
  }
  if (eval_source.size() != eval_target.size()) {
    throw Error(ErrorKind::kPairingMismatch, "held-out source and target row counts differ");
  }

  std::vector<LearningCurvePoint> points;
  for (Eigen::Index n : sizes) {
    std::vector<double> errors;
    errors.reserve(static_cast<std::size_t>(repeats));
    for (int r = 0; r < repeats; ++r) {
      std::vector<Eigen::Index> perm(static_cast<std::size_t>(pool));
      std::iota(perm.begin(), perm.end(), Eigen::Index{0});
      Stream rng = make_stream(
          seed, "learning-curve/" + std::to_string(n) + "/" + std::to_string(r));
      std::shuffle(perm.begin(), perm.end(), rng);
      perm.resize(static_cast<std::size_t>(n));
      std::sort(perm.begin(), perm.end());

      const TransferModel model =
          fit(train_source.select(perm), train_target.select(perm), seed);
      const PointwiseError err = pointwise_error(
          model.predict_next_states(eval_source.rows()), eval_target.next_states());
      errors.push_back(err.mean);
      logger()->debug("n={} repeat={} error={}", n, r, err.mean);
    }
    const double mean =
        std::accumulate(errors.begin(), errors.end(), 0.0) / static_cast<double>(repeats);
    double var = 0.0;
    for (double e : errors) var += (e - mean) * (e - mean);
    var /= static_cast<double>(repeats);
    points.push_back(LearningCurvePoint{n, mean, std::sqrt(var), repeats});
  }
  return points;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Affine-transport transfer maps between paired dynamics domains", "atx"};
  app.require_subcommand(1);

  SynthFlags synth;
  auto* synth_cmd = app.add_subcommand("synth", "Generate a paired synthetic source/target dataset");
  add_common(synth_cmd, synth.common, true);
  synth_cmd->add_option("--spec", synth.spec_file, "JSON file with source/target domain specs");
  synth_cmd->add_option("--kind", synth.kind, "Inline generator kind")
      ->check(CLI::IsMember({"puck", "linear"}))
      ->capture_default_str();
  synth_cmd->add_option("--n", synth.n, "Number of transitions")->required();
  synth_cmd->add_option("--noise", synth.noise, "Next-state noise std")->capture_default_str();
  synth_cmd->add_option("--source-friction", synth.source_friction)->delimiter(',');
  synth_cmd->add_option("--target-friction", synth.target_friction)->delimiter(',');
  synth_cmd->add_option("--source-curl", synth.source_curl);
  synth_cmd->add_option("--target-curl", synth.target_curl);
  synth_cmd->add_option("--state-dim", synth.state_dim)->capture_default_str();
  synth_cmd->add_option("--action-dim", synth.action_dim)->capture_default_str();
  synth_cmd->add_option("--target-scale", synth.target_scale)->delimiter(',');
  synth_cmd->add_option("--target-invert", synth.target_invert)->delimiter(',');
  synth_cmd->add_option("--target-disable", synth.target_disable)->delimiter(',');

  FitFlags fitf;
  auto* fit_cmd = app.add_subcommand("fit", "Fit a transfer model on paired data");
  add_common(fit_cmd, fitf.common, true);
  fitf.source.add(fit_cmd, "source", true, "Source-domain CSV");
  fitf.target.add(fit_cmd, "target", true, "Target-domain CSV");

  EvalFlags evalf;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a model on held-out paired data");
  add_common(eval_cmd, evalf.common, true);
  eval_cmd->add_option("--model", evalf.model, "Model file")->required();
  evalf.source.add(eval_cmd, "source", true, "Held-out source CSV");
  evalf.target.add(eval_cmd, "target", true, "Held-out target CSV");

  CurveFlags curve;
  auto* curve_cmd = app.add_subcommand("learning-curve", "Held-out error versus fit size");
  add_common(curve_cmd, curve.common, true);
  curve.source.add(curve_cmd, "source", true, "Training source CSV");
  curve.target.add(curve_cmd, "target", true, "Training target CSV");
  curve.eval_source.add(curve_cmd, "eval-source", false, "Held-out source CSV");
  curve.eval_target.add(curve_cmd, "eval-target", false, "Held-out target CSV");
  curve_cmd->add_option("--test-fraction", curve.test_fraction,
                        "Held-out fraction when no --eval-* files are given")
      ->capture_default_str();
  curve_cmd->add_option("--sizes", curve.sizes, "Fit sizes")->delimiter(',')->required();
  curve_cmd->add_option("--repeats", curve.repeats, "Subsamples per size")->capture_default_str();

  ScoreFlags scoref;
  auto* score_cmd = app.add_subcommand("score", "Affinity score of a paired dataset");
  add_common(score_cmd, scoref.common, false);
  scoref.source.add(score_cmd, "source", true, "Source CSV");
  scoref.target.add(score_cmd, "target", true, "Target CSV");

  try {
    app.parse(argc, argv);
    if (synth_cmd->parsed()) return cmd_synth(synth, out);
    if (fit_cmd->parsed()) return cmd_fit(fitf, out);
    if (eval_cmd->parsed()) return cmd_eval(evalf, out);
    if (curve_cmd->parsed()) return cmd_learning_curve(curve, out);
    if (score_cmd->parsed()) return cmd_score(scoref, out);
    return kExitUsage;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const ConfigurationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfiguration;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfiguration;
  }
}

}  // namespace at::cli
