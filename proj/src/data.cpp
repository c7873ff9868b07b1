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

#include "affine_transport/data.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "affine_transport/error.hpp"
#include "affine_transport/numeric_format.hpp"
#include "affine_transport/rng.hpp"

namespace at {
namespace {

using json = nlohmann::json;

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIoError, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw Error(ErrorKind::kIoError, "failed reading " + path.string());
  return buffer.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::kIoError, "cannot write " + path.string());
  out << content;
  out.flush();
  if (!out) throw Error(ErrorKind::kIoError, "failed writing " + path.string());
}

[[noreturn]] void bad_spec(const std::string& message) {
  throw Error(ErrorKind::kBadSpec, message);
}

void check_index_set(const std::vector<Eigen::Index>& indices, Eigen::Index d,
                     const char* what) {
  for (Eigen::Index i : indices) {
    if (i < 0 || i >= d) {
      bad_spec(std::string(what) + " index " + std::to_string(i) +
               " out of range for state dimension " + std::to_string(d));
    }
  }
}

bool contains(const std::vector<Eigen::Index>& v, Eigen::Index i) {
  return std::find(v.begin(), v.end(), i) != v.end();
}

Eigen::MatrixXd matrix_from_json(const json& j, const char* what) {
  if (!j.is_array() || j.empty() || !j.front().is_array()) {
    bad_spec(std::string(what) + " must be a non-empty array of rows");
  }
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j.front().size());
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      bad_spec(std::string(what) + " rows must all have " + std::to_string(cols) +
               " entries");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      const json& cell = row[static_cast<std::size_t>(c)];
      if (!cell.is_number()) bad_spec(std::string(what) + " entries must be numbers");
      m(r, c) = cell.get<double>();
    }
  }
  return m;
}

}  // namespace

TransitionDataset::TransitionDataset(Eigen::Index state_dim, Eigen::Index action_dim,
                                     Eigen::MatrixXd rows, std::string domain_label,
                                     std::optional<std::uint64_t> seed)
    : state_dim_(state_dim),
      action_dim_(action_dim),
      rows_(std::move(rows)),
      domain_label_(std::move(domain_label)),
      seed_(seed) {
  if (state_dim_ <= 0 || action_dim_ <= 0) {
    throw Error(ErrorKind::kDimensionMismatch,
                "state and action dimensions must be positive");
  }
  if (rows_.cols() != width()) {
    throw Error(ErrorKind::kDimensionMismatch,
                "row width " + std::to_string(rows_.cols()) + " != 2d + k = " +
                    std::to_string(width()));
  }
  if (!rows_.allFinite()) {
    throw Error(ErrorKind::kNonFinite, "dataset contains NaN or Inf");
  }
}

TransitionDataset TransitionDataset::select(const std::vector<Eigen::Index>& indices) const {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(indices.size()), width());
  for (std::size_t i = 0; i < indices.size(); ++i) {
    out.row(static_cast<Eigen::Index>(i)) = rows_.row(indices[i]);
  }
  return TransitionDataset(state_dim_, action_dim_, std::move(out), domain_label_, seed_);
}

std::string fingerprint(const TransitionDataset& dataset) {
  const std::int64_t dims[3] = {dataset.state_dim(), dataset.action_dim(), dataset.size()};
  std::uint64_t hash = fnv1a64(dims, sizeof(dims));
  const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> row_major =
      dataset.rows();
  hash = fnv1a64(row_major.data(), sizeof(double) * static_cast<std::size_t>(row_major.size()),
                 hash);
  char buffer[17];
  std::snprintf(buffer, sizeof(buffer), "%016llx", static_cast<unsigned long long>(hash));
  return buffer;
}

std::filesystem::path manifest_path_for(const std::filesystem::path& csv_path) {
  std::filesystem::path out = csv_path;
  out.replace_extension(".manifest.json");
  return out;
}

Manifest load_manifest(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) {
    throw Error(ErrorKind::kMissingManifest, "manifest not found: " + path.string());
  }
  const std::string text = read_file(path);
  Manifest m;
  try {
    const json j = json::parse(text);
    m.state_dim = j.at("state_dim").get<Eigen::Index>();
    m.action_dim = j.at("action_dim").get<Eigen::Index>();
    m.domain_label = j.value("domain_label", std::string());
    if (j.contains("seed") && !j.at("seed").is_null()) {
      m.seed = j.at("seed").get<std::uint64_t>();
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kMissingManifest,
                "manifest " + path.string() + " is malformed: " + e.what());
  }
  if (m.state_dim <= 0 || m.action_dim <= 0) {
    throw Error(ErrorKind::kMissingManifest,
                "manifest " + path.string() + " declares non-positive dimensions");
  }
  return m;
}

void save_manifest(const Manifest& manifest, const std::filesystem::path& path) {
  json j;
  j["state_dim"] = manifest.state_dim;
  j["action_dim"] = manifest.action_dim;
  j["domain_label"] = manifest.domain_label;
  j["seed"] = manifest.seed ? json(*manifest.seed) : json(nullptr);
  write_file(path, j.dump(2) + "\n");
}

Manifest manifest_of(const TransitionDataset& dataset) {
  return Manifest{dataset.state_dim(), dataset.action_dim(), dataset.domain_label(),
                  dataset.seed()};
}

std::string csv_header(Eigen::Index state_dim, Eigen::Index action_dim) {
  std::string header;
  auto add = [&header](const char* prefix, Eigen::Index count) {
    for (Eigen::Index i = 0; i < count; ++i) {
      if (!header.empty()) header += ',';
      header += prefix + std::to_string(i);
    }
  };
  add("s", state_dim);
  add("a", action_dim);
  add("ns", state_dim);
  return header;
}

TransitionDataset load_csv(const std::filesystem::path& path, const Manifest& manifest) {
  const std::string text = read_file(path);
  const Eigen::Index width = 2 * manifest.state_dim + manifest.action_dim;

  std::vector<std::string> lines;
  {
    std::size_t start = 0;
    while (start < text.size()) {
      std::size_t end = text.find('\n', start);
      if (end == std::string::npos) end = text.size();
      std::string line = text.substr(start, end - start);
      if (!line.empty() && line.back() == '\r') line.pop_back();
      lines.push_back(std::move(line));
      start = end + 1;
    }
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();

  auto malformed = [&path](std::size_t row, const std::string& why) -> Error {
    return Error(ErrorKind::kMalformedCsv,
                 path.string() + ": row " + std::to_string(row) + ": " + why);
  };
  if (lines.empty()) throw malformed(0, "missing header");
  if (lines.front() != csv_header(manifest.state_dim, manifest.action_dim)) {
    throw malformed(0, "header does not match manifest dimensions (expected \"" +
                           csv_header(manifest.state_dim, manifest.action_dim) + "\")");
  }

  const auto n = static_cast<Eigen::Index>(lines.size() - 1);
  Eigen::MatrixXd rows(n, width);
  for (Eigen::Index r = 0; r < n; ++r) {
    const std::string& line = lines[static_cast<std::size_t>(r + 1)];
    const auto row_no = static_cast<std::size_t>(r + 1);
    Eigen::Index col = 0;
    std::size_t start = 0;
    while (true) {
      std::size_t end = line.find(',', start);
      const bool last = end == std::string::npos;
      if (last) end = line.size();
      if (col >= width) {
        throw malformed(row_no, "expected " + std::to_string(width) + " columns");
      }
      const std::string cell = line.substr(start, end - start);
      char* parse_end = nullptr;
      const double value = cell.empty() ? 0.0 : std::strtod(cell.c_str(), &parse_end);
      if (cell.empty() || parse_end != cell.c_str() + cell.size()) {
        throw malformed(row_no, "non-numeric cell \"" + cell + "\" in column " +
                                    std::to_string(col));
      }
      if (!std::isfinite(value)) {
        throw malformed(row_no, "non-finite cell \"" + cell + "\" in column " +
                                    std::to_string(col));
      }
      rows(r, col++) = value;
      if (last) break;
      start = end + 1;
    }
    if (col != width) {
      throw malformed(row_no, "expected " + std::to_string(width) + " columns, got " +
                                  std::to_string(col));
    }
  }
  return TransitionDataset(manifest.state_dim, manifest.action_dim, std::move(rows),
                           manifest.domain_label, manifest.seed);
}

TransitionDataset load_csv(const std::filesystem::path& path,
                           const std::filesystem::path& manifest_path) {
  return load_csv(path, load_manifest(manifest_path));
}

void save_csv(const TransitionDataset& dataset, const std::filesystem::path& path) {
  std::string out = csv_header(dataset.state_dim(), dataset.action_dim());
  out += '\n';
  const Eigen::MatrixXd& rows = dataset.rows();
  for (Eigen::Index r = 0; r < rows.rows(); ++r) {
    for (Eigen::Index c = 0; c < rows.cols(); ++c) {
      if (c > 0) out += ',';
      out += detail::format_double(rows(r, c));
    }
    out += '\n';
  }
  write_file(path, out);
}

void save_dataset(const TransitionDataset& dataset, const std::filesystem::path& csv_path) {
  save_csv(dataset, csv_path);
  save_manifest(manifest_of(dataset), manifest_path_for(csv_path));
}

Eigen::Index DomainSpec::state_dim() const {
  return kind == GeneratorKind::kPuck ? 2 : linear.dynamics.rows();
}

Eigen::Index DomainSpec::action_dim() const {
  return kind == GeneratorKind::kPuck ? 2 : linear.control.cols();
}

void DomainSpec::validate() const {
  if (!(noise >= 0.0) || !std::isfinite(noise)) bad_spec("noise must be >= 0");
  const Eigen::Index d = state_dim();
  if (kind == GeneratorKind::kLinear) {
    if (d <= 0 || linear.dynamics.cols() != d) {
      bad_spec("linear dynamics matrix must be square and non-empty");
    }
    if (linear.control.rows() != d || linear.control.cols() <= 0) {
      bad_spec("control matrix must have " + std::to_string(d) + " rows");
    }
    if (!linear.dynamics.allFinite() || !linear.control.allFinite()) {
      bad_spec("dynamics/control contain non-finite entries");
    }
  } else {
    if (!(puck.friction_x > 0.0) || !(puck.friction_y > 0.0)) {
      bad_spec("puck friction coefficients must be positive");
    }
    if (!(puck.gravity > 0.0) || !std::isfinite(puck.curl)) {
      bad_spec("puck gravity must be positive and curl finite");
    }
  }
  const Randomization& r = randomization;
  if (r.scale.size() != 0) {
    if (r.scale.size() != d) {
      bad_spec("scale must have one factor per state coordinate");
    }
    if (!r.scale.allFinite() || (r.scale.array() <= 0.0).any()) {
      bad_spec("scale factors must be positive");
    }
  }
  check_index_set(r.inverted, d, "inverted");
  check_index_set(r.disabled, d, "disabled");
}

TransitionDataset gen_linear(const DomainSpec& spec, const Eigen::MatrixXd& actions,
                             std::uint64_t seed) {
  if (spec.kind != GeneratorKind::kLinear) bad_spec("gen_linear needs a linear spec");
  spec.validate();
  const Eigen::Index d = spec.state_dim();
  const Eigen::Index k = spec.action_dim();
  if (actions.cols() != k) {
    bad_spec("actions have " + std::to_string(actions.cols()) + " columns, expected " +
             std::to_string(k));
  }
  if (!actions.allFinite()) bad_spec("actions contain non-finite entries");
  const Eigen::Index n = actions.rows();

  Eigen::MatrixXd dynamics = spec.linear.dynamics;
  Eigen::MatrixXd control = spec.linear.control;
  Eigen::VectorXd noise_scale = Eigen::VectorXd::Constant(d, spec.noise);
  for (Eigen::Index i = 0; i < d; ++i) {
    const Randomization& r = spec.randomization;
    if (r.scale.size() != 0) dynamics.row(i) *= r.scale(i);
    if (contains(r.inverted, i)) dynamics.row(i) *= -1.0;
    if (contains(r.disabled, i)) {
      dynamics.row(i).setZero();
      control.row(i).setZero();
      noise_scale(i) = 0.0;
    }
  }

  Stream state_rng = make_stream(seed, "states");
  const Eigen::MatrixXd states = standard_normal(n, d, state_rng);
  Stream noise_rng = make_stream(seed, "noise:" + spec.name);
  const Eigen::MatrixXd eta = standard_normal(n, d, noise_rng);

  Eigen::MatrixXd next = states * dynamics.transpose() + actions * control.transpose();
  next += eta * noise_scale.asDiagonal();

  Eigen::MatrixXd rows(n, 2 * d + k);
  rows << states, actions, next;
  return TransitionDataset(d, k, std::move(rows), spec.name, seed);
}

TransitionDataset gen_puck(const DomainSpec& spec, const Eigen::MatrixXd& actions,
                           std::uint64_t seed) {
  if (spec.kind != GeneratorKind::kPuck) bad_spec("gen_puck needs a puck spec");
  spec.validate();
  if (actions.cols() != 2) bad_spec("puck actions must have 2 columns");
  if (!actions.allFinite()) bad_spec("actions contain non-finite entries");
  const Eigen::Index n = actions.rows();

  const PuckParams& p = spec.puck;
  const double c = std::cos(p.curl);
  const double s = std::sin(p.curl);
  Stream noise_rng = make_stream(seed, "noise:" + spec.name);
  const Eigen::MatrixXd eta = standard_normal(n, 2, noise_rng);

  Eigen::MatrixXd rows = Eigen::MatrixXd::Zero(n, 6);
  rows.middleCols(2, 2) = actions;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double vx = actions(i, 0);
    const double vy = actions(i, 1);
    const double dx = std::copysign(vx * vx, vx) / (2.0 * p.friction_x * p.gravity);
    const double dy = std::copysign(vy * vy, vy) / (2.0 * p.friction_y * p.gravity);
    rows(i, 4) = c * dx - s * dy + spec.noise * eta(i, 0);
    rows(i, 5) = s * dx + c * dy + spec.noise * eta(i, 1);
  }
  return TransitionDataset(2, 2, std::move(rows), spec.name, seed);
}

TransitionDataset generate(const DomainSpec& spec, const Eigen::MatrixXd& actions,
                           std::uint64_t seed) {
  return spec.kind == GeneratorKind::kPuck ? gen_puck(spec, actions, seed)
                                           : gen_linear(spec, actions, seed);
}

Eigen::MatrixXd puck_actions(Eigen::Index n, std::uint64_t seed) {
  Stream rng = make_stream(seed, "actions");
  return uniform(n, 2, -1.5, 1.5, rng);
}

Eigen::MatrixXd gaussian_actions(Eigen::Index n, Eigen::Index action_dim,
                                 std::uint64_t seed) {
  Stream rng = make_stream(seed, "actions");
  return standard_normal(n, action_dim, rng);
}

DomainSpec parse_domain_spec(const std::string& json_text) {
  DomainSpec spec;
  try {
    const json j = json::parse(json_text);
    if (!j.is_object()) bad_spec("domain spec must be a JSON object");
    spec.name = j.value("name", std::string("domain"));
    const std::string kind = j.at("kind").get<std::string>();
    spec.noise = j.value("noise", 0.0);
    if (kind == "puck") {
      spec.kind = GeneratorKind::kPuck;
      if (j.contains("friction")) {
        const auto friction = j.at("friction").get<std::vector<double>>();
        if (friction.size() != 2) bad_spec("friction must have two entries");
        spec.puck.friction_x = friction[0];
        spec.puck.friction_y = friction[1];
      }
      spec.puck.curl = j.value("curl", 0.0);
      spec.puck.gravity = j.value("gravity", 9.81);
    } else if (kind == "linear") {
      spec.kind = GeneratorKind::kLinear;
      spec.linear.dynamics = matrix_from_json(j.at("dynamics"), "dynamics");
      spec.linear.control = matrix_from_json(j.at("control"), "control");
    } else {
      bad_spec("unknown generator kind \"" + kind + "\"");
    }
    if (j.contains("scale")) {
      const auto scale = j.at("scale").get<std::vector<double>>();
      spec.randomization.scale =
          Eigen::Map<const Eigen::VectorXd>(scale.data(), static_cast<Eigen::Index>(scale.size()));
    }
    if (j.contains("inverted")) {
      spec.randomization.inverted = j.at("inverted").get<std::vector<Eigen::Index>>();
    }
    if (j.contains("disabled")) {
      spec.randomization.disabled = j.at("disabled").get<std::vector<Eigen::Index>>();
    }
  } catch (const json::exception& e) {
    bad_spec(std::string("malformed domain spec: ") + e.what());
  }
  spec.validate();
  return spec;
}

SplitIndices split_indices(Eigen::Index n, SplitFractions fractions, std::uint64_t seed) {
  const double sum = fractions.train + fractions.test;
  if (!(fractions.train >= 0.0) || !(fractions.test >= 0.0) || std::abs(sum - 1.0) > 1e-9) {
    throw Error(ErrorKind::kBadFraction,
                "fractions must be non-negative and sum to 1, got (" +
                    std::to_string(fractions.train) + ", " +
                    std::to_string(fractions.test) + ")");
  }
  std::vector<Eigen::Index> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), Eigen::Index{0});
  Stream rng = make_stream(seed, "split");
  std::shuffle(perm.begin(), perm.end(), rng);
  const auto n_train = std::min<Eigen::Index>(
      n, static_cast<Eigen::Index>(std::llround(fractions.train * static_cast<double>(n))));
  SplitIndices out;
  out.train.assign(perm.begin(), perm.begin() + n_train);
  out.test.assign(perm.begin() + n_train, perm.end());
  std::sort(out.train.begin(), out.train.end());
  std::sort(out.test.begin(), out.test.end());
  return out;
}

std::pair<TransitionDataset, TransitionDataset> split(const TransitionDataset& dataset,
                                                      SplitFractions fractions,
                                                      std::uint64_t seed) {
  const SplitIndices idx = split_indices(dataset.size(), fractions, seed);
  return {dataset.select(idx.train), dataset.select(idx.test)};
}

}  // namespace at
