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

#ifndef AFFINE_TRANSPORT_TOOLS_CLI_HPP_
#define AFFINE_TRANSPORT_TOOLS_CLI_HPP_

#include <cstdint>
#include <ostream>
#include <vector>

#include "affine_transport/data.hpp"
#include "affine_transport/error.hpp"

namespace at::cli {

// Stable process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitIo = 2,
  kExitPairing = 3,
  kExitDimension = 4,
  kExitConfiguration = 5,
};

int exit_code_for(ErrorKind kind);

struct LearningCurvePoint {
  Eigen::Index n_fit = 0;
  double mean_error = 0.0;
  double std_error = 0.0;  // population std over repeats
  int repeats = 0;
};

// For every size, fits on `repeats` without-replacement subsamples of the
// training pair (stream (seed, "learning-curve/<n>/<r>")) and averages the
// mean held-out next-state error. Sizes larger than the pool throw
// ConfigurationError.
std::vector<LearningCurvePoint> learning_curve(const TransitionDataset& train_source,
                                               const TransitionDataset& train_target,
                                               const TransitionDataset& eval_source,
                                               const TransitionDataset& eval_target,
                                               const std::vector<Eigen::Index>& sizes,
                                               int repeats, std::uint64_t seed);

class ConfigurationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Entry point shared by the executable and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace at::cli

#endif  // AFFINE_TRANSPORT_TOOLS_CLI_HPP_
