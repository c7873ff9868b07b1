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

#ifndef AFFINE_TRANSPORT_ERROR_HPP_
#define AFFINE_TRANSPORT_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace at {

enum class ErrorKind {
  kNotSymmetric,
  kIndefiniteMatrix,
  kSingularMatrix,
  kNonFinite,
  kTooFewSamples,
  kDimensionMismatch,
  kDegenerateInput,
  kDegenerateTarget,
  kSizeMismatch,
  kShapeMismatch,
  kPairingMismatch,
  kTooLarge,
  kIoError,
  kMalformedModel,
  kMalformedCsv,
  kMissingManifest,
  kBadSpec,
  kBadFraction,
};

std::string_view to_string(ErrorKind kind);

// Every failure raised by the library carries a kind so callers (the CLI in
// particular) can map it onto a stable exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace at

#endif  // AFFINE_TRANSPORT_ERROR_HPP_
