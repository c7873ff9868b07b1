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

#include "affine_transport/error.hpp"

namespace at {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kNotSymmetric: return "NotSymmetric";
    case ErrorKind::kIndefiniteMatrix: return "IndefiniteMatrix";
    case ErrorKind::kSingularMatrix: return "SingularMatrix";
    case ErrorKind::kNonFinite: return "NonFinite";
    case ErrorKind::kTooFewSamples: return "TooFewSamples";
    case ErrorKind::kDimensionMismatch: return "DimensionMismatch";
    case ErrorKind::kDegenerateInput: return "DegenerateInput";
    case ErrorKind::kDegenerateTarget: return "DegenerateTarget";
    case ErrorKind::kSizeMismatch: return "SizeMismatch";
    case ErrorKind::kShapeMismatch: return "ShapeMismatch";
    case ErrorKind::kPairingMismatch: return "PairingMismatch";
    case ErrorKind::kTooLarge: return "TooLarge";
    case ErrorKind::kIoError: return "IoError";
    case ErrorKind::kMalformedModel: return "MalformedModel";
    case ErrorKind::kMalformedCsv: return "MalformedCsv";
    case ErrorKind::kMissingManifest: return "MissingManifest";
    case ErrorKind::kBadSpec: return "BadSpec";
    case ErrorKind::kBadFraction: return "BadFraction";
  }
  return "Unknown";
}

}  // namespace at
