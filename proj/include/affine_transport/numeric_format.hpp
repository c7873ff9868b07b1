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

#ifndef AFFINE_TRANSPORT_NUMERIC_FORMAT_HPP_
#define AFFINE_TRANSPORT_NUMERIC_FORMAT_HPP_

#include <cstdio>
#include <string>

namespace at::detail {

// 17 significant digits: enough for every double to round-trip exactly.
inline std::string format_double(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

}  // namespace at::detail

#endif  // AFFINE_TRANSPORT_NUMERIC_FORMAT_HPP_
