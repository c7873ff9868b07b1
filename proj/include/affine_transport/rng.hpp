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

// Named random streams. Every consumer of randomness asks for a stream by
// (seed, purpose tag), so e.g. the states of a paired source/target dataset
// come from the same stream while their noise streams stay independent:
//
//   stream_seed(seed, tag) = splitmix64(splitmix64(seed) ^ fnv1a64(tag))
//
// and the stream itself is a std::mt19937_64 seeded with that value.

#ifndef AFFINE_TRANSPORT_RNG_HPP_
#define AFFINE_TRANSPORT_RNG_HPP_

#include <cstdint>
#include <random>
#include <string_view>

#include <Eigen/Dense>

namespace at {

std::uint64_t splitmix64(std::uint64_t x);

inline constexpr std::uint64_t kFnvOffsetBasis = 0xcbf29ce484222325ULL;
std::uint64_t fnv1a64(const void* data, std::size_t size,
                      std::uint64_t hash = kFnvOffsetBasis);
inline std::uint64_t fnv1a64(std::string_view text,
                             std::uint64_t hash = kFnvOffsetBasis) {
  return fnv1a64(text.data(), text.size(), hash);
}

std::uint64_t stream_seed(std::uint64_t seed, std::string_view tag);

using Stream = std::mt19937_64;
Stream make_stream(std::uint64_t seed, std::string_view tag);

Eigen::MatrixXd standard_normal(Eigen::Index rows, Eigen::Index cols, Stream& rng);
Eigen::MatrixXd uniform(Eigen::Index rows, Eigen::Index cols, double lo, double hi,
                        Stream& rng);

}  // namespace at

#endif  // AFFINE_TRANSPORT_RNG_HPP_
