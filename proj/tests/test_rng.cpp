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

#include <gtest/gtest.h>

#include "affine_transport/rng.hpp"

namespace at {
namespace {

TEST(Rng, KnownHashValues) {
  // Reference values of the public splitmix64 and FNV-1a definitions.
  EXPECT_EQ(splitmix64(0), 0xe220a8397b1dcdafULL);
  EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
}

TEST(Rng, StreamsAreReproducibleAndDistinct) {
  Stream a = make_stream(7, "states");
  Stream b = make_stream(7, "states");
  Stream c = make_stream(7, "noise");
  Stream d = make_stream(8, "states");
  const auto va = a();
  EXPECT_EQ(va, b());
  EXPECT_NE(va, c());
  EXPECT_NE(va, d());
}

TEST(Rng, MatrixFillsHaveExpectedShapeAndRange) {
  Stream rng = make_stream(1, "shape");
  const Eigen::MatrixXd u = uniform(100, 3, -2.0, 5.0, rng);
  EXPECT_EQ(u.rows(), 100);
  EXPECT_GE(u.minCoeff(), -2.0);
  EXPECT_LT(u.maxCoeff(), 5.0);
  const Eigen::MatrixXd z = standard_normal(20000, 1, rng);
  EXPECT_NEAR(z.mean(), 0.0, 0.05);
}

}  // namespace
}  // namespace at
