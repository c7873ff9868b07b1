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

// Generated by tests/oracles/gen_oracles.py (numpy/scipy). Do not edit.
#ifndef AFFINE_TRANSPORT_TESTS_ORACLE_VALUES_HPP_
#define AFFINE_TRANSPORT_TESTS_ORACLE_VALUES_HPP_

#include <vector>

namespace at::oracle {

inline const std::vector<double> kSigma1 = {2, 0.5, 0.10000000000000001, 0.5, 1.5, -0.29999999999999999, 0.10000000000000001, -0.29999999999999999, 1};  // 3x3 row-major
inline const std::vector<double> kSigma2 = {1, -0.20000000000000001, 0.40000000000000002, -0.20000000000000001, 3, 0.59999999999999998, 0.40000000000000002, 0.59999999999999998, 2};  // 3x3 row-major
inline const std::vector<double> kMu1 = {0.5, -1, 2};  // 1x3 row-major
inline const std::vector<double> kMu2 = {-0.25, 0.75, 1};  // 1x3 row-major
inline constexpr double kGaussianW2 = 2.37297799030847;
inline const std::vector<double> kOtMapA = {0.7291822988628095, -0.21934736003918187, 0.070094660384871013, -0.2193473600391817, 1.5166626068593902, 0.36067176057073919, 0.070094660384871124, 0.36067176057073874, 1.4353607050457367};  // 3x3 row-major
inline const std::vector<double> kOtMapB = {-0.97412783024032867, 1.6549927657375028, -1.5450969797131702};  // 1x3 row-major
inline constexpr double kGelbrichGap = 2.9299044351038401;
inline const std::vector<double> kSqrtSigma1 = {1.3996574940894619, 0.19519333917787265, 0.053464563776357069, 0.19519333917787265, 1.2007461404938624, -0.1418036192404338, 0.053464563776357041, -0.14180361924043375, 0.98844993499444234};  // 3x3 row-major
inline const std::vector<double> kInvSqrtSigma2 = {1.0517765549217526, 0.069762533071106372, -0.14324962581938722, 0.069762533071106386, 0.5962476032270263, -0.093826249220911984, -0.14324962581938722, -0.093826249220911942, 0.75138316536948857};  // 3x3 row-major

inline const std::vector<double> kPointsX = {0, 0, 1, 0.5, 2, -1, -1.5, 0.25, 0.75, 2, 3, 1, -0.5, -2};  // 7x2 row-major
inline const std::vector<double> kPointsY = {1, 1, -1, 0, 2.5, 2.5, 0, -1.5, 1.5, -0.5, -2, 1.5, 0.5, 0.5};  // 7x2 row-major
inline constexpr double kEmpiricalW2 = 1.0436885140144612;
inline const std::vector<long> kAssignment = {1, 6, 4, 5, 0, 2, 3};

inline const std::vector<double> kProcA = {1, 0, 2, -1, 0.5, 0, 1, -1, 0.5, 2, 1, -1, 0, 1.5, -0.5};  // 3x5 row-major
inline const std::vector<double> kProcB = {0.5, 1, 1.5, -2, 0, 1, 0, -0.5, 1, 2.5, -1, 1, 1, 0.5, 0.5};  // 3x5 row-major
inline const std::vector<double> kProcR = {0.92710534796763011, -0.13879558711177239, -0.34815436054732796, 0.24585486886066391, 0.92633961271247689, 0.28539499886509201, -0.28289760908732714, 0.35018667438667389, -0.89293797984780321};  // 3x3 row-major

inline const std::vector<double> kMomentsMeanX = {0.6785714285714286, 0.10714285714285714};  // 1x2 row-major
inline const std::vector<double> kMomentsCovX = {1.9770408180459185, 0.44515306122448972, 0.44515306122448972, 1.4617346955969388};  // 2x2 row-major
inline const std::vector<double> kAtMapA = {1.0068839193690777, -0.028993782747648904, -0.028993782747648911, 1.0213112913337796};  // 2x2 row-major
inline const std::vector<double> kAtMapB = {-0.32299332570605471, 0.4102481427929997};  // 1x2 row-major

}  // namespace at::oracle

#endif  // AFFINE_TRANSPORT_TESTS_ORACLE_VALUES_HPP_
