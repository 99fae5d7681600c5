// Copyright 2026 The objgoal Authors
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

#include "objgoal/nn/adam.h"

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include "objgoal/error.h"

namespace objgoal::nn {
namespace {

using ::testing::HasSubstr;

// independent scalar Adam
struct ScalarAdam {
  double m = 0, v = 0;
  int t = 0;
  double Step(double param, double grad, double lr, double b1 = 0.9,
              double b2 = 0.999, double eps = 1e-8) {
    ++t;
    m = b1 * m + (1 - b1) * grad;
    v = b2 * v + (1 - b2) * grad * grad;
    double mhat = m / (1 - std::pow(b1, t));
    double vhat = v / (1 - std::pow(b2, t));
    return param - lr * mhat / (std::sqrt(vhat) + eps);
  }
};

MlpParams ScalarParams(double value) {
  MlpParams params = ZeroParams(MlpSpec{{1, 1}});
  params.layers[0].weight(0, 0) = value;
  return params;
}

Gradients ScalarGrad(double value) {
  Gradients g = Gradients::ZerosLike(ScalarParams(0));
  g.layers[0].weight(0, 0) = value;
  return g;
}

TEST(AdamTest, ZeroGradientsLeaveParamsAndAdvanceStep) {
  MlpSpec spec = MakeSpec(3, 4, 2, 2);
  std::mt19937_64 rng(2);
  MlpParams params = InitParams(spec, rng);
  const std::vector<double> before = Flatten(params.layers);
  AdamState state = AdamState::ZerosLike(params);
  AdamStep(params, Gradients::ZerosLike(params), state, 1e-3);
  EXPECT_EQ(Flatten(params.layers), before);
  EXPECT_EQ(state.step, 1);
}

TEST(AdamTest, FirstStepMovesByLearningRate) {
  MlpParams params = ScalarParams(0.5);
  AdamState state = AdamState::ZerosLike(params);
  AdamStep(params, ScalarGrad(1.0), state, 1e-3);
  // m_hat = v_hat = 1 after bias correction
  EXPECT_NEAR(params.layers[0].weight(0, 0), 0.5 - 1e-3 / (1.0 + 1e-8), 1e-15);
  EXPECT_EQ(params.layers[0].bias(0), 0.0);
}

TEST(AdamTest, MatchesScalarReferenceTrace) {
  MlpParams params = ScalarParams(0.25);
  AdamState state = AdamState::ZerosLike(params);
  ScalarAdam oracle;
  double expected = 0.25;
  for (double g : {0.7, 0.7, -1.3, 0.02}) {
    AdamStep(params, ScalarGrad(g), state, 0.01);
    expected = oracle.Step(expected, g, 0.01);
    EXPECT_NEAR(params.layers[0].weight(0, 0), expected, 1e-15);
  }
  EXPECT_EQ(state.step, 4);
}

TEST(AdamTest, ZeroLearningRateIsIdentity) {
  MlpSpec spec = MakeSpec(2, 3, 1, 1);
  std::mt19937_64 rng(4);
  MlpParams params = InitParams(spec, rng);
  const std::vector<double> before = Flatten(params.layers);
  AdamState state = AdamState::ZerosLike(params);
  Gradients g = Gradients::ZerosLike(params);
  g.layers[1].weight.setConstant(3.0);
  AdamStep(params, g, state, 0.0);
  EXPECT_EQ(Flatten(params.layers), before);
}

TEST(AdamTest, NonFiniteGradientNamesLayer) {
  MlpSpec spec = MakeSpec(2, 3, 1, 1);
  MlpParams params = ZeroParams(spec);
  AdamState state = AdamState::ZerosLike(params);
  Gradients g = Gradients::ZerosLike(params);
  g.layers[1].bias(0) = std::numeric_limits<double>::quiet_NaN();
  try {
    AdamStep(params, g, state, 1e-3);
    FAIL() << "expected NonFiniteError";
  } catch (const NonFiniteError& e) {
    EXPECT_THAT(e.what(), HasSubstr("layer 1"));
  }
  EXPECT_EQ(state.step, 0);
}

TEST(AdamTest, NegativeLearningRateRejected) {
  MlpParams params = ScalarParams(0.0);
  AdamState state = AdamState::ZerosLike(params);
  EXPECT_THROW(AdamStep(params, ScalarGrad(1.0), state, -1.0), ConfigError);
}

}  // namespace
}  // namespace objgoal::nn
