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

#ifndef OBJGOAL_IMAGINER_IMAGINER_H_
#define OBJGOAL_IMAGINER_IMAGINER_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <vector>

#include "json.hpp"
#include "objgoal/nn/mlp.h"
#include "objgoal/object/object_policy.h"
#include "objgoal/replay/normalizer.h"
#include "objgoal/world/geometry.h"

namespace objgoal::imaginer {

// (o_1, g, k) -> o_{k+1}
struct ImaginerSample {
  world::Vec3 start = world::Vec3::Zero();
  world::Vec3 goal = world::Vec3::Zero();
  int k = 1;
  world::Vec3 target = world::Vec3::Zero();
};

// One sample per trajectory and k = 1..horizon, target path[k] (0-based
// column k holds o_{k+1}). Throws for an empty dataset or a path shorter
// than horizon + 1.
std::vector<ImaginerSample> BuildTrainingSet(
    const std::vector<object::LocomotionTrajectory>& dataset, int horizon);

struct ImaginerConfig {
  int hidden_width = 64;
  int hidden_layers = 2;
  int max_epochs = 300;
  int batch_size = 256;
  double learning_rate = 1e-3;
  // Fraction of (o_1, g) groups held out for early stopping.
  double holdout_fraction = 0.1;
  int patience = 10;

  void Validate() const;
  nlohmann::json ToJson() const;
  static ImaginerConfig FromJson(const nlohmann::json& j);
  bool operator==(const ImaginerConfig&) const = default;
};

// The network sees normalized (o_1, g, k / T) and predicts the displacement
// o_{k+1} - o_1 in standardized units.
struct ImaginerModel {
  nn::MlpSpec spec;
  nn::MlpParams params;
  replay::Normalizer input_normalizer{7};
  world::Vec3 output_mean = world::Vec3::Zero();
  world::Vec3 output_scale = world::Vec3::Ones();
  int horizon = 1;
  world::Box bounds;
  double train_mse = 0.0;
  double holdout_mse = 0.0;  // 0 when nothing was held out
  int epochs_trained = 0;
};

// Minibatch Adam on squared error. Samples are split 90/10 (configurable) by
// their (o_1, g) pair; training stops once the held-out error has not
// improved for `patience` epochs and the best parameters are kept. With a
// single pair everything is used for training and the training error drives
// the stopping rule.
ImaginerModel TrainImaginer(const std::vector<ImaginerSample>& samples,
                            int horizon, const world::Box& bounds,
                            const ImaginerConfig& config, std::uint64_t seed);

// Requires 1 <= k <= horizon; the result is clipped to model.bounds.
world::Vec3 Imagine(const ImaginerModel& model, const world::Vec3& start,
                    const world::Vec3& goal, int k);

// Mean over samples of the squared Euclidean error (m^2).
double MeanSquaredError(const ImaginerModel& model,
                        const std::vector<ImaginerSample>& samples);

void WriteImaginer(std::ostream& out, const ImaginerModel& model);
ImaginerModel ReadImaginer(std::istream& in);
void SaveImaginer(const std::filesystem::path& path, const ImaginerModel& model);
ImaginerModel LoadImaginer(const std::filesystem::path& path);

}  // namespace objgoal::imaginer

#endif  // OBJGOAL_IMAGINER_IMAGINER_H_
