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

#ifndef OBJGOAL_NN_MLP_H_
#define OBJGOAL_NN_MLP_H_

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace objgoal::nn {

// Activation of the last layer. Hidden layers are always rectified-linear.
enum class OutputActivation : std::uint8_t {
  kIdentity = 0,
  // output_scale * tanh(z)
  kScaledTanh = 1,
};

struct MlpSpec {
  // input dim, hidden dims..., output dim
  std::vector<int> layer_sizes;
  OutputActivation output_activation = OutputActivation::kIdentity;
  double output_scale = 1.0;

  int input_size() const { return layer_sizes.front(); }
  int output_size() const { return layer_sizes.back(); }
  int num_layers() const { return static_cast<int>(layer_sizes.size()) - 1; }

  // Throws ConfigError unless there are >= 2 sizes, all >= 1.
  void Validate() const;

  bool operator==(const MlpSpec&) const = default;
};

// Builds {input, hidden x depth, output}.
MlpSpec MakeSpec(int input, int hidden_width, int hidden_layers, int output,
                 OutputActivation activation = OutputActivation::kIdentity,
                 double output_scale = 1.0);

// One dense layer: y = weight * x + bias, weight is (out x in).
struct Layer {
  Eigen::MatrixXd weight;
  Eigen::VectorXd bias;
};

struct MlpParams {
  std::vector<Layer> layers;

  std::size_t NumParameters() const;
  bool AllFinite() const;
};

// Gradients share the parameter layout.
struct Gradients {
  std::vector<Layer> layers;

  static Gradients ZerosLike(const MlpParams& params);
  std::size_t NumParameters() const;
};

// Uniform fan-in initialization U(-1/sqrt(fan_in), 1/sqrt(fan_in)); the last
// layer is additionally multiplied by final_layer_scale.
MlpParams InitParams(const MlpSpec& spec, std::mt19937_64& rng,
                     double final_layer_scale = 1.0);

MlpParams ZeroParams(const MlpSpec& spec);

// Throws DimensionError if params do not match spec.
void CheckShapes(const MlpParams& params, const MlpSpec& spec);

// Post-activation outputs of every layer, index 0 is the input. Needed by
// Backward.
struct ForwardCache {
  std::vector<Eigen::MatrixXd> activations;
};

// Batched forward pass; input is (input_size x batch), one sample per column.
Eigen::MatrixXd Forward(const MlpParams& params, const MlpSpec& spec,
                        const Eigen::MatrixXd& input,
                        ForwardCache* cache = nullptr);

struct BackwardResult {
  Gradients grads;
  Eigen::MatrixXd input_grad;  // (input_size x batch)
};

// Gradient of sum over the batch of <upstream[:, j], output[:, j]> with
// respect to parameters and inputs. cache must come from Forward on the same
// params.
BackwardResult Backward(const MlpParams& params, const MlpSpec& spec,
                        const ForwardCache& cache,
                        const Eigen::MatrixXd& upstream);

// Single-sample convenience wrappers.
std::vector<double> MlpForward(const MlpParams& params, const MlpSpec& spec,
                               std::span<const double> input);

struct VectorBackwardResult {
  Gradients grads;
  std::vector<double> input_grad;
};

VectorBackwardResult MlpBackward(const MlpParams& params, const MlpSpec& spec,
                                 std::span<const double> input,
                                 std::span<const double> upstream);

// target <- tau * online + (1 - tau) * target, elementwise.
void PolyakBlend(MlpParams& target, const MlpParams& online, double tau);

// Flat views used by gradient checks and serialization tests. Order: per
// layer, weight in row-major then bias.
std::vector<double> Flatten(const std::vector<Layer>& layers);
void Unflatten(std::span<const double> flat, std::vector<Layer>& layers);

}  // namespace objgoal::nn

#endif  // OBJGOAL_NN_MLP_H_
