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

#include "objgoal/nn/mlp.h"

#include <cmath>
#include <string>

#include "objgoal/error.h"

namespace objgoal::nn {

void MlpSpec::Validate() const {
  if (layer_sizes.size() < 2) {
    throw ConfigError("MlpSpec needs at least 2 layer sizes, got " +
                      std::to_string(layer_sizes.size()));
  }
  for (int size : layer_sizes) {
    if (size < 1) {
      throw ConfigError("MlpSpec layer sizes must be >= 1, got " +
                        std::to_string(size));
    }
  }
  if (!(output_scale > 0.0) || !std::isfinite(output_scale)) {
    throw ConfigError("MlpSpec output_scale must be positive and finite");
  }
}

MlpSpec MakeSpec(int input, int hidden_width, int hidden_layers, int output,
                 OutputActivation activation, double output_scale) {
  MlpSpec spec;
  spec.layer_sizes.push_back(input);
  for (int i = 0; i < hidden_layers; ++i) spec.layer_sizes.push_back(hidden_width);
  spec.layer_sizes.push_back(output);
  spec.output_activation = activation;
  spec.output_scale = output_scale;
  spec.Validate();
  return spec;
}

std::size_t MlpParams::NumParameters() const {
  std::size_t n = 0;
  for (const Layer& layer : layers) n += layer.weight.size() + layer.bias.size();
  return n;
}

bool MlpParams::AllFinite() const {
  for (const Layer& layer : layers) {
    if (!layer.weight.allFinite() || !layer.bias.allFinite()) return false;
  }
  return true;
}

Gradients Gradients::ZerosLike(const MlpParams& params) {
  Gradients grads;
  grads.layers.reserve(params.layers.size());
  for (const Layer& layer : params.layers) {
    grads.layers.push_back(
        {Eigen::MatrixXd::Zero(layer.weight.rows(), layer.weight.cols()),
         Eigen::VectorXd::Zero(layer.bias.size())});
  }
  return grads;
}

std::size_t Gradients::NumParameters() const {
  std::size_t n = 0;
  for (const Layer& layer : layers) n += layer.weight.size() + layer.bias.size();
  return n;
}

MlpParams ZeroParams(const MlpSpec& spec) {
  spec.Validate();
  MlpParams params;
  for (int i = 0; i < spec.num_layers(); ++i) {
    const int in = spec.layer_sizes[i];
    const int out = spec.layer_sizes[i + 1];
    params.layers.push_back(
        {Eigen::MatrixXd::Zero(out, in), Eigen::VectorXd::Zero(out)});
  }
  return params;
}

MlpParams InitParams(const MlpSpec& spec, std::mt19937_64& rng,
                     double final_layer_scale) {
  MlpParams params = ZeroParams(spec);
  for (int i = 0; i < spec.num_layers(); ++i) {
    Layer& layer = params.layers[i];
    double bound = 1.0 / std::sqrt(static_cast<double>(spec.layer_sizes[i]));
    if (i == spec.num_layers() - 1) bound *= final_layer_scale;
    std::uniform_real_distribution<double> dist(-bound, bound);
    // row-major fill so the draw order matches the checkpoint layout
    for (Eigen::Index r = 0; r < layer.weight.rows(); ++r) {
      for (Eigen::Index c = 0; c < layer.weight.cols(); ++c) {
        layer.weight(r, c) = dist(rng);
      }
    }
    for (Eigen::Index r = 0; r < layer.bias.size(); ++r) layer.bias(r) = dist(rng);
  }
  return params;
}

void CheckShapes(const MlpParams& params, const MlpSpec& spec) {
  if (static_cast<int>(params.layers.size()) != spec.num_layers()) {
    throw DimensionError("layer count", spec.num_layers(),
                         params.layers.size());
  }
  for (int i = 0; i < spec.num_layers(); ++i) {
    const Layer& layer = params.layers[i];
    const std::string name = "layer " + std::to_string(i);
    if (layer.weight.cols() != spec.layer_sizes[i]) {
      throw DimensionError(name + " weight columns", spec.layer_sizes[i],
                           layer.weight.cols());
    }
    if (layer.weight.rows() != spec.layer_sizes[i + 1]) {
      throw DimensionError(name + " weight rows", spec.layer_sizes[i + 1],
                           layer.weight.rows());
    }
    if (layer.bias.size() != spec.layer_sizes[i + 1]) {
      throw DimensionError(name + " bias", spec.layer_sizes[i + 1],
                           layer.bias.size());
    }
  }
}

Eigen::MatrixXd Forward(const MlpParams& params, const MlpSpec& spec,
                        const Eigen::MatrixXd& input, ForwardCache* cache) {
  if (input.rows() != spec.input_size()) {
    throw DimensionError("mlp input", spec.input_size(), input.rows());
  }
  if (static_cast<int>(params.layers.size()) != spec.num_layers()) {
    throw DimensionError("layer count", spec.num_layers(),
                         params.layers.size());
  }
  if (cache != nullptr) {
    cache->activations.clear();
    cache->activations.reserve(params.layers.size() + 1);
    cache->activations.push_back(input);
  }
  Eigen::MatrixXd x = input;
  const int last = spec.num_layers() - 1;
  for (int i = 0; i <= last; ++i) {
    const Layer& layer = params.layers[i];
    Eigen::MatrixXd z = layer.weight * x;
    z.colwise() += layer.bias;
    if (i < last) {
      x = z.cwiseMax(0.0);
    } else if (spec.output_activation == OutputActivation::kScaledTanh) {
      x = spec.output_scale * z.array().tanh();
    } else {
      x = std::move(z);
    }
    if (cache != nullptr) cache->activations.push_back(x);
  }
  return x;
}

BackwardResult Backward(const MlpParams& params, const MlpSpec& spec,
                        const ForwardCache& cache,
                        const Eigen::MatrixXd& upstream) {
  const int num_layers = spec.num_layers();
  if (static_cast<int>(cache.activations.size()) != num_layers + 1) {
    throw DimensionError("forward cache", num_layers + 1,
                         cache.activations.size());
  }
  const Eigen::MatrixXd& output = cache.activations.back();
  if (upstream.rows() != output.rows()) {
    throw DimensionError("upstream gradient", output.rows(), upstream.rows());
  }
  if (upstream.cols() != output.cols()) {
    throw DimensionError("upstream batch", output.cols(), upstream.cols());
  }

  BackwardResult result;
  result.grads.layers.resize(num_layers);

  // delta holds dL/dz for the current layer
  Eigen::MatrixXd delta;
  if (spec.output_activation == OutputActivation::kScaledTanh) {
    const double s = spec.output_scale;
    delta = upstream.array() *
            (s - output.array().square() / s);  // s * (1 - tanh^2)
  } else {
    delta = upstream;
  }
  for (int i = num_layers - 1; i >= 0; --i) {
    const Layer& layer = params.layers[i];
    const Eigen::MatrixXd& x = cache.activations[i];
    result.grads.layers[i].weight.noalias() = delta * x.transpose();
    result.grads.layers[i].bias = delta.rowwise().sum();
    Eigen::MatrixXd dx = layer.weight.transpose() * delta;
    if (i > 0) {
      // relu'(z) = [a > 0]
      delta = (x.array() > 0.0).select(dx, 0.0);
    } else {
      result.input_grad = std::move(dx);
    }
  }
  return result;
}

std::vector<double> MlpForward(const MlpParams& params, const MlpSpec& spec,
                               std::span<const double> input) {
  if (static_cast<int>(input.size()) != spec.input_size()) {
    throw DimensionError("mlp input", spec.input_size(), input.size());
  }
  Eigen::MatrixXd x =
      Eigen::Map<const Eigen::VectorXd>(input.data(), input.size());
  Eigen::MatrixXd y = Forward(params, spec, x);
  return std::vector<double>(y.data(), y.data() + y.size());
}

VectorBackwardResult MlpBackward(const MlpParams& params, const MlpSpec& spec,
                                 std::span<const double> input,
                                 std::span<const double> upstream) {
  if (static_cast<int>(input.size()) != spec.input_size()) {
    throw DimensionError("mlp input", spec.input_size(), input.size());
  }
  if (static_cast<int>(upstream.size()) != spec.output_size()) {
    throw DimensionError("upstream gradient", spec.output_size(),
                         upstream.size());
  }
  ForwardCache cache;
  Eigen::MatrixXd x =
      Eigen::Map<const Eigen::VectorXd>(input.data(), input.size());
  Forward(params, spec, x, &cache);
  Eigen::MatrixXd up =
      Eigen::Map<const Eigen::VectorXd>(upstream.data(), upstream.size());
  BackwardResult r = Backward(params, spec, cache, up);
  VectorBackwardResult out;
  out.grads = std::move(r.grads);
  out.input_grad.assign(r.input_grad.data(),
                        r.input_grad.data() + r.input_grad.size());
  return out;
}

void PolyakBlend(MlpParams& target, const MlpParams& online, double tau) {
  if (target.layers.size() != online.layers.size()) {
    throw DimensionError("polyak layer count", online.layers.size(),
                         target.layers.size());
  }
  for (std::size_t i = 0; i < target.layers.size(); ++i) {
    Layer& t = target.layers[i];
    const Layer& o = online.layers[i];
    if (t.weight.size() != o.weight.size() || t.bias.size() != o.bias.size()) {
      throw DimensionError("polyak layer " + std::to_string(i),
                           o.weight.size() + o.bias.size(),
                           t.weight.size() + t.bias.size());
    }
    t.weight = tau * o.weight + (1.0 - tau) * t.weight;
    t.bias = tau * o.bias + (1.0 - tau) * t.bias;
  }
}

std::vector<double> Flatten(const std::vector<Layer>& layers) {
  std::vector<double> flat;
  for (const Layer& layer : layers) {
    for (Eigen::Index r = 0; r < layer.weight.rows(); ++r) {
      for (Eigen::Index c = 0; c < layer.weight.cols(); ++c) {
        flat.push_back(layer.weight(r, c));
      }
    }
    for (Eigen::Index r = 0; r < layer.bias.size(); ++r) {
      flat.push_back(layer.bias(r));
    }
  }
  return flat;
}

void Unflatten(std::span<const double> flat, std::vector<Layer>& layers) {
  std::size_t expected = 0;
  for (const Layer& layer : layers) expected += layer.weight.size() + layer.bias.size();
  if (flat.size() != expected) {
    throw DimensionError("flat parameter vector", expected, flat.size());
  }
  std::size_t k = 0;
  for (Layer& layer : layers) {
    for (Eigen::Index r = 0; r < layer.weight.rows(); ++r) {
      for (Eigen::Index c = 0; c < layer.weight.cols(); ++c) {
        layer.weight(r, c) = flat[k++];
      }
    }
    for (Eigen::Index r = 0; r < layer.bias.size(); ++r) layer.bias(r) = flat[k++];
  }
}

}  // namespace objgoal::nn
