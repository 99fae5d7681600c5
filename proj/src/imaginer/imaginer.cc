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

#include "objgoal/imaginer/imaginer.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <tuple>

#include "objgoal/error.h"
#include "objgoal/io/binary_io.h"
#include "objgoal/nn/adam.h"
#include "objgoal/nn/checkpoint.h"
#include "objgoal/world/config_io.h"

namespace objgoal::imaginer {
namespace {

constexpr char kImaginerMagic[] = "OGIMAG01";
constexpr int kInputSize = 7;
constexpr double kInputClip = 5.0;
constexpr double kInputStdFloor = 1e-3;
constexpr double kOutputStdFloor = 1e-3;

Eigen::MatrixXd RawInputs(const std::vector<ImaginerSample>& samples,
                          const std::vector<int>& index, int horizon) {
  Eigen::MatrixXd x(kInputSize, static_cast<Eigen::Index>(index.size()));
  for (std::size_t c = 0; c < index.size(); ++c) {
    const ImaginerSample& s = samples[index[c]];
    x.col(c) << s.start, s.goal, static_cast<double>(s.k) / horizon;
  }
  return x;
}

Eigen::Matrix3Xd Displacements(const std::vector<ImaginerSample>& samples,
                               const std::vector<int>& index) {
  Eigen::Matrix3Xd y(3, static_cast<Eigen::Index>(index.size()));
  for (std::size_t c = 0; c < index.size(); ++c) {
    y.col(c) = samples[index[c]].target - samples[index[c]].start;
  }
  return y;
}

// Unclipped predictions in world units for raw inputs.
Eigen::Matrix3Xd PredictRaw(const ImaginerModel& m, const Eigen::MatrixXd& raw) {
  Eigen::MatrixXd out = nn::Forward(m.params, m.spec, m.input_normalizer.Apply(raw));
  Eigen::Matrix3Xd pos = (out.array().colwise() * m.output_scale.array()).matrix();
  pos.colwise() += m.output_mean;
  return pos + raw.topRows(3);
}

double ClippedMse(const ImaginerModel& m, const std::vector<ImaginerSample>& samples,
                  const std::vector<int>& index) {
  if (index.empty()) return 0.0;
  const Eigen::Matrix3Xd pred = PredictRaw(m, RawInputs(samples, index, m.horizon));
  double total = 0.0;
  for (std::size_t c = 0; c < index.size(); ++c) {
    const world::Vec3 p = pred.col(c).cwiseMax(m.bounds.min).cwiseMin(m.bounds.max);
    total += (p - samples[index[c]].target).squaredNorm();
  }
  return total / static_cast<double>(index.size());
}

}  // namespace

std::vector<ImaginerSample> BuildTrainingSet(
    const std::vector<object::LocomotionTrajectory>& dataset, int horizon) {
  if (dataset.empty()) throw Error("imaginer training set: empty dataset");
  if (horizon < 1) throw ConfigError("imaginer horizon must be >= 1");
  std::vector<ImaginerSample> samples;
  samples.reserve(dataset.size() * static_cast<std::size_t>(horizon));
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    const object::LocomotionTrajectory& traj = dataset[i];
    if (traj.path.cols() < horizon + 1) {
      throw DimensionError("trajectory " + std::to_string(i) + " length",
                           horizon + 1, traj.path.cols());
    }
    for (int k = 1; k <= horizon; ++k) {
      samples.push_back({traj.path.col(0), traj.goal, k, traj.path.col(k)});
    }
  }
  return samples;
}

void ImaginerConfig::Validate() const {
  if (hidden_width < 1 || hidden_layers < 0) {
    throw ConfigError("imaginer: bad hidden layer shape");
  }
  if (max_epochs < 1) throw ConfigError("imaginer: max_epochs must be >= 1");
  if (batch_size < 1) throw ConfigError("imaginer: batch_size must be >= 1");
  if (!(learning_rate > 0.0)) throw ConfigError("imaginer: learning_rate must be > 0");
  if (!(holdout_fraction >= 0.0 && holdout_fraction < 1.0)) {
    throw ConfigError("imaginer: holdout_fraction must lie in [0, 1)");
  }
  if (patience < 1) throw ConfigError("imaginer: patience must be >= 1");
}

nlohmann::json ImaginerConfig::ToJson() const {
  return {{"hidden_width", hidden_width},   {"hidden_layers", hidden_layers},
          {"max_epochs", max_epochs},       {"batch_size", batch_size},
          {"learning_rate", learning_rate}, {"holdout_fraction", holdout_fraction},
          {"patience", patience}};
}

ImaginerConfig ImaginerConfig::FromJson(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("imaginer config must be an object");
  world::RejectUnknownKeys(j,
                           {"hidden_width", "hidden_layers", "max_epochs",
                            "batch_size", "learning_rate", "holdout_fraction",
                            "patience"},
                           "imaginer config");
  ImaginerConfig c;
  try {
    c.hidden_width = j.value("hidden_width", c.hidden_width);
    c.hidden_layers = j.value("hidden_layers", c.hidden_layers);
    c.max_epochs = j.value("max_epochs", c.max_epochs);
    c.batch_size = j.value("batch_size", c.batch_size);
    c.learning_rate = j.value("learning_rate", c.learning_rate);
    c.holdout_fraction = j.value("holdout_fraction", c.holdout_fraction);
    c.patience = j.value("patience", c.patience);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("imaginer config: ") + e.what());
  }
  c.Validate();
  return c;
}

ImaginerModel TrainImaginer(const std::vector<ImaginerSample>& samples,
                            int horizon, const world::Box& bounds,
                            const ImaginerConfig& config, std::uint64_t seed) {
  config.Validate();
  if (samples.empty()) throw Error("imaginer: no training samples");
  if (horizon < 1) throw ConfigError("imaginer horizon must be >= 1");
  for (const ImaginerSample& s : samples) {
    if (s.k < 1 || s.k > horizon) throw ConfigError("imaginer sample k out of range");
  }
  std::mt19937_64 rng(seed);

  // Split by (o_1, g) so held-out pairs are unseen start/goal combinations.
  std::map<std::tuple<double, double, double, double, double, double>, std::vector<int>>
      groups;
  for (int i = 0; i < static_cast<int>(samples.size()); ++i) {
    const ImaginerSample& s = samples[i];
    groups[{s.start.x(), s.start.y(), s.start.z(), s.goal.x(), s.goal.y(),
            s.goal.z()}]
        .push_back(i);
  }
  std::vector<const std::vector<int>*> order;
  for (const auto& [key, members] : groups) order.push_back(&members);
  std::shuffle(order.begin(), order.end(), rng);
  std::size_t n_holdout = 0;
  if (order.size() >= 2 && config.holdout_fraction > 0.0) {
    n_holdout = std::clamp<std::size_t>(
        static_cast<std::size_t>(std::ceil(config.holdout_fraction * order.size())),
        1, order.size() - 1);
  }
  std::vector<int> train, holdout;
  for (std::size_t g = 0; g < order.size(); ++g) {
    auto& dst = g < n_holdout ? holdout : train;
    dst.insert(dst.end(), order[g]->begin(), order[g]->end());
  }

  ImaginerModel model;
  model.horizon = horizon;
  model.bounds = bounds;
  model.spec = nn::MakeSpec(kInputSize, config.hidden_width, config.hidden_layers, 3);
  model.params = nn::InitParams(model.spec, rng);
  model.input_normalizer = replay::Normalizer(kInputSize, kInputClip, kInputStdFloor);
  const Eigen::MatrixXd raw_train = RawInputs(samples, train, horizon);
  model.input_normalizer.Update(raw_train);
  const Eigen::Matrix3Xd disp = Displacements(samples, train);
  model.output_mean = disp.rowwise().mean();
  model.output_scale =
      ((disp.colwise() - model.output_mean).array().square().rowwise().mean())
          .sqrt()
          .max(kOutputStdFloor)
          .matrix();
  const Eigen::MatrixXd x_train = model.input_normalizer.Apply(raw_train);
  const Eigen::Matrix3Xd y_train =
      ((disp.colwise() - model.output_mean).array().colwise() /
       model.output_scale.array())
          .matrix();

  nn::AdamState adam = nn::AdamState::ZerosLike(model.params);
  const bool use_holdout = !holdout.empty();
  double best = std::numeric_limits<double>::infinity();
  nn::MlpParams best_params = model.params;
  int best_epoch = 0, stale = 0;
  std::vector<int> perm(train.size());
  std::iota(perm.begin(), perm.end(), 0);
  const int n = static_cast<int>(train.size());
  for (int epoch = 1; epoch <= config.max_epochs; ++epoch) {
    std::shuffle(perm.begin(), perm.end(), rng);
    for (int begin = 0; begin < n; begin += config.batch_size) {
      const int b = std::min(config.batch_size, n - begin);
      Eigen::MatrixXd xb(kInputSize, b);
      Eigen::MatrixXd yb(3, b);
      for (int c = 0; c < b; ++c) {
        xb.col(c) = x_train.col(perm[begin + c]);
        yb.col(c) = y_train.col(perm[begin + c]);
      }
      nn::ForwardCache cache;
      const Eigen::MatrixXd pred = nn::Forward(model.params, model.spec, xb, &cache);
      const Eigen::MatrixXd err = pred - yb;
      if (!err.allFinite()) {
        throw NonFiniteError("imaginer loss diverged at epoch " + std::to_string(epoch));
      }
      nn::BackwardResult g =
          nn::Backward(model.params, model.spec, cache, (2.0 / b) * err);
      nn::AdamStep(model.params, g.grads, adam, config.learning_rate);
    }
    const double score = use_holdout ? ClippedMse(model, samples, holdout)
                                     : ClippedMse(model, samples, train);
    if (!std::isfinite(score)) {
      throw NonFiniteError("imaginer loss diverged at epoch " + std::to_string(epoch));
    }
    if (score < best) {
      best = score;
      best_params = model.params;
      best_epoch = epoch;
      stale = 0;
    } else if (++stale >= config.patience) {
      break;
    }
  }
  model.params = std::move(best_params);
  model.epochs_trained = best_epoch;
  model.train_mse = ClippedMse(model, samples, train);
  model.holdout_mse = ClippedMse(model, samples, holdout);
  return model;
}

world::Vec3 Imagine(const ImaginerModel& model, const world::Vec3& start,
                    const world::Vec3& goal, int k) {
  if (k < 1 || k > model.horizon) {
    throw ConfigError("imagine: k = " + std::to_string(k) + " outside [1, " +
                      std::to_string(model.horizon) + "]");
  }
  if (!start.allFinite() || !goal.allFinite()) {
    throw NonFiniteError("imagine: non-finite input");
  }
  Eigen::MatrixXd raw(kInputSize, 1);
  raw << start, goal, static_cast<double>(k) / model.horizon;
  const world::Vec3 p = PredictRaw(model, raw).col(0);
  return p.cwiseMax(model.bounds.min).cwiseMin(model.bounds.max);
}

double MeanSquaredError(const ImaginerModel& model,
                        const std::vector<ImaginerSample>& samples) {
  std::vector<int> all(samples.size());
  std::iota(all.begin(), all.end(), 0);
  return ClippedMse(model, samples, all);
}

void WriteImaginer(std::ostream& out, const ImaginerModel& model) {
  io::WriteMagic(out, kImaginerMagic);
  io::WriteU32(out, static_cast<std::uint32_t>(model.horizon));
  io::WriteF64Array(out, {model.bounds.min.data(), 3});
  io::WriteF64Array(out, {model.bounds.max.data(), 3});
  io::WriteF64Array(out, {model.output_mean.data(), 3});
  io::WriteF64Array(out, {model.output_scale.data(), 3});
  io::WriteF64(out, model.train_mse);
  io::WriteF64(out, model.holdout_mse);
  io::WriteU32(out, static_cast<std::uint32_t>(model.epochs_trained));
  model.input_normalizer.Write(out);
  nn::WriteMlp(out, model.spec, model.params);
}

ImaginerModel ReadImaginer(std::istream& in) {
  io::ExpectMagic(in, kImaginerMagic);
  ImaginerModel m;
  m.horizon = static_cast<int>(io::ReadU32(in));
  auto vec3 = [&in] {
    const std::vector<double> v = io::ReadF64Array(in, 3);
    return world::Vec3(v[0], v[1], v[2]);
  };
  m.bounds.min = vec3();
  m.bounds.max = vec3();
  m.output_mean = vec3();
  m.output_scale = vec3();
  m.train_mse = io::ReadF64(in);
  m.holdout_mse = io::ReadF64(in);
  m.epochs_trained = static_cast<int>(io::ReadU32(in));
  m.input_normalizer = replay::Normalizer::Read(in);
  nn::LoadedMlp mlp = nn::ReadMlp(in);
  if (mlp.spec.input_size() != kInputSize || mlp.spec.output_size() != 3) {
    throw Error("imaginer checkpoint: unexpected network shape");
  }
  m.spec = mlp.spec;
  m.params = std::move(mlp.params);
  return m;
}

void SaveImaginer(const std::filesystem::path& path, const ImaginerModel& model) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  WriteImaginer(out, model);
}

ImaginerModel LoadImaginer(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  return ReadImaginer(in);
}

}  // namespace objgoal::imaginer
