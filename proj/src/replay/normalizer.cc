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

#include "objgoal/replay/normalizer.h"

#include <algorithm>
#include <cmath>

#include "objgoal/error.h"
#include "objgoal/io/binary_io.h"

namespace objgoal::replay {

namespace {
constexpr char kMagic[] = "OGNORM01";
}  // namespace

Normalizer::Normalizer(int size, double clip, double std_floor)
    : sum_(Eigen::VectorXd::Zero(size)),
      sum_sq_(Eigen::VectorXd::Zero(size)),
      clip_(clip),
      std_floor_(std_floor) {
  if (size < 1) throw ConfigError("normalizer size must be >= 1");
  if (!(std_floor > 0.0)) throw ConfigError("normalizer std floor must be > 0");
  if (!(clip > 0.0)) throw ConfigError("normalizer clip must be > 0");
}

void Normalizer::Update(const Eigen::MatrixXd& observations) {
  if (observations.rows() != sum_.size()) {
    throw DimensionError("normalizer update", sum_.size(), observations.rows());
  }
  sum_ += observations.rowwise().sum();
  sum_sq_ += observations.array().square().rowwise().sum().matrix();
  count_ += static_cast<double>(observations.cols());
}

void Normalizer::Update(std::span<const double> observation) {
  Update(Eigen::Map<const Eigen::VectorXd>(observation.data(),
                                           observation.size())
             .eval());
}

Eigen::VectorXd Normalizer::mean() const {
  if (count_ == 0.0) return Eigen::VectorXd::Zero(sum_.size());
  return sum_ / count_;
}

Eigen::VectorXd Normalizer::stddev() const {
  if (count_ == 0.0) return Eigen::VectorXd::Ones(sum_.size());
  const Eigen::VectorXd m = mean();
  Eigen::VectorXd var = sum_sq_ / count_ - m.cwiseProduct(m);
  return var.cwiseMax(0.0).cwiseSqrt().cwiseMax(std_floor_);
}

Eigen::MatrixXd Normalizer::Apply(const Eigen::MatrixXd& observations) const {
  if (observations.rows() != sum_.size()) {
    throw DimensionError("normalizer input", sum_.size(), observations.rows());
  }
  const Eigen::VectorXd m = mean();
  const Eigen::VectorXd inv_std = stddev().cwiseInverse();
  Eigen::MatrixXd out =
      (observations.colwise() - m).array().colwise() * inv_std.array();
  return out.cwiseMax(-clip_).cwiseMin(clip_);
}

std::vector<double> Normalizer::Apply(std::span<const double> observation) const {
  Eigen::MatrixXd x =
      Eigen::Map<const Eigen::VectorXd>(observation.data(), observation.size());
  Eigen::MatrixXd y = Apply(x);
  return {y.data(), y.data() + y.size()};
}

void Normalizer::Write(std::ostream& out) const {
  io::WriteMagic(out, kMagic);
  io::WriteU32(out, static_cast<std::uint32_t>(sum_.size()));
  io::WriteF64(out, clip_);
  io::WriteF64(out, std_floor_);
  io::WriteF64(out, count_);
  io::WriteF64Array(out, {sum_.data(), static_cast<std::size_t>(sum_.size())});
  io::WriteF64Array(out, {sum_sq_.data(), static_cast<std::size_t>(sum_sq_.size())});
}

Normalizer Normalizer::Read(std::istream& in) {
  io::ExpectMagic(in, kMagic);
  const int size = static_cast<int>(io::ReadU32(in));
  const double clip = io::ReadF64(in);
  const double floor = io::ReadF64(in);
  Normalizer n(size, clip, floor);
  n.count_ = io::ReadF64(in);
  std::vector<double> sum = io::ReadF64Array(in, size);
  std::vector<double> sum_sq = io::ReadF64Array(in, size);
  n.sum_ = Eigen::Map<Eigen::VectorXd>(sum.data(), size);
  n.sum_sq_ = Eigen::Map<Eigen::VectorXd>(sum_sq.data(), size);
  return n;
}

}  // namespace objgoal::replay
