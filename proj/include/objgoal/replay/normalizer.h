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

#ifndef OBJGOAL_REPLAY_NORMALIZER_H_
#define OBJGOAL_REPLAY_NORMALIZER_H_

#include <istream>
#include <ostream>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace objgoal::replay {

// Running per-dimension mean/std from sum and sum of squares. Apply returns
// (x - mean) / max(std, std_floor) clipped to [-clip, clip]; before any
// update mean is 0 and std is 1.
class Normalizer {
 public:
  explicit Normalizer(int size, double clip = 5.0, double std_floor = 1e-2);

  // Each column is one observation.
  void Update(const Eigen::MatrixXd& observations);
  void Update(std::span<const double> observation);

  Eigen::MatrixXd Apply(const Eigen::MatrixXd& observations) const;
  std::vector<double> Apply(std::span<const double> observation) const;

  Eigen::VectorXd mean() const;
  Eigen::VectorXd stddev() const;  // floored
  int size() const { return static_cast<int>(sum_.size()); }
  double count() const { return count_; }
  double clip() const { return clip_; }

  void Write(std::ostream& out) const;
  static Normalizer Read(std::istream& in);

 private:
  Eigen::VectorXd sum_;
  Eigen::VectorXd sum_sq_;
  double count_ = 0.0;
  double clip_;
  double std_floor_;
};

}  // namespace objgoal::replay

#endif  // OBJGOAL_REPLAY_NORMALIZER_H_
