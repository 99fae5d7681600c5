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


#ifndef OBJGOAL_HARNESS_AGGREGATE_H_
#define OBJGOAL_HARNESS_AGGREGATE_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace objgoal::harness {

// Linear interpolation between order statistics at position q * (n - 1).
// Throws Error on an empty sample or q outside [0, 1].
double Quantile(std::vector<double> values, double q);

struct AggregatePoint {
  int epoch = 0;
  double median = 0.0;
  double q25 = 0.0;
  double q75 = 0.0;
  int count = 0;
};

// Per-epoch statistics across curves (one curve per seed). Curves of unequal
// length are cut to the shortest. Throws Error for no curves or an empty one.
std::vector<AggregatePoint> Aggregate(const std::vector<std::vector<double>>& curves);

struct NamedAggregate {
  std::string name;
  std::vector<AggregatePoint> points;
};

// Columns: series,epoch,median,q25,q75,count
void WriteAggregateCsv(std::ostream& out, const std::vector<NamedAggregate>& series);

struct PlotOptions {
  std::string title;
  int width = 640;
  int height = 400;
};

// Self-contained SVG: one median polyline and one IQR band per series, y axis
// fixed to [0, 1]. Throws Error if there is no series or a series is empty.
std::string RenderSvg(const std::vector<NamedAggregate>& series,
                      const PlotOptions& options = {});

}  // namespace objgoal::harness

#endif  // OBJGOAL_HARNESS_AGGREGATE_H_
