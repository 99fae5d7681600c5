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


#include "objgoal/harness/aggregate.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "objgoal/error.h"

namespace objgoal::harness {
namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                    "#ff7f0e", "#9467bd", "#8c564b"};

std::string Escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string Num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

}  // namespace

double Quantile(std::vector<double> values, double q) {
  if (values.empty()) throw Error("quantile of an empty sample");
  if (!(q >= 0.0 && q <= 1.0)) throw Error("quantile level must lie in [0, 1]");
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

std::vector<AggregatePoint> Aggregate(
    const std::vector<std::vector<double>>& curves) {
  if (curves.empty()) throw Error("aggregate of no curves");
  std::size_t length = curves.front().size();
  for (const auto& c : curves) length = std::min(length, c.size());
  if (length == 0) throw Error("aggregate of an empty curve");
  std::vector<AggregatePoint> out;
  std::vector<double> column(curves.size());
  for (std::size_t e = 0; e < length; ++e) {
    for (std::size_t s = 0; s < curves.size(); ++s) column[s] = curves[s][e];
    out.push_back({static_cast<int>(e), Quantile(column, 0.5),
                   Quantile(column, 0.25), Quantile(column, 0.75),
                   static_cast<int>(curves.size())});
  }
  return out;
}

void WriteAggregateCsv(std::ostream& out,
                       const std::vector<NamedAggregate>& series) {
  out << "series,epoch,median,q25,q75,count\n";
  out << std::setprecision(17);
  for (const NamedAggregate& s : series) {
    for (const AggregatePoint& p : s.points) {
      out << s.name << ',' << p.epoch << ',' << p.median << ',' << p.q25 << ','
          << p.q75 << ',' << p.count << '\n';
    }
  }
}

std::string RenderSvg(const std::vector<NamedAggregate>& series,
                      const PlotOptions& options) {
  if (series.empty()) throw Error("nothing to plot");
  int first = 0, last = 0;
  bool seen = false;
  for (const NamedAggregate& s : series) {
    if (s.points.empty()) throw Error("series '" + s.name + "' is empty");
    for (const AggregatePoint& p : s.points) {
      first = seen ? std::min(first, p.epoch) : p.epoch;
      last = seen ? std::max(last, p.epoch) : p.epoch;
      seen = true;
    }
  }
  const double left = 60, right = 20, top = 40, bottom = 50;
  const double w = options.width - left - right;
  const double h = options.height - top - bottom;
  auto x = [&](int epoch) {
    if (last == first) return left + 0.5 * w;
    return left + w * (epoch - first) / static_cast<double>(last - first);
  };
  auto y = [&](double v) { return top + h * (1.0 - std::clamp(v, 0.0, 1.0)); };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << options.width
      << "\" height=\"" << options.height << "\" viewBox=\"0 0 "
      << options.width << ' ' << options.height << "\">\n";
  svg << "<rect x=\"0\" y=\"0\" width=\"" << options.width << "\" height=\""
      << options.height << "\" fill=\"white\"/>\n";
  if (!options.title.empty()) {
    svg << "<text x=\"" << Num(left) << "\" y=\"24\" font-size=\"16\">"
        << Escape(options.title) << "</text>\n";
  }
  // Axes, y ticks at 0, 0.5, 1 and the epoch range on x.
  svg << "<g stroke=\"black\" stroke-width=\"1\">\n"
      << "<line x1=\"" << Num(left) << "\" y1=\"" << Num(y(0)) << "\" x2=\""
      << Num(left + w) << "\" y2=\"" << Num(y(0)) << "\"/>\n"
      << "<line x1=\"" << Num(left) << "\" y1=\"" << Num(y(0)) << "\" x2=\""
      << Num(left) << "\" y2=\"" << Num(y(1)) << "\"/>\n"
      << "</g>\n";
  svg << "<g font-size=\"12\" text-anchor=\"end\">\n";
  for (double v : {0.0, 0.5, 1.0}) {
    svg << "<text x=\"" << Num(left - 6) << "\" y=\"" << Num(y(v) + 4) << "\">"
        << Num(v) << "</text>\n";
  }
  svg << "</g>\n";
  svg << "<g font-size=\"12\" text-anchor=\"middle\">\n"
      << "<text x=\"" << Num(x(first)) << "\" y=\"" << Num(y(0) + 18) << "\">"
      << first << "</text>\n"
      << "<text x=\"" << Num(x(last)) << "\" y=\"" << Num(y(0) + 18) << "\">"
      << last << "</text>\n"
      << "<text x=\"" << Num(left + w / 2) << "\" y=\"" << Num(y(0) + 40)
      << "\">epoch</text>\n"
      << "</g>\n";
  svg << "<text x=\"16\" y=\"" << Num(top + h / 2) << "\" font-size=\"12\" "
      << "transform=\"rotate(-90 16 " << Num(top + h / 2)
      << ")\" text-anchor=\"middle\">success rate</text>\n";

  for (std::size_t i = 0; i < series.size(); ++i) {
    const NamedAggregate& s = series[i];
    const char* color = kPalette[i % std::size(kPalette)];
    svg << "<g class=\"series\" data-name=\"" << Escape(s.name) << "\">\n";
    svg << "<polygon class=\"iqr\" fill=\"" << color
        << "\" fill-opacity=\"0.2\" stroke=\"none\" points=\"";
    for (const AggregatePoint& p : s.points) {
      svg << Num(x(p.epoch)) << ',' << Num(y(p.q75)) << ' ';
    }
    for (auto it = s.points.rbegin(); it != s.points.rend(); ++it) {
      svg << Num(x(it->epoch)) << ',' << Num(y(it->q25)) << ' ';
    }
    svg << "\"/>\n";
    svg << "<polyline class=\"median\" fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"2\" points=\"";
    for (const AggregatePoint& p : s.points) {
      svg << Num(x(p.epoch)) << ',' << Num(y(p.median)) << ' ';
    }
    svg << "\"/>\n";
    svg << "<text x=\"" << Num(left + w - 100) << "\" y=\""
        << Num(top + 14 + 16 * static_cast<double>(i)) << "\" font-size=\"12\" fill=\""
        << color << "\">" << Escape(s.name) << "</text>\n";
    svg << "</g>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace objgoal::harness
