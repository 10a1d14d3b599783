// Copyright 2026 The CRSTIP Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "crstip/radar.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "crstip/error.hpp"

namespace crstip {

namespace {

constexpr const char* kSeriesColors[] = {"#1f77b4", "#d62728"};

std::string fixed2(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.2f", value);
  std::string text = buffer;
  if (text == "-0.00") text = "0.00";
  return text;
}

std::string escape_xml(const std::string& text) {
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

double axis_angle(std::size_t axis, std::size_t axis_count) {
  double degrees = 90.0 - static_cast<double>(axis) * 360.0 / static_cast<double>(axis_count);
  return degrees * std::numbers::pi / 180.0;
}

}  // namespace

ChartPoint radar_vertex(std::size_t axis, std::size_t axis_count, double value, int max_rank) {
  double radius = value / static_cast<double>(max_rank) * kChartRadius;
  double angle = axis_angle(axis, axis_count);
  return ChartPoint{kChartCenter + radius * std::cos(angle),
                    kChartCenter - radius * std::sin(angle)};
}

void validate_chart(const ChartSpec& spec) {
  auto invalid = [](const std::string& why) { throw Error(codes::kInvalidSpec, why); };
  if (spec.axes.empty()) invalid("chart needs at least one axis");
  if (spec.max_rank < 1) invalid("max_rank must be >= 1");
  if (spec.series.empty() || spec.series.size() > 2) invalid("chart takes one or two series");
  for (const auto& series : spec.series) {
    if (series.values.size() != spec.axes.size()) {
      invalid("series '" + series.name + "' has " + std::to_string(series.values.size()) +
              " values for " + std::to_string(spec.axes.size()) + " axes");
    }
    for (int value : series.values) {
      if (value < 1 || value > spec.max_rank) {
        invalid("series '" + series.name + "' value " + std::to_string(value) +
                " is outside [1, " + std::to_string(spec.max_rank) + "]");
      }
    }
  }
}

std::string render_radar(const ChartSpec& spec) {
  validate_chart(spec);
  const std::size_t n = spec.axes.size();
  const std::string c = fixed2(kChartCenter);
  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg +=
      "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"400\" height=\"400\" "
      "viewBox=\"0 0 400 400\" font-family=\"sans-serif\">\n";
  if (!spec.title.empty()) svg += "  <title>" + escape_xml(spec.title) + "</title>\n";
  svg += "  <rect x=\"0\" y=\"0\" width=\"400\" height=\"400\" fill=\"#ffffff\"/>\n";

  svg += "  <g class=\"grid\" fill=\"none\" stroke=\"#cccccc\" stroke-width=\"1\">\n";
  for (int ring = 1; ring <= spec.max_rank; ++ring) {
    svg += "    <circle cx=\"" + c + "\" cy=\"" + c + "\" r=\"" +
           fixed2(ring * kChartRadius / spec.max_rank) + "\"/>\n";
  }
  svg += "  </g>\n";

  svg += "  <g class=\"axes\" stroke=\"#999999\" stroke-width=\"1\">\n";
  for (std::size_t i = 0; i < n; ++i) {
    ChartPoint end = radar_vertex(i, n, spec.max_rank, spec.max_rank);
    svg += "    <line x1=\"" + c + "\" y1=\"" + c + "\" x2=\"" + fixed2(end.x) + "\" y2=\"" +
           fixed2(end.y) + "\"/>\n";
  }
  svg += "  </g>\n";

  svg += "  <g class=\"labels\" font-size=\"11\" fill=\"#333333\">\n";
  for (std::size_t i = 0; i < n; ++i) {
    ChartPoint end = radar_vertex(i, n, spec.max_rank, spec.max_rank);
    double dx = end.x - kChartCenter;
    double x = end.x;
    double y = end.y;
    const char* anchor = "middle";
    if (std::abs(dx) < 1.0) {
      y += end.y < kChartCenter ? -8.0 : 16.0;
    } else if (dx > 0) {
      anchor = "end";
      x = kChartCanvas - 4.0;
      y -= 6.0;
    } else {
      anchor = "start";
      x = 4.0;
      y -= 6.0;
    }
    svg += "    <text x=\"" + fixed2(x) + "\" y=\"" + fixed2(y) + "\" text-anchor=\"" +
           anchor + "\">" + escape_xml(spec.axes[i]) + "</text>\n";
  }
  svg += "  </g>\n";

  for (std::size_t s = 0; s < spec.series.size(); ++s) {
    const ChartSeries& series = spec.series[s];
    std::string points;
    for (std::size_t i = 0; i < n; ++i) {
      ChartPoint p = radar_vertex(i, n, series.values[i], spec.max_rank);
      if (!points.empty()) points += ' ';
      points += fixed2(p.x) + "," + fixed2(p.y);
    }
    const char* color = kSeriesColors[s];
    svg += "  <polygon class=\"series\" data-name=\"" + escape_xml(series.name) +
           "\" points=\"" + points + "\" fill=\"" + color +
           "\" fill-opacity=\"0.15\" stroke=\"" + color + "\" stroke-width=\"2\"" +
           (s == 1 ? " stroke-dasharray=\"6 4\"" : "") + "/>\n";
  }

  svg += "  <g class=\"legend\" font-size=\"11\" fill=\"#333333\">\n";
  for (std::size_t s = 0; s < spec.series.size(); ++s) {
    double y = 16.0 + 16.0 * static_cast<double>(s);
    const char* color = kSeriesColors[s];
    svg += "    <line x1=\"8.00\" y1=\"" + fixed2(y - 4.0) + "\" x2=\"28.00\" y2=\"" +
           fixed2(y - 4.0) + "\" stroke=\"" + color + "\" stroke-width=\"2\"" +
           (s == 1 ? " stroke-dasharray=\"6 4\"" : "") + "/>\n";
    svg += "    <text x=\"34.00\" y=\"" + fixed2(y) + "\">" + escape_xml(spec.series[s].name) +
           "</text>\n";
  }
  svg += "  </g>\n";
  svg += "</svg>\n";
  return svg;
}

ChartSpec chart_from_profiles(const Scheme& scheme,
                              const std::vector<std::pair<std::string, Profile>>& series,
                              std::string title) {
  ChartSpec spec;
  spec.title = std::move(title);
  spec.max_rank = 1;
  for (const auto& area : scheme.areas) {
    spec.axes.push_back(area.name);
    spec.max_rank = std::max(spec.max_rank, area.max_rank());
  }
  for (const auto& [name, profile] : series) {
    if (profile.scheme_id != scheme.id || profile.scheme_version != scheme.version) {
      throw Error(codes::kSchemeMismatch, "profile '" + name + "' belongs to " +
                                              profile.scheme_id + "@" + profile.scheme_version);
    }
    ChartSeries entry;
    entry.name = name;
    for (const auto& area : scheme.areas) {
      const AreaProfile* level = profile.find(area.id);
      if (!level) throw Error(codes::kInvalidSpec, "profile '" + name + "' lacks " + area.id);
      entry.values.push_back(level->effective_level);
    }
    spec.series.push_back(std::move(entry));
  }
  return spec;
}

}  // namespace crstip
