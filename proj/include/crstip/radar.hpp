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

/// \file
/// Radar (spider) charts of one or two profiles as SVG 1.1.
///
/// Geometry is fixed: a 400x400 canvas centred at (200,200) with radius 160.
/// Axis i of N points at 90 - i*360/N degrees, so the first axis is at the
/// top and the rest follow clockwise. A value v is drawn at radius
/// v/max_rank*160; the centre stands for rank 0. Coordinates are printed
/// with two decimals and the output has no timestamps, so equal specs give
/// equal bytes.

#ifndef CRSTIP_RADAR_HPP
#define CRSTIP_RADAR_HPP

#include <string>
#include <utility>
#include <vector>

#include "crstip/engine.hpp"
#include "crstip/scheme.hpp"

namespace crstip {

struct ChartSeries {
  std::string name;
  std::vector<int> values;  // one per axis

  friend bool operator==(const ChartSeries&, const ChartSeries&) = default;
};

struct ChartSpec {
  std::string title;               // optional
  std::vector<std::string> axes;   // display names, in order
  int max_rank = 4;
  std::vector<ChartSeries> series; // one or two; first solid, second dashed

  friend bool operator==(const ChartSpec&, const ChartSpec&) = default;
};

inline constexpr double kChartCanvas = 400.0;
inline constexpr double kChartCenter = 200.0;
inline constexpr double kChartRadius = 160.0;

struct ChartPoint {
  double x = 0.0;
  double y = 0.0;
};

/// Unrounded position of `value` on axis `axis` of `axis_count`.
ChartPoint radar_vertex(std::size_t axis, std::size_t axis_count, double value, int max_rank);

/// Throws `Error(INVALID_SPEC)` when the spec breaks its invariants.
void validate_chart(const ChartSpec& spec);

std::string render_radar(const ChartSpec& spec);

/// Axes from the scheme's area names, values from effective levels.
ChartSpec chart_from_profiles(const Scheme& scheme,
                              const std::vector<std::pair<std::string, Profile>>& series,
                              std::string title = {});

}  // namespace crstip

#endif  // CRSTIP_RADAR_HPP
