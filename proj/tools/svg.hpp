// Copyright 2026 The Hardy Lab Authors
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

#pragma once

#include <string>
#include <vector>

namespace hardy_lab::svg {

// Fixed 800x600 canvas; all numbers are printed with fixed precision so the
// output is byte-identical for identical input.
inline constexpr int kWidth = 800;
inline constexpr int kHeight = 600;

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  bool markers = false;  // draw points instead of a polyline
};

struct Axes {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = false;
};

std::string line_chart(const Axes& axes, const std::vector<Series>& series);

// One bar per label; `overlay` (same length, may be empty) is drawn as dots.
std::string bar_chart(const Axes& axes, const std::vector<std::string>& labels,
                      const std::vector<double>& values, const std::vector<double>& overlay);

}  // namespace hardy_lab::svg
