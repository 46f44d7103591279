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

#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace hardy_lab::svg {

namespace {

constexpr double kLeft = 90, kRight = 170, kTop = 50, kBottom = 70;
constexpr double kPlotW = kWidth - kLeft - kRight;
constexpr double kPlotH = kHeight - kTop - kBottom;

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string fx(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// Maps data to pixels, in log10 space when requested.
struct Scale {
  double lo = 0, hi = 1;
  bool log = false;
  double pixel_lo = 0, pixel_hi = 1;

  double transform(double v) const { return log ? std::log10(v) : v; }
  double operator()(double v) const {
    const double t = (transform(v) - lo) / (hi - lo);
    return pixel_lo + t * (pixel_hi - pixel_lo);
  }
};

Scale make_scale(std::vector<double> values, bool log, double pixel_lo, double pixel_hi) {
  Scale s;
  s.log = log;
  s.pixel_lo = pixel_lo;
  s.pixel_hi = pixel_hi;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (double v : values) {
    if (!std::isfinite(v) || (log && v <= 0)) continue;
    lo = std::min(lo, s.transform(v));
    hi = std::max(hi, s.transform(v));
  }
  if (!std::isfinite(lo)) lo = 0, hi = 1;
  if (hi - lo < 1e-12) {
    lo -= 0.5;
    hi += 0.5;
  }
  if (!log) {
    const double pad = 0.05 * (hi - lo);
    if (lo != 0.0) lo -= pad;
    hi += pad;
  }
  s.lo = lo;
  s.hi = hi;
  return s;
}

void header(std::ostringstream& os, const Axes& axes) {
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
     << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << fx(kLeft + kPlotW / 2) << "\" y=\"30\" text-anchor=\"middle\" "
     << "font-family=\"sans-serif\" font-size=\"18\">" << escape(axes.title) << "</text>\n";
  os << "<text x=\"" << fx(kLeft + kPlotW / 2) << "\" y=\"" << kHeight - 20
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">"
     << escape(axes.x_label) << "</text>\n";
  os << "<text x=\"20\" y=\"" << fx(kTop + kPlotH / 2) << "\" text-anchor=\"middle\" "
     << "font-family=\"sans-serif\" font-size=\"14\" transform=\"rotate(-90 20 "
     << fx(kTop + kPlotH / 2) << ")\">" << escape(axes.y_label) << "</text>\n";
  os << "<rect x=\"" << fx(kLeft) << "\" y=\"" << fx(kTop) << "\" width=\"" << fx(kPlotW)
     << "\" height=\"" << fx(kPlotH) << "\" fill=\"none\" stroke=\"black\"/>\n";
}

void ticks(std::ostringstream& os, const Scale& s, bool horizontal) {
  constexpr int kTicks = 5;
  for (int i = 0; i <= kTicks; ++i) {
    const double t = s.lo + (s.hi - s.lo) * i / kTicks;
    const double value = s.log ? std::pow(10.0, t) : t;
    const double px = s(value);
    if (horizontal) {
      os << "<line x1=\"" << fx(px) << "\" y1=\"" << fx(kTop + kPlotH) << "\" x2=\"" << fx(px)
         << "\" y2=\"" << fx(kTop + kPlotH + 6) << "\" stroke=\"black\"/>\n";
      os << "<text x=\"" << fx(px) << "\" y=\"" << fx(kTop + kPlotH + 22)
         << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
         << tick_label(value) << "</text>\n";
    } else {
      os << "<line x1=\"" << fx(kLeft - 6) << "\" y1=\"" << fx(px) << "\" x2=\"" << fx(kLeft)
         << "\" y2=\"" << fx(px) << "\" stroke=\"black\"/>\n";
      os << "<text x=\"" << fx(kLeft - 10) << "\" y=\"" << fx(px + 4)
         << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">"
         << tick_label(value) << "</text>\n";
    }
  }
}

}  // namespace

std::string line_chart(const Axes& axes, const std::vector<Series>& series) {
  std::vector<double> xs, ys;
  for (const auto& s : series) {
    xs.insert(xs.end(), s.x.begin(), s.x.end());
    ys.insert(ys.end(), s.y.begin(), s.y.end());
  }
  const Scale sx = make_scale(xs, axes.log_x, kLeft, kLeft + kPlotW);
  const Scale sy = make_scale(ys, axes.log_y, kTop + kPlotH, kTop);

  std::ostringstream os;
  header(os, axes);
  ticks(os, sx, true);
  ticks(os, sy, false);
  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto& s = series[i];
    const char* color = kPalette[i % std::size(kPalette)];
    std::ostringstream pts;
    bool any = false;
    for (std::size_t j = 0; j < s.x.size() && j < s.y.size(); ++j) {
      if (!std::isfinite(s.x[j]) || !std::isfinite(s.y[j])) continue;
      if ((axes.log_x && s.x[j] <= 0) || (axes.log_y && s.y[j] <= 0)) continue;
      if (s.markers) {
        os << "<circle cx=\"" << fx(sx(s.x[j])) << "\" cy=\"" << fx(sy(s.y[j]))
           << "\" r=\"3\" fill=\"" << color << "\"/>\n";
      } else {
        pts << (any ? " " : "") << fx(sx(s.x[j])) << ',' << fx(sy(s.y[j]));
        any = true;
      }
    }
    if (any) {
      os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\""
         << pts.str() << "\"/>\n";
    }
    const double ly = kTop + 20 + 20.0 * static_cast<double>(i);
    os << "<rect x=\"" << fx(kLeft + kPlotW + 15) << "\" y=\"" << fx(ly - 9)
       << "\" width=\"12\" height=\"12\" fill=\"" << color << "\"/>\n";
    os << "<text x=\"" << fx(kLeft + kPlotW + 32) << "\" y=\"" << fx(ly + 2)
       << "\" font-family=\"sans-serif\" font-size=\"12\">" << escape(s.label) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string bar_chart(const Axes& axes, const std::vector<std::string>& labels,
                      const std::vector<double>& values, const std::vector<double>& overlay) {
  std::vector<double> ys(values);
  ys.insert(ys.end(), overlay.begin(), overlay.end());
  ys.push_back(0.0);
  const Scale sy = make_scale(ys, false, kTop + kPlotH, kTop);

  std::ostringstream os;
  header(os, axes);
  ticks(os, sy, false);
  const double slot = labels.empty() ? kPlotW : kPlotW / static_cast<double>(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const double x0 = kLeft + slot * static_cast<double>(i);
    const double v = i < values.size() ? values[i] : 0.0;
    const double top = sy(std::max(v, 0.0));
    const double base = sy(0.0);
    os << "<rect x=\"" << fx(x0 + 0.15 * slot) << "\" y=\"" << fx(top) << "\" width=\""
       << fx(0.7 * slot) << "\" height=\"" << fx(base - top) << "\" fill=\"" << kPalette[0]
       << "\"/>\n";
    os << "<text x=\"" << fx(x0 + slot / 2) << "\" y=\"" << fx(top - 5)
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
       << tick_label(v) << "</text>\n";
    os << "<text x=\"" << fx(x0 + slot / 2) << "\" y=\"" << fx(kTop + kPlotH + 22)
       << "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"12\">"
       << escape(labels[i]) << "</text>\n";
    if (i < overlay.size()) {
      os << "<circle cx=\"" << fx(x0 + slot / 2) << "\" cy=\"" << fx(sy(overlay[i]))
         << "\" r=\"4\" fill=\"" << kPalette[1] << "\"/>\n";
    }
  }
  os << "<rect x=\"" << fx(kLeft + kPlotW + 15) << "\" y=\"" << fx(kTop + 11)
     << "\" width=\"12\" height=\"12\" fill=\"" << kPalette[0] << "\"/>\n";
  os << "<text x=\"" << fx(kLeft + kPlotW + 32) << "\" y=\"" << fx(kTop + 22)
     << "\" font-family=\"sans-serif\" font-size=\"12\">exact</text>\n";
  if (!overlay.empty()) {
    os << "<circle cx=\"" << fx(kLeft + kPlotW + 21) << "\" cy=\"" << fx(kTop + 37)
       << "\" r=\"4\" fill=\"" << kPalette[1] << "\"/>\n";
    os << "<text x=\"" << fx(kLeft + kPlotW + 32) << "\" y=\"" << fx(kTop + 42)
       << "\" font-family=\"sans-serif\" font-size=\"12\">sampled</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace hardy_lab::svg
