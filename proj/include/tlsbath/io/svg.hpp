// Copyright 2026 The tlsbath Authors
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

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "tlsbath/core/error.hpp"

namespace tlsbath::io::svg {

enum class Style { points, line, step };

struct Series {
  std::string label;
  std::vector<double> x, y;
  Style style = Style::points;
  std::string color = "#1f77b4";
};

// Vertical band spanning [lo, hi] on the x axis.
struct Band {
  double lo = 0.0, hi = 0.0;
  std::string color = "#f2c94c";
  std::string label;
};

struct Plot {
  std::string title, xlabel, ylabel;
  bool log_x = false, log_y = false;
  std::vector<Series> series;
  std::vector<Band> bands;
  int width = 640, height = 420;
};

namespace detail {

inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

inline std::string px(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

inline std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Axis {
  double lo = 0.0, hi = 1.0;
  bool log = false;

  double t(double v) const {
    const double a = log ? std::log10(lo) : lo, b = log ? std::log10(hi) : hi;
    const double x = log ? std::log10(v) : v;
    return (x - a) / (b - a);
  }

  std::vector<double> ticks() const {
    std::vector<double> out;
    if (log) {
      for (double e = std::floor(std::log10(lo)); e <= std::ceil(std::log10(hi)); e += 1.0) {
        const double v = std::pow(10.0, e);
        if (v >= lo * (1 - 1e-9) && v <= hi * (1 + 1e-9)) out.push_back(v);
      }
      return out;
    }
    const double raw = (hi - lo) / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double r = raw / mag;
    const double step = (r < 1.5 ? 1.0 : r < 3.5 ? 2.0 : r < 7.5 ? 5.0 : 10.0) * mag;
    for (double v = std::ceil(lo / step) * step; v <= hi + 1e-9 * step; v += step)
      out.push_back(std::abs(v) < 1e-12 * step ? 0.0 : v);
    return out;
  }
};

inline Axis make_axis(std::vector<double> v, bool log) {
  if (log) v.erase(std::remove_if(v.begin(), v.end(), [](double x) { return !(x > 0.0); }), v.end());
  v.erase(std::remove_if(v.begin(), v.end(), [](double x) { return !std::isfinite(x); }), v.end());
  if (v.empty()) return {log ? 1.0 : 0.0, log ? 10.0 : 1.0, log};
  auto [mn, mx] = std::minmax_element(v.begin(), v.end());
  double lo = *mn, hi = *mx;
  if (log) {
    lo = std::pow(10.0, std::floor(std::log10(lo)));
    hi = std::pow(10.0, std::ceil(std::log10(hi)));
    if (hi <= lo) hi = lo * 10.0;
  } else {
    const double pad = hi > lo ? 0.05 * (hi - lo) : std::max(1.0, std::abs(lo) * 0.1);
    lo -= pad;
    hi += pad;
  }
  return {lo, hi, log};
}

}  // namespace detail

inline std::string render(const Plot& p) {
  if (p.width < 200 || p.height < 150) throw InvalidArgument("svg: plot too small");
  std::vector<double> xs, ys;
  for (const auto& s : p.series) {
    if (s.x.size() != s.y.size()) throw InvalidArgument("svg: series '" + s.label + "' length mismatch");
    xs.insert(xs.end(), s.x.begin(), s.x.end());
    ys.insert(ys.end(), s.y.begin(), s.y.end());
  }
  for (const auto& b : p.bands) {
    xs.push_back(b.lo);
    xs.push_back(b.hi);
  }
  const auto ax = detail::make_axis(xs, p.log_x), ay = detail::make_axis(ys, p.log_y);
  const double left = 70, right = 20, top = 40, bottom = 55;
  const double w = p.width - left - right, h = p.height - top - bottom;
  const auto X = [&](double v) { return left + w * ax.t(v); };
  const auto Y = [&](double v) { return top + h * (1.0 - ay.t(v)); };
  const auto visible = [&](double x, double y) {
    return std::isfinite(x) && std::isfinite(y) && (!p.log_x || x > 0) && (!p.log_y || y > 0);
  };
  using detail::px;

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << p.width << "\" height=\"" << p.height
     << "\" viewBox=\"0 0 " << p.width << ' ' << p.height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << px(p.width / 2.0) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
     << detail::escape(p.title) << "</text>\n";
  os << "<defs><clipPath id=\"area\"><rect x=\"" << px(left) << "\" y=\"" << px(top) << "\" width=\"" << px(w)
     << "\" height=\"" << px(h) << "\"/></clipPath></defs>\n";

  for (const auto& b : p.bands) {
    const double x0 = X(std::max(b.lo, ax.lo)), x1 = X(std::min(b.hi, ax.hi));
    os << "<rect class=\"band\" x=\"" << px(x0) << "\" y=\"" << px(top) << "\" width=\"" << px(std::max(0.0, x1 - x0))
       << "\" height=\"" << px(h) << "\" fill=\"" << b.color << "\" fill-opacity=\"0.35\">";
    if (!b.label.empty()) os << "<title>" << detail::escape(b.label) << "</title>";
    os << "</rect>\n";
  }

  os << "<g stroke=\"#ccc\" stroke-width=\"0.5\">\n";
  for (double t : ax.ticks())
    os << "<line x1=\"" << px(X(t)) << "\" y1=\"" << px(top) << "\" x2=\"" << px(X(t)) << "\" y2=\"" << px(top + h)
       << "\"/>\n";
  for (double t : ay.ticks())
    os << "<line x1=\"" << px(left) << "\" y1=\"" << px(Y(t)) << "\" x2=\"" << px(left + w) << "\" y2=\"" << px(Y(t))
       << "\"/>\n";
  os << "</g>\n";
  for (double t : ax.ticks())
    os << "<text x=\"" << px(X(t)) << "\" y=\"" << px(top + h + 16) << "\" text-anchor=\"middle\">" << detail::fmt(t)
       << "</text>\n";
  for (double t : ay.ticks())
    os << "<text x=\"" << px(left - 6) << "\" y=\"" << px(Y(t) + 4) << "\" text-anchor=\"end\">" << detail::fmt(t)
       << "</text>\n";
  os << "<rect x=\"" << px(left) << "\" y=\"" << px(top) << "\" width=\"" << px(w) << "\" height=\"" << px(h)
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  os << "<text x=\"" << px(left + w / 2) << "\" y=\"" << px(p.height - 12.0) << "\" text-anchor=\"middle\">"
     << detail::escape(p.xlabel) << "</text>\n";
  os << "<text transform=\"translate(16," << px(top + h / 2) << ") rotate(-90)\" text-anchor=\"middle\">"
     << detail::escape(p.ylabel) << "</text>\n";

  os << "<g clip-path=\"url(#area)\">\n";
  for (const auto& s : p.series) {
    if (s.style == Style::points) {
      for (std::size_t i = 0; i < s.x.size(); ++i)
        if (visible(s.x[i], s.y[i]))
          os << "<circle cx=\"" << px(X(s.x[i])) << "\" cy=\"" << px(Y(s.y[i])) << "\" r=\"3\" fill=\"" << s.color
             << "\"/>\n";
      continue;
    }
    os << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\" points=\"";
    bool first = true;
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!visible(s.x[i], s.y[i])) continue;
      if (s.style == Style::step && !first && i > 0 && visible(s.x[i - 1], s.y[i - 1]))
        os << px(X(s.x[i])) << ',' << px(Y(s.y[i - 1])) << ' ';
      os << px(X(s.x[i])) << ',' << px(Y(s.y[i])) << ' ';
      first = false;
    }
    os << "\"/>\n";
  }
  os << "</g>\n";

  double ly = top + 14;
  for (const auto& s : p.series) {
    if (s.label.empty()) continue;
    os << "<rect x=\"" << px(left + w - 150) << "\" y=\"" << px(ly - 9) << "\" width=\"10\" height=\"10\" fill=\""
       << s.color << "\"/><text x=\"" << px(left + w - 135) << "\" y=\"" << px(ly) << "\">"
       << detail::escape(s.label) << "</text>\n";
    ly += 16;
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace tlsbath::io::svg
