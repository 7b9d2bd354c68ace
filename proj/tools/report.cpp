// Copyright 2026 The hybrid-magic Authors
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

#include "report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

namespace hybrid_magic::report {

void Table::add(std::vector<double> row) {
  if (row.size() != columns.size()) throw DomainError("table row has the wrong width");
  rows.push_back(std::move(row));
}

std::vector<double> Table::column(std::size_t j) const {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r.at(j));
  return out;
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  for (int prec = 6; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, x);
    if (std::strtod(buf, nullptr) == x) break;
  }
  return buf;
}

std::string to_csv(const Table& table) {
  std::ostringstream out;
  for (std::size_t j = 0; j < table.columns.size(); ++j) out << (j ? "," : "") << table.columns[j];
  out << '\n';
  char buf[40];
  for (const auto& row : table.rows) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      std::snprintf(buf, sizeof buf, "%.12g", row[j]);
      out << (j ? "," : "") << buf;
    }
    out << '\n';
  }
  return out.str();
}

void write_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw Error("cannot open " + tmp + " for writing");
    f << content;
    if (!f.flush()) throw Error("failed writing " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

namespace {

constexpr int kWidth = 640;
constexpr int kHeight = 420;
constexpr int kLeft = 70;
constexpr int kRight = 130;
constexpr int kTop = 40;
constexpr int kBottom = 50;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '&') out += "&amp;";
    else if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else out += c;
  }
  return out;
}

std::string fmt(double x, const char* f = "%.2f") {
  char buf[40];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

struct Range {
  double lo = 0.0;
  double hi = 1.0;

  void widen() {
    if (hi - lo < 1e-300) {
      lo -= 0.5;
      hi += 0.5;
    }
  }
  double map(double v, double a, double b) const { return a + (v - lo) / (hi - lo) * (b - a); }
};

Range range_of(const std::vector<double>& v) {
  Range r{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (double x : v) {
    if (!std::isfinite(x)) continue;
    r.lo = std::min(r.lo, x);
    r.hi = std::max(r.hi, x);
  }
  if (r.lo > r.hi) r = {0.0, 1.0};
  return r;
}

std::string header(const std::string& title) {
  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
    << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
    << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n"
    << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">"
    << escape(title) << "</text>\n";
  return s.str();
}

// Piecewise-linear viridis approximation, t in [0, 1].
std::string color(double t) {
  static const double stops[5][3] = {
      {68, 1, 84}, {59, 82, 139}, {33, 145, 140}, {94, 201, 98}, {253, 231, 37}};
  if (!std::isfinite(t)) t = 0.0;
  t = std::clamp(t, 0.0, 1.0) * 4.0;
  const int k = std::min(3, static_cast<int>(t));
  const double u = t - k;
  char buf[8];
  int c[3];
  for (int i = 0; i < 3; ++i) c[i] = static_cast<int>(std::lround(stops[k][i] + u * (stops[k + 1][i] - stops[k][i])));
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", c[0], c[1], c[2]);
  return buf;
}

std::string colorbar(double lo, double hi) {
  std::ostringstream s;
  const int x = kWidth - kRight + 40;
  const int h = kHeight - kTop - kBottom;
  for (int k = 0; k < 50; ++k) {
    s << "<rect x=\"" << x << "\" y=\"" << fmt(kTop + h * (49 - k) / 50.0) << "\" width=\"18\" height=\""
      << fmt(h / 50.0 + 0.5) << "\" fill=\"" << color(k / 49.0) << "\"/>\n";
  }
  s << "<text class=\"legend-max\" x=\"" << x + 22 << "\" y=\"" << kTop + 10
    << "\" font-family=\"sans-serif\" font-size=\"11\">" << format_number(hi) << "</text>\n";
  s << "<text class=\"legend-min\" x=\"" << x + 22 << "\" y=\"" << kTop + h
    << "\" font-family=\"sans-serif\" font-size=\"11\">" << format_number(lo) << "</text>\n";
  return s.str();
}

std::string axes(const Range& xr, const Range& yr, const std::string& xlabel) {
  std::ostringstream s;
  const int x0 = kLeft, x1 = kWidth - kRight, y0 = kHeight - kBottom, y1 = kTop;
  s << "<rect x=\"" << x0 << "\" y=\"" << y1 << "\" width=\"" << x1 - x0 << "\" height=\"" << y0 - y1
    << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double xv = xr.lo + (xr.hi - xr.lo) * k / 4.0;
    const double yv = yr.lo + (yr.hi - yr.lo) * k / 4.0;
    const double px = xr.map(xv, x0, x1);
    const double py = yr.map(yv, y0, y1);
    s << "<text x=\"" << fmt(px) << "\" y=\"" << y0 + 16
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << fmt(xv, "%.3g") << "</text>\n";
    s << "<text x=\"" << x0 - 6 << "\" y=\"" << fmt(py + 4)
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << fmt(yv, "%.3g") << "</text>\n";
  }
  s << "<text x=\"" << (x0 + x1) / 2 << "\" y=\"" << kHeight - 12
    << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << escape(xlabel) << "</text>\n";
  return s.str();
}

}  // namespace

std::string line_svg(const Table& table, std::size_t x, const std::vector<std::size_t>& ys, const std::string& title,
                     const std::vector<Marker>& markers) {
  if (table.rows.empty()) throw DomainError("cannot plot an empty table");
  const std::vector<double> xv = table.column(x);
  Range xr = range_of(xv);
  std::vector<double> all;
  for (std::size_t y : ys) {
    const auto c = table.column(y);
    all.insert(all.end(), c.begin(), c.end());
  }
  for (const auto& m : markers) all.push_back(m.y);
  Range yr = range_of(all);
  xr.widen();
  yr.widen();
  const double pad = 0.05 * (yr.hi - yr.lo);
  yr.lo -= pad;
  yr.hi += pad;
  std::ostringstream s;
  s << header(title) << axes(xr, yr, table.columns.at(x));
  const int x0 = kLeft, x1 = kWidth - kRight, y0 = kHeight - kBottom, y1 = kTop;
  for (std::size_t k = 0; k < ys.size(); ++k) {
    const char* c = kPalette[k % 8];
    const std::vector<double> yv = table.column(ys[k]);
    if (yv.size() == 1) {
      s << "<circle cx=\"" << fmt(xr.map(xv[0], x0, x1)) << "\" cy=\"" << fmt(yr.map(yv[0], y0, y1))
        << "\" r=\"3\" fill=\"" << c << "\"/>\n";
    } else {
      s << "<path fill=\"none\" stroke=\"" << c << "\" stroke-width=\"1.5\" d=\"";
      bool pen = false;
      for (std::size_t i = 0; i < yv.size(); ++i) {
        if (!std::isfinite(yv[i])) {
          pen = false;
          continue;
        }
        s << (pen ? " L" : (i ? " M" : "M")) << fmt(xr.map(xv[i], x0, x1)) << ',' << fmt(yr.map(yv[i], y0, y1));
        pen = true;
      }
      s << "\"/>\n";
    }
    s << "<line x1=\"" << x1 + 8 << "\" y1=\"" << y1 + 12 + 18 * k << "\" x2=\"" << x1 + 26 << "\" y2=\""
      << y1 + 12 + 18 * k << "\" stroke=\"" << c << "\" stroke-width=\"2\"/>\n"
      << "<text x=\"" << x1 + 30 << "\" y=\"" << y1 + 16 + 18 * k << "\" font-family=\"sans-serif\" font-size=\"11\">"
      << escape(table.columns.at(ys[k])) << "</text>\n";
  }
  for (const auto& m : markers) {
    s << "<circle cx=\"" << fmt(xr.map(m.x, x0, x1)) << "\" cy=\"" << fmt(yr.map(m.y, y0, y1))
      << "\" r=\"4\" fill=\"none\" stroke=\"black\"/>\n";
    if (!m.label.empty()) {
      s << "<text x=\"" << fmt(xr.map(m.x, x0, x1) + 6) << "\" y=\"" << fmt(yr.map(m.y, y0, y1) - 6)
        << "\" font-family=\"sans-serif\" font-size=\"10\">" << escape(m.label) << "</text>\n";
    }
  }
  s << "</svg>\n";
  return s.str();
}

std::string heatmap_svg(const std::vector<double>& xs, const std::vector<double>& ys, const Matrix<double>& values,
                        const std::string& title, const std::vector<Marker>& markers) {
  if (xs.empty() || ys.empty()) throw DomainError("cannot plot an empty heatmap");
  if (values.rows() != static_cast<Eigen::Index>(ys.size()) || values.cols() != static_cast<Eigen::Index>(xs.size())) {
    throw DomainError("heatmap values do not match the axes");
  }
  const double lo = values.minCoeff();
  const double hi = values.maxCoeff();
  Range xr = range_of(xs);
  Range yr = range_of(ys);
  xr.widen();
  yr.widen();
  const int x0 = kLeft, x1 = kWidth - kRight, y0 = kHeight - kBottom, y1 = kTop;
  const double cw = (x1 - x0) / static_cast<double>(xs.size());
  const double ch = (y0 - y1) / static_cast<double>(ys.size());
  std::ostringstream s;
  s << header(title);
  for (std::size_t i = 0; i < ys.size(); ++i) {
    for (std::size_t j = 0; j < xs.size(); ++j) {
      const double t = hi > lo ? (values(i, j) - lo) / (hi - lo) : 0.5;
      s << "<rect x=\"" << fmt(x0 + cw * j) << "\" y=\"" << fmt(y0 - ch * (i + 1)) << "\" width=\"" << fmt(cw + 0.3)
        << "\" height=\"" << fmt(ch + 0.3) << "\" fill=\"" << color(t) << "\"/>\n";
    }
  }
  s << axes(xr, yr, "") << colorbar(lo, hi);
  for (const auto& m : markers) {
    const double px = x0 + (m.x - xr.lo) / (xr.hi - xr.lo) * (x1 - x0 - cw) + cw / 2;
    const double py = y0 - (m.y - yr.lo) / (yr.hi - yr.lo) * (y0 - y1 - ch) - ch / 2;
    s << "<circle class=\"marker\" cx=\"" << fmt(px) << "\" cy=\"" << fmt(py)
      << "\" r=\"5\" fill=\"none\" stroke=\"red\" stroke-width=\"1.5\"/>\n";
    if (!m.label.empty()) {
      s << "<text x=\"" << fmt(px + 6) << "\" y=\"" << fmt(py - 6)
        << "\" font-family=\"sans-serif\" font-size=\"10\" fill=\"red\">" << escape(m.label) << "</text>\n";
    }
  }
  s << "</svg>\n";
  return s.str();
}

std::string bloch_svg(const std::vector<double>& thetas, const std::vector<double>& phis, const Matrix<double>& values,
                      const std::string& title, const std::vector<Marker>& markers) {
  if (thetas.empty() || phis.empty()) throw DomainError("cannot plot an empty sphere");
  if (values.rows() != static_cast<Eigen::Index>(thetas.size()) ||
      values.cols() != static_cast<Eigen::Index>(phis.size())) {
    throw DomainError("sphere values do not match the axes");
  }
  const double lo = values.minCoeff();
  const double hi = values.maxCoeff();
  // Viewer at azimuth 45 deg, elevation 20 deg.
  const double az = 0.7853981633974483;
  const double el = 0.3490658503988659;
  const double vx = std::cos(el) * std::cos(az), vy = std::cos(el) * std::sin(az), vz = std::sin(el);
  const double ux = -std::sin(az), uy = std::cos(az);                           // screen right
  const double wx = -std::sin(el) * std::cos(az), wy = -std::sin(el) * std::sin(az), wz = std::cos(el);  // up
  const double cx = (kWidth - kRight + kLeft) / 2.0, cy = (kHeight + kTop - kBottom) / 2.0;
  const double rad = 0.45 * std::min(kWidth - kLeft - kRight, kHeight - kTop - kBottom);
  auto project = [&](double th, double ph, double& px, double& py) {
    const double x = std::sin(th) * std::cos(ph), y = std::sin(th) * std::sin(ph), z = std::cos(th);
    px = cx + rad * (x * ux + y * uy);
    py = cy - rad * (x * wx + y * wy + z * wz);
    return x * vx + y * vy + z * vz;
  };
  const double dot = 1.2 * rad * std::max(3.14159 / thetas.size(), 6.28318 / phis.size()) / 2.0;
  std::ostringstream s;
  s << header(title);
  s << "<circle cx=\"" << fmt(cx) << "\" cy=\"" << fmt(cy) << "\" r=\"" << fmt(rad)
    << "\" fill=\"#eeeeee\" stroke=\"black\"/>\n";
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    for (std::size_t j = 0; j < phis.size(); ++j) {
      double px, py;
      if (project(thetas[i], phis[j], px, py) < 0.0) continue;
      const double t = hi > lo ? (values(i, j) - lo) / (hi - lo) : 0.5;
      s << "<circle cx=\"" << fmt(px) << "\" cy=\"" << fmt(py) << "\" r=\"" << fmt(std::max(dot, 1.0))
        << "\" fill=\"" << color(t) << "\"/>\n";
    }
  }
  for (const auto& m : markers) {
    double px, py;
    if (project(m.x, m.y, px, py) < 0.0) continue;
    s << "<circle class=\"marker\" cx=\"" << fmt(px) << "\" cy=\"" << fmt(py)
      << "\" r=\"5\" fill=\"none\" stroke=\"red\" stroke-width=\"1.5\"/>\n";
    if (!m.label.empty()) {
      s << "<text x=\"" << fmt(px + 6) << "\" y=\"" << fmt(py - 6)
        << "\" font-family=\"sans-serif\" font-size=\"10\" fill=\"red\">" << escape(m.label) << "</text>\n";
    }
  }
  s << colorbar(lo, hi) << "</svg>\n";
  return s.str();
}

}  // namespace hybrid_magic::report
