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

#pragma once

#include <string>
#include <vector>

#include "hybrid_magic/core.hpp"

namespace hybrid_magic::report {

// Column-major numeric table; the first column is the sweep variable.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void add(std::vector<double> row);
  std::vector<double> column(std::size_t j) const;
};

// Header row plus "%.12g" cells, '\n' line ends.
std::string to_csv(const Table& table);

// Writes to `path`.tmp and renames over `path`.
void write_atomic(const std::string& path, const std::string& content);

// Shortest "%.*g" text that parses back to the same double.
std::string format_number(double x);

struct Marker {
  double x;
  double y;
  std::string label;
};

// Line plot of columns ys against column x. A series with one point is
// drawn as a marker only.
std::string line_svg(const Table& table, std::size_t x, const std::vector<std::size_t>& ys,
                     const std::string& title, const std::vector<Marker>& markers = {});

// values(i, j) over xs[j] (horizontal) and ys[i] (vertical).
std::string heatmap_svg(const std::vector<double>& xs, const std::vector<double>& ys, const Matrix<double>& values,
                        const std::string& title, const std::vector<Marker>& markers = {});

// Orthographic view of values(i, j) at polar angle thetas[i], azimuth
// phis[j] on the unit sphere; only the visible hemisphere is drawn. Markers
// carry (theta, phi).
std::string bloch_svg(const std::vector<double>& thetas, const std::vector<double>& phis,
                      const Matrix<double>& values, const std::string& title,
                      const std::vector<Marker>& markers = {});

}  // namespace hybrid_magic::report
