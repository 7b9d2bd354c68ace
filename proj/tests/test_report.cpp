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

#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "report.hpp"

namespace hr = hybrid_magic::report;
namespace fs = std::filesystem;

namespace {

int count(const std::string& text, const std::string& needle) {
  int n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

std::string legend(const std::string& svg, const std::string& cls) {
  std::smatch m;
  std::regex re("class=\"" + cls + "\"[^>]*>([^<]*)<");
  return std::regex_search(svg, m, re) ? m[1].str() : "";
}

}  // namespace

TEST(Report, CsvFormat) {
  hr::Table t{{"beta", "magic"}, {}};
  t.add({0.5, 1.0 / 3.0});
  t.add({1.0, -2e-9});
  EXPECT_EQ(hr::to_csv(t), "beta,magic\n0.5,0.333333333333\n1,-2e-09\n");
  EXPECT_THROW(t.add({1.0}), hybrid_magic::DomainError);
  EXPECT_EQ(t.column(1).size(), 2u);
}

TEST(Report, FormatNumberRoundTrips) {
  for (double x : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0}) {
    EXPECT_EQ(std::strtod(hr::format_number(x).c_str(), nullptr), x);
  }
  EXPECT_EQ(hr::format_number(0.25), "0.25");
}

TEST(Report, AtomicWrite) {
  const fs::path dir = fs::temp_directory_path() / "hm_report_test";
  fs::create_directories(dir);
  const std::string path = (dir / "out.csv").string();
  hr::write_atomic(path, "a\n");
  hr::write_atomic(path, "b\n");
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  EXPECT_EQ(ss.str(), "b\n");
  EXPECT_FALSE(fs::exists(path + ".tmp"));
  fs::remove_all(dir);
}

TEST(Report, LineSvgIsDeterministic) {
  hr::Table t{{"t", "m"}, {}};
  for (int i = 0; i < 20; ++i) t.add({0.1 * i, std::sin(0.1 * i)});
  const std::string a = hr::line_svg(t, 0, {1}, "magic <t>");
  EXPECT_EQ(a, hr::line_svg(t, 0, {1}, "magic <t>"));
  EXPECT_EQ(count(a, "<path"), 1);
  EXPECT_NE(a.find("&lt;t&gt;"), std::string::npos);
  EXPECT_EQ(a.find("<t>"), std::string::npos);
}

TEST(Report, SinglePointDrawnAsMarker) {
  hr::Table t{{"x", "y"}, {}};
  t.add({1.0, 2.0});
  const std::string s = hr::line_svg(t, 0, {1}, "one");
  EXPECT_EQ(count(s, "<path"), 0);
  EXPECT_GE(count(s, "<circle"), 1);
  EXPECT_EQ(s.find("nan"), std::string::npos);
}

TEST(Report, ConstantHeatmapLegend) {
  hybrid_magic::Matrix<double> v = hybrid_magic::Matrix<double>::Constant(3, 4, 0.7);
  const std::string s = hr::heatmap_svg({0, 1, 2, 3}, {0, 1, 2}, v, "flat");
  EXPECT_EQ(legend(s, "legend-min"), legend(s, "legend-max"));
  EXPECT_EQ(legend(s, "legend-min"), "0.7");
  EXPECT_EQ(s.find("nan"), std::string::npos);
  EXPECT_THROW(hr::heatmap_svg({0, 1}, {0}, v, "bad"), hybrid_magic::DomainError);
}

TEST(Report, HeatmapMarkers) {
  hybrid_magic::Matrix<double> v(2, 2);
  v << 0, 1, 2, 3;
  const std::vector<hr::Marker> ts{{0.785, 0.955, "T"}, {2.356, 0.955, "T"}};
  const std::string s = hr::heatmap_svg({0, 3}, {0, 3}, v, "bloch", ts);
  EXPECT_EQ(count(s, "class=\"marker\""), 2);
  const std::string sphere = hr::bloch_svg({0.5, 1.0}, {0.0, 1.0}, v, "sphere", ts);
  EXPECT_EQ(sphere, hr::bloch_svg({0.5, 1.0}, {0.0, 1.0}, v, "sphere", ts));
  EXPECT_NE(sphere.find("width=\"640\""), std::string::npos);
}
