// Copyright 2026 The Randentropy Authors
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

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <regex>
#include <sstream>

#include "randentropy/error.hpp"
#include "randentropy/io.hpp"

using namespace randentropy;
namespace fs = std::filesystem;

namespace {

ErrorCode code_of(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::InvalidArgument;
}

class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = fs::temp_directory_path() / ("randentropy_io_" + std::to_string(rd()));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  fs::path operator/(const std::string& name) const { return path_ / name; }

 private:
  fs::path path_;
};

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const fs::path& path, const std::string& text) {
  std::ofstream(path, std::ios::binary) << text;
}

std::size_t count_of(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

// Minimal XML well-formedness check: balanced, properly nested elements,
// quoted attributes, known entities, a single root.
bool well_formed_xml(const std::string& doc) {
  std::vector<std::string> stack;
  int roots = 0;
  std::size_t i = 0;
  const std::regex open_tag(R"(<([A-Za-z_][\w:.-]*)((?:\s+[A-Za-z_][\w:.-]*\s*=\s*(?:"[^"<]*"|'[^'<]*'))*)\s*(/?)>)");
  const std::regex close_tag(R"(</([A-Za-z_][\w:.-]*)\s*>)");
  const std::regex entity(R"(&(amp|lt|gt|quot|apos|#\d+|#x[0-9a-fA-F]+);)");
  while (i < doc.size()) {
    if (doc[i] == '<') {
      std::smatch m;
      const std::string rest = doc.substr(i);
      if (rest.starts_with("<?")) {
        const auto end = doc.find("?>", i);
        if (end == std::string::npos || i != 0) return false;
        i = end + 2;
      } else if (rest.starts_with("<!--")) {
        const auto end = doc.find("-->", i);
        if (end == std::string::npos) return false;
        i = end + 3;
      } else if (std::regex_search(rest, m, close_tag, std::regex_constants::match_continuous)) {
        if (stack.empty() || stack.back() != m[1]) return false;
        stack.pop_back();
        i += m.length(0);
      } else if (std::regex_search(rest, m, open_tag, std::regex_constants::match_continuous)) {
        if (stack.empty() && ++roots > 1) return false;
        const std::string attrs = m[2];
        for (std::size_t a = attrs.find('&'); a != std::string::npos; a = attrs.find('&', a + 1)) {
          std::smatch em;
          const std::string tail = attrs.substr(a);
          if (!std::regex_search(tail, em, entity, std::regex_constants::match_continuous))
            return false;
        }
        if (m[3] != "/") stack.push_back(m[1]);
        i += m.length(0);
      } else {
        return false;
      }
    } else {
      if (doc[i] == '&') {
        std::smatch em;
        const std::string tail = doc.substr(i, 16);
        if (!std::regex_search(tail, em, entity, std::regex_constants::match_continuous))
          return false;
      } else if (stack.empty() && !std::isspace(static_cast<unsigned char>(doc[i]))) {
        return false;
      }
      ++i;
    }
  }
  return stack.empty() && roots == 1;
}

PlotSpec two_point_plot() {
  PlotSpec plot;
  plot.title = "t";
  plot.series.push_back({"mean", {1, 2}, {0.1, 0.2}});
  return plot;
}

}  // namespace

TEST_CASE("unnamed csv loads as a single matrix") {
  TempDir dir;
  spit(dir / "m.csv", "1,2\n2,1\n");
  const Eigen::MatrixXd m = load_matrix({dir / "m.csv", "ratings"});
  CHECK(m == (Eigen::Matrix2d() << 1, 2, 2, 1).finished());
  const Eigen::MatrixXd t =
      load_matrix({dir / "m.csv", "anything", Orientation::time_by_individuals});
  CHECK(t == m.transpose());
}

TEST_CASE("named blocks are retrievable by name") {
  TempDir dir;
  spit(dir / "both.csv",
       "# a comment\n# name: ratings\n1,2,3\n2,2,1\n\n# name: interest_rates\n0.5,1.25,2\n3,4,5e-1\n");
  CHECK(load_matrix({dir / "both.csv", "ratings"}) ==
        (Eigen::Matrix<double, 2, 3>() << 1, 2, 3, 2, 2, 1).finished());
  CHECK(load_matrix({dir / "both.csv", "interest_rates"}) ==
        (Eigen::Matrix<double, 2, 3>() << 0.5, 1.25, 2, 3, 4, 0.5).finished());
  CHECK(code_of([&] { load_matrix({dir / "both.csv", "missing"}); }) == ErrorCode::NameNotFound);
}

TEST_CASE("malformed input raises typed errors") {
  CHECK(code_of([] { parse_matrix_container("1,2\n3\n"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { parse_matrix_container("1,x\n3,4\n"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { parse_matrix_container("1,2,\n3,4,\n"); }) == ErrorCode::ParseError);
  TempDir dir;
  const auto missing = dir / "nope.csv";
  try {
    load_matrix({missing, "ratings"});
    FAIL("missing file accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ReadError);
    CHECK(std::string(e.what()).find(missing.string()) != std::string::npos);
  }
  spit(dir / "empty.csv", "# only a comment\n");
  CHECK(code_of([&] { load_matrix({dir / "empty.csv", "x"}); }) == ErrorCode::EmptyMatrix);
}

TEST_CASE("label matrices must be non-negative integers") {
  CHECK(to_label_matrix((Eigen::Matrix2d() << 1, 2, 3, 4).finished()) ==
        (Eigen::Matrix2i() << 1, 2, 3, 4).finished());
  CHECK(code_of([] { to_label_matrix((Eigen::Matrix2d() << 1, 2.5, 3, 4).finished()); }) ==
        ErrorCode::ParseError);
  CHECK(code_of([] { to_label_matrix((Eigen::Matrix2d() << 1, -2, 3, 4).finished()); }) ==
        ErrorCode::ParseError);
}

TEST_CASE("container format round trips") {
  std::mt19937 gen(6);
  std::uniform_real_distribution<> unif(-1e6, 1e6);
  std::vector<NamedMatrix> matrices;
  for (int k = 0; k < 3; ++k) {
    Eigen::MatrixXd m(1 + k, 4 - k);
    for (auto& v : m.reshaped()) v = unif(gen) * std::pow(10.0, k * 5 - 8);
    matrices.push_back({"block" + std::to_string(k), m});
  }
  const auto parsed = parse_matrix_container(format_matrix_container(matrices));
  REQUIRE(parsed.size() == 3);
  for (int k = 0; k < 3; ++k) {
    CHECK(parsed[k].name == matrices[k].name);
    CHECK(parsed[k].values == matrices[k].values);
  }
}

TEST_CASE("entropy csv") {
  TempDir dir;
  EntropyTrajectory one{Eigen::VectorXd::Constant(1, 0.5), Eigen::VectorXd::Constant(1, 0.1), 1};
  write_entropy_csv(one, dir / "e.csv");
  CHECK(slurp(dir / "e.csv") == "h,mean,sigma\n1,0.5,0.1\n");

  std::mt19937 gen(7);
  std::uniform_real_distribution<> unif(0.0, 1.0);
  EntropyTrajectory t{Eigen::VectorXd(36), Eigen::VectorXd(36), 1000};
  for (int h = 0; h < 36; ++h) {
    t.mean(h) = unif(gen) / 3.0;
    t.sigma(h) = unif(gen) * 1e-7;
  }
  t.mean(0) = 0.0;
  write_entropy_csv(t, dir / "t.csv");
  const auto back = read_entropy_csv(dir / "t.csv");
  CHECK(back.mean == t.mean);
  CHECK(back.sigma == t.sigma);

  CHECK(code_of([&] { write_entropy_csv(t, dir / "no_dir" / "x.csv"); }) == ErrorCode::WriteError);
}

TEST_CASE("shortest round-trip doubles") {
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(0.0) == "0");
  std::mt19937_64 gen(8);
  for (int i = 0; i < 10000; ++i) {
    double v;
    const std::uint64_t bits = gen();
    std::memcpy(&v, &bits, sizeof v);
    if (!std::isfinite(v)) continue;
    CHECK(std::strtod(format_double(v).c_str(), nullptr) == v);
  }
}

TEST_CASE("profile and histogram csv") {
  TempDir dir;
  write_profile_csv({{1, -3.5}, {2, -2.25}}, dir / "p.csv");
  CHECK(slurp(dir / "p.csv") == "position,loglik\n1,-3.5\n2,-2.25\n");
  write_histogram_csv(EmpiricalDistribution(0.25, 0.0, {1, 0, 2}), dir / "h.csv");
  CHECK(slurp(dir / "h.csv") == "bin_left,bin_right,count\n0,0.25,1\n0.25,0.5,0\n0.5,0.75,2\n");
}

TEST_CASE("svg output") {
  const std::string single = svg_document(two_point_plot());
  CHECK(count_of(single, "<polyline") == 1);
  CHECK(count_of(single, "<polygon") == 0);
  CHECK(well_formed_xml(single));

  PlotSpec banded = two_point_plot();
  banded.title = "Entropy <mean> & band";
  banded.band = PlotBand{"mean +/- sigma", {1, 2}, {0.0, 0.1}, {0.2, 0.3}};
  const std::string with_band = svg_document(banded);
  CHECK(count_of(with_band, "<polyline") == 1);
  CHECK(count_of(with_band, "<polygon") == 1);
  CHECK(well_formed_xml(with_band));
  CHECK(with_band == svg_document(banded));

  TempDir dir;
  render_svg(banded, dir / "a.svg");
  render_svg(banded, dir / "b.svg");
  CHECK(slurp(dir / "a.svg") == slurp(dir / "b.svg"));
  CHECK(slurp(dir / "a.svg") == with_band);

  CHECK(code_of([] { svg_document(PlotSpec{}); }) == ErrorCode::InvalidArgument);
  PlotSpec ragged = two_point_plot();
  ragged.series[0].y.pop_back();
  CHECK(code_of([&] { svg_document(ragged); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("svg handles flat and single-point series") {
  PlotSpec flat;
  flat.series.push_back({"flat", {0, 1, 2}, {0, 0, 0}});
  flat.series.push_back({"dot", {5}, {1}});
  const std::string doc = svg_document(flat);
  CHECK(well_formed_xml(doc));
  CHECK(doc.find("nan") == std::string::npos);
  CHECK(doc.find("inf") == std::string::npos);
  CHECK(count_of(doc, "<polyline") == 2);
}

TEST_CASE("well-formedness checker rejects broken documents") {
  CHECK_FALSE(well_formed_xml("<svg><g></svg></g>"));
  CHECK_FALSE(well_formed_xml("<svg a=1></svg>"));
  CHECK_FALSE(well_formed_xml("<svg>a & b</svg>"));
  CHECK_FALSE(well_formed_xml("<svg></svg><svg></svg>"));
  CHECK(well_formed_xml("<?xml version=\"1.0\"?>\n<svg x=\"1\"><g/><!-- c --></svg>\n"));
}
