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

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "randentropy/empirical.hpp"
#include "randentropy/model.hpp"

namespace randentropy {

enum class Orientation { individuals_by_time, time_by_individuals };

struct DatasetFile {
  std::filesystem::path path;
  // Selects a `# name: <matrix_name>` block. Files without named blocks hold
  // a single matrix, which is returned whatever the requested name.
  std::string matrix_name;
  Orientation orientation = Orientation::individuals_by_time;
};

struct NamedMatrix {
  std::optional<std::string> name;
  Eigen::MatrixXd values;
};

// Parses the CSV container: optional `# name: X` header lines start named
// blocks, blank lines separate blocks, other `#` lines are comments.
// Throws ParseError on ragged rows or non-numeric cells.
std::vector<NamedMatrix> parse_matrix_container(std::string_view text);

// Throws ReadError, ParseError, NameNotFound or EmptyMatrix.
Eigen::MatrixXd load_matrix(const DatasetFile& file);

// Integer check for label matrices; non-integral or negative cells are a
// ParseError.
Eigen::MatrixXi to_label_matrix(const Eigen::MatrixXd& values);

std::string format_matrix_container(const std::vector<NamedMatrix>& matrices);
void write_matrix_container(const std::vector<NamedMatrix>& matrices,
                            const std::filesystem::path& path);

// Shortest decimal that parses back to the same double.
std::string format_double(double value);

// Header `h,mean,sigma`, one row per forecast step.
void write_entropy_csv(const EntropyTrajectory& trajectory, const std::filesystem::path& path);
EntropyTrajectory read_entropy_csv(const std::filesystem::path& path);

// Header `position,loglik`.
void write_profile_csv(const std::vector<std::pair<int, double>>& profile,
                       const std::filesystem::path& path);

// Header `bin_left,bin_right,count`, one row per bin.
void write_histogram_csv(const EmpiricalDistribution& dist, const std::filesystem::path& path);

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

// Filled region between `lower` and `upper`.
struct PlotBand {
  std::string label;
  std::vector<double> x;
  std::vector<double> lower;
  std::vector<double> upper;
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<PlotSeries> series;
  std::optional<PlotBand> band;
};

// Self-contained SVG 1.1 line plot. Identical input gives identical bytes.
// Throws InvalidArgument for an empty plot or mismatched coordinate vectors.
std::string svg_document(const PlotSpec& plot);
void render_svg(const PlotSpec& plot, const std::filesystem::path& path);

// Writes text to a file, throwing WriteError on failure.
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace randentropy
