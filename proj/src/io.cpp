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

#include "randentropy/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "randentropy/error.hpp"

namespace randentropy {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string parse_error_at(std::size_t line, const std::string& what) {
  return "line " + std::to_string(line) + ": " + what;
}

double parse_cell(std::string_view cell, std::size_t line) {
  cell = trim(cell);
  if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
  double value = 0.0;
  const auto [end, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (cell.empty() || ec != std::errc() || end != cell.data() + cell.size() ||
      !std::isfinite(value))
    throw Error(ErrorCode::ParseError,
                parse_error_at(line, "non-numeric cell '" + std::string(cell) + "'"));
  return value;
}

struct BlockBuilder {
  std::optional<std::string> name;
  std::vector<std::vector<double>> rows;
  std::size_t first_line = 0;

  NamedMatrix finish() const {
    NamedMatrix m{name, Eigen::MatrixXd(rows.size(), rows.empty() ? 0 : rows.front().size())};
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t c = 0; c < rows[r].size(); ++c) m.values(r, c) = rows[r][c];
    return m;
  }
};

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ReadError, "cannot read " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

}  // namespace

std::vector<NamedMatrix> parse_matrix_container(std::string_view text) {
  std::vector<NamedMatrix> blocks;
  BlockBuilder current;
  bool open = false;
  auto close = [&] {
    if (open && !current.rows.empty()) blocks.push_back(current.finish());
    current = BlockBuilder{};
    open = false;
  };

  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto newline = text.find('\n');
    const std::string_view raw = text.substr(0, newline);
    text = newline == std::string_view::npos ? std::string_view{} : text.substr(newline + 1);
    ++line_no;
    const std::string_view line = trim(raw);

    if (line.empty()) {
      close();
      continue;
    }
    if (line.front() == '#') {
      const std::string_view body = trim(line.substr(1));
      if (body.substr(0, 5) == "name:") {
        close();
        current.name = std::string(trim(body.substr(5)));
        current.first_line = line_no;
        open = true;
      }
      continue;
    }
    if (!open) {
      current.first_line = line_no;
      open = true;
    }
    std::vector<double> row;
    std::string_view rest = line;
    while (true) {
      const auto comma = rest.find(',');
      row.push_back(parse_cell(rest.substr(0, comma), line_no));
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
    if (!current.rows.empty() && row.size() != current.rows.front().size())
      throw Error(ErrorCode::ParseError,
                  parse_error_at(line_no, "expected " + std::to_string(current.rows.front().size()) +
                                              " columns, found " + std::to_string(row.size())));
    current.rows.push_back(std::move(row));
  }
  close();
  return blocks;
}

Eigen::MatrixXd load_matrix(const DatasetFile& file) {
  std::vector<NamedMatrix> blocks;
  try {
    blocks = parse_matrix_container(read_file(file.path));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::ParseError) throw;
    throw Error(ErrorCode::ParseError, file.path.string() + ": " + e.what());
  }
  if (blocks.empty()) throw Error(ErrorCode::EmptyMatrix, file.path.string() + " holds no matrix");

  const bool has_names = std::any_of(blocks.begin(), blocks.end(),
                                     [](const NamedMatrix& m) { return m.name.has_value(); });
  const Eigen::MatrixXd* selected = nullptr;
  if (has_names) {
    for (const auto& block : blocks)
      if (block.name == file.matrix_name) {
        selected = &block.values;
        break;
      }
    if (!selected)
      throw Error(ErrorCode::NameNotFound,
                  "matrix '" + file.matrix_name + "' not found in " + file.path.string());
  } else {
    if (blocks.size() > 1)
      throw Error(ErrorCode::ParseError,
                  file.path.string() + " holds several unnamed matrices; add '# name:' headers");
    selected = &blocks.front().values;
  }
  if (file.orientation == Orientation::time_by_individuals) return selected->transpose();
  return *selected;
}

Eigen::MatrixXi to_label_matrix(const Eigen::MatrixXd& values) {
  Eigen::MatrixXi labels(values.rows(), values.cols());
  for (Eigen::Index r = 0; r < values.rows(); ++r)
    for (Eigen::Index c = 0; c < values.cols(); ++c) {
      const double v = values(r, c);
      if (!(v >= 0.0) || v != std::floor(v) || v > 1e9)
        throw Error(ErrorCode::ParseError, "community label at row " + std::to_string(r + 1) +
                                               ", column " + std::to_string(c + 1) +
                                               " is not a non-negative integer");
      labels(r, c) = static_cast<int>(v);
    }
  return labels;
}

std::string format_double(double value) {
  char buffer[64];
  const auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  return std::string(buffer, end);
}

std::string format_matrix_container(const std::vector<NamedMatrix>& matrices) {
  std::string out;
  for (std::size_t k = 0; k < matrices.size(); ++k) {
    if (k > 0) out += '\n';
    if (matrices[k].name) out += "# name: " + *matrices[k].name + '\n';
    const Eigen::MatrixXd& m = matrices[k].values;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      for (Eigen::Index c = 0; c < m.cols(); ++c) {
        if (c > 0) out += ',';
        out += format_double(m(r, c));
      }
      out += '\n';
    }
  }
  return out;
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::WriteError, "cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.close();
  if (!out) throw Error(ErrorCode::WriteError, "failed writing " + path.string());
}

void write_matrix_container(const std::vector<NamedMatrix>& matrices,
                            const std::filesystem::path& path) {
  write_text_file(path, format_matrix_container(matrices));
}

void write_entropy_csv(const EntropyTrajectory& trajectory, const std::filesystem::path& path) {
  std::string out = "h,mean,sigma\n";
  for (int h = 0; h < trajectory.horizon(); ++h)
    out += std::to_string(h + 1) + ',' + format_double(trajectory.mean(h)) + ',' +
           format_double(trajectory.sigma(h)) + '\n';
  write_text_file(path, out);
}

EntropyTrajectory read_entropy_csv(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  const auto header_end = text.find('\n');
  if (header_end == std::string::npos || trim(std::string_view(text).substr(0, header_end)) != "h,mean,sigma")
    throw Error(ErrorCode::ParseError, path.string() + ": missing 'h,mean,sigma' header");
  const auto blocks = parse_matrix_container(std::string_view(text).substr(header_end + 1));
  if (blocks.size() != 1 || blocks.front().values.cols() != 3)
    throw Error(ErrorCode::ParseError, path.string() + ": expected three columns");
  const Eigen::MatrixXd& rows = blocks.front().values;
  EntropyTrajectory trajectory;
  trajectory.mean = rows.col(1);
  trajectory.sigma = rows.col(2);
  return trajectory;
}

void write_profile_csv(const std::vector<std::pair<int, double>>& profile,
                       const std::filesystem::path& path) {
  std::string out = "position,loglik\n";
  for (const auto& [position, loglik] : profile)
    out += std::to_string(position) + ',' + format_double(loglik) + '\n';
  write_text_file(path, out);
}

void write_histogram_csv(const EmpiricalDistribution& dist, const std::filesystem::path& path) {
  std::string out = "bin_left,bin_right,count\n";
  for (int m = 0; m < dist.n_bins(); ++m)
    out += format_double(dist.bin_left(m)) + ',' + format_double(dist.bin_right(m)) + ',' +
           std::to_string(dist.bin_counts()[m]) + '\n';
  write_text_file(path, out);
}

}  // namespace randentropy
