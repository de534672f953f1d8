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

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace randentropy::cli {

struct RunArgs {
  std::string community_file;
  std::string community_name = "ratings";
  std::string attribute_file;
  std::string attribute_name = "interest_rates";
  double bin_width = 0.0;
  int horizon = 36;
  int iterations = 1000;
  bool stationary = false;
  std::optional<std::uint64_t> seed;
  std::string copula = "independence";
  std::optional<double> theta;
  std::string output = ".";
  bool verbose = false;
  std::optional<int> threads;
  bool transpose = false;
  std::optional<int> communities;
  std::vector<int> change_points;
  std::string interpolation = "linear";
  bool pooled_fallback = false;
  std::optional<double> log_base;
};

struct ChangePointArgs {
  std::string community_file;
  std::string community_name = "ratings";
  int num_cps = 1;
  std::string output = ".";
  std::vector<std::string> ranges;  // "start:stop" per change point, "" if unset
  std::optional<int> delta;
  std::optional<int> threads;
  bool transpose = false;
  std::optional<int> communities;
  bool verbose = false;
};

// Both return a process exit code; every failure writes exactly one
// "error[<Code>]: ..." line to `err`.
int cmd_run(const RunArgs& args, std::ostream& out, std::ostream& err);
int cmd_changepoint(const ChangePointArgs& args, std::ostream& out, std::ostream& err);

// Full command line including the program name in args[0].
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace randentropy::cli
