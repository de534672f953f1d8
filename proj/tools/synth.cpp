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

// Generates the bundled synthetic datasets under data/.
//
//   randentropy_synth phmc    -o data/synthetic_phmc.csv
//   randentropy_synth ratings -o data/synthetic_ratings.csv

#include <cmath>
#include <iostream>
#include <numbers>

#include <CLI11.hpp>

#include "randentropy/randentropy.hpp"

using namespace randentropy;

namespace {

double standard_normal(RngStream& rng) {
  const double r = std::sqrt(-2.0 * std::log(rng.uniform()));
  return r * std::cos(2.0 * std::numbers::pi * rng.uniform());
}

std::vector<CommunityLabel> uniform_start(int n, int d, RngStream& rng) {
  std::vector<CommunityLabel> start(n);
  for (auto& x : start) x.index = std::min(d - 1, static_cast<int>(rng.uniform() * d));
  return start;
}

// Two-state chain with a regime switch at t = 120.
std::vector<NamedMatrix> make_phmc(std::uint64_t seed) {
  Eigen::MatrixXd sticky(2, 2), flipping(2, 2);
  sticky << 0.95, 0.05, 0.05, 0.95;
  flipping << 0.05, 0.95, 0.95, 0.05;
  const SegmentedChain chain({120}, {TransitionMatrix(sticky), TransitionMatrix(flipping)});
  RngStream rng(seed);
  const auto x = simulate_phmc(chain, uniform_start(30, 2, rng), 199, rng);
  return {{std::string("ratings"), x.one_based().cast<double>()}};
}

// 26 individuals, 228 monthly observations over 4 rating classes, with a
// change point at t = 158 towards the riskier classes. Attributes are
// class-dependent spreads with a common monthly shock.
std::vector<NamedMatrix> make_ratings(std::uint64_t seed) {
  Eigen::MatrixXd calm(4, 4), stressed(4, 4);
  calm << 0.97, 0.03, 0.00, 0.00,
          0.02, 0.95, 0.03, 0.00,
          0.00, 0.04, 0.93, 0.03,
          0.00, 0.00, 0.05, 0.95;
  stressed << 0.90, 0.10, 0.00, 0.00,
              0.01, 0.88, 0.11, 0.00,
              0.00, 0.02, 0.88, 0.10,
              0.00, 0.00, 0.03, 0.97;
  const SegmentedChain chain({158}, {TransitionMatrix(calm), TransitionMatrix(stressed)});
  RngStream rng(seed);
  std::vector<CommunityLabel> start(26);
  for (int c = 0; c < 26; ++c) start[c].index = c < 12 ? 0 : (c < 20 ? 1 : 2);
  const auto x = simulate_phmc(chain, start, 227, rng);

  const double base[] = {0.4, 1.2, 2.6, 5.5};
  Eigen::MatrixXd spreads(26, 228);
  for (int t = 0; t < 228; ++t) {
    const double common = 0.25 * standard_normal(rng);
    for (int c = 0; c < 26; ++c) {
      const double value = base[x(c, t)] * std::exp(common + 0.3 * standard_normal(rng));
      spreads(c, t) = std::round(value * 100.0) / 100.0;
    }
  }
  return {{std::string("ratings"), x.one_based().cast<double>()},
          {std::string("interest_rates"), spreads}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generate synthetic datasets", "randentropy_synth"};
  std::string kind;
  std::string output;
  std::uint64_t seed = 20240101;
  app.add_option("kind", kind, "phmc or ratings")
      ->required()
      ->check(CLI::IsMember({"phmc", "ratings"}));
  app.add_option("-o,--output", output, "Output CSV")->required();
  app.add_option("--seed", seed, "Random seed")->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  try {
    write_matrix_container(kind == "phmc" ? make_phmc(seed) : make_ratings(seed), output);
  } catch (const Error& e) {
    std::cerr << "error[" << to_string(e.code()) << "]: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
