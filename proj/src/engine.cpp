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

#include "randentropy/engine.hpp"

#include <random>
#include <span>
#include <string>

#include "parallel.hpp"
#include "randentropy/markov.hpp"

namespace randentropy {

namespace {

// Pairwise summation in a fixed order, independent of the thread layout.
double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 8) {
    double total = 0.0;
    for (double v : values) total += v;
    return total;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

void check_config(const SimulationConfig& config, std::size_t n_individuals) {
  if (config.horizon < 1) throw Error(ErrorCode::InvalidArgument, "horizon must be at least 1");
  if (config.replications < 1)
    throw Error(ErrorCode::InvalidArgument, "number of replications must be at least 1");
  if (n_individuals == 0) throw Error(ErrorCode::EmptyMatrix, "no individuals to simulate");
  validate_copula(config.copula, static_cast<int>(n_individuals));
}

}  // namespace

Eigen::VectorXd run_replication(const SegmentedChain& chain, const DistributionFamily& family,
                                const SimulationConfig& config,
                                const std::vector<CommunityLabel>& initial, RngStream& rng) {
  check_config(config, initial.size());
  const int n = static_cast<int>(initial.size());
  for (const CommunityLabel x : initial)
    if (x.index < 0 || x.index >= chain.n_communities())
      throw Error(ErrorCode::LabelOutOfRange,
                  "initial community " + std::to_string(x.one_based()) + " outside 1.." +
                      std::to_string(chain.n_communities()));

  std::vector<CommunityLabel> labels = initial;
  Eigen::VectorXd attributes(n);
  Eigen::VectorXd entropy(config.horizon);
  for (int h = 1; h <= config.horizon; ++h) {
    const TransitionMatrix& p = chain.matrix_at(h - 1);
    for (auto& label : labels) label = simulate_step(p, label, rng.uniform());

    ConditionalSampler sampler(config.copula);
    for (int b = 0; b < n; ++b) {
      const double u = sampler.next(rng.uniform());
      attributes(b) =
          quantile(family.resolve(labels[b], config.pooled_fallback), u, config.interpolation);
    }
    entropy(h - 1) = theil_entropy(shares_from_attributes(attributes));
  }
  return entropy;
}

std::uint64_t resolve_seed(const SimulationConfig& config) {
  if (config.seed) return *config.seed;
  std::random_device device;
  return (static_cast<std::uint64_t>(device()) << 32) ^ device();
}

EntropyTrajectory estimate_entropy(const SegmentedChain& chain, const DistributionFamily& family,
                                   const SimulationConfig& config,
                                   const std::vector<CommunityLabel>& initial) {
  check_config(config, initial.size());
  const std::uint64_t seed = resolve_seed(config);
  const int n = static_cast<int>(initial.size());
  const int replications = config.replications;

  Eigen::VectorXd stationary;
  if (config.initial_mode == InitialMode::stationary)
    stationary = stationary_distribution(chain.matrices().front()).pi;

  // Row l holds replication l; filled by index so scheduling cannot matter.
  Eigen::MatrixXd draws(replications, config.horizon);
  detail::parallel_for(replications, config.threads, [&](int begin, int end) {
    for (int l = begin; l < end; ++l) {
      RngStream rng(seed, static_cast<std::uint64_t>(l));
      const std::vector<CommunityLabel> start =
          config.initial_mode == InitialMode::stationary ? draw_labels(stationary, n, rng)
                                                         : initial;
      draws.row(l) = run_replication(chain, family, config, start, rng).transpose();
    }
  });

  EntropyTrajectory result;
  result.replications = replications;
  result.mean.resize(config.horizon);
  result.sigma.resize(config.horizon);
  std::vector<double> scratch(replications);
  for (int h = 0; h < config.horizon; ++h) {
    const std::span<const double> column(draws.col(h).data(), replications);
    const double mean = pairwise_sum(column) / replications;
    for (int l = 0; l < replications; ++l) scratch[l] = (column[l] - mean) * (column[l] - mean);
    result.mean(h) = mean;
    result.sigma(h) =
        replications > 1 ? std::sqrt(pairwise_sum(scratch) / (replications - 1)) : 0.0;
  }
  return result;
}

EntropyTrajectory change_log_base(const EntropyTrajectory& trajectory, double base) {
  if (!(base > 0.0) || base == 1.0 || !std::isfinite(base))
    throw Error(ErrorCode::InvalidArgument, "logarithm base must be positive and not 1");
  EntropyTrajectory converted = trajectory;
  const double scale = 1.0 / std::log(base);
  converted.mean *= scale;
  converted.sigma *= scale;
  return converted;
}

}  // namespace randentropy
