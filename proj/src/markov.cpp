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

#include "randentropy/markov.hpp"

#include <cmath>
#include <string>

#include "randentropy/error.hpp"

namespace randentropy {

TransitionCounts count_transitions(const CommunityTrajectories& trajectories, int t_start,
                                   int t_end) {
  if (t_start < 0 || t_start >= t_end || t_end > trajectories.n_times() - 1)
    throw Error(ErrorCode::InvalidRange, "transition range [" + std::to_string(t_start) + "," +
                                             std::to_string(t_end) + ") invalid for T=" +
                                             std::to_string(trajectories.n_times()));
  const int d = trajectories.n_communities();
  TransitionCounts counts{CountMatrix::Zero(d, d)};
  const Eigen::MatrixXi& x = trajectories.labels();
  for (int t = t_start; t < t_end; ++t)
    for (Eigen::Index c = 0; c < x.rows(); ++c) ++counts.n(x(c, t), x(c, t + 1));
  return counts;
}

TransitionMatrix estimate_transition_matrix(const TransitionCounts& counts) {
  const int d = counts.size();
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(d, d);
  const auto totals = counts.row_totals();
  for (int i = 0; i < d; ++i) {
    if (totals(i) == 0) {
      p(i, i) = 1.0;
      continue;
    }
    p.row(i) = counts.n.row(i).cast<double>() / static_cast<double>(totals(i));
  }
  return TransitionMatrix(std::move(p));
}

StationaryDistribution stationary_distribution(const TransitionMatrix& p) {
  const int d = p.size();
  Eigen::MatrixXd system(d + 1, d);
  system.topRows(d) = p.matrix().transpose() - Eigen::MatrixXd::Identity(d, d);
  system.row(d).setOnes();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(d + 1);
  rhs(d) = 1.0;

  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(system);
  StationaryDistribution result;
  result.pi = cod.solve(rhs);
  result.unique = cod.rank() == d;

  for (int i = 0; i < d; ++i) {
    if (!std::isfinite(result.pi(i)) || result.pi(i) < -1e-14)
      throw Error(ErrorCode::SolveFailed, "stationary solve produced a non-probability vector");
    if (result.pi(i) < 0.0) result.pi(i) = 0.0;
  }
  const double total = result.pi.sum();
  if (!(total > 0.0)) throw Error(ErrorCode::SolveFailed, "stationary solve produced zero mass");
  result.pi /= total;
  result.residual =
      (result.pi.transpose() * p.matrix() - result.pi.transpose()).lpNorm<Eigen::Infinity>();
  return result;
}

CommunityTrajectories simulate_phmc(const SegmentedChain& chain,
                                    const std::vector<CommunityLabel>& initial, int horizon,
                                    RngStream& rng) {
  if (initial.empty()) throw Error(ErrorCode::EmptyMatrix, "no individuals to simulate");
  if (horizon < 1) throw Error(ErrorCode::InvalidArgument, "horizon must be at least 1");
  const auto n = static_cast<Eigen::Index>(initial.size());
  Eigen::MatrixXi x(n, horizon + 1);
  for (Eigen::Index c = 0; c < n; ++c) {
    if (initial[c].index < 0 || initial[c].index >= chain.n_communities())
      throw Error(ErrorCode::LabelOutOfRange,
                  "initial community " + std::to_string(initial[c].one_based()) +
                      " outside 1.." + std::to_string(chain.n_communities()));
    x(c, 0) = initial[c].index;
  }
  for (int h = 1; h <= horizon; ++h) {
    const TransitionMatrix& p = chain.matrix_at(h - 1);
    for (Eigen::Index c = 0; c < n; ++c)
      x(c, h) = simulate_step(p, {x(c, h - 1)}, rng.uniform()).index;
  }
  return CommunityTrajectories::from_zero_based(std::move(x), chain.n_communities());
}

std::vector<CommunityLabel> draw_labels(const Eigen::VectorXd& distribution, int count,
                                        RngStream& rng) {
  std::vector<CommunityLabel> labels(count);
  for (auto& label : labels) label.index = sample_categorical(distribution, rng.uniform());
  return labels;
}

}  // namespace randentropy
