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
#include <vector>

#include <Eigen/Dense>

#include "randentropy/model.hpp"
#include "randentropy/rng.hpp"

namespace randentropy {

using CountMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

// Sufficient statistic of the multinomial transition likelihood: n(i, j) is
// the number of observed i -> j moves.
struct TransitionCounts {
  CountMatrix n;

  Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1> row_totals() const { return n.rowwise().sum(); }
  int size() const { return static_cast<int>(n.rows()); }

  TransitionCounts& operator+=(const TransitionCounts& other) {
    n += other.n;
    return *this;
  }
  friend TransitionCounts operator+(TransitionCounts a, const TransitionCounts& b) { return a += b; }
  friend bool operator==(const TransitionCounts& a, const TransitionCounts& b) { return a.n == b.n; }
};

// Pooled over all individuals: counts transitions t -> t+1 for t_start <= t < t_end.
// Requires 0 <= t_start < t_end <= T-1, otherwise throws InvalidRange.
TransitionCounts count_transitions(const CommunityTrajectories& trajectories, int t_start,
                                   int t_end);

// Row-normalized counts. Rows that were never left keep all mass on the diagonal.
TransitionMatrix estimate_transition_matrix(const TransitionCounts& counts);

struct StationaryDistribution {
  Eigen::VectorXd pi;
  // ||pi P - pi||_inf of the returned vector
  double residual = 0.0;
  // False when the chain admits more than one stationary law.
  bool unique = true;
};

// Least-squares solve of [P^T - I; 1^T] pi = [0; 1] with a minimum-norm
// fallback for reducible chains. Throws SolveFailed if the result is not a
// probability vector.
StationaryDistribution stationary_distribution(const TransitionMatrix& p);

// Inverse-CDF draw from a discrete law: the smallest j whose cumulative mass
// exceeds u. Falls back to the last positive entry when rounding leaves the
// total mass below u.
template <typename Derived>
int sample_categorical(const Eigen::DenseBase<Derived>& probabilities, double u) {
  typename Derived::Scalar cumulative(0);
  int last_positive = 0;
  for (Eigen::Index j = 0; j < probabilities.size(); ++j) {
    if (probabilities(j) > 0) last_positive = static_cast<int>(j);
    cumulative += probabilities(j);
    if (cumulative > u) return static_cast<int>(j);
  }
  return last_positive;
}

inline CommunityLabel simulate_step(const TransitionMatrix& p, CommunityLabel current, double u) {
  return {sample_categorical(p.matrix().row(current.index), u)};
}

// Simulates N x (horizon + 1) trajectories; column 0 is `initial` and column h
// is produced by the segment matrix active at transition time h - 1.
CommunityTrajectories simulate_phmc(const SegmentedChain& chain,
                                    const std::vector<CommunityLabel>& initial, int horizon,
                                    RngStream& rng);

// i.i.d. draws from a distribution over communities (e.g. a stationary law).
std::vector<CommunityLabel> draw_labels(const Eigen::VectorXd& distribution, int count,
                                        RngStream& rng);

}  // namespace randentropy
