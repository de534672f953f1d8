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

#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "randentropy/markov.hpp"
#include "randentropy/model.hpp"

namespace randentropy {

// Closed interval of admissible change-point times.
struct TimeInterval {
  int start = 0;
  int stop = 0;
};

struct ChangePointQuery {
  int k = 1;
  // Optional search window per change point; missing or empty entries use
  // the default window [1, T-2].
  std::vector<std::optional<TimeInterval>> ranges;
  // Minimum spacing between consecutive change points.
  std::optional<int> delta;
};

struct ChangePointResult {
  std::vector<int> positions;
  std::vector<TransitionMatrix> segment_matrices;
  double loglik_piecewise = 0.0;
  double loglik_homogeneous = 0.0;
  double lambda_stat = 0.0;
  // Chi-square reference with k * D * (D - 1) degrees of freedom. This is an
  // approximation; the exact null law of the statistic is not chi-square.
  int degrees_of_freedom = 0;
  double approx_p_value = 1.0;
  // (first change point, best log-likelihood over the remaining points).
  // For k = 1 this is the plain likelihood curve.
  std::vector<std::pair<int, double>> likelihood_profile;
};

// Profiled multinomial log-likelihood sum n_ij * ln(n_ij / n_i).
template <typename Derived>
double segment_loglik(const Eigen::MatrixBase<Derived>& counts) {
  double total = 0.0;
  for (Eigen::Index i = 0; i < counts.rows(); ++i) {
    const double row_total = static_cast<double>(counts.row(i).sum());
    if (row_total <= 0.0) continue;
    for (Eigen::Index j = 0; j < counts.cols(); ++j) {
      const double n = static_cast<double>(counts(i, j));
      if (n > 0.0) total += n * std::log(n / row_total);
    }
  }
  return total;
}

inline double segment_loglik(const TransitionCounts& counts) { return segment_loglik(counts.n); }

// Deviance form 2 * (piecewise - homogeneous), clamped at zero.
double lambda_statistic(double loglik_piecewise, double loglik_homogeneous);

// Cumulative transition counts: counts on [a, b) are prefix(b) - prefix(a).
class PrefixCounts {
 public:
  explicit PrefixCounts(const CommunityTrajectories& trajectories);

  int n_transitions() const { return static_cast<int>(prefix_.size()) - 1; }
  CountMatrix counts(int t_start, int t_end) const { return prefix_[t_end] - prefix_[t_start]; }

 private:
  std::vector<CountMatrix> prefix_;
};

// Exhaustive maximization of the segmented log-likelihood over all admissible
// position vectors. Ties go to the lexicographically earliest vector. The
// search over the first position is split across `threads` workers; the
// result does not depend on the split.
ChangePointResult detect_change_points(const CommunityTrajectories& trajectories,
                                       const ChangePointQuery& query, int threads = 1);

}  // namespace randentropy
