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

#include "randentropy/changepoint.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include <boost/math/distributions/chi_squared.hpp>

#include "parallel.hpp"
#include "randentropy/error.hpp"

namespace randentropy {

namespace {

constexpr int kMaxCachedTransitions = 2048;

// Segment log-likelihoods on [a, b). Every (a, b) pair is tabulated when more
// than one change point is searched and the table is small enough.
class SegmentScorer {
 public:
  SegmentScorer(const PrefixCounts& prefix, bool tabulate, int threads)
      : prefix_(prefix), stride_(prefix.n_transitions() + 1) {
    if (!tabulate || prefix.n_transitions() > kMaxCachedTransitions) return;
    table_.assign(static_cast<std::size_t>(stride_) * stride_, 0.0);
    detail::parallel_for(stride_, threads, [&](int begin, int end) {
      for (int a = begin; a < end; ++a)
        for (int b = a + 1; b < stride_; ++b)
          table_[static_cast<std::size_t>(a) * stride_ + b] = segment_loglik(prefix_.counts(a, b));
    });
  }

  double operator()(int a, int b) const {
    if (a >= b) return 0.0;
    if (!table_.empty()) return table_[static_cast<std::size_t>(a) * stride_ + b];
    return segment_loglik(prefix_.counts(a, b));
  }

 private:
  const PrefixCounts& prefix_;
  int stride_;
  std::vector<double> table_;
};

struct Candidate {
  double loglik = -std::numeric_limits<double>::infinity();
  std::vector<int> positions;
  bool found() const { return !positions.empty(); }
};

class Search {
 public:
  Search(const SegmentScorer& scorer, std::vector<TimeInterval> windows, int delta,
         int n_transitions)
      : scorer_(scorer), windows_(std::move(windows)), delta_(delta), end_(n_transitions) {}

  // Best completion for a fixed first position.
  Candidate best_with_first(int first) const {
    Candidate best;
    std::vector<int> positions(windows_.size());
    positions[0] = first;
    extend(positions, 1, best);
    return best;
  }

 private:
  void extend(std::vector<int>& positions, std::size_t depth, Candidate& best) const {
    if (depth == positions.size()) {
      double total = scorer_(0, positions[0]);
      for (std::size_t l = 1; l < positions.size(); ++l)
        total += scorer_(positions[l - 1], positions[l]);
      total += scorer_(positions.back(), end_);
      if (total > best.loglik) {
        best.loglik = total;
        best.positions = positions;
      }
      return;
    }
    const int lo = std::max(windows_[depth].start, positions[depth - 1] + delta_);
    for (int tau = lo; tau <= windows_[depth].stop; ++tau) {
      positions[depth] = tau;
      extend(positions, depth + 1, best);
    }
  }

  const SegmentScorer& scorer_;
  std::vector<TimeInterval> windows_;
  int delta_;
  int end_;
};

}  // namespace

double lambda_statistic(double loglik_piecewise, double loglik_homogeneous) {
  if (loglik_piecewise < loglik_homogeneous - 1e-9)
    throw Error(ErrorCode::InvalidArgument,
                "piecewise log-likelihood is below the homogeneous one");
  return std::max(0.0, 2.0 * (loglik_piecewise - loglik_homogeneous));
}

PrefixCounts::PrefixCounts(const CommunityTrajectories& trajectories) {
  const int d = trajectories.n_communities();
  const Eigen::MatrixXi& x = trajectories.labels();
  prefix_.reserve(trajectories.n_times());
  prefix_.push_back(CountMatrix::Zero(d, d));
  for (int t = 0; t + 1 < trajectories.n_times(); ++t) {
    CountMatrix next = prefix_.back();
    for (Eigen::Index c = 0; c < x.rows(); ++c) ++next(x(c, t), x(c, t + 1));
    prefix_.push_back(std::move(next));
  }
}

ChangePointResult detect_change_points(const CommunityTrajectories& trajectories,
                                       const ChangePointQuery& query, int threads) {
  if (query.k < 1 || query.k > 3)
    throw Error(ErrorCode::InvalidArgument,
                "number of change points must be 1, 2 or 3, got " + std::to_string(query.k));
  if (query.ranges.size() > static_cast<std::size_t>(query.k))
    throw Error(ErrorCode::InvalidArgument, "more search ranges than change points");
  if (query.delta && *query.delta < 1)
    throw Error(ErrorCode::InvalidArgument, "change-point spacing must be at least 1");

  const int n_transitions = trajectories.n_times() - 1;
  std::vector<TimeInterval> windows(query.k, TimeInterval{1, n_transitions - 1});
  for (std::size_t i = 0; i < query.ranges.size(); ++i) {
    if (!query.ranges[i]) continue;
    const TimeInterval w = *query.ranges[i];
    if (w.start < 1 || w.stop > n_transitions || w.start > w.stop)
      throw Error(ErrorCode::InvalidRange,
                  "range " + std::to_string(w.start) + ":" + std::to_string(w.stop) +
                      " for change point " + std::to_string(i + 1) + " must lie in [1, " +
                      std::to_string(n_transitions) + "]");
    windows[i] = w;
  }

  const PrefixCounts prefix(trajectories);
  const SegmentScorer scorer(prefix, query.k > 1, threads);
  const Search search(scorer, windows, query.delta.value_or(1), n_transitions);

  const int first_lo = windows[0].start;
  const int n_first = std::max(0, windows[0].stop - first_lo + 1);
  std::vector<Candidate> per_first(n_first);
  detail::parallel_for(n_first, threads, [&](int begin, int end) {
    for (int i = begin; i < end; ++i) per_first[i] = search.best_with_first(first_lo + i);
  });

  ChangePointResult result;
  Candidate best;
  for (int i = 0; i < n_first; ++i) {
    if (!per_first[i].found()) continue;
    result.likelihood_profile.emplace_back(first_lo + i, per_first[i].loglik);
    if (per_first[i].loglik > best.loglik) best = per_first[i];
  }
  if (!best.found())
    throw Error(ErrorCode::NoAdmissiblePosition,
                "search ranges and spacing leave no admissible change-point positions");

  result.positions = best.positions;
  result.loglik_piecewise = best.loglik;
  result.loglik_homogeneous = segment_loglik(prefix.counts(0, n_transitions));
  result.lambda_stat = lambda_statistic(result.loglik_piecewise, result.loglik_homogeneous);

  std::vector<int> bounds{0};
  bounds.insert(bounds.end(), best.positions.begin(), best.positions.end());
  bounds.push_back(n_transitions);
  for (std::size_t l = 0; l + 1 < bounds.size(); ++l)
    result.segment_matrices.push_back(
        estimate_transition_matrix(TransitionCounts{prefix.counts(bounds[l], bounds[l + 1])}));

  const int d = trajectories.n_communities();
  result.degrees_of_freedom = query.k * d * (d - 1);
  boost::math::chi_squared reference(result.degrees_of_freedom);
  result.approx_p_value = boost::math::cdf(boost::math::complement(reference, result.lambda_stat));
  return result;
}

}  // namespace randentropy
