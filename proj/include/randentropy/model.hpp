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

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace randentropy {

// A community index. Stored 0-based; files and the CLI use 1..D.
struct CommunityLabel {
  int index = 0;

  static constexpr CommunityLabel from_one_based(int value) { return {value - 1}; }
  constexpr int one_based() const { return index + 1; }

  friend constexpr bool operator==(CommunityLabel, CommunityLabel) = default;
};

// Community membership X(t, c): rows are individuals, columns are time steps.
class CommunityTrajectories {
 public:
  // Labels must already be 0-based. Throws Error on any invariant violation.
  static CommunityTrajectories from_zero_based(Eigen::MatrixXi labels, int n_communities);

  int n_individuals() const { return static_cast<int>(labels_.rows()); }
  int n_times() const { return static_cast<int>(labels_.cols()); }
  int n_communities() const { return n_communities_; }

  int operator()(int individual, int time) const { return labels_(individual, time); }
  const Eigen::MatrixXi& labels() const { return labels_; }
  Eigen::MatrixXi one_based() const { return labels_.array() + 1; }

  friend bool operator==(const CommunityTrajectories& a, const CommunityTrajectories& b) {
    return a.n_communities_ == b.n_communities_ && a.labels_.rows() == b.labels_.rows() &&
           a.labels_.cols() == b.labels_.cols() && a.labels_ == b.labels_;
  }

 private:
  CommunityTrajectories(Eigen::MatrixXi labels, int n_communities)
      : labels_(std::move(labels)), n_communities_(n_communities) {}

  Eigen::MatrixXi labels_;
  int n_communities_;
};

// Validates a 1-based label matrix. Errors, checked in this order:
// EmptyMatrix, InvalidArgument (D < 2), TooFewTimeSteps, LabelOutOfRange.
CommunityTrajectories validate_trajectories(const Eigen::MatrixXi& raw, int n_communities);

// Attribute values s^c(t), aligned with a CommunityTrajectories matrix.
class AttributeObservations {
 public:
  const Eigen::MatrixXd& data() const { return data_; }
  double operator()(int individual, int time) const { return data_(individual, time); }

  friend AttributeObservations validate_attributes(const Eigen::MatrixXd& raw,
                                                   const CommunityTrajectories& trajectories);

 private:
  explicit AttributeObservations(Eigen::MatrixXd data) : data_(std::move(data)) {}
  Eigen::MatrixXd data_;
};

// Throws ShapeMismatch or InvalidAttribute (negative / non-finite entries).
AttributeObservations validate_attributes(const Eigen::MatrixXd& raw,
                                          const CommunityTrajectories& trajectories);

// Row-stochastic D x D matrix.
class TransitionMatrix {
 public:
  static constexpr double kRowSumTolerance = 1e-12;

  // Throws InvalidArgument unless square, D >= 1, entries in [0,1] and
  // every row sums to one within kRowSumTolerance.
  explicit TransitionMatrix(Eigen::MatrixXd p);

  static TransitionMatrix identity(int n_communities);

  int size() const { return static_cast<int>(p_.rows()); }
  double operator()(int from, int to) const { return p_(from, to); }
  const Eigen::MatrixXd& matrix() const { return p_; }

 private:
  Eigen::MatrixXd p_;
};

// Piecewise homogeneous chain. Segment l governs the transitions t -> t+1 for
// change_points[l-1] <= t < change_points[l]; the last segment is unbounded.
class SegmentedChain {
 public:
  explicit SegmentedChain(TransitionMatrix single);
  SegmentedChain(std::vector<int> change_points, std::vector<TransitionMatrix> matrices);

  const std::vector<int>& change_points() const { return change_points_; }
  const std::vector<TransitionMatrix>& matrices() const { return matrices_; }
  int n_communities() const { return matrices_.front().size(); }

  std::size_t segment_index(int t) const;
  const TransitionMatrix& matrix_at(int t) const { return matrices_[segment_index(t)]; }

 private:
  std::vector<int> change_points_;
  std::vector<TransitionMatrix> matrices_;
};

// Monte Carlo estimate of E[DT(h)], h = 1..M. Entry h-1 holds step h.
struct EntropyTrajectory {
  Eigen::VectorXd mean;
  Eigen::VectorXd sigma;
  int replications = 0;

  int horizon() const { return static_cast<int>(mean.size()); }
};

}  // namespace randentropy
