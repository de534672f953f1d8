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

#include "randentropy/model.hpp"

#include <cmath>
#include <string>

#include "randentropy/error.hpp"

namespace randentropy {

namespace {

void check_shape(Eigen::Index rows, Eigen::Index cols, int n_communities) {
  if (rows == 0 || cols == 0) throw Error(ErrorCode::EmptyMatrix, "community matrix is empty");
  if (n_communities < 2)
    throw Error(ErrorCode::InvalidArgument,
                "number of communities must be at least 2, got " + std::to_string(n_communities));
  if (cols < 2)
    throw Error(ErrorCode::TooFewTimeSteps,
                "need at least 2 time steps, got " + std::to_string(cols));
}

}  // namespace

CommunityTrajectories CommunityTrajectories::from_zero_based(Eigen::MatrixXi labels,
                                                             int n_communities) {
  check_shape(labels.rows(), labels.cols(), n_communities);
  for (Eigen::Index c = 0; c < labels.rows(); ++c)
    for (Eigen::Index t = 0; t < labels.cols(); ++t)
      if (labels(c, t) < 0 || labels(c, t) >= n_communities)
        throw Error(ErrorCode::LabelOutOfRange,
                    "label " + std::to_string(labels(c, t) + 1) + " at individual " +
                        std::to_string(c + 1) + ", time " + std::to_string(t) +
                        " is outside 1.." + std::to_string(n_communities));
  return CommunityTrajectories(std::move(labels), n_communities);
}

CommunityTrajectories validate_trajectories(const Eigen::MatrixXi& raw, int n_communities) {
  check_shape(raw.rows(), raw.cols(), n_communities);
  return CommunityTrajectories::from_zero_based(raw.array() - 1, n_communities);
}

AttributeObservations validate_attributes(const Eigen::MatrixXd& raw,
                                          const CommunityTrajectories& trajectories) {
  if (raw.rows() != trajectories.n_individuals() || raw.cols() != trajectories.n_times())
    throw Error(ErrorCode::ShapeMismatch,
                "attribute matrix is " + std::to_string(raw.rows()) + "x" +
                    std::to_string(raw.cols()) + " but community matrix is " +
                    std::to_string(trajectories.n_individuals()) + "x" +
                    std::to_string(trajectories.n_times()));
  for (Eigen::Index c = 0; c < raw.rows(); ++c)
    for (Eigen::Index t = 0; t < raw.cols(); ++t)
      if (!std::isfinite(raw(c, t)) || raw(c, t) < 0.0)
        throw Error(ErrorCode::InvalidAttribute,
                    "attribute at individual " + std::to_string(c + 1) + ", time " +
                        std::to_string(t) + " must be finite and non-negative");
  return AttributeObservations(raw);
}

TransitionMatrix::TransitionMatrix(Eigen::MatrixXd p) : p_(std::move(p)) {
  if (p_.rows() == 0 || p_.rows() != p_.cols())
    throw Error(ErrorCode::InvalidArgument, "transition matrix must be square and non-empty");
  for (Eigen::Index i = 0; i < p_.rows(); ++i) {
    for (Eigen::Index j = 0; j < p_.cols(); ++j)
      if (!(p_(i, j) >= 0.0 && p_(i, j) <= 1.0))
        throw Error(ErrorCode::InvalidArgument,
                    "transition probability (" + std::to_string(i + 1) + "," +
                        std::to_string(j + 1) + ") outside [0,1]");
    if (std::abs(p_.row(i).sum() - 1.0) > kRowSumTolerance)
      throw Error(ErrorCode::InvalidArgument,
                  "row " + std::to_string(i + 1) + " of transition matrix does not sum to 1");
  }
}

TransitionMatrix TransitionMatrix::identity(int n_communities) {
  return TransitionMatrix(Eigen::MatrixXd::Identity(n_communities, n_communities));
}

SegmentedChain::SegmentedChain(TransitionMatrix single) { matrices_.push_back(std::move(single)); }

SegmentedChain::SegmentedChain(std::vector<int> change_points,
                               std::vector<TransitionMatrix> matrices)
    : change_points_(std::move(change_points)), matrices_(std::move(matrices)) {
  if (matrices_.size() != change_points_.size() + 1)
    throw Error(ErrorCode::InvalidArgument, "need exactly one more matrix than change points");
  for (std::size_t i = 0; i < change_points_.size(); ++i) {
    if (change_points_[i] <= 0 || (i > 0 && change_points_[i] <= change_points_[i - 1]))
      throw Error(ErrorCode::InvalidArgument,
                  "change points must be positive and strictly increasing");
  }
  for (const auto& m : matrices_)
    if (m.size() != matrices_.front().size())
      throw Error(ErrorCode::InvalidArgument, "segment matrices differ in size");
}

std::size_t SegmentedChain::segment_index(int t) const {
  std::size_t l = 0;
  while (l < change_points_.size() && t >= change_points_[l]) ++l;
  return l;
}

}  // namespace randentropy
