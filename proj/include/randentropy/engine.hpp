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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "randentropy/copula.hpp"
#include "randentropy/empirical.hpp"
#include "randentropy/error.hpp"
#include "randentropy/model.hpp"
#include "randentropy/rng.hpp"

namespace randentropy {

// Theil index sum_i p_i ln(N p_i) of a probability vector, with 0 ln 0 = 0.
// The result is clamped to its exact range [0, ln N] to absorb rounding.
template <typename Derived>
typename Derived::Scalar theil_index(const Eigen::MatrixBase<Derived>& p) {
  using Scalar = typename Derived::Scalar;
  using std::log;
  const Scalar n = static_cast<Scalar>(p.size());
  // Equal entries are the uniform distribution; skip the rounding noise of
  // ln(N * (1/N)).
  if (p.size() == 0 || p.maxCoeff() == p.minCoeff()) return Scalar(0);
  Scalar total(0);
  for (Eigen::Index i = 0; i < p.size(); ++i)
    if (p(i) > Scalar(0)) total += p(i) * log(n * p(i));
  return std::clamp(total, Scalar(0), log(n));
}

// Attribute shares sh^c = S^c / sum_d S^d.
class ShareVector {
 public:
  static constexpr double kSumTolerance = 1e-12;

  // Normalizes non-negative attributes. The first share is set to
  // 1 - sum of the others so the vector sums to one; equal attributes give
  // exactly 1/N each.
  // Throws AllZeroAttributes, or InvalidAttribute for negative entries.
  template <typename Derived>
  static ShareVector from_attributes(const Eigen::MatrixBase<Derived>& attributes);

  const Eigen::VectorXd& values() const { return shares_; }
  int size() const { return static_cast<int>(shares_.size()); }
  double operator[](int c) const { return shares_(c); }

 private:
  explicit ShareVector(Eigen::VectorXd shares) : shares_(std::move(shares)) {}
  Eigen::VectorXd shares_;
};

template <typename Derived>
ShareVector ShareVector::from_attributes(const Eigen::MatrixBase<Derived>& attributes) {
  if (attributes.size() == 0) throw Error(ErrorCode::EmptyMatrix, "no attributes to share");
  double total = 0.0;
  for (Eigen::Index c = 0; c < attributes.size(); ++c) {
    const double a = static_cast<double>(attributes(c));
    if (!(a >= 0.0) || !std::isfinite(a))
      throw Error(ErrorCode::InvalidAttribute, "attributes must be finite and non-negative");
    total += a;
  }
  if (!(total > 0.0)) throw Error(ErrorCode::AllZeroAttributes, "all attributes are zero");
  const auto n = attributes.size();
  if (attributes.maxCoeff() == attributes.minCoeff())
    return ShareVector(Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n)));
  Eigen::VectorXd shares = attributes.template cast<double>() / total;
  if (shares.size() > 1) shares(0) = std::max(0.0, 1.0 - shares.tail(shares.size() - 1).sum());
  return ShareVector(std::move(shares));
}

template <typename Derived>
ShareVector shares_from_attributes(const Eigen::MatrixBase<Derived>& attributes) {
  return ShareVector::from_attributes(attributes);
}

inline double theil_entropy(const ShareVector& shares) { return theil_index(shares.values()); }

enum class InitialMode { last_observed, stationary };

struct SimulationConfig {
  int horizon = 1;        // M
  int replications = 1;   // L
  std::optional<std::uint64_t> seed;
  InitialMode initial_mode = InitialMode::last_observed;
  CopulaSpec copula;
  double bin_width = 1.0;
  Interpolation interpolation = Interpolation::linear;
  // Substitute the pooled distribution for communities without observations.
  bool pooled_fallback = false;
  int threads = 1;
};

// One run of the Monte Carlo recursion: DT(1..M) for a single realization.
Eigen::VectorXd run_replication(const SegmentedChain& chain, const DistributionFamily& family,
                                const SimulationConfig& config,
                                const std::vector<CommunityLabel>& initial, RngStream& rng);

// Averages L replications. Replication l uses RngStream(seed, l); in
// stationary mode it first draws every individual's start from the
// stationary law of the first segment matrix, and `initial` only fixes N.
// Output is bit-identical for any thread count.
EntropyTrajectory estimate_entropy(const SegmentedChain& chain, const DistributionFamily& family,
                                   const SimulationConfig& config,
                                   const std::vector<CommunityLabel>& initial);

// Seed actually used for a config: the configured one, else a fresh random one.
std::uint64_t resolve_seed(const SimulationConfig& config);

// Re-expresses an entropy trajectory in another logarithm base.
EntropyTrajectory change_log_base(const EntropyTrajectory& trajectory, double base);

}  // namespace randentropy
