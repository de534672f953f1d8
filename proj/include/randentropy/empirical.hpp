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
#include <optional>
#include <span>
#include <vector>

#include "randentropy/model.hpp"

namespace randentropy {

// How probability mass is spread inside a bin. `linear` gives a continuous,
// piecewise-linear CDF; `step` puts each bin's mass on its midpoint.
enum class Interpolation { linear, step };

// Histogram of attribute values with bins [origin + m*w, origin + (m+1)*w).
class EmpiricalDistribution {
 public:
  // Throws InvalidArgument on a non-positive width, an empty count vector or
  // a zero total.
  EmpiricalDistribution(double bin_width, double origin, std::vector<std::int64_t> bin_counts);

  // Samples below `origin` or non-finite are rejected with InvalidAttribute.
  static EmpiricalDistribution from_samples(std::span<const double> samples, double bin_width,
                                            double origin = 0.0);

  double bin_width() const { return bin_width_; }
  double origin() const { return origin_; }
  const std::vector<std::int64_t>& bin_counts() const { return bin_counts_; }
  std::int64_t total() const { return cumulative_.back(); }
  int n_bins() const { return static_cast<int>(bin_counts_.size()); }

  double bin_left(int m) const { return origin_ + m * bin_width_; }
  double bin_right(int m) const { return origin_ + (m + 1) * bin_width_; }
  // Count of all bins up to and including m.
  std::int64_t cumulative(int m) const { return m < 0 ? 0 : cumulative_[m]; }

 private:
  double bin_width_;
  double origin_;
  std::vector<std::int64_t> bin_counts_;
  std::vector<std::int64_t> cumulative_;
};

double cdf(const EmpiricalDistribution& dist, double s,
           Interpolation mode = Interpolation::linear);

// Generalized inverse inf{s : F(s) >= u}. u = 0 maps to the left edge of the
// first occupied bin and u = 1 to the right edge of the last one (linear
// mode). Throws InvalidArgument for u outside [0, 1].
double quantile(const EmpiricalDistribution& dist, double u,
                Interpolation mode = Interpolation::linear);

// F_x for every community x, plus the pooled distribution over all of them.
class DistributionFamily {
 public:
  DistributionFamily(std::vector<std::optional<EmpiricalDistribution>> per_community,
                     EmpiricalDistribution pooled);

  int n_communities() const { return static_cast<int>(per_community_.size()); }
  bool is_empty(CommunityLabel x) const { return !per_community_.at(x.index).has_value(); }
  std::vector<CommunityLabel> empty_communities() const;

  // Throws EmptyCommunity if x had no observations.
  const EmpiricalDistribution& at(CommunityLabel x) const;
  const EmpiricalDistribution& pooled() const { return pooled_; }

  // Like at(), but substitutes the pooled distribution for empty communities
  // when `pooled_fallback` is set.
  const EmpiricalDistribution& resolve(CommunityLabel x, bool pooled_fallback) const;

 private:
  std::vector<std::optional<EmpiricalDistribution>> per_community_;
  EmpiricalDistribution pooled_;
};

// Pools s^c(t) over all (c, t) with X(t, c) = x. Communities without any
// observation are flagged, not rejected. Throws InvalidArgument for a
// non-positive bin width.
DistributionFamily fit_family(const CommunityTrajectories& trajectories,
                              const AttributeObservations& attributes, double bin_width);

}  // namespace randentropy
