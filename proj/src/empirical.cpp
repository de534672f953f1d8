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

#include "randentropy/empirical.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "randentropy/error.hpp"

namespace randentropy {

EmpiricalDistribution::EmpiricalDistribution(double bin_width, double origin,
                                             std::vector<std::int64_t> bin_counts)
    : bin_width_(bin_width), origin_(origin), bin_counts_(std::move(bin_counts)) {
  if (!(bin_width_ > 0.0) || !std::isfinite(bin_width_))
    throw Error(ErrorCode::InvalidArgument, "bin width must be positive");
  if (bin_counts_.empty()) throw Error(ErrorCode::InvalidArgument, "histogram has no bins");
  cumulative_.resize(bin_counts_.size());
  std::int64_t running = 0;
  for (std::size_t m = 0; m < bin_counts_.size(); ++m) {
    if (bin_counts_[m] < 0) throw Error(ErrorCode::InvalidArgument, "negative bin count");
    running += bin_counts_[m];
    cumulative_[m] = running;
  }
  if (running == 0) throw Error(ErrorCode::InvalidArgument, "histogram has no observations");
}

EmpiricalDistribution EmpiricalDistribution::from_samples(std::span<const double> samples,
                                                          double bin_width, double origin) {
  if (!(bin_width > 0.0) || !std::isfinite(bin_width))
    throw Error(ErrorCode::InvalidArgument, "bin width must be positive");
  std::vector<std::int64_t> counts;
  for (double s : samples) {
    if (!std::isfinite(s) || s < origin)
      throw Error(ErrorCode::InvalidAttribute,
                  "sample " + std::to_string(s) + " is not a finite value >= origin");
    const auto m = static_cast<std::size_t>(std::floor((s - origin) / bin_width));
    if (m >= counts.size()) counts.resize(m + 1, 0);
    ++counts[m];
  }
  return EmpiricalDistribution(bin_width, origin, std::move(counts));
}

double cdf(const EmpiricalDistribution& dist, double s, Interpolation mode) {
  if (!(s >= dist.origin())) return 0.0;
  const double position = (s - dist.origin()) / dist.bin_width();
  if (position >= dist.n_bins()) return 1.0;
  const int m = static_cast<int>(std::floor(position));
  const double below = static_cast<double>(dist.cumulative(m - 1));
  const double count = static_cast<double>(dist.bin_counts()[m]);
  double inside = 0.0;
  if (mode == Interpolation::linear)
    inside = count * (position - m);
  else
    inside = position - m >= 0.5 ? count : 0.0;
  return std::clamp((below + inside) / static_cast<double>(dist.total()), 0.0, 1.0);
}

double quantile(const EmpiricalDistribution& dist, double u, Interpolation mode) {
  if (!(u >= 0.0 && u <= 1.0))
    throw Error(ErrorCode::InvalidArgument, "quantile level must lie in [0,1]");
  const auto& counts = dist.bin_counts();
  const double target = u * static_cast<double>(dist.total());

  int m = 0;
  if (target <= 0.0) {
    while (counts[m] == 0) ++m;
    return mode == Interpolation::linear ? dist.bin_left(m) : dist.bin_left(m) + 0.5 * dist.bin_width();
  }
  // First bin whose cumulative count reaches the target; it is never empty.
  int lo = 0;
  int hi = dist.n_bins() - 1;
  while (lo < hi) {
    const int mid = lo + (hi - lo) / 2;
    if (static_cast<double>(dist.cumulative(mid)) >= target)
      hi = mid;
    else
      lo = mid + 1;
  }
  m = lo;
  if (mode == Interpolation::step) return dist.bin_left(m) + 0.5 * dist.bin_width();
  const double fraction =
      (target - static_cast<double>(dist.cumulative(m - 1))) / static_cast<double>(counts[m]);
  return dist.bin_left(m) + dist.bin_width() * std::min(fraction, 1.0);
}

DistributionFamily::DistributionFamily(
    std::vector<std::optional<EmpiricalDistribution>> per_community, EmpiricalDistribution pooled)
    : per_community_(std::move(per_community)), pooled_(std::move(pooled)) {}

std::vector<CommunityLabel> DistributionFamily::empty_communities() const {
  std::vector<CommunityLabel> empty;
  for (int x = 0; x < n_communities(); ++x)
    if (!per_community_[x]) empty.push_back({x});
  return empty;
}

const EmpiricalDistribution& DistributionFamily::at(CommunityLabel x) const {
  if (x.index < 0 || x.index >= n_communities())
    throw Error(ErrorCode::LabelOutOfRange,
                "community " + std::to_string(x.one_based()) + " is not part of the family");
  if (!per_community_[x.index])
    throw Error(ErrorCode::EmptyCommunity, "community " + std::to_string(x.one_based()) +
                                               " has no attribute observations");
  return *per_community_[x.index];
}

const EmpiricalDistribution& DistributionFamily::resolve(CommunityLabel x,
                                                         bool pooled_fallback) const {
  if (pooled_fallback && x.index >= 0 && x.index < n_communities() && !per_community_[x.index])
    return pooled_;
  return at(x);
}

DistributionFamily fit_family(const CommunityTrajectories& trajectories,
                              const AttributeObservations& attributes, double bin_width) {
  if (!(bin_width > 0.0) || !std::isfinite(bin_width))
    throw Error(ErrorCode::InvalidArgument, "bin width must be positive");
  const int d = trajectories.n_communities();
  std::vector<std::vector<double>> samples(d);
  std::vector<double> all;
  all.reserve(static_cast<std::size_t>(trajectories.n_individuals()) * trajectories.n_times());
  for (int c = 0; c < trajectories.n_individuals(); ++c)
    for (int t = 0; t < trajectories.n_times(); ++t) {
      samples[trajectories(c, t)].push_back(attributes(c, t));
      all.push_back(attributes(c, t));
    }

  std::vector<std::optional<EmpiricalDistribution>> per_community(d);
  for (int x = 0; x < d; ++x)
    if (!samples[x].empty())
      per_community[x] = EmpiricalDistribution::from_samples(samples[x], bin_width);
  return DistributionFamily(std::move(per_community),
                            EmpiricalDistribution::from_samples(all, bin_width));
}

}  // namespace randentropy
