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

#include "randentropy/copula.hpp"

#include <cmath>
#include <string>

#include <boost/math/special_functions/erf.hpp>

#include "randentropy/error.hpp"

namespace randentropy {

namespace {

double normal_quantile(double p) { return -std::sqrt(2.0) * boost::math::erfc_inv(2.0 * p); }

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

void check_open_unit(double u, const char* what) {
  if (!(u > 0.0 && u < 1.0))
    throw Error(ErrorCode::InvalidArgument, std::string(what) + " must lie in (0,1)");
}

}  // namespace

std::string_view to_string(CopulaFamily family) {
  switch (family) {
    case CopulaFamily::independence: return "independence";
    case CopulaFamily::clayton: return "clayton";
    case CopulaFamily::gaussian_exchangeable: return "gaussian";
  }
  return "unknown";
}

void validate_copula(const CopulaSpec& spec, int dimension) {
  if (spec.family == CopulaFamily::independence) return;
  if (!std::isfinite(spec.theta))
    throw Error(ErrorCode::InvalidTheta, "copula parameter must be finite");
  if (spec.family == CopulaFamily::clayton && !(spec.theta > 0.0))
    throw Error(ErrorCode::InvalidTheta,
                "Clayton parameter must be positive, got " + std::to_string(spec.theta));
  if (spec.family == CopulaFamily::gaussian_exchangeable) {
    const double lower = dimension > 1 ? -1.0 / (dimension - 1) : -1.0;
    if (!(spec.theta > lower && spec.theta < 1.0))
      throw Error(ErrorCode::InvalidTheta,
                  "exchangeable correlation " + std::to_string(spec.theta) +
                      " is not valid in dimension " + std::to_string(dimension));
  }
}

ConditionalSampler::ConditionalSampler(const CopulaSpec& spec) : spec_(spec) {
  validate_copula(spec_, 1);
}

double ConditionalSampler::next(double v) {
  switch (spec_.family) {
    case CopulaFamily::independence:
      ++count_;
      return v;

    case CopulaFamily::clayton: {
      // u = [ (v^{-theta/(1+m theta)} - 1) * A + 1 ]^{-1/theta},
      // A = sum_j u_j^{-theta} - (m - 1) = 1 + summary_.
      const double theta = spec_.theta;
      const double m = count_;
      const double a = 1.0 + summary_;
      const double growth = std::expm1(-theta * std::log(v) / (1.0 + m * theta));
      const double u = std::exp(-std::log1p(a * growth) / theta);
      if (!std::isfinite(a * growth) || !(u > 0.0))
        throw Error(ErrorCode::NumericUnderflow,
                    "Clayton conditional inverse left the double range (theta=" +
                        std::to_string(theta) + ")");
      observe(u);
      return u;
    }

    case CopulaFamily::gaussian_exchangeable: {
      if (spec_.theta == 0.0) {
        ++count_;
        return v;
      }
      const double rho = spec_.theta;
      const double m = count_;
      const double denom = 1.0 + (m - 1.0) * rho;
      const double mean = rho * summary_ / denom;
      const double variance = 1.0 - m * rho * rho / denom;
      if (!(denom > 0.0 && variance > 0.0))
        throw Error(ErrorCode::InvalidTheta,
                    "exchangeable correlation " + std::to_string(rho) + " is not valid in dimension " +
                        std::to_string(count_ + 1));
      return push_gaussian(mean + std::sqrt(variance) * normal_quantile(v));
    }
  }
  return v;
}

double ConditionalSampler::push_gaussian(double z) {
  summary_ += z;
  ++count_;
  return normal_cdf(z);
}

void ConditionalSampler::observe(double u) {
  switch (spec_.family) {
    case CopulaFamily::independence:
      break;
    case CopulaFamily::clayton: {
      const double excess = std::expm1(-spec_.theta * std::log(u));
      if (!std::isfinite(excess))
        throw Error(ErrorCode::NumericUnderflow,
                    "u^-theta overflows for u=" + std::to_string(u) +
                        ", theta=" + std::to_string(spec_.theta));
      summary_ += excess;
      break;
    }
    case CopulaFamily::gaussian_exchangeable:
      summary_ += normal_quantile(u);
      break;
  }
  ++count_;
}

double conditional_inverse(const CopulaSpec& spec, double v, std::span<const double> history) {
  check_open_unit(v, "v");
  validate_copula(spec, static_cast<int>(history.size()) + 1);
  ConditionalSampler sampler(spec);
  for (double u : history) {
    check_open_unit(u, "history entry");
    sampler.observe(u);
  }
  return sampler.next(v);
}

Eigen::VectorXd sample_dependent_uniforms(const CopulaSpec& spec, int n, RngStream& rng) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "need at least one uniform");
  validate_copula(spec, n);
  ConditionalSampler sampler(spec);
  Eigen::VectorXd u(n);
  for (int b = 0; b < n; ++b) u(b) = sampler.next(rng.uniform());
  return u;
}

}  // namespace randentropy
