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

#include <span>
#include <string_view>

#include <Eigen/Dense>

#include "randentropy/rng.hpp"

namespace randentropy {

enum class CopulaFamily { independence, clayton, gaussian_exchangeable };

std::string_view to_string(CopulaFamily family);

struct CopulaSpec {
  CopulaFamily family = CopulaFamily::independence;
  // Clayton: theta > 0. Gaussian: the common pairwise correlation.
  double theta = 0.0;

  static CopulaSpec independence() { return {}; }
  static CopulaSpec clayton(double theta) { return {CopulaFamily::clayton, theta}; }
  static CopulaSpec gaussian(double rho) { return {CopulaFamily::gaussian_exchangeable, rho}; }
};

// Throws InvalidTheta unless the parameter defines an n-dimensional copula.
void validate_copula(const CopulaSpec& spec, int dimension);

// Sequential conditional-inverse sampler. Each call to next() returns
// u_b = C^{-1}(v | u_1, ..., u_{b-1}) and appends it to the history; the
// history is kept as a running summary so a full draw costs O(n).
class ConditionalSampler {
 public:
  explicit ConditionalSampler(const CopulaSpec& spec);

  double next(double v);
  // Appends a given u to the history without sampling.
  void observe(double u);
  int history_size() const { return count_; }

 private:
  double push_gaussian(double z);

  CopulaSpec spec_;
  int count_ = 0;
  // Clayton: sum of (u_j^-theta - 1). Gaussian: sum of Phi^-1(u_j).
  double summary_ = 0.0;
};

// Inverse of the conditional copula C(. | history) at v. Throws InvalidArgument
// when v or a history entry lies outside (0, 1), InvalidTheta for an invalid
// parameter and NumericUnderflow when the Clayton power terms leave the
// double range.
double conditional_inverse(const CopulaSpec& spec, double v, std::span<const double> history);

// Draws v_1..v_n i.i.d. uniform and maps them through the conditional inverse.
Eigen::VectorXd sample_dependent_uniforms(const CopulaSpec& spec, int n, RngStream& rng);

}  // namespace randentropy
