// Copyright 2026 The isomech Authors. All rights reserved.
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

// Author utility families: a scalar utility applied to the top-k order
// statistics of the adjusted scores (Blind) or one utility per rank
// position (Informed).

#pragma once

#include <span>
#include <string>
#include <vector>

#include "isomech/isotonic.hpp"

namespace isomech {

enum class UtilityKind {
  kLinear,            // slope * x + offset
  kExponential,       // exp(beta * x)
  kSoftplusPower,     // softplus(x)^power
  kThresholdSigmoid,  // 1 / (1 + exp(-(x - center) / width)), scaled by `scale`
};

std::string to_string(UtilityKind kind);
UtilityKind utility_kind_from_string(const std::string& name);

/// Interval and resolution on which shape flags are checked numerically.
struct FlagDomain {
  double lo = -5.0;
  double hi = 15.0;
  int points = 2001;
};

/// Scalar utility u: R -> R. Monotonicity and convexity flags are computed
/// from first and second differences on a grid when the object is built.
class ScalarUtility {
 public:
  static ScalarUtility linear(double slope = 1.0, double offset = 0.0, FlagDomain d = {});
  static ScalarUtility exponential(double beta = 1.0, FlagDomain d = {});
  static ScalarUtility softplus_power(double power = 2.0, FlagDomain d = {});
  static ScalarUtility threshold_sigmoid(double center = 0.0, double width = 1.0,
                                         double scale = 1.0, FlagDomain d = {});
  /// Builds from a kind name and its parameters in the order of the factory
  /// arguments above; missing parameters take the defaults.
  static ScalarUtility make(UtilityKind kind, std::span<const double> params, FlagDomain d = {});

  double operator()(double x) const;

  UtilityKind kind() const noexcept { return kind_; }
  const std::vector<double>& parameters() const noexcept { return params_; }
  bool nondecreasing() const noexcept { return nondecreasing_; }
  bool convex() const noexcept { return convex_; }
  const FlagDomain& domain() const noexcept { return domain_; }
  std::string describe() const;

 private:
  ScalarUtility(UtilityKind kind, std::vector<double> params, FlagDomain domain);

  UtilityKind kind_;
  std::vector<double> params_;
  FlagDomain domain_;
  bool nondecreasing_ = false;
  bool convex_ = false;
};

/// Sum of the k largest entries of x.
double top_k_sum(std::span<const double> x, std::size_t k);

/// Sum of u over the k largest entries.
class BlindUtility {
 public:
  /// Throws std::invalid_argument when k == 0.
  BlindUtility(std::size_t quota, ScalarUtility u);

  std::size_t quota() const noexcept { return quota_; }
  const ScalarUtility& scalar() const noexcept { return u_; }
  double operator()(std::span<const double> x) const;
  std::string describe() const;

 private:
  std::size_t quota_;
  ScalarUtility u_;
};

/// Sum of U_i over the i-th largest entry, i = 1..k. For k >= 2 every
/// component must be nondecreasing and convex and U_i' >= U_{i+1}' must hold
/// on the flag grid; the constructor throws std::invalid_argument otherwise.
class InformedUtility {
 public:
  explicit InformedUtility(std::vector<ScalarUtility> components);

  std::size_t quota() const noexcept { return components_.size(); }
  const std::vector<ScalarUtility>& components() const noexcept { return components_; }
  double operator()(std::span<const double> x) const;
  std::string describe() const;

 private:
  std::vector<ScalarUtility> components_;
};

double eval_blind(const BlindUtility& u, std::span<const double> x);
double eval_informed(const InformedUtility& u, std::span<const double> x);

}  // namespace isomech
