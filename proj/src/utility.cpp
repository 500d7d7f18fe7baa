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

#include "isomech/utility.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace isomech {

namespace {

constexpr double kShapeTol = 1e-9;

double softplus(double x) {
  return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

std::vector<double> grid_values(const ScalarUtility& u, const FlagDomain& d) {
  std::vector<double> v(static_cast<std::size_t>(d.points));
  const double step = (d.hi - d.lo) / (d.points - 1);
  for (int i = 0; i < d.points; ++i) v[static_cast<std::size_t>(i)] = u(d.lo + step * i);
  return v;
}

std::vector<double> first_differences(const std::vector<double>& v) {
  std::vector<double> d(v.size() - 1);
  for (std::size_t i = 0; i + 1 < v.size(); ++i) d[i] = v[i + 1] - v[i];
  return d;
}

std::vector<double> descending_copy(std::span<const double> x) {
  std::vector<double> s(x.begin(), x.end());
  std::sort(s.begin(), s.end(), std::greater<>());
  return s;
}

}  // namespace

std::string to_string(UtilityKind kind) {
  switch (kind) {
    case UtilityKind::kLinear: return "linear";
    case UtilityKind::kExponential: return "exponential";
    case UtilityKind::kSoftplusPower: return "softplus_power";
    case UtilityKind::kThresholdSigmoid: return "threshold_sigmoid";
  }
  return "unknown";
}

UtilityKind utility_kind_from_string(const std::string& name) {
  if (name == "linear") return UtilityKind::kLinear;
  if (name == "exponential" || name == "exp") return UtilityKind::kExponential;
  if (name == "softplus_power" || name == "softplus") return UtilityKind::kSoftplusPower;
  if (name == "threshold_sigmoid" || name == "sigmoid") return UtilityKind::kThresholdSigmoid;
  throw std::invalid_argument("unknown utility kind '" + name + "'");
}

ScalarUtility::ScalarUtility(UtilityKind kind, std::vector<double> params, FlagDomain domain)
    : kind_(kind), params_(std::move(params)), domain_(domain) {
  if (!(domain_.hi > domain_.lo) || domain_.points < 3) {
    throw std::invalid_argument("utility flag domain needs lo < hi and at least 3 points");
  }
  for (double p : params_) {
    if (!std::isfinite(p)) throw std::invalid_argument("utility parameter is not finite");
  }
  if (kind_ == UtilityKind::kThresholdSigmoid && !(params_[1] > 0.0)) {
    throw std::invalid_argument("sigmoid width must be positive");
  }
  const std::vector<double> v = grid_values(*this, domain_);
  const std::vector<double> d1 = first_differences(v);
  const std::vector<double> d2 = first_differences(d1);
  nondecreasing_ = std::all_of(d1.begin(), d1.end(), [](double x) { return x >= -kShapeTol; });
  convex_ = std::all_of(d2.begin(), d2.end(), [](double x) { return x >= -kShapeTol; });
}

ScalarUtility ScalarUtility::linear(double slope, double offset, FlagDomain d) {
  return ScalarUtility(UtilityKind::kLinear, {slope, offset}, d);
}

ScalarUtility ScalarUtility::exponential(double beta, FlagDomain d) {
  return ScalarUtility(UtilityKind::kExponential, {beta}, d);
}

ScalarUtility ScalarUtility::softplus_power(double power, FlagDomain d) {
  if (!(power > 0.0)) throw std::invalid_argument("softplus power must be positive");
  return ScalarUtility(UtilityKind::kSoftplusPower, {power}, d);
}

ScalarUtility ScalarUtility::threshold_sigmoid(double center, double width, double scale,
                                               FlagDomain d) {
  return ScalarUtility(UtilityKind::kThresholdSigmoid, {center, width, scale}, d);
}

ScalarUtility ScalarUtility::make(UtilityKind kind, std::span<const double> params, FlagDomain d) {
  auto at = [&](std::size_t i, double fallback) { return i < params.size() ? params[i] : fallback; };
  switch (kind) {
    case UtilityKind::kLinear:
      if (params.size() > 2) break;
      return linear(at(0, 1.0), at(1, 0.0), d);
    case UtilityKind::kExponential:
      if (params.size() > 1) break;
      return exponential(at(0, 1.0), d);
    case UtilityKind::kSoftplusPower:
      if (params.size() > 1) break;
      return softplus_power(at(0, 2.0), d);
    case UtilityKind::kThresholdSigmoid:
      if (params.size() > 3) break;
      return threshold_sigmoid(at(0, 0.0), at(1, 1.0), at(2, 1.0), d);
  }
  throw std::invalid_argument("too many parameters for utility kind " + to_string(kind));
}

double ScalarUtility::operator()(double x) const {
  switch (kind_) {
    case UtilityKind::kLinear: return params_[0] * x + params_[1];
    case UtilityKind::kExponential: return std::exp(params_[0] * x);
    case UtilityKind::kSoftplusPower: return std::pow(softplus(x), params_[0]);
    case UtilityKind::kThresholdSigmoid:
      return params_[2] / (1.0 + std::exp(-(x - params_[0]) / params_[1]));
  }
  return 0.0;
}

std::string ScalarUtility::describe() const {
  std::ostringstream os;
  os << to_string(kind_) << '(';
  for (std::size_t i = 0; i < params_.size(); ++i) os << (i ? "," : "") << params_[i];
  os << ')';
  return os.str();
}

double top_k_sum(std::span<const double> x, std::size_t k) {
  if (k < 1 || k > x.size()) {
    throw std::invalid_argument("top_k_sum: k=" + std::to_string(k) + " outside [1, " +
                                std::to_string(x.size()) + "]");
  }
  std::vector<double> s(x.begin(), x.end());
  std::nth_element(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(k - 1), s.end(),
                   std::greater<>());
  double total = 0.0;
  for (std::size_t i = 0; i < k; ++i) total += s[i];
  return total;
}

BlindUtility::BlindUtility(std::size_t quota, ScalarUtility u) : quota_(quota), u_(std::move(u)) {
  if (quota_ < 1) throw std::invalid_argument("blind utility quota must be at least 1");
}

double BlindUtility::operator()(std::span<const double> x) const {
  if (quota_ > x.size()) {
    throw std::invalid_argument("utility quota " + std::to_string(quota_) + " exceeds " +
                                std::to_string(x.size()) + " scores");
  }
  const std::vector<double> s = descending_copy(x);
  double total = 0.0;
  for (std::size_t i = 0; i < quota_; ++i) total += u_(s[i]);
  return total;
}

std::string BlindUtility::describe() const {
  return "blind(k=" + std::to_string(quota_) + ", u=" + u_.describe() + ")";
}

InformedUtility::InformedUtility(std::vector<ScalarUtility> components)
    : components_(std::move(components)) {
  if (components_.empty()) throw std::invalid_argument("informed utility needs k >= 1 components");
  if (components_.size() < 2) return;
  for (std::size_t i = 0; i < components_.size(); ++i) {
    const ScalarUtility& c = components_[i];
    if (!c.nondecreasing() || !c.convex()) {
      throw std::invalid_argument("informed utility component " + std::to_string(i + 1) +
                                  " must be convex and nondecreasing");
    }
  }
  // Marginal utility of a higher position dominates the next one.
  for (std::size_t i = 0; i + 1 < components_.size(); ++i) {
    const FlagDomain& d = components_[i].domain();
    const std::vector<double> hi = first_differences(grid_values(components_[i], d));
    const std::vector<double> lo = first_differences(grid_values(components_[i + 1], d));
    for (std::size_t g = 0; g < hi.size(); ++g) {
      if (hi[g] < lo[g] - kShapeTol) {
        throw std::invalid_argument("informed utility: derivative of component " +
                                    std::to_string(i + 1) + " does not dominate component " +
                                    std::to_string(i + 2));
      }
    }
  }
}

double InformedUtility::operator()(std::span<const double> x) const {
  if (quota() > x.size()) {
    throw std::invalid_argument("utility quota " + std::to_string(quota()) + " exceeds " +
                                std::to_string(x.size()) + " scores");
  }
  const std::vector<double> s = descending_copy(x);
  double total = 0.0;
  for (std::size_t i = 0; i < components_.size(); ++i) total += components_[i](s[i]);
  return total;
}

std::string InformedUtility::describe() const {
  std::string out = "informed(";
  for (std::size_t i = 0; i < components_.size(); ++i) {
    out += (i ? "," : "") + components_[i].describe();
  }
  return out + ")";
}

double eval_blind(const BlindUtility& u, std::span<const double> x) { return u(x); }
double eval_informed(const InformedUtility& u, std::span<const double> x) { return u(x); }

}  // namespace isomech
