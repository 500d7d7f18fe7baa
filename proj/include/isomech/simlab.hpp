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

// Monte-Carlo experiments: selection-quality sweeps over synthetic
// conferences, and brute-force checks of the mechanism's guarantees.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "isomech/selection.hpp"
#include "isomech/synthesis.hpp"
#include "isomech/utility.hpp"

namespace isomech {

/// Mean true quality of `selected` over the mean of the true top F. When some
/// quality is <= 0, all qualities are first shifted by (min q - 1) so the
/// ratio lies in (0, 1].
double normalized_quality(std::span<const PaperId> selected, std::span<const double> quality,
                          std::size_t winners);

struct SweepConfig {
  NetworkModel network;
  QualityModel quality;
  std::vector<double> epsilons = {0.25, 0.5, 1.0, 2.0, 4.0};
  std::vector<std::size_t> quotas = {1, 5};
  std::vector<std::size_t> winners = {1, 10};
  std::vector<Protocol> protocols = {kAllProtocols.begin(), kAllProtocols.end()};
  std::size_t rounds = 200;
  std::uint64_t seed = 20240601;
  /// Draw a fresh network every round. Ignored (always false) for kFromFile
  /// unless set explicitly via redraw_override.
  std::optional<bool> redraw_override;
  unsigned jobs = 1;

  bool redraw_network() const;
  void validate() const;
};

struct SweepCell {
  double epsilon;
  std::size_t quota;
  std::size_t winners;
  Protocol protocol;
  double mean;
  double sem;  // sample standard deviation / sqrt(rounds)
  std::size_t rounds;
  std::vector<double> values;  // per-round normalized quality, in round order
};

/// Mean and SEM of the per-round difference a - b. Both cells come from the
/// same sweep, so round r of each saw the same conference.
struct PairedGap {
  double mean;
  double sem;
};
PairedGap paired_gap(const SweepCell& a, const SweepCell& b);

struct SweepResult {
  std::vector<SweepCell> cells;
  /// Mean modified fraction per epsilon, averaged over rounds.
  std::vector<double> mean_fraction_modified;

  const SweepCell& at(double epsilon, std::size_t quota, std::size_t winners,
                      Protocol protocol) const;
};

/// Rounds are independent: round r draws everything from round_seed(seed, r),
/// and all protocols, quotas and noise levels of a round share the same
/// conference and the same standard-normal review draws. Results do not
/// depend on `jobs`.
SweepResult run_sweep(const SweepConfig& cfg);

/// A symmetric utility of the adjusted score vector.
struct VectorUtility {
  std::function<double(std::span<const double>)> eval;
  std::string description;

  static VectorUtility blind(BlindUtility u);
  static VectorUtility informed(InformedUtility u);
};

struct PermutationStats {
  std::vector<std::size_t> order;  // reported ranking, best first
  double mean;                     // expected utility estimate
  double sem;
  double diff_mean;  // mean of (utility(order) - utility(truthful)), paired
  double diff_sem;
};

struct TruthfulnessReport {
  std::size_t n = 0;
  std::string utility;
  double noise_var = 0.0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::vector<PermutationStats> permutations;  // index 0 is the truthful report
  bool truthful = false;
  /// Largest diff_mean / diff_sem over non-truthful reports (0 when none is positive).
  double worst_z = 0.0;
};

inline constexpr std::size_t kMaxEnumeratedSize = 6;
inline constexpr double kVerdictSigmas = 3.0;

/// For each trial draws one noise vector and scores every one of the n!
/// reported rankings against it. Verdict: no report beats the truthful one
/// by more than 3 standard errors of the paired difference.
/// `true_scores` must be sorted descending; n <= 6 (UnsupportedSize
/// otherwise); trials >= 10^4.
TruthfulnessReport verify_truthfulness(std::span<const double> true_scores,
                                       const VectorUtility& utility, double noise_var,
                                       std::size_t trials, std::uint64_t seed);

struct ExactCheckReport {
  std::string name;
  std::size_t trials = 0;
  std::size_t violations = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> examples;  // first few violations, human readable
  /// Expected-utility gap E[u(fitted_0)] - E[u(y_0)] and its SEM, when a
  /// utility was supplied.
  std::optional<double> utility_gap;
  std::optional<double> utility_gap_sem;

  bool passed() const { return violations == 0; }
};

struct RandomInstanceOptions {
  std::size_t min_n = 2;
  std::size_t max_n = 8;
  double noise_var = 1.0;
};

/// pava(R + e) majorizes pava(pi(R) + e) for random sorted R, permutation
/// pi and Gaussian e.
ExactCheckReport verify_majorization_step(std::size_t trials, std::uint64_t seed,
                                          RandomInstanceOptions opts = {});

/// pava(y).fitted[0] >= y[0] and pava(y).fitted[n-1] <= y[n-1] for y = R + e
/// with R sorted descending. Optionally estimates the utility gap for a
/// nondecreasing scalar u.
ExactCheckReport verify_individual_rationality(std::size_t trials, std::uint64_t seed,
                                               const ScalarUtility* u = nullptr,
                                               RandomInstanceOptions opts = {});

}  // namespace isomech
