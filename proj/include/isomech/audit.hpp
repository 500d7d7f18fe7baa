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

// Convexity audit of review-outcome data: scores are mapped to a common
// 0-9 scale, outcome frequencies are bucketed with binomial standard errors,
// and a ridge-penalized logistic curve is fitted and checked for convexity.

#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace isomech {

enum class Outcome { kRejected, kAccepted, kSpotlight, kOral, kBest };

std::string to_string(Outcome o);
/// Empty text maps to kRejected (a paper with no recorded decision).
Outcome outcome_from_string(const std::string& text);

struct ReviewRecord {
  std::string paper_id;
  double score = 0.0;  // mean reviewer score on the venue's own scale
  Outcome outcome = Outcome::kRejected;
  std::string year;
  double scale_lo = 0.0;
  double scale_hi = 9.0;
};

using OutcomePredicate = std::function<bool(Outcome)>;

/// Outcome is `tier` or better. The `best` tier covers every paper award
/// (outstanding paper, runner-up, ...), not only the single top prize.
OutcomePredicate at_least(Outcome tier);
/// "accepted", "spotlight", "oral" or "best": that tier or better.
OutcomePredicate predicate_from_string(const std::string& name);

inline constexpr double kNormalizedTop = 9.0;

/// Affine map of every score from [scale_lo, scale_hi] onto [lo, hi].
/// Throws std::invalid_argument on a degenerate scale.
std::vector<ReviewRecord> normalize_scores(std::vector<ReviewRecord> records, double lo = 0.0,
                                           double hi = kNormalizedTop);

struct Bucket {
  double lo;
  double hi;
  double midpoint;
  std::size_t n;
  std::optional<double> p;  // empty when n == 0
  double sem;               // sqrt(p(1-p)/n); 0 for an empty bucket
};

using EmpiricalCurve = std::vector<Bucket>;

/// Buckets are [e_i, e_{i+1}); the last bucket also includes its upper edge.
EmpiricalCurve bucket_probabilities(std::span<const ReviewRecord> records,
                                    std::span<const double> edges, const OutcomePredicate& pred);

/// Binomial standard error sqrt(p(1-p)/n).
double binomial_sem(double p, std::size_t n);

/// Edges 0, 0.5, ..., 9.
std::vector<double> uniform_edges(double width = 0.5, double lo = 0.0, double hi = kNormalizedTop);
/// Width 1 below 5, 0.5 between 5 and 7, 0.25 above 7.
std::vector<double> high_resolution_edges();

struct LogisticFit {
  double intercept = 0.0;
  double slope = 0.0;
  double lambda = 0.0;
  bool converged = false;
  int iterations = 0;
  double gradient_norm = 0.0;
  double loss = 0.0;

  double probability(double s) const;
};

struct LogisticOptions {
  double lambda = 1.0;  // ridge strength on the slope only
  int max_iterations = 100;
  double gradient_tol = 1e-8;
  /// Loss after every accepted Newton step, starting with the initial loss.
  std::vector<double>* loss_trace = nullptr;
};

/// Minimizes sum cross-entropy(sigmoid(b0 + b1 s), y) + lambda b1^2 / 2 by
/// damped Newton from (0, 0). Throws DegenerateFit when fewer than two
/// records or only one class is present.
LogisticFit fit_logistic(std::span<const double> scores, std::span<const int> labels,
                         const LogisticOptions& options = {});
LogisticFit fit_logistic(std::span<const ReviewRecord> records, const OutcomePredicate& pred,
                         const LogisticOptions& options = {});

/// d^2 p / ds^2 = b1^2 p (1-p) (1-2p).
double second_derivative(const LogisticFit& fit, double s);

struct ConvexityReport {
  enum class Verdict { kConvex, kNonConvex, kFlat };
  Verdict verdict = Verdict::kFlat;
  double range_lo = 0.0;
  double range_hi = 0.0;
  std::optional<double> saturation;  // s* with p(s*) = 1/2; empty when flat
  bool saturation_beyond_range = false;
  std::vector<double> grid;
  std::vector<bool> convex_at;  // second derivative > 0 at each grid point
};

std::string to_string(ConvexityReport::Verdict v);

ConvexityReport convexity_report(const LogisticFit& fit, double lo, double hi,
                                 std::size_t grid_points = 1000);

}  // namespace isomech
