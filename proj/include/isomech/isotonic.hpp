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

// Isotonic projection onto ranking cones, plus the majorization toolkit
// (majorization tests, T-transforms, Muirhead chains) used to check the
// mechanism's guarantees.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace isomech {

/// Ordered real scores for a set of papers (raw, true, or adjusted).
using ScoreVector = std::vector<double>;

/// Throws std::invalid_argument if `v` is empty or has a non-finite entry.
void require_valid_scores(std::span<const double> v, const char* what = "score vector");

/// A total order over {0..n-1}. order()[i] is the index placed at position
/// i, best first, so a score vector r is consistent with the ranking when
/// r[order[0]] >= r[order[1]] >= ... .
class Ranking {
 public:
  /// Throws std::invalid_argument unless `order` is a permutation of 0..n-1.
  explicit Ranking(std::vector<std::size_t> order);

  static Ranking identity(std::size_t n);
  /// Ranking that sorts `scores` descending; equal scores keep index order.
  static Ranking by_scores_descending(std::span<const double> scores);

  std::size_t size() const noexcept { return order_.size(); }
  const std::vector<std::size_t>& order() const noexcept { return order_; }
  std::size_t operator[](std::size_t position) const { return order_[position]; }

  bool operator==(const Ranking&) const = default;

 private:
  std::vector<std::size_t> order_;
};

/// Half-open range [start, end) of positions that share one fitted value.
struct Block {
  std::size_t start;
  std::size_t end;
  bool operator==(const Block&) const = default;
};

struct IsotonicFit {
  ScoreVector fitted;
  std::vector<Block> blocks;
  std::vector<double> block_means;  // strictly decreasing
};

/// Euclidean projection of y onto {r : r_0 >= r_1 >= ... >= r_{n-1}} by pool
/// adjacent violators. Adjacent blocks with equal means are merged, so the
/// reported block means are strictly decreasing.
IsotonicFit pava_descending(std::span<const double> y);

/// Projection of y onto the cone of vectors consistent with `ranking`:
/// permute into the asserted order, project descending, un-permute.
ScoreVector project_onto_ranking(std::span<const double> y, const Ranking& ranking);

/// Default absolute tolerance for the majorization predicates.
inline constexpr double kMajorizationTol = 1e-9;

/// a majorizes b: sorted prefix sums of a dominate those of b, equal totals.
bool majorizes(std::span<const double> a, std::span<const double> b,
               double tol = kMajorizationTol);
/// As majorizes() without the equal-total requirement.
bool weakly_majorizes(std::span<const double> a, std::span<const double> b,
                      double tol = kMajorizationTol);
/// Prefix dominance on the vectors as given (no sorting), equal totals.
bool majorizes_natural_order(std::span<const double> a, std::span<const double> b,
                             double tol = kMajorizationTol);

struct TTransform {
  std::size_t i;
  std::size_t j;
  double lambda;
  bool operator==(const TTransform&) const = default;
};

/// x with x_i, x_j replaced by lambda*x_i + (1-lambda)*x_j and
/// lambda*x_j + (1-lambda)*x_i.
ScoreVector t_transform(std::span<const double> x, std::size_t i, std::size_t j, double lambda);
ScoreVector apply_chain(std::span<const double> x, std::span<const TTransform> chain);

/// T-transforms turning a into b, for a majorizing b. When a and b are
/// ordered alike (e.g. both descending) the chain has at most n-1 steps and
/// every intermediate vector keeps that order. Otherwise the chain is
/// followed by swaps (lambda = 0) that rearrange the result into b's order.
/// Throws PreconditionViolation unless majorizes(a, b).
std::vector<TTransform> t_transform_chain(std::span<const double> a, std::span<const double> b,
                                          double tol = kMajorizationTol);

}  // namespace isomech
