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

// Multi-owner isotonic mechanism: a greedy 1-strong partition of the papers,
// one projection per full owner of each block, and owner-averaged scores.

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "isomech/isotonic.hpp"

namespace isomech {

using PaperId = std::size_t;
using AuthorId = std::size_t;

/// Bipartite author/paper structure. Papers are 0..N-1, authors 0..M-1.
class AuthorshipNetwork {
 public:
  AuthorshipNetwork() = default;
  /// `ownership[j]` lists the papers of author j. Throws std::invalid_argument
  /// on an out-of-range id or a paper owned by nobody. Duplicates are dropped.
  AuthorshipNetwork(std::size_t num_papers, std::vector<std::vector<PaperId>> ownership);

  /// Builds from (paper, author) edges.
  static AuthorshipNetwork from_edges(std::size_t num_authors, std::size_t num_papers,
                                      std::span<const std::pair<PaperId, AuthorId>> edges);

  std::size_t num_authors() const noexcept { return ownership_.size(); }
  std::size_t num_papers() const noexcept { return num_papers_; }
  /// Sorted paper ids of author j.
  const std::vector<PaperId>& papers_of(AuthorId j) const { return ownership_.at(j); }
  /// Sorted author ids of paper p.
  const std::vector<AuthorId>& authors_of(PaperId p) const { return paper_authors_.at(p); }
  bool owns(AuthorId j, PaperId p) const;

 private:
  std::size_t num_papers_ = 0;
  std::vector<std::vector<PaperId>> ownership_;
  std::vector<std::vector<AuthorId>> paper_authors_;
};

/// Per-author rankings over their own papers, best first. An author with no
/// entry abstained.
class AuthorRankings {
 public:
  explicit AuthorRankings(std::size_t num_authors = 0) : orders_(num_authors) {}

  /// Throws std::invalid_argument unless `order` lists exactly the papers of
  /// `author` in `net`, each once.
  void set(const AuthorshipNetwork& net, AuthorId author, std::vector<PaperId> order);

  std::size_t num_authors() const noexcept { return orders_.size(); }
  bool has(AuthorId j) const { return orders_.at(j).has_value(); }
  const std::vector<PaperId>& order(AuthorId j) const;

 private:
  std::vector<std::optional<std::vector<PaperId>>> orders_;
};

struct Partition {
  std::vector<std::vector<PaperId>> blocks;   // sorted ids per block
  std::vector<std::vector<AuthorId>> owners;  // authors owning the whole block
  std::vector<AuthorId> chosen_by;            // author whose set produced the block

  std::size_t size() const noexcept { return blocks.size(); }
  /// Block index of every paper.
  std::vector<std::size_t> block_of(std::size_t num_papers) const;
};

/// Greedy 1-strong partition: repeatedly emit I_j \ I for the author j with
/// the most uncovered papers (lowest id on ties) until every paper is covered.
Partition greedy_partition(const AuthorshipNetwork& net);

struct AdjustedScores {
  ScoreVector values;
  std::vector<bool> modified_mask;
  /// Blocks that had no ranking owner and passed through unadjusted.
  std::vector<std::size_t> unadjusted_blocks;
};

inline constexpr double kModifiedTol = 1e-9;

struct AdjustOptions {
  /// When false a missing ranking from any full owner is an error. When true
  /// abstaining owners are dropped; blocks left without owners pass through.
  bool allow_abstain = false;
};

/// Restricts each full owner's ranking to the block, projects the block's
/// raw scores onto that order, and averages the owners' projections.
AdjustedScores adjusted_scores(const AuthorshipNetwork& net, const AuthorRankings& rankings,
                               std::span<const double> raw, const Partition& partition,
                               AdjustOptions options = {});

/// The ranking of `order` restricted to the papers in `block` (sorted ids),
/// expressed as local positions into `block`.
Ranking restrict_ranking(std::span<const PaperId> order, std::span<const PaperId> block);

double fraction_modified(const AdjustedScores& adjusted);

}  // namespace isomech
