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

// Synthetic conferences: authorship networks, ground-truth quality, noisy
// reviews, and truthful author rankings.

#pragma once

#include <cstdint>
#include <string>

#include "isomech/mechanism.hpp"

namespace isomech {

struct NetworkModel {
  enum class Kind { kUniform, kFromFile };
  Kind kind = Kind::kUniform;
  std::size_t num_authors = 2500;
  std::size_t num_papers = 5000;
  std::size_t max_authors_per_paper = 10;  // authors per paper ~ U{1..max}
  std::string path;                        // edge CSV for kFromFile
  /// Check the loaded file against the ICLR 2021 sizes (2997 authors, 8956 papers).
  bool strict_iclr_counts = false;

  void validate() const;
};

inline constexpr std::size_t kIclr2021Authors = 2997;
inline constexpr std::size_t kIclr2021Papers = 8956;

struct QualityModel {
  enum class Kind { kStandard, kProductivityWeighted };
  Kind kind = Kind::kStandard;
  double author_mean = 5.0;
  double author_var = 2.0;
  double paper_noise_var = 1.0;
  double bonus_mean = 5.0 / 16.0;
  double bonus_var = 2.0 / 256.0;
  /// true: the bonus is a sum of one draw per paper of the author.
  /// false: a single draw regardless of productivity.
  bool bonus_per_paper = true;

  void validate() const;
};

struct NoiseModel {
  double review_var = 1.0;  // epsilon
  void validate() const;
};

struct SyntheticConference {
  AuthorshipNetwork network;
  ScoreVector true_quality;
  ScoreVector reviews;
  AuthorRankings rankings;
};

/// Uniform model: N papers, each with U{1..max} distinct authors drawn
/// uniformly from M. kFromFile loads the edge CSV at model.path.
AuthorshipNetwork gen_network(const NetworkModel& model, std::uint64_t seed);

/// Per-author quality, then per-paper quality = max over its authors plus
/// paper noise.
ScoreVector gen_quality(const AuthorshipNetwork& net, const QualityModel& model,
                        std::uint64_t seed);

/// r = q + Normal(0, epsilon), i.i.d. across papers.
ScoreVector gen_reviews(std::span<const double> quality, const NoiseModel& noise,
                        std::uint64_t seed);

/// Every author ranks their papers by quality descending, lower id first on ties.
AuthorRankings truthful_rankings(const AuthorshipNetwork& net, std::span<const double> quality);

}  // namespace isomech
