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

#include "isomech/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "isomech/csv_io.hpp"
#include "isomech/rng.hpp"

namespace isomech {

void NetworkModel::validate() const {
  if (kind == Kind::kUniform) {
    if (num_authors == 0 || num_papers == 0 || max_authors_per_paper == 0) {
      throw std::invalid_argument("uniform network needs positive author, paper and size counts");
    }
    if (max_authors_per_paper > num_authors) {
      throw std::invalid_argument("max_authors_per_paper exceeds the number of authors");
    }
  } else if (path.empty()) {
    throw std::invalid_argument("from_file network model needs a path");
  }
}

void QualityModel::validate() const {
  if (author_var < 0 || paper_noise_var < 0 || bonus_var < 0) {
    throw std::invalid_argument("quality model variances must be non-negative");
  }
}

void NoiseModel::validate() const {
  if (!(review_var >= 0)) throw std::invalid_argument("review variance must be non-negative");
}

AuthorshipNetwork gen_network(const NetworkModel& model, std::uint64_t seed) {
  model.validate();
  if (model.kind == NetworkModel::Kind::kFromFile) {
    NetworkFile file = read_network_csv(model.path);
    if (model.strict_iclr_counts && (file.net.num_authors() != kIclr2021Authors ||
                                     file.net.num_papers() != kIclr2021Papers)) {
      throw std::invalid_argument(
          model.path + ": expected " + std::to_string(kIclr2021Authors) + " authors and " +
          std::to_string(kIclr2021Papers) + " papers, found " +
          std::to_string(file.net.num_authors()) + " and " + std::to_string(file.net.num_papers()));
    }
    return std::move(file.net);
  }

  Engine eng = make_engine(seed, Stream::kNetwork);
  const std::size_t m = model.num_authors;
  std::vector<std::vector<PaperId>> ownership(m);
  std::vector<AuthorId> chosen;
  for (PaperId p = 0; p < model.num_papers; ++p) {
    const std::size_t size = uniform_int<std::size_t>(eng, 1, model.max_authors_per_paper);
    chosen.clear();
    while (chosen.size() < size) {
      const AuthorId a = uniform_int<std::size_t>(eng, 0, m - 1);
      if (std::find(chosen.begin(), chosen.end(), a) == chosen.end()) chosen.push_back(a);
    }
    for (AuthorId a : chosen) ownership[a].push_back(p);
  }
  return AuthorshipNetwork(model.num_papers, std::move(ownership));
}

ScoreVector gen_quality(const AuthorshipNetwork& net, const QualityModel& model,
                        std::uint64_t seed) {
  model.validate();
  Engine eng = make_engine(seed, Stream::kQuality);
  const double author_sd = std::sqrt(model.author_var);
  const double bonus_sd = std::sqrt(model.bonus_var);
  const double paper_sd = std::sqrt(model.paper_noise_var);

  std::vector<double> author_q(net.num_authors());
  for (AuthorId a = 0; a < net.num_authors(); ++a) {
    double q = model.author_mean + author_sd * standard_normal(eng);
    if (model.kind == QualityModel::Kind::kProductivityWeighted) {
      const std::size_t draws = model.bonus_per_paper ? net.papers_of(a).size() : 1;
      for (std::size_t d = 0; d < draws; ++d) q += model.bonus_mean + bonus_sd * standard_normal(eng);
    }
    author_q[a] = q;
  }

  ScoreVector q(net.num_papers());
  for (PaperId p = 0; p < net.num_papers(); ++p) {
    double best = -std::numeric_limits<double>::infinity();
    for (AuthorId a : net.authors_of(p)) best = std::max(best, author_q[a]);
    q[p] = best + paper_sd * standard_normal(eng);
  }
  return q;
}

ScoreVector gen_reviews(std::span<const double> quality, const NoiseModel& noise,
                        std::uint64_t seed) {
  noise.validate();
  Engine eng = make_engine(seed, Stream::kNoise);
  const double sd = std::sqrt(noise.review_var);
  ScoreVector r(quality.begin(), quality.end());
  for (double& v : r) v += sd * standard_normal(eng);
  return r;
}

AuthorRankings truthful_rankings(const AuthorshipNetwork& net, std::span<const double> quality) {
  if (quality.size() != net.num_papers()) {
    throw std::invalid_argument("quality vector does not match the number of papers");
  }
  AuthorRankings rankings(net.num_authors());
  for (AuthorId a = 0; a < net.num_authors(); ++a) {
    std::vector<PaperId> order = net.papers_of(a);
    std::stable_sort(order.begin(), order.end(),
                     [&](PaperId l, PaperId r) { return quality[l] > quality[r]; });
    rankings.set(net, a, std::move(order));
  }
  return rankings;
}

}  // namespace isomech
