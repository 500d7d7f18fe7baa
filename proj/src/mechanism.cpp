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

#include "isomech/mechanism.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>

namespace isomech {

AuthorshipNetwork::AuthorshipNetwork(std::size_t num_papers,
                                     std::vector<std::vector<PaperId>> ownership)
    : num_papers_(num_papers), ownership_(std::move(ownership)), paper_authors_(num_papers) {
  for (AuthorId j = 0; j < ownership_.size(); ++j) {
    auto& papers = ownership_[j];
    std::sort(papers.begin(), papers.end());
    papers.erase(std::unique(papers.begin(), papers.end()), papers.end());
    for (PaperId p : papers) {
      if (p >= num_papers_) {
        throw std::invalid_argument("author " + std::to_string(j) + " owns paper " +
                                    std::to_string(p) + " outside [0, " +
                                    std::to_string(num_papers_) + ")");
      }
      paper_authors_[p].push_back(j);
    }
  }
  for (PaperId p = 0; p < num_papers_; ++p) {
    if (paper_authors_[p].empty()) {
      throw std::invalid_argument("paper " + std::to_string(p) + " has no author");
    }
  }
}

AuthorshipNetwork AuthorshipNetwork::from_edges(
    std::size_t num_authors, std::size_t num_papers,
    std::span<const std::pair<PaperId, AuthorId>> edges) {
  std::vector<std::vector<PaperId>> ownership(num_authors);
  for (const auto& [paper, author] : edges) {
    if (author >= num_authors) {
      throw std::invalid_argument("author id " + std::to_string(author) + " outside [0, " +
                                  std::to_string(num_authors) + ")");
    }
    ownership[author].push_back(paper);
  }
  return AuthorshipNetwork(num_papers, std::move(ownership));
}

bool AuthorshipNetwork::owns(AuthorId j, PaperId p) const {
  const auto& papers = ownership_.at(j);
  return std::binary_search(papers.begin(), papers.end(), p);
}

void AuthorRankings::set(const AuthorshipNetwork& net, AuthorId author,
                         std::vector<PaperId> order) {
  if (author >= orders_.size()) {
    throw std::invalid_argument("ranking for unknown author " + std::to_string(author));
  }
  std::vector<PaperId> sorted = order;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != net.papers_of(author)) {
    throw std::invalid_argument("ranking of author " + std::to_string(author) +
                                " does not list exactly that author's papers once each");
  }
  orders_[author] = std::move(order);
}

const std::vector<PaperId>& AuthorRankings::order(AuthorId j) const {
  const auto& o = orders_.at(j);
  if (!o) throw std::invalid_argument("author " + std::to_string(j) + " submitted no ranking");
  return *o;
}

std::vector<std::size_t> Partition::block_of(std::size_t num_papers) const {
  std::vector<std::size_t> out(num_papers, blocks.size());
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    for (PaperId p : blocks[b]) out.at(p) = b;
  }
  return out;
}

Partition greedy_partition(const AuthorshipNetwork& net) {
  const std::size_t n = net.num_papers();
  std::vector<bool> covered(n, false);
  std::size_t num_covered = 0;

  auto uncovered_count = [&](AuthorId j) {
    std::size_t c = 0;
    for (PaperId p : net.papers_of(j)) c += covered[p] ? 0 : 1;
    return c;
  };

  // Lazy max-heap over (uncovered count, lower id first). Counts only ever
  // shrink, so a stored count is an upper bound on the current one.
  using Entry = std::pair<std::size_t, AuthorId>;
  auto worse = [](const Entry& l, const Entry& r) {
    return l.first != r.first ? l.first < r.first : l.second > r.second;
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(worse)> heap(worse);
  for (AuthorId j = 0; j < net.num_authors(); ++j) {
    if (!net.papers_of(j).empty()) heap.push({net.papers_of(j).size(), j});
  }

  Partition part;
  while (num_covered < n) {
    if (heap.empty()) throw std::invalid_argument("authorship network leaves a paper unowned");
    Entry top = heap.top();
    heap.pop();
    const std::size_t current = uncovered_count(top.second);
    if (current == 0) continue;
    if (current != top.first) {
      Entry refreshed{current, top.second};
      if (!heap.empty() && worse(refreshed, heap.top())) {
        heap.push(refreshed);
        continue;
      }
    }
    std::vector<PaperId> block;
    for (PaperId p : net.papers_of(top.second)) {
      if (!covered[p]) {
        covered[p] = true;
        block.push_back(p);
      }
    }
    num_covered += block.size();
    part.blocks.push_back(std::move(block));
    part.chosen_by.push_back(top.second);
  }

  part.owners.resize(part.blocks.size());
  for (std::size_t b = 0; b < part.blocks.size(); ++b) {
    const auto& block = part.blocks[b];
    for (AuthorId j : net.authors_of(block.front())) {
      const bool full = std::all_of(block.begin(), block.end(),
                                    [&](PaperId p) { return net.owns(j, p); });
      if (full) part.owners[b].push_back(j);
    }
  }
  return part;
}

Ranking restrict_ranking(std::span<const PaperId> order, std::span<const PaperId> block) {
  std::vector<std::size_t> local;
  local.reserve(block.size());
  for (PaperId p : order) {
    auto it = std::lower_bound(block.begin(), block.end(), p);
    if (it != block.end() && *it == p) local.push_back(static_cast<std::size_t>(it - block.begin()));
  }
  if (local.size() != block.size()) {
    throw std::invalid_argument("ranking does not cover every paper of the block");
  }
  return Ranking(std::move(local));
}

AdjustedScores adjusted_scores(const AuthorshipNetwork& net, const AuthorRankings& rankings,
                               std::span<const double> raw, const Partition& partition,
                               AdjustOptions options) {
  if (raw.size() != net.num_papers()) {
    throw std::invalid_argument("score vector has " + std::to_string(raw.size()) +
                                " entries for " + std::to_string(net.num_papers()) + " papers");
  }
  require_valid_scores(raw, "raw scores");
  if (rankings.num_authors() != net.num_authors()) {
    throw std::invalid_argument("rankings cover " + std::to_string(rankings.num_authors()) +
                                " authors, network has " + std::to_string(net.num_authors()));
  }

  AdjustedScores out;
  out.values.assign(raw.begin(), raw.end());
  std::vector<bool> seen(net.num_papers(), false);
  ScoreVector local_raw;
  ScoreVector sum;
  for (std::size_t b = 0; b < partition.size(); ++b) {
    const auto& block = partition.blocks[b];
    local_raw.resize(block.size());
    for (std::size_t i = 0; i < block.size(); ++i) {
      if (block[i] >= net.num_papers() || seen[block[i]]) {
        throw std::invalid_argument("partition blocks are not disjoint paper sets");
      }
      seen[block[i]] = true;
      local_raw[i] = raw[block[i]];
    }

    sum.assign(block.size(), 0.0);
    std::size_t contributors = 0;
    for (AuthorId j : partition.owners.at(b)) {
      if (!rankings.has(j)) {
        if (options.allow_abstain) continue;
        throw std::invalid_argument("full owner " + std::to_string(j) + " of block " +
                                    std::to_string(b) + " submitted no ranking");
      }
      const ScoreVector proj =
          project_onto_ranking(local_raw, restrict_ranking(rankings.order(j), block));
      for (std::size_t i = 0; i < block.size(); ++i) sum[i] += proj[i];
      ++contributors;
    }
    if (contributors == 0) {
      out.unadjusted_blocks.push_back(b);
      continue;
    }
    for (std::size_t i = 0; i < block.size(); ++i) {
      out.values[block[i]] = sum[i] / static_cast<double>(contributors);
    }
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
    throw std::invalid_argument("partition does not cover every paper");
  }

  out.modified_mask.resize(raw.size());
  for (std::size_t p = 0; p < raw.size(); ++p) {
    out.modified_mask[p] = std::abs(out.values[p] - raw[p]) > kModifiedTol;
  }
  return out;
}

double fraction_modified(const AdjustedScores& adjusted) {
  if (adjusted.modified_mask.empty()) return 0.0;
  const auto count = std::count(adjusted.modified_mask.begin(), adjusted.modified_mask.end(), true);
  return static_cast<double>(count) / static_cast<double>(adjusted.modified_mask.size());
}

}  // namespace isomech
