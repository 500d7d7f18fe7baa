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

#include "isomech/selection.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace isomech {

std::string to_string(Protocol p) {
  switch (p) {
    case Protocol::kBenchmark: return "benchmark";
    case Protocol::kBlind: return "blind";
    case Protocol::kInformedMax: return "informed_max";
    case Protocol::kInformedMin: return "informed_min";
  }
  return "unknown";
}

Protocol protocol_from_string(const std::string& name) {
  for (Protocol p : kAllProtocols) {
    if (to_string(p) == name) return p;
  }
  throw std::invalid_argument("unknown protocol '" + name +
                              "' (expected benchmark, blind, informed_max or informed_min)");
}

void ProtocolSpec::validate() const {
  if (quota < 1) throw std::invalid_argument("quota must be at least 1");
  if (winners < 1) throw std::invalid_argument("number of winners must be at least 1");
}

std::vector<PaperId> SelectionResult::paper_ids() const {
  std::vector<PaperId> ids;
  ids.reserve(selected.size());
  for (const auto& e : selected) ids.push_back(e.paper);
  return ids;
}

std::vector<PaperId> candidate_pool(const AuthorshipNetwork& net, const AuthorRankings& rankings,
                                    std::size_t quota) {
  std::vector<bool> in_pool(net.num_papers(), false);
  for (AuthorId j = 0; j < net.num_authors(); ++j) {
    if (!rankings.has(j)) continue;
    const auto& order = rankings.order(j);
    const std::size_t take = std::min(quota, order.size());
    for (std::size_t pos = 0; pos < take; ++pos) in_pool[order[pos]] = true;
  }
  std::vector<PaperId> pool;
  for (PaperId p = 0; p < net.num_papers(); ++p) {
    if (in_pool[p]) pool.push_back(p);
  }
  return pool;
}

SelectionResult select(const ProtocolSpec& spec, const AuthorshipNetwork& net,
                       const AuthorRankings* rankings, std::span<const double> raw,
                       std::span<const double> adjusted) {
  spec.validate();
  const std::size_t n = net.num_papers();
  if (raw.size() != n || adjusted.size() != n) {
    throw std::invalid_argument("score vectors do not match the number of papers");
  }
  constexpr double kNone = std::numeric_limits<double>::quiet_NaN();

  std::vector<SelectionEntry> eligible;
  if (spec.kind == Protocol::kBenchmark) {
    eligible.reserve(n);
    for (PaperId p = 0; p < n; ++p) eligible.push_back({p, raw[p], kNone});
  } else {
    if (rankings == nullptr) throw std::invalid_argument(to_string(spec.kind) + " needs rankings");
    // Best and worst position (1-based) among authors that nominated the paper.
    std::vector<std::size_t> best(n, std::numeric_limits<std::size_t>::max());
    std::vector<std::size_t> worst(n, 0);
    for (AuthorId j = 0; j < net.num_authors(); ++j) {
      if (!rankings->has(j)) continue;
      const auto& order = rankings->order(j);
      const std::size_t take = std::min(spec.quota, order.size());
      for (std::size_t pos = 0; pos < take; ++pos) {
        best[order[pos]] = std::min(best[order[pos]], pos + 1);
        worst[order[pos]] = std::max(worst[order[pos]], pos + 1);
      }
    }
    for (PaperId p = 0; p < n; ++p) {
      if (worst[p] == 0) continue;
      switch (spec.kind) {
        case Protocol::kBlind: eligible.push_back({p, adjusted[p], kNone}); break;
        case Protocol::kInformedMax:
          eligible.push_back({p, static_cast<double>(worst[p]), adjusted[p]});
          break;
        case Protocol::kInformedMin:
          eligible.push_back({p, static_cast<double>(best[p]), adjusted[p]});
          break;
        case Protocol::kBenchmark: break;
      }
    }
  }

  if (spec.winners > eligible.size()) {
    throw std::invalid_argument("cannot select " + std::to_string(spec.winners) + " winners from " +
                                std::to_string(eligible.size()) + " eligible papers");
  }

  const bool rank_keyed =
      spec.kind == Protocol::kInformedMax || spec.kind == Protocol::kInformedMin;
  auto before = [rank_keyed](const SelectionEntry& l, const SelectionEntry& r) {
    if (rank_keyed) {
      if (l.key1 != r.key1) return l.key1 < r.key1;
      if (l.key2 != r.key2) return l.key2 > r.key2;
    } else if (l.key1 != r.key1) {
      return l.key1 > r.key1;
    }
    return l.paper < r.paper;
  };
  const auto cut = eligible.begin() + static_cast<std::ptrdiff_t>(spec.winners);
  std::partial_sort(eligible.begin(), cut, eligible.end(), before);

  SelectionResult result;
  result.pool_size = eligible.size();
  result.selected.assign(eligible.begin(), cut);
  return result;
}

}  // namespace isomech
