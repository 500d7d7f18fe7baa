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

#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "isomech/mechanism.hpp"

namespace isomech {

enum class Protocol { kBenchmark, kBlind, kInformedMax, kInformedMin };

inline constexpr std::array<Protocol, 4> kAllProtocols = {
    Protocol::kBenchmark, Protocol::kBlind, Protocol::kInformedMax, Protocol::kInformedMin};

std::string to_string(Protocol p);
Protocol protocol_from_string(const std::string& name);

struct ProtocolSpec {
  Protocol kind = Protocol::kBlind;
  std::size_t quota = 1;    // k
  std::size_t winners = 1;  // F

  void validate() const;
};

struct SelectionEntry {
  PaperId paper;
  /// Primary sort key: raw score (benchmark), adjusted score (blind) or the
  /// worst/best author rank (informed).
  double key1;
  /// Secondary key: adjusted score for the informed protocols, unused (NaN)
  /// otherwise.
  double key2;
};

struct SelectionResult {
  std::vector<SelectionEntry> selected;
  std::size_t pool_size = 0;

  std::vector<PaperId> paper_ids() const;
};

/// Union over authors of their top-min(k, |I_j|) papers. Abstaining authors
/// nominate nothing. Sorted ascending.
std::vector<PaperId> candidate_pool(const AuthorshipNetwork& net, const AuthorRankings& rankings,
                                    std::size_t quota);

/// Runs one protocol. `rankings` may be null for the benchmark. Throws
/// std::invalid_argument when fewer than F papers are eligible.
SelectionResult select(const ProtocolSpec& spec, const AuthorshipNetwork& net,
                       const AuthorRankings* rankings, std::span<const double> raw,
                       std::span<const double> adjusted);

}  // namespace isomech
