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

// Plain comma-separated files with a mandatory header row. Ids in files are
// arbitrary non-negative integers; they are mapped to dense 0-based indices
// in increasing label order and mapped back on output.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

#include "isomech/audit.hpp"
#include "isomech/mechanism.hpp"

namespace isomech {

class IdMap {
 public:
  IdMap() = default;
  /// Builds from labels in any order; duplicates collapse.
  explicit IdMap(std::vector<std::int64_t> labels);
  static IdMap dense(std::size_t n);  // labels 0..n-1

  std::size_t size() const noexcept { return labels_.size(); }
  std::int64_t label(std::size_t index) const { return labels_.at(index); }
  /// Index of `label`, or size() when absent.
  std::size_t find(std::int64_t label) const;

 private:
  std::vector<std::int64_t> labels_;
  std::unordered_map<std::int64_t, std::size_t> index_;
};

struct NetworkFile {
  AuthorshipNetwork net;
  IdMap papers;
  IdMap authors;
};

/// Parsed rows of a CSV file: the header and the data rows with their
/// 1-based line numbers. Blank lines are skipped; fields are trimmed.
struct CsvTable {
  std::string source;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> lines;

  /// Column index of `name` or throws InputError.
  std::size_t column(const std::string& name) const;
  std::size_t find_column(const std::string& name) const;  // header.size() when absent
};

CsvTable read_csv(const std::string& path);
CsvTable parse_csv(std::istream& in, const std::string& source);

/// `paper_id,author_id`, one row per authorship edge.
NetworkFile read_network_csv(const std::string& path);
void write_network_csv(const std::string& path, const AuthorshipNetwork& net,
                       const IdMap& papers, const IdMap& authors);

/// `author_id,rank,paper_id` in any column order; rank 1 = best, ranks of an
/// author must be exactly 1..|I_j|. Authors absent from the file abstain.
AuthorRankings read_rankings_csv(const std::string& path, const NetworkFile& network);
void write_rankings_csv(const std::string& path, const AuthorshipNetwork& net,
                        const AuthorRankings& rankings, const IdMap& papers,
                        const IdMap& authors);

/// Reads `paper_id` plus one score column: `score`, `review_score` or `raw`
/// (first present wins). Every paper of the network needs exactly one row.
ScoreVector read_scores_csv(const std::string& path, const IdMap& papers);

/// `paper_id,true_quality,review_score`.
void write_conference_scores_csv(const std::string& path, std::span<const double> quality,
                                 std::span<const double> reviews, const IdMap& papers);

/// `paper_id,raw,adjusted,modified`.
void write_adjusted_csv(const std::string& path, std::span<const double> raw,
                        const AdjustedScores& adjusted, const IdMap& papers);
struct AdjustedFile {
  ScoreVector raw;
  ScoreVector adjusted;
  std::vector<bool> modified;
};
AdjustedFile read_adjusted_csv(const std::string& path, const IdMap& papers);

/// Partition sidecars: `block_id,paper_id` and `block_id,owner_author_id`.
void write_partition_csvs(const std::string& blocks_path, const std::string& owners_path,
                          const Partition& partition, const IdMap& papers, const IdMap& authors);

/// `paper_id,score,outcome,year,scale_lo,scale_hi`.
std::vector<ReviewRecord> read_review_records_csv(const std::string& path);

/// Exact decimal rendering that round-trips a double.
std::string format_double(double v);

}  // namespace isomech
