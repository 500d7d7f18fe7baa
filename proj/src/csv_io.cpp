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

#include "isomech/csv_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "isomech/errors.hpp"

namespace isomech {

IdMap::IdMap(std::vector<std::int64_t> labels) : labels_(std::move(labels)) {
  std::sort(labels_.begin(), labels_.end());
  labels_.erase(std::unique(labels_.begin(), labels_.end()), labels_.end());
  index_.reserve(labels_.size());
  for (std::size_t i = 0; i < labels_.size(); ++i) index_.emplace(labels_[i], i);
}

IdMap IdMap::dense(std::size_t n) {
  std::vector<std::int64_t> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = static_cast<std::int64_t>(i);
  return IdMap(std::move(labels));
}

std::size_t IdMap::find(std::int64_t label) const {
  auto it = index_.find(label);
  return it == index_.end() ? labels_.size() : it->second;
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, ',')) out.push_back(trim(field));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::int64_t parse_id(const CsvTable& t, std::size_t row, std::size_t col) {
  const std::string& f = t.rows[row][col];
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
  if (ec != std::errc() || ptr != f.data() + f.size() || v < 0) {
    throw InputError(t.source, t.lines[row],
                     "column '" + t.header[col] + "': expected a non-negative integer, got '" + f + "'");
  }
  return v;
}

double parse_real(const CsvTable& t, std::size_t row, std::size_t col) {
  const std::string& f = t.rows[row][col];
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
  if (ec != std::errc() || ptr != f.data() + f.size() || !std::isfinite(v)) {
    throw InputError(t.source, t.lines[row],
                     "column '" + t.header[col] + "': expected a finite number, got '" + f + "'");
  }
  return v;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::size_t CsvTable::find_column(const std::string& name) const {
  return static_cast<std::size_t>(std::find(header.begin(), header.end(), name) - header.begin());
}

std::size_t CsvTable::column(const std::string& name) const {
  const std::size_t c = find_column(name);
  if (c == header.size()) throw InputError(source, 1, "missing column '" + name + "'");
  return c;
}

CsvTable parse_csv(std::istream& in, const std::string& source) {
  CsvTable t;
  t.source = source;
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    std::vector<std::string> fields = split(line);
    if (!have_header) {
      t.header = std::move(fields);
      have_header = true;
      continue;
    }
    if (fields.size() != t.header.size()) {
      throw InputError(source, lineno,
                       "expected " + std::to_string(t.header.size()) + " fields, found " +
                           std::to_string(fields.size()));
    }
    t.rows.push_back(std::move(fields));
    t.lines.push_back(lineno);
  }
  if (!have_header) throw InputError(source, 0, "file is empty (a header row is required)");
  return t;
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path, 0, "cannot open file");
  return parse_csv(in, path);
}

NetworkFile read_network_csv(const std::string& path) {
  const CsvTable t = read_csv(path);
  const std::size_t pc = t.column("paper_id");
  const std::size_t ac = t.column("author_id");
  std::vector<std::pair<std::int64_t, std::int64_t>> edges;
  edges.reserve(t.rows.size());
  std::vector<std::int64_t> pl, al;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    edges.emplace_back(parse_id(t, r, pc), parse_id(t, r, ac));
    pl.push_back(edges.back().first);
    al.push_back(edges.back().second);
  }
  if (edges.empty()) throw InputError(path, 0, "network has no authorship edges");
  NetworkFile file{{}, IdMap(std::move(pl)), IdMap(std::move(al))};
  std::vector<std::pair<PaperId, AuthorId>> dense;
  dense.reserve(edges.size());
  for (const auto& [p, a] : edges) dense.emplace_back(file.papers.find(p), file.authors.find(a));
  file.net = AuthorshipNetwork::from_edges(file.authors.size(), file.papers.size(), dense);
  return file;
}

void write_network_csv(const std::string& path, const AuthorshipNetwork& net, const IdMap& papers,
                       const IdMap& authors) {
  std::ofstream out = open_out(path);
  out << "paper_id,author_id\n";
  for (PaperId p = 0; p < net.num_papers(); ++p) {
    for (AuthorId a : net.authors_of(p)) out << papers.label(p) << ',' << authors.label(a) << '\n';
  }
}

AuthorRankings read_rankings_csv(const std::string& path, const NetworkFile& network) {
  const CsvTable t = read_csv(path);
  const std::size_t ac = t.column("author_id");
  const std::size_t pc = t.column("paper_id");
  const std::size_t rc = t.column("rank");
  const AuthorshipNetwork& net = network.net;

  std::map<AuthorId, std::map<std::int64_t, PaperId>> by_author;
  std::map<AuthorId, std::size_t> first_line;
  std::set<std::pair<AuthorId, PaperId>> listed;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const std::int64_t alabel = parse_id(t, r, ac);
    const std::int64_t plabel = parse_id(t, r, pc);
    const std::int64_t rank = parse_id(t, r, rc);
    const AuthorId a = network.authors.find(alabel);
    if (a == network.authors.size()) {
      throw InputError(path, t.lines[r], "author " + std::to_string(alabel) + " is not in the network");
    }
    const PaperId p = network.papers.find(plabel);
    if (p == network.papers.size() || !net.owns(a, p)) {
      throw InputError(path, t.lines[r],
                       "author " + std::to_string(alabel) + " does not own paper " + std::to_string(plabel));
    }
    if (!listed.emplace(a, p).second) {
      throw InputError(path, t.lines[r],
                       "author " + std::to_string(alabel) + " lists paper " + std::to_string(plabel) +
                           " twice");
    }
    auto& ranks = by_author[a];
    first_line.emplace(a, t.lines[r]);
    if (!ranks.emplace(rank, p).second) {
      throw InputError(path, t.lines[r],
                       "author " + std::to_string(alabel) + " repeats rank " + std::to_string(rank) +
                           " (tied positions are not supported)");
    }
  }

  AuthorRankings rankings(net.num_authors());
  for (auto& [a, ranks] : by_author) {
    const std::size_t n = net.papers_of(a).size();
    std::vector<PaperId> order;
    std::int64_t expect = 1;
    for (const auto& [rank, p] : ranks) {
      if (rank != expect) {
        throw InputError(path, first_line[a],
                         "ranks of author " + std::to_string(network.authors.label(a)) +
                             " must be exactly 1.." + std::to_string(n));
      }
      order.push_back(p);
      ++expect;
    }
    if (order.size() != n) {
      throw InputError(path, first_line[a],
                       "author " + std::to_string(network.authors.label(a)) + " ranked " +
                           std::to_string(order.size()) + " of " + std::to_string(n) + " papers");
    }
    rankings.set(net, a, std::move(order));
  }
  return rankings;
}

void write_rankings_csv(const std::string& path, const AuthorshipNetwork& net,
                        const AuthorRankings& rankings, const IdMap& papers, const IdMap& authors) {
  std::ofstream out = open_out(path);
  out << "author_id,paper_id,rank\n";
  for (AuthorId a = 0; a < net.num_authors(); ++a) {
    if (!rankings.has(a)) continue;
    const auto& order = rankings.order(a);
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
      out << authors.label(a) << ',' << papers.label(order[pos]) << ',' << pos + 1 << '\n';
    }
  }
}

ScoreVector read_scores_csv(const std::string& path, const IdMap& papers) {
  const CsvTable t = read_csv(path);
  const std::size_t pc = t.column("paper_id");
  std::size_t sc = t.header.size();
  for (const char* name : {"score", "review_score", "raw"}) {
    sc = t.find_column(name);
    if (sc != t.header.size()) break;
  }
  if (sc == t.header.size()) {
    throw InputError(path, 1, "missing score column (score, review_score or raw)");
  }
  ScoreVector scores(papers.size(), 0.0);
  std::vector<bool> seen(papers.size(), false);
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const std::int64_t label = parse_id(t, r, pc);
    const std::size_t p = papers.find(label);
    if (p == papers.size()) {
      throw InputError(path, t.lines[r], "paper " + std::to_string(label) + " is not in the network");
    }
    if (seen[p]) throw InputError(path, t.lines[r], "duplicate score for paper " + std::to_string(label));
    seen[p] = true;
    scores[p] = parse_real(t, r, sc);
  }
  for (std::size_t p = 0; p < papers.size(); ++p) {
    if (!seen[p]) throw InputError(path, 0, "no score for paper " + std::to_string(papers.label(p)));
  }
  return scores;
}

void write_conference_scores_csv(const std::string& path, std::span<const double> quality,
                                 std::span<const double> reviews, const IdMap& papers) {
  std::ofstream out = open_out(path);
  out << "paper_id,true_quality,review_score\n";
  for (std::size_t p = 0; p < quality.size(); ++p) {
    out << papers.label(p) << ',' << format_double(quality[p]) << ',' << format_double(reviews[p])
        << '\n';
  }
}

void write_adjusted_csv(const std::string& path, std::span<const double> raw,
                        const AdjustedScores& adjusted, const IdMap& papers) {
  std::ofstream out = open_out(path);
  out << "paper_id,raw,adjusted,modified\n";
  for (std::size_t p = 0; p < raw.size(); ++p) {
    out << papers.label(p) << ',' << format_double(raw[p]) << ','
        << format_double(adjusted.values[p]) << ',' << (adjusted.modified_mask[p] ? "true" : "false")
        << '\n';
  }
}

AdjustedFile read_adjusted_csv(const std::string& path, const IdMap& papers) {
  const CsvTable t = read_csv(path);
  const std::size_t pc = t.column("paper_id");
  const std::size_t rc = t.column("raw");
  const std::size_t ac = t.column("adjusted");
  const std::size_t mc = t.column("modified");
  AdjustedFile f{ScoreVector(papers.size()), ScoreVector(papers.size()),
                 std::vector<bool>(papers.size(), false)};
  std::vector<bool> seen(papers.size(), false);
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const std::int64_t label = parse_id(t, r, pc);
    const std::size_t p = papers.find(label);
    if (p == papers.size() || seen[p]) {
      throw InputError(path, t.lines[r], "unknown or duplicate paper " + std::to_string(label));
    }
    seen[p] = true;
    f.raw[p] = parse_real(t, r, rc);
    f.adjusted[p] = parse_real(t, r, ac);
    const std::string& m = t.rows[r][mc];
    if (m != "true" && m != "false") {
      throw InputError(path, t.lines[r], "column 'modified' must be true or false");
    }
    f.modified[p] = m == "true";
  }
  for (std::size_t p = 0; p < papers.size(); ++p) {
    if (!seen[p]) throw InputError(path, 0, "no row for paper " + std::to_string(papers.label(p)));
  }
  return f;
}

void write_partition_csvs(const std::string& blocks_path, const std::string& owners_path,
                          const Partition& partition, const IdMap& papers, const IdMap& authors) {
  std::ofstream blocks = open_out(blocks_path);
  blocks << "block_id,paper_id\n";
  std::ofstream owners = open_out(owners_path);
  owners << "block_id,owner_author_id\n";
  for (std::size_t b = 0; b < partition.size(); ++b) {
    for (PaperId p : partition.blocks[b]) blocks << b << ',' << papers.label(p) << '\n';
    for (AuthorId a : partition.owners[b]) owners << b << ',' << authors.label(a) << '\n';
  }
}

std::vector<ReviewRecord> read_review_records_csv(const std::string& path) {
  const CsvTable t = read_csv(path);
  const std::size_t ic = t.column("paper_id");
  const std::size_t sc = t.column("score");
  const std::size_t oc = t.column("outcome");
  const std::size_t yc = t.column("year");
  const std::size_t lc = t.column("scale_lo");
  const std::size_t hc = t.column("scale_hi");
  std::vector<ReviewRecord> records;
  records.reserve(t.rows.size());
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    ReviewRecord rec;
    rec.paper_id = t.rows[r][ic];
    rec.score = parse_real(t, r, sc);
    try {
      rec.outcome = outcome_from_string(t.rows[r][oc]);
    } catch (const std::invalid_argument& e) {
      throw InputError(path, t.lines[r], e.what());
    }
    rec.year = t.rows[r][yc];
    rec.scale_lo = parse_real(t, r, lc);
    rec.scale_hi = parse_real(t, r, hc);
    if (!(rec.scale_lo < rec.scale_hi)) {
      throw InputError(path, t.lines[r], "scale_lo must be below scale_hi");
    }
    if (rec.score < rec.scale_lo || rec.score > rec.scale_hi) {
      throw InputError(path, t.lines[r], "score lies outside [scale_lo, scale_hi]");
    }
    records.push_back(std::move(rec));
  }
  return records;
}

}  // namespace isomech
