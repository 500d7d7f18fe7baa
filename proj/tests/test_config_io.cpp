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


#include <filesystem>
#include <fstream>
#include <unistd.h>
#include <sstream>

#include <doctest.h>

#include "fixture.hpp"
#include "isomech/config.hpp"
#include "isomech/csv_io.hpp"
#include "isomech/errors.hpp"

using namespace isomech;
namespace fs = std::filesystem;

namespace {

class TempDir {
 public:
  TempDir() : path_(fs::temp_directory_path() / ("isomech_io_" + std::to_string(::getpid()))) {
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }

  std::string write(const std::string& name, const std::string& text) const {
    const fs::path p = path_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
};

// Line number carried by the InputError thrown from `f`, or 0.
template <typename F>
std::size_t error_line(F&& f) {
  try {
    f();
  } catch (const InputError& e) {
    return e.line();
  }
  return 0;
}

RunConfig parse(const std::string& text) {
  std::istringstream in(text);
  return parse_run_config(in, "test.ini");
}

const std::string kNet = "paper_id,author_id\n10,7\n11,7\n11,3\n";

}  // namespace

TEST_CASE("csv parsing") {
  std::istringstream in("a, b\n\n 1 ,2\n3,4,5\n");
  CHECK(error_line([&] { parse_csv(in, "x.csv"); }) == 4);
  std::istringstream ok("a,b\n1, 2\n");
  const CsvTable t = parse_csv(ok, "x.csv");
  CHECK(t.header[1] == "b");
  CHECK(t.rows[0][1] == "2");
  CHECK(t.column("a") == 0);
  CHECK_THROWS_AS(t.column("c"), InputError);
  std::istringstream empty("\n\n");
  CHECK_THROWS_AS(parse_csv(empty, "x.csv"), InputError);
  CHECK_THROWS_AS(read_csv("/nonexistent/file.csv"), InputError);
}

TEST_CASE("id maps use sorted labels") {
  const IdMap m({30, 10, 20, 10});
  CHECK(m.size() == 3);
  CHECK(m.label(0) == 10);
  CHECK(m.find(30) == 2);
  CHECK(m.find(99) == 3);
  CHECK(IdMap::dense(4).label(3) == 3);
}

TEST_CASE("network and rankings files") {
  TempDir dir;
  const NetworkFile nf = read_network_csv(dir.write("net.csv", kNet));
  CHECK(nf.net.num_papers() == 2);
  CHECK(nf.net.num_authors() == 2);
  CHECK(nf.authors.label(0) == 3);
  CHECK(nf.net.papers_of(1) == std::vector<std::size_t>{0, 1});

  CHECK(error_line([&] { read_network_csv(dir.write("bad.csv", "paper_id,author_id\n1,x\n")); }) == 2);
  CHECK(error_line([&] { read_network_csv(dir.write("neg.csv", "paper_id,author_id\n1,2\n-1,2\n")); }) == 3);
  CHECK_THROWS_AS(read_network_csv(dir.write("none.csv", "paper_id,author_id\n")), InputError);

  const std::string good = "author_id,paper_id,rank\n7,11,1\n7,10,2\n3,11,1\n";
  const AuthorRankings rk = read_rankings_csv(dir.write("rk.csv", good), nf);
  CHECK(rk.order(1) == std::vector<std::size_t>{1, 0});

  // Author 3 abstains.
  const AuthorRankings partial =
      read_rankings_csv(dir.write("rk2.csv", "author_id,paper_id,rank\n7,11,1\n7,10,2\n"), nf);
  CHECK_FALSE(partial.has(0));

  CHECK(error_line([&] {
          read_rankings_csv(dir.write("tie.csv", "author_id,paper_id,rank\n7,11,1\n7,10,1\n"), nf);
        }) == 3);
  CHECK(error_line([&] {
          read_rankings_csv(dir.write("gap.csv", "author_id,paper_id,rank\n7,11,1\n7,10,3\n"), nf);
        }) == 2);
  CHECK(error_line([&] {
          read_rankings_csv(dir.write("own.csv", "author_id,paper_id,rank\n3,10,1\n"), nf);
        }) == 2);
  CHECK(error_line([&] {
          read_rankings_csv(dir.write("dup.csv", "author_id,paper_id,rank\n7,11,1\n7,11,2\n"), nf);
        }) == 3);
  CHECK(error_line([&] {
          read_rankings_csv(dir.write("short.csv", "author_id,paper_id,rank\n7,11,1\n"), nf);
        }) == 2);
  CHECK(error_line([&] {
          read_rankings_csv(dir.write("who.csv", "author_id,paper_id,rank\n5,11,1\n"), nf);
        }) == 2);

  // Round trip.
  write_network_csv(dir.file("net_out.csv"), nf.net, nf.papers, nf.authors);
  const NetworkFile again = read_network_csv(dir.file("net_out.csv"));
  CHECK(again.net.papers_of(1) == nf.net.papers_of(1));
  write_rankings_csv(dir.file("rk_out.csv"), nf.net, rk, nf.papers, nf.authors);
  CHECK(read_rankings_csv(dir.file("rk_out.csv"), nf).order(1) == rk.order(1));
}

TEST_CASE("scores and adjusted files") {
  TempDir dir;
  const NetworkFile nf = read_network_csv(dir.write("net.csv", kNet));
  const ScoreVector s = read_scores_csv(dir.write("s.csv", "paper_id,review_score\n11,2.5\n10,4\n"), nf.papers);
  CHECK(s == ScoreVector{4.0, 2.5});
  CHECK(error_line([&] { read_scores_csv(dir.write("s2.csv", "paper_id,score\n10,1\n10,2\n"), nf.papers); }) == 3);
  CHECK(error_line([&] { read_scores_csv(dir.write("s3.csv", "paper_id,score\n10,abc\n"), nf.papers); }) == 2);
  CHECK(error_line([&] { read_scores_csv(dir.write("s4.csv", "paper_id,score\n99,1\n"), nf.papers); }) == 2);
  CHECK(error_line([&] { read_scores_csv(dir.write("s5.csv", "paper_id,grade\n10,1\n"), nf.papers); }) == 1);
  CHECK_THROWS_AS(read_scores_csv(dir.write("s6.csv", "paper_id,score\n10,1\n"), nf.papers), InputError);
  CHECK_THROWS_AS(read_scores_csv(dir.write("s7.csv", "paper_id,score\n10,nan\n11,1\n"), nf.papers),
                  InputError);

  const AuthorshipNetwork net = fixture::network();
  const std::vector<double> raw = fixture::scores();
  const AdjustedScores adj = adjusted_scores(net, fixture::rankings(net), raw, greedy_partition(net));
  const IdMap labels = IdMap::dense(12);
  write_adjusted_csv(dir.file("adj.csv"), raw, adj, labels);
  const AdjustedFile back = read_adjusted_csv(dir.file("adj.csv"), labels);
  CHECK(back.raw == raw);
  CHECK(back.adjusted == adj.values);
  CHECK(back.modified == adj.modified_mask);

  write_partition_csvs(dir.file("blocks.csv"), dir.file("owners.csv"), greedy_partition(net), labels,
                       IdMap::dense(3));
  const CsvTable blocks = read_csv(dir.file("blocks.csv"));
  CHECK(blocks.header == std::vector<std::string>{"block_id", "paper_id"});
  CHECK(blocks.rows.size() == 12);
  CHECK(read_csv(dir.file("owners.csv")).rows.size() == 3);
}

TEST_CASE("review records file") {
  TempDir dir;
  const auto recs = read_review_records_csv(dir.write(
      "r.csv", "paper_id,score,outcome,year,scale_lo,scale_hi\nA1,5.5,accepted,2021,1,10\nA2,3,,2021,1,10\n"));
  REQUIRE(recs.size() == 2);
  CHECK(recs[0].outcome == Outcome::kAccepted);
  CHECK(recs[1].outcome == Outcome::kRejected);
  CHECK(normalize_scores(recs)[0].score == doctest::Approx(4.5));

  const std::string head = "paper_id,score,outcome,year,scale_lo,scale_hi\n";
  CHECK(error_line([&] { read_review_records_csv(dir.write("b1.csv", head + "A,5,maybe,2021,1,10\n")); }) == 2);
  CHECK(error_line([&] { read_review_records_csv(dir.write("b2.csv", head + "A,5,accepted,2021,3,3\n")); }) == 2);
  CHECK(error_line([&] { read_review_records_csv(dir.write("b3.csv", head + "A,11,accepted,2021,1,10\n")); }) == 2);
}

TEST_CASE("format_double is shortest round-trip") {
  CHECK(format_double(3.5) == "3.5");
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1e-20) == "1e-20");
  CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("run config") {
  SUBCASE("defaults") {
    const RunConfig c = parse("");
    CHECK(c.sweep.rounds == 200);
    CHECK(c.sweep.epsilons.size() == 5);
    CHECK(c.protocol.kind == Protocol::kBlind);
    CHECK(c.audit.lambda == 1.0);
  }
  SUBCASE("full file") {
    const RunConfig c = parse(
        "[network]\nkind = uniform\nauthors = 500\npapers = 1000\n"
        "[quality]\nkind = productivity_weighted\nbonus_per_paper = false\n"
        "[noise]\nreview_var = 2.5\n"
        "[protocol]\nkind = informed_max\nquota = 3\nwinners = 2\n"
        "[sweep]\nepsilons = 0.25, 4\nquotas = 1,5\nwinners = 1\nprotocols = benchmark, blind\n"
        "rounds = 50\nseed = 7\njobs = 2\n"
        "[audit]\noutcome = accepted\nlambda = 0.5\nbuckets = high_resolution\n"
        "[output]\ndir = out\n");
    CHECK(c.sweep.network.num_authors == 500);
    CHECK(c.sweep.quality.kind == QualityModel::Kind::kProductivityWeighted);
    CHECK_FALSE(c.sweep.quality.bonus_per_paper);
    CHECK(c.noise.review_var == 2.5);
    CHECK(c.protocol.kind == Protocol::kInformedMax);
    CHECK(c.protocol.quota == 3);
    CHECK(c.sweep.epsilons == std::vector<double>{0.25, 4.0});
    CHECK(c.sweep.protocols == std::vector<Protocol>{Protocol::kBenchmark, Protocol::kBlind});
    CHECK(c.sweep.seed == 7);
    CHECK(c.sweep.jobs == 2);
    CHECK(c.audit.buckets == "high_resolution");
    CHECK(c.output_dir == "out");
    CHECK(c.content_hash != 0);
  }
  SUBCASE("content hash tracks the text") {
    CHECK(parse("[noise]\nreview_var = 1\n").content_hash == parse("[noise]\nreview_var = 1\n").content_hash);
    CHECK(parse("[noise]\nreview_var = 1\n").content_hash != parse("[noise]\nreview_var = 2\n").content_hash);
    CHECK(fnv1a("") == 0xcbf29ce484222325ULL);
  }
  SUBCASE("strict schema") {
    CHECK_THROWS_AS(parse("[nosie]\nreview_var = 1\n"), InputError);
    CHECK_THROWS_AS(parse("[noise]\nreview_variance = 1\n"), InputError);
    CHECK_THROWS_AS(parse("review_var = 1\n"), InputError);
    CHECK_THROWS_AS(parse("[noise]\nreview_var = -1\n"), InputError);
    CHECK_THROWS_AS(parse("[noise]\nreview_var = one\n"), InputError);
    CHECK_THROWS_AS(parse("[sweep]\nrounds = 1\n"), InputError);
    CHECK_THROWS_AS(parse("[sweep]\nprotocols = blind, lottery\n"), InputError);
    CHECK_THROWS_AS(parse("[network]\nkind = from_file\n"), InputError);
    CHECK_THROWS_AS(parse("[audit]\noutcome = rejected\n"), InputError);
    CHECK_THROWS_AS(parse("[quality]\nbonus_per_paper = maybe\n"), InputError);
    CHECK(error_line([] { parse("[noise]\nreview_var = 1\n[noise\n"); }) == 3);
    CHECK_THROWS_AS(load_run_config("/nonexistent.ini"), InputError);
  }
}
