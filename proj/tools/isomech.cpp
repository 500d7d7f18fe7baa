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


// Command-line front end. Exit codes: 0 ok, 1 verification failure,
// 2 input error, 3 runtime error, 4 degenerate fit.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "isomech/audit.hpp"
#include "isomech/config.hpp"
#include "isomech/csv_io.hpp"
#include "isomech/errors.hpp"
#include "isomech/mechanism.hpp"
#include "isomech/report_json.hpp"
#include "isomech/selection.hpp"
#include "isomech/simlab.hpp"
#include "isomech/synthesis.hpp"

#ifndef ISOMECH_VERSION
#define ISOMECH_VERSION "0.0.0"
#endif

namespace fs = std::filesystem;
using namespace isomech;

namespace {

enum Exit { kOk = 0, kVerifyFailed = 1, kInputError = 2, kRuntimeError = 3, kDegenerate = 4 };

struct Globals {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  unsigned jobs = 1;
  std::string out_dir;
  std::string command;
};

// Loaded config, or defaults when no --config was given.
RunConfig load(const Globals& g) {
  RunConfig cfg = g.config_path.empty() ? RunConfig{} : load_run_config(g.config_path);
  if (g.seed) cfg.sweep.seed = *g.seed;
  cfg.sweep.jobs = g.jobs;
  return cfg;
}

fs::path output_dir(const Globals& g, const RunConfig& cfg) {
  fs::path dir = ".";
  if (const char* env = std::getenv("ISOMECH_OUT_DIR"); env && *env) dir = env;
  if (!cfg.output_dir.empty()) dir = cfg.output_dir;
  if (!g.out_dir.empty()) dir = g.out_dir;
  fs::create_directories(dir);
  return dir;
}

std::string hex(std::uint64_t v) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

// Writes <file>.meta.json next to an output.
void sidecar(const fs::path& file, const Globals& g, const RunConfig& cfg,
             const nlohmann::json& extra = nlohmann::json::object()) {
  nlohmann::json meta = {{"tool", "isomech"},
                         {"version", ISOMECH_VERSION},
                         {"command", g.command},
                         {"output", file.filename().string()},
                         {"seed", cfg.sweep.seed},
                         {"config", g.config_path},
                         {"config_hash", hex(cfg.content_hash)}};
  meta.update(extra);
  std::ofstream(file.string() + ".meta.json") << meta.dump(2) << '\n';
}

void write_json(const fs::path& file, const nlohmann::json& j) { std::ofstream(file) << j.dump(2) << '\n'; }

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || item.find_first_not_of(" \t", used) != std::string::npos) {
      throw std::invalid_argument("cannot parse number '" + item + "'");
    }
    out.push_back(v);
  }
  return out;
}

// ---- generate -------------------------------------------------------------

struct GenerateOpts {
  std::optional<std::size_t> authors, papers;
  std::string network_file;
  std::optional<double> review_var;
};

int cmd_generate(const Globals& g, const GenerateOpts& o) {
  RunConfig cfg = load(g);
  NetworkModel& m = cfg.sweep.network;
  if (o.authors) m.num_authors = *o.authors;
  if (o.papers) m.num_papers = *o.papers;
  if (!o.network_file.empty()) {
    m.kind = NetworkModel::Kind::kFromFile;
    m.path = o.network_file;
  }
  if (o.review_var) cfg.noise.review_var = *o.review_var;
  cfg.noise.validate();

  const std::uint64_t seed = cfg.sweep.seed;
  IdMap papers, authors;
  AuthorshipNetwork net;
  if (m.kind == NetworkModel::Kind::kFromFile) {
    NetworkFile file = read_network_csv(m.path);
    net = gen_network(m, seed);  // validates counts when strict
    papers = file.papers;
    authors = file.authors;
  } else {
    net = gen_network(m, seed);
    papers = IdMap::dense(net.num_papers());
    authors = IdMap::dense(net.num_authors());
  }
  const ScoreVector q = gen_quality(net, cfg.sweep.quality, seed);
  const ScoreVector y = gen_reviews(q, cfg.noise, seed);
  const AuthorRankings rk = truthful_rankings(net, q);

  const fs::path dir = output_dir(g, cfg);
  const fs::path net_csv = dir / "network.csv", rk_csv = dir / "rankings.csv", sc_csv = dir / "scores.csv";
  write_network_csv(net_csv.string(), net, papers, authors);
  write_rankings_csv(rk_csv.string(), net, rk, papers, authors);
  write_conference_scores_csv(sc_csv.string(), q, y, papers);
  for (const fs::path& f : {net_csv, rk_csv, sc_csv}) sidecar(f, g, cfg, {{"review_var", cfg.noise.review_var}});
  std::printf("generated %zu papers, %zu authors, review variance %g\n", net.num_papers(),
              net.num_authors(), cfg.noise.review_var);
  std::printf("wrote %s, %s, %s\n", net_csv.c_str(), rk_csv.c_str(), sc_csv.c_str());
  return kOk;
}

// ---- adjust ---------------------------------------------------------------

struct AdjustOpts {
  std::string network, rankings, scores;
  bool allow_abstain = false;
};

int cmd_adjust(const Globals& g, const AdjustOpts& o) {
  const RunConfig cfg = load(g);
  const NetworkFile nf = read_network_csv(o.network);
  const AuthorRankings rk = read_rankings_csv(o.rankings, nf);
  const ScoreVector raw = read_scores_csv(o.scores, nf.papers);
  const Partition part = greedy_partition(nf.net);
  AdjustedScores adj;
  try {
    adj = adjusted_scores(nf.net, rk, raw, part, {o.allow_abstain});
  } catch (const std::invalid_argument& e) {
    throw InputError(o.rankings, 0, e.what());
  }

  const fs::path dir = output_dir(g, cfg);
  const fs::path adj_csv = dir / "adjusted.csv", blocks = dir / "partition_blocks.csv",
                 owners = dir / "partition_owners.csv";
  write_adjusted_csv(adj_csv.string(), raw, adj, nf.papers);
  write_partition_csvs(blocks.string(), owners.string(), part, nf.papers, nf.authors);
  const nlohmann::json inputs = {{"inputs", {o.network, o.rankings, o.scores}}};
  for (const fs::path& f : {adj_csv, blocks, owners}) sidecar(f, g, cfg, inputs);

  std::printf("papers %zu, authors %zu, blocks %zu\n", nf.net.num_papers(), nf.net.num_authors(), part.size());
  std::printf("fraction modified %.4f\n", fraction_modified(adj));
  for (std::size_t b : adj.unadjusted_blocks) {
    std::printf("warning: block %zu has no ranking owner; scores passed through unadjusted\n", b);
  }
  std::printf("wrote %s\n", adj_csv.c_str());
  return kOk;
}

// ---- select ---------------------------------------------------------------

struct SelectOpts {
  std::string network, rankings, adjusted;
  std::optional<std::string> protocol;
  std::optional<std::size_t> quota, winners;
};

int cmd_select(const Globals& g, const SelectOpts& o) {
  const RunConfig cfg = load(g);
  ProtocolSpec spec = cfg.protocol;
  if (o.protocol) spec.kind = protocol_from_string(*o.protocol);
  if (o.quota) spec.quota = *o.quota;
  if (o.winners) spec.winners = *o.winners;
  spec.validate();

  const NetworkFile nf = read_network_csv(o.network);
  const AdjustedFile adj = read_adjusted_csv(o.adjusted, nf.papers);
  std::optional<AuthorRankings> rk;
  if (spec.kind != Protocol::kBenchmark) {
    if (o.rankings.empty()) throw std::invalid_argument("--rankings is required for " + to_string(spec.kind));
    rk = read_rankings_csv(o.rankings, nf);
  }
  const SelectionResult res = select(spec, nf.net, rk ? &*rk : nullptr, adj.raw, adj.adjusted);

  const fs::path dir = output_dir(g, cfg);
  const fs::path out = dir / "selection.csv";
  {
    std::ofstream f(out);
    f << "protocol,rank,paper_id,raw_score,adjusted_score,key1,key2\n";
    for (std::size_t i = 0; i < res.selected.size(); ++i) {
      const SelectionEntry& e = res.selected[i];
      f << to_string(spec.kind) << ',' << i + 1 << ',' << nf.papers.label(e.paper) << ','
        << format_double(adj.raw[e.paper]) << ',' << format_double(adj.adjusted[e.paper]) << ','
        << format_double(e.key1) << ',' << (std::isnan(e.key2) ? std::string() : format_double(e.key2)) << '\n';
    }
  }
  sidecar(out, g, cfg,
          {{"protocol", to_string(spec.kind)}, {"quota", spec.quota}, {"winners", spec.winners}});

  std::printf("protocol %s, quota %zu, winners %zu, pool size %zu\n", to_string(spec.kind).c_str(),
              spec.quota, spec.winners, res.pool_size);
  for (std::size_t i = 0; i < res.selected.size(); ++i) {
    const PaperId p = res.selected[i].paper;
    std::printf("  %zu. paper %lld (raw %s, adjusted %s)\n", i + 1,
                static_cast<long long>(nf.papers.label(p)), format_double(adj.raw[p]).c_str(),
                format_double(adj.adjusted[p]).c_str());
  }
  std::printf("wrote %s\n", out.c_str());
  return kOk;
}

// ---- sweep ----------------------------------------------------------------

struct SweepOpts {
  std::optional<std::size_t> rounds;
  std::string epsilons;
};

int cmd_sweep(const Globals& g, const SweepOpts& o) {
  RunConfig cfg = load(g);
  if (o.rounds) cfg.sweep.rounds = *o.rounds;
  if (!o.epsilons.empty()) cfg.sweep.epsilons = parse_list(o.epsilons);
  cfg.sweep.validate();

  SweepResult res;
  try {
    res = run_sweep(cfg.sweep);
  } catch (const InputError&) {
    throw;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: sweep failed: %s\n", e.what());
    return kRuntimeError;
  }

  const fs::path dir = output_dir(g, cfg);
  const fs::path out = dir / "sweep.csv";
  {
    std::ofstream f(out);
    write_sweep_csv(f, res);
  }
  sidecar(out, g, cfg, {{"jobs", cfg.sweep.jobs}});

  std::printf("%8s %4s %4s %-13s %10s %9s\n", "epsilon", "k", "F", "protocol", "mean", "sem");
  for (const SweepCell& c : res.cells) {
    std::printf("%8g %4zu %4zu %-13s %10.4f %9.4f\n", c.epsilon, c.quota, c.winners,
                to_string(c.protocol).c_str(), c.mean, c.sem);
  }
  for (std::size_t e = 0; e < cfg.sweep.epsilons.size(); ++e) {
    std::printf("epsilon %g: mean fraction modified %.4f\n", cfg.sweep.epsilons[e], res.mean_fraction_modified[e]);
  }
  std::printf("wrote %s\n", out.c_str());
  return kOk;
}

// ---- verify ---------------------------------------------------------------

struct VerifyOpts {
  std::string check = "truthfulness";
  std::string scores = "3,2,1,0";
  std::string utility = "exponential";
  std::string params;
  std::size_t quota = 1;
  double noise_var = 1.0;
  std::optional<std::size_t> trials;
  std::size_t min_n = 2, max_n = 8;
};

int cmd_verify(const Globals& g, const VerifyOpts& o) {
  const RunConfig cfg = load(g);
  const std::uint64_t seed = cfg.sweep.seed;
  const std::vector<double> params = o.params.empty() ? std::vector<double>{} : parse_list(o.params);
  const ScalarUtility u = ScalarUtility::make(utility_kind_from_string(o.utility), params);

  nlohmann::json report;
  bool passed = false;
  if (o.check == "truthfulness") {
    const TruthfulnessReport rep = verify_truthfulness(
        parse_list(o.scores), VectorUtility::blind(BlindUtility(o.quota, u)), o.noise_var,
        o.trials.value_or(100000), seed);
    report = to_json(rep);
    passed = rep.truthful;
    std::printf("truthfulness: %s, n=%zu, %zu rankings, worst paired z %.3f\n", passed ? "truthful" : "VIOLATED",
                rep.n, rep.permutations.size(), rep.worst_z);
  } else if (o.check == "majorization" || o.check == "ir") {
    const RandomInstanceOptions ri{o.min_n, o.max_n, o.noise_var};
    const ExactCheckReport rep = o.check == "majorization"
                                     ? verify_majorization_step(o.trials.value_or(10000), seed, ri)
                                     : verify_individual_rationality(o.trials.value_or(100000), seed, &u, ri);
    report = to_json(rep);
    passed = rep.passed();
    std::printf("%s: %zu trials, %zu violations\n", rep.name.c_str(), rep.trials, rep.violations);
    for (const std::string& ex : rep.examples) std::printf("  %s\n", ex.c_str());
  } else {
    throw std::invalid_argument("unknown check '" + o.check + "' (truthfulness, majorization or ir)");
  }

  const fs::path dir = output_dir(g, cfg);
  const fs::path out = dir / "report.json";
  write_json(out, report);
  sidecar(out, g, cfg, {{"check", o.check}});
  std::printf("wrote %s\n", out.c_str());
  return passed ? kOk : kVerifyFailed;
}

// ---- audit ----------------------------------------------------------------

struct AuditOpts {
  std::string records;
  std::optional<std::string> outcome, buckets;
  std::optional<double> lambda, bucket_width;
};

int cmd_audit(const Globals& g, const AuditOpts& o) {
  RunConfig cfg = load(g);
  AuditSettings& a = cfg.audit;
  if (o.outcome) a.outcome = *o.outcome;
  if (o.buckets) a.buckets = *o.buckets;
  if (o.lambda) a.lambda = *o.lambda;
  if (o.bucket_width) a.bucket_width = *o.bucket_width;
  if (a.buckets != "uniform" && a.buckets != "high_resolution") {
    throw std::invalid_argument("--buckets must be uniform or high_resolution");
  }
  const OutcomePredicate pred = predicate_from_string(a.outcome);

  const std::vector<ReviewRecord> records = normalize_scores(read_review_records_csv(o.records));
  const std::vector<double> edges =
      a.buckets == "uniform" ? uniform_edges(a.bucket_width, a.range_lo, a.range_hi) : high_resolution_edges();
  const EmpiricalCurve curve = bucket_probabilities(records, edges, pred);
  LogisticOptions lo;
  lo.lambda = a.lambda;
  const LogisticFit fit = fit_logistic(records, pred, lo);

  const fs::path dir = output_dir(g, cfg);
  const fs::path curve_csv = dir / "curve.csv", fit_json = dir / "fit.json";
  {
    std::ofstream f(curve_csv);
    write_curve_csv(f, curve);
  }
  nlohmann::json fj;
  if (fit.converged) {
    const ConvexityReport rep = convexity_report(fit, a.range_lo, a.range_hi);
    fj = to_json(fit, rep);
    std::printf("verdict %s", to_string(rep.verdict).c_str());
    if (rep.saturation) std::printf(", s* = %.4f%s", *rep.saturation, rep.saturation_beyond_range ? " (beyond range)" : "");
    std::printf("\n");
  } else {
    fj = {{"beta0", fit.intercept}, {"beta1", fit.slope}, {"lambda", fit.lambda}, {"converged", false},
          {"iterations", fit.iterations}, {"gradient_norm", fit.gradient_norm}, {"verdict", nullptr}};
    std::fprintf(stderr, "warning: logistic fit did not converge; no convexity verdict\n");
  }
  fj["outcome"] = a.outcome;
  fj["records"] = records.size();
  write_json(fit_json, fj);
  const nlohmann::json extra = {{"inputs", {o.records}}, {"outcome", a.outcome}, {"buckets", a.buckets}};
  sidecar(curve_csv, g, cfg, extra);
  sidecar(fit_json, g, cfg, extra);
  std::printf("records %zu, beta0 %.6f, beta1 %.6f, lambda %g\n", records.size(), fit.intercept, fit.slope, fit.lambda);
  std::printf("wrote %s, %s\n", curve_csv.c_str(), fit_json.c_str());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"isomech: isotonic score adjustment for multi-author peer review"};
  app.set_version_flag("--version", ISOMECH_VERSION);
  app.require_subcommand(1);

  Globals g;
  app.add_option("--config", g.config_path, "INI run configuration")->check(CLI::ExistingFile);
  app.add_option("--seed", g.seed, "Master seed (overrides the config)");
  app.add_option("--jobs", g.jobs, "Worker threads for sweeps; results do not depend on it")
      ->check(CLI::PositiveNumber);
  app.add_option("--out", g.out_dir, "Output directory (default: config [output] dir, then $ISOMECH_OUT_DIR, then .)");

  GenerateOpts gen;
  auto* c_gen = app.add_subcommand("generate", "Draw a synthetic conference: network, truthful rankings, scores");
  c_gen->add_option("--authors", gen.authors, "Number of authors (uniform network)");
  c_gen->add_option("--papers", gen.papers, "Number of papers (uniform network)");
  c_gen->add_option("--network-file", gen.network_file, "Use this paper_id,author_id edge CSV")->check(CLI::ExistingFile);
  c_gen->add_option("--review-var", gen.review_var, "Review noise variance");

  AdjustOpts adj;
  auto* c_adj = app.add_subcommand("adjust", "Partition papers and compute adjusted scores");
  c_adj->add_option("--network", adj.network, "paper_id,author_id CSV")->required()->check(CLI::ExistingFile);
  c_adj->add_option("--rankings", adj.rankings, "author_id,paper_id,rank CSV")->required()->check(CLI::ExistingFile);
  c_adj->add_option("--scores", adj.scores, "paper_id,score CSV (review_score or raw also accepted)")
      ->required()
      ->check(CLI::ExistingFile);
  c_adj->add_flag("--allow-abstain", adj.allow_abstain, "Drop owners without a ranking instead of failing");

  SelectOpts sel;
  auto* c_sel = app.add_subcommand("select", "Pick best-paper winners from adjusted scores");
  c_sel->add_option("--network", sel.network, "paper_id,author_id CSV")->required()->check(CLI::ExistingFile);
  c_sel->add_option("--rankings", sel.rankings, "author_id,paper_id,rank CSV (not needed for benchmark)")
      ->check(CLI::ExistingFile);
  c_sel->add_option("--adjusted", sel.adjusted, "adjusted.csv from the adjust command")->required()->check(CLI::ExistingFile);
  c_sel->add_option("--protocol", sel.protocol, "benchmark, blind, informed_max or informed_min");
  c_sel->add_option("--quota", sel.quota, "Nominations per author (k)");
  c_sel->add_option("--winners", sel.winners, "Number of winners (F)");

  SweepOpts sw;
  auto* c_sw = app.add_subcommand("sweep", "Monte-Carlo comparison of selection protocols");
  c_sw->add_option("--rounds", sw.rounds, "Rounds per grid cell");
  c_sw->add_option("--epsilons", sw.epsilons, "Comma-separated review noise variances");

  VerifyOpts ver;
  auto* c_ver = app.add_subcommand("verify", "Numerical checks of truthfulness and the projection");
  c_ver->add_option("--check", ver.check, "truthfulness, majorization or ir")->capture_default_str();
  c_ver->add_option("--scores", ver.scores, "True scores, descending (truthfulness)")->capture_default_str();
  c_ver->add_option("--utility", ver.utility, "linear, exponential, softplus_power or threshold_sigmoid")
      ->capture_default_str();
  c_ver->add_option("--params", ver.params, "Comma-separated utility parameters");
  c_ver->add_option("--quota", ver.quota, "Blind utility quota k")->capture_default_str();
  c_ver->add_option("--noise-var", ver.noise_var, "Noise variance")->capture_default_str();
  c_ver->add_option("--trials", ver.trials, "Trials (default 10^5, or 10^4 for majorization)");
  c_ver->add_option("--min-n", ver.min_n, "Smallest random instance")->capture_default_str();
  c_ver->add_option("--max-n", ver.max_n, "Largest random instance")->capture_default_str();

  AuditOpts aud;
  auto* c_aud = app.add_subcommand("audit", "Bucketed outcome rates, logistic fit and convexity check");
  c_aud->add_option("--records", aud.records, "paper_id,score,outcome,year,scale_lo,scale_hi CSV")
      ->required()
      ->check(CLI::ExistingFile);
  c_aud->add_option("--outcome", aud.outcome, "accepted, spotlight, oral or best");
  c_aud->add_option("--lambda", aud.lambda, "Ridge strength on the slope");
  c_aud->add_option("--buckets", aud.buckets, "uniform or high_resolution");
  c_aud->add_option("--bucket-width", aud.bucket_width, "Width of uniform buckets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (*c_gen) return g.command = "generate", cmd_generate(g, gen);
    if (*c_adj) return g.command = "adjust", cmd_adjust(g, adj);
    if (*c_sel) return g.command = "select", cmd_select(g, sel);
    if (*c_sw) return g.command = "sweep", cmd_sweep(g, sw);
    if (*c_ver) return g.command = "verify", cmd_verify(g, ver);
    if (*c_aud) return g.command = "audit", cmd_audit(g, aud);
  } catch (const DegenerateFit& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kDegenerate;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kInputError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kRuntimeError;
  }
  return kInputError;
}
