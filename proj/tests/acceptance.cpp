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


// Acceptance suite. Prints one line per criterion and exits non-zero when
// any criterion fails. Criteria that need external data print SKIP.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <string>
#include <thread>

#include "fixture.hpp"
#include "isomech/audit.hpp"
#include "isomech/isotonic.hpp"
#include "isomech/mechanism.hpp"
#include "isomech/selection.hpp"
#include "isomech/simlab.hpp"
#include "isomech/synthesis.hpp"
#include "oracles.hpp"

using namespace isomech;

namespace {

enum class Status { kPass, kFail, kSkip };

struct Outcome {
  Status status;
  std::string detail;
};

Outcome pass_if(bool ok, std::string detail) { return {ok ? Status::kPass : Status::kFail, std::move(detail)}; }

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

int failures = 0;

void run(const char* name, double limit_seconds, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {Status::kFail, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (out.status != Status::kSkip && secs > limit_seconds) {
    out.status = Status::kFail;
    out.detail += fmt("; runtime %.1f s exceeds %.0f s", secs, limit_seconds);
  }
  const char* tag = out.status == Status::kPass ? "PASS" : out.status == Status::kFail ? "FAIL" : "SKIP";
  if (out.status == Status::kFail) ++failures;
  std::printf("%s %-26s %8.3f s  %s\n", tag, name, secs, out.detail.c_str());
  std::fflush(stdout);
}

Outcome golden_fixture() {
  const AuthorshipNetwork net = fixture::network();
  const AuthorRankings rk = fixture::rankings(net);
  const std::vector<double> raw = fixture::scores();
  const Partition part = greedy_partition(net);
  const bool blocks_ok = part.blocks == std::vector<std::vector<std::size_t>>{
                                            {0, 1, 2, 3, 4, 5}, {6, 7, 8, 9}, {10, 11}};
  const AdjustedScores adj = adjusted_scores(net, rk, raw, part);
  const bool scores_ok =
      adj.values == std::vector<double>{3.5, 3.5, 3.5, 3.5, 3.5, 3.5, 8.5, 8.5, 8.5, 8.5, 11.5, 11.5};
  const SelectionResult sel = select({Protocol::kBlind, 2, 1}, net, &rk, raw, adj.values);
  const bool pick_ok = sel.paper_ids() == std::vector<std::size_t>{8};
  return pass_if(blocks_ok && scores_ok && pick_ok,
                 std::string("blocks ") + (blocks_ok ? "ok" : "WRONG") + ", adjusted " +
                     (scores_ok ? "ok" : "WRONG") + ", blind k=2 F=1 picks paper " +
                     std::to_string(sel.selected.empty() ? 0 : sel.selected[0].paper + 1));
}

Outcome projection_oracle() {
  std::mt19937_64 rng(20240601);
  double worst = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const std::size_t n = 1 + rng() % 8;
    const std::vector<double> y = oracle::random_vector(rng, n);
    const std::vector<double> expect = oracle::isotonic_by_enumeration(y);
    const ScoreVector got = pava_descending(y).fitted;
    for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::abs(got[i] - expect[i]));
  }
  return pass_if(worst <= 1e-9, fmt("1000 vectors, max deviation %.3g", worst));
}

Outcome majorization_step() {
  const ExactCheckReport r = verify_majorization_step(10000, 1, {2, 8, 1.0});
  return pass_if(r.passed(), fmt("%.0f trials, %.0f violations", double(r.trials), double(r.violations)));
}

Outcome individual_rationality() {
  const ExactCheckReport r = verify_individual_rationality(100000, 2);
  return pass_if(r.passed(), fmt("%.0f vectors, %.0f violations", double(r.trials), double(r.violations)));
}

Outcome truthfulness(std::size_t quota, const ScalarUtility& u, std::uint64_t seed) {
  const std::vector<double> R{3, 2, 1, 0};
  const TruthfulnessReport rep =
      verify_truthfulness(R, VectorUtility::blind(BlindUtility(quota, u)), 1.0, 100000, seed);
  return pass_if(rep.truthful && rep.permutations.size() == 24,
                 fmt("k=%.0f, 23 alternatives, worst paired z = %.2f (limit 3)", double(quota), rep.worst_z));
}

Outcome truthfulness_convex() {
  const ScalarUtility u = ScalarUtility::exponential();
  const Outcome a = truthfulness(1, u, 3);
  const Outcome b = truthfulness(2, u, 4);
  return {a.status == Status::kPass && b.status == Status::kPass ? Status::kPass : Status::kFail,
          a.detail + "; " + b.detail};
}

Outcome truthfulness_monotone() {
  const ScalarUtility u = ScalarUtility::threshold_sigmoid(3.0, 0.5);
  if (u.convex() || !u.nondecreasing()) return {Status::kFail, "utility is not monotone non-convex"};
  return truthfulness(1, u, 5);
}

struct SimulationRun {
  SweepResult result;
  bool done = false;
};

SimulationRun& simulation() {
  static SimulationRun run;
  if (!run.done) {
    SweepConfig cfg;
    cfg.network.num_authors = 500;
    cfg.network.num_papers = 1000;
    cfg.epsilons = {0.25, 2.0, 4.0};
    cfg.quotas = {1, 5};
    cfg.winners = {1};
    cfg.protocols = {Protocol::kBenchmark, Protocol::kBlind};
    cfg.rounds = 200;
    cfg.jobs = std::max(1u, std::thread::hardware_concurrency());
    run.result = run_sweep(cfg);
    run.done = true;
  }
  return run;
}

double combined_sem(const SweepCell& a, const SweepCell& b) { return std::hypot(a.sem, b.sem); }

Outcome simulation_gap() {
  const SweepResult& r = simulation().result;
  auto gap = [&](double eps) {
    return paired_gap(r.at(eps, 1, 1, Protocol::kBlind), r.at(eps, 1, 1, Protocol::kBenchmark));
  };
  const PairedGap g = gap(2.0);
  const bool beats = g.mean >= 2.0 * g.sem;
  const double low = gap(0.25).mean, high = gap(4.0).mean;
  const bool trend = low < high;
  const double indep = combined_sem(r.at(2.0, 1, 1, Protocol::kBlind), r.at(2.0, 1, 1, Protocol::kBenchmark));
  return pass_if(beats && trend,
                 fmt("eps=2: blind - benchmark %.4f, 2*SEM %.4f (unpaired 2*SEM %.4f)", g.mean,
                     2.0 * g.sem, 2.0 * indep) +
                     fmt("; gap eps=0.25 %.4f < eps=4 %.4f", low, high));
}

Outcome quota_trend() {
  const SweepResult& r = simulation().result;
  const SweepCell& k1 = r.at(2.0, 1, 1, Protocol::kBlind);
  const SweepCell& k5 = r.at(2.0, 5, 1, Protocol::kBlind);
  const PairedGap g = paired_gap(k1, k5);
  const double indep = combined_sem(k1, k5);
  return pass_if(g.mean >= -2.0 * g.sem && g.mean >= -2.0 * indep,
                 fmt("eps=2: blind k=1 %.4f, k=5 %.4f, 2*SEM %.4f (unpaired %.4f)", k1.mean, k5.mean,
                     2.0 * g.sem, 2.0 * indep));
}

Outcome modified_fraction() {
  const char* path = std::getenv("ISOMECH_ICLR_EDGES");
  if (!path || !*path) {
    std::fprintf(stderr, "warning: ISOMECH_ICLR_EDGES is not set; modified-fraction check skipped\n");
    return {Status::kSkip, "no external edge file (set ISOMECH_ICLR_EDGES)"};
  }
  NetworkModel m;
  m.kind = NetworkModel::Kind::kFromFile;
  m.path = path;
  m.strict_iclr_counts = true;
  const AuthorshipNetwork net = gen_network(m, 0);
  const std::uint64_t seed = 7;
  const ScoreVector q = gen_quality(net, QualityModel{}, seed);
  const ScoreVector y = gen_reviews(q, NoiseModel{1.0}, seed);
  const AdjustedScores adj = adjusted_scores(net, truthful_rankings(net, q), y, greedy_partition(net));
  const double f = fraction_modified(adj);
  return pass_if(f >= 0.29 && f <= 0.39, fmt("fraction modified %.4f (band 0.29..0.39)", f));
}

Outcome audit_recovery() {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> score(0.0, 9.0), u01(0.0, 1.0);
  std::vector<double> s(10000);
  std::vector<int> y(10000);
  for (std::size_t i = 0; i < s.size(); ++i) {
    s[i] = score(rng);
    y[i] = u01(rng) < 1.0 / (1.0 + std::exp(9.0 - 1.5 * s[i])) ? 1 : 0;
  }
  LogisticOptions opt;
  opt.lambda = 1e-6;
  const LogisticFit fit = fit_logistic(s, y, opt);
  const double rel_slope = std::abs(fit.slope - 1.5) / 1.5;

  double worst_fd = 0.0;
  const double h = 1e-4;
  for (int i = 0; i < 100; ++i) {
    const double x = 9.0 * i / 99.0;
    const double fd = (fit.probability(x + h) - 2.0 * fit.probability(x) + fit.probability(x - h)) / (h * h);
    const double an = second_derivative(fit, x);
    worst_fd = std::max(worst_fd, std::abs(fd - an) / std::abs(an));
  }

  const ConvexityReport rep = convexity_report(fit, 0.0, 9.0);
  std::size_t mismatches = 0;
  for (std::size_t i = 0; i < rep.grid.size(); ++i) {
    if (rep.convex_at[i] != (fit.probability(rep.grid[i]) < 0.5)) ++mismatches;
  }
  return pass_if(fit.converged && rel_slope <= 0.05 && worst_fd <= 1e-4 && mismatches == 0,
                 fmt("slope %.4f (rel err %.4f), max FD rel err %.2g, convexity mismatches %.0f",
                     fit.slope, rel_slope, worst_fd, double(mismatches)));
}

Outcome sem_formula() {
  std::vector<ReviewRecord> rs;
  for (int i = 0; i < 100; ++i) {
    rs.push_back({"p" + std::to_string(i), 5.2, i < 25 ? isomech::Outcome::kBest : isomech::Outcome::kRejected,
                  "", 0.0, 9.0});
  }
  const std::vector<double> edges{5.0, 5.5};
  const EmpiricalCurve c = bucket_probabilities(rs, edges, at_least(isomech::Outcome::kBest));
  const double sem = c.at(0).sem;
  return pass_if(c[0].n == 100 && std::abs(sem - 0.04330127) <= 1e-8, fmt("n=100, p=%.2f, SEM %.8f", *c[0].p, sem));
}

}  // namespace

int main() {
  run("golden_fixture", 1, golden_fixture);
  run("projection_oracle", 10, projection_oracle);
  run("majorization_step", 30, majorization_step);
  run("individual_rationality", 30, individual_rationality);
  run("truthfulness_convex", 300, truthfulness_convex);
  run("truthfulness_quota1", 300, truthfulness_monotone);
  run("simulation_gap", 600, simulation_gap);
  run("quota_trend", 600, quota_trend);
  run("modified_fraction", 600, modified_fraction);
  run("audit_recovery", 60, audit_recovery);
  run("sem_formula", 1, sem_formula);
  std::printf("%s: %d failing criteria\n", failures ? "FAILED" : "OK", failures);
  return failures ? 1 : 0;
}
