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


#include <cmath>
#include <random>

#include <doctest.h>

#include "isomech/audit.hpp"
#include "isomech/errors.hpp"

using namespace isomech;

namespace {

ReviewRecord rec(double score, Outcome o, double lo = 0.0, double hi = 9.0) {
  return ReviewRecord{"p", score, o, "2021", lo, hi};
}

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

struct Sample {
  std::vector<double> s;
  std::vector<int> y;
};

Sample draw(std::uint64_t seed, std::size_t n, double b0, double b1) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> score(0.0, 9.0), u(0.0, 1.0);
  Sample out;
  for (std::size_t i = 0; i < n; ++i) {
    const double s = score(rng);
    out.s.push_back(s);
    out.y.push_back(u(rng) < sigmoid(b0 + b1 * s) ? 1 : 0);
  }
  return out;
}

LogisticFit fit_with(double b0, double b1) {
  LogisticFit f;
  f.intercept = b0;
  f.slope = b1;
  f.converged = true;
  return f;
}

}  // namespace

TEST_CASE("outcomes and predicates") {
  CHECK(outcome_from_string("") == Outcome::kRejected);
  CHECK(outcome_from_string(" Oral ") == Outcome::kOral);
  CHECK_THROWS_AS(outcome_from_string("withdrawn"), std::invalid_argument);
  const OutcomePredicate acc = predicate_from_string("accepted");
  CHECK(acc(Outcome::kBest));
  CHECK(acc(Outcome::kSpotlight));
  CHECK_FALSE(acc(Outcome::kRejected));
  const OutcomePredicate best = predicate_from_string("best");
  CHECK(best(Outcome::kBest));
  CHECK_FALSE(best(Outcome::kOral));
  CHECK_THROWS_AS(predicate_from_string("rejected"), std::invalid_argument);
}

TEST_CASE("normalize scores") {
  const auto out = normalize_scores({rec(4.5, Outcome::kRejected), rec(10, Outcome::kRejected, 1, 10),
                                     rec(5.5, Outcome::kRejected, 1, 10), rec(1, Outcome::kRejected, 1, 10)});
  CHECK(out[0].score == 4.5);
  CHECK(out[1].score == 9.0);
  CHECK(out[2].score == doctest::Approx(4.5));
  CHECK(out[3].score == 0.0);
  CHECK_THROWS_AS(normalize_scores({rec(3, Outcome::kRejected, 2, 2)}), std::invalid_argument);
}

TEST_CASE("bucket probabilities") {
  SUBCASE("SEM closed form") {
    std::vector<ReviewRecord> rs;
    for (int i = 0; i < 100; ++i) rs.push_back(rec(1.2, i < 25 ? Outcome::kAccepted : Outcome::kRejected));
    const std::vector<double> edges{1.0, 1.5};
    const EmpiricalCurve c = bucket_probabilities(rs, edges, at_least(Outcome::kAccepted));
    REQUIRE(c.size() == 1);
    CHECK(c[0].n == 100);
    CHECK(*c[0].p == 0.25);
    CHECK(std::abs(c[0].sem - 0.04330127) <= 1e-8);
    CHECK(binomial_sem(0.25, 100) == doctest::Approx(std::sqrt(0.25 * 0.75 / 100)));
  }
  SUBCASE("all accepted, empty buckets and the top edge") {
    std::vector<ReviewRecord> rs{rec(0.1, Outcome::kAccepted), rec(2.2, Outcome::kOral),
                                 rec(9.0, Outcome::kBest)};
    const std::vector<double> edges = uniform_edges(1.0);
    CHECK(edges.size() == 10);
    const EmpiricalCurve c = bucket_probabilities(rs, edges, at_least(Outcome::kAccepted));
    REQUIRE(c.size() == 9);
    CHECK(c[0].n == 1);
    CHECK(*c[0].p == 1.0);
    CHECK(c[0].sem == 0.0);
    CHECK_FALSE(c[1].p.has_value());
    CHECK(c[1].n == 0);
    CHECK(c[8].n == 1);  // 9.0 lands in the last bucket
    CHECK(c[0].midpoint == 0.5);
  }
  SUBCASE("no records in range") {
    std::vector<ReviewRecord> rs{rec(8.0, Outcome::kAccepted)};
    const std::vector<double> edges{0.0, 1.0};
    const EmpiricalCurve c = bucket_probabilities(rs, edges, at_least(Outcome::kAccepted));
    REQUIRE(c.size() == 1);
    CHECK(c[0].n == 0);
  }
  SUBCASE("edges must increase") {
    const std::vector<double> bad{0.0, 0.0, 1.0};
    CHECK_THROWS_AS(bucket_probabilities({}, bad, at_least(Outcome::kAccepted)), std::invalid_argument);
    const std::vector<double> one{0.0};
    CHECK_THROWS_AS(bucket_probabilities({}, one, at_least(Outcome::kAccepted)), std::invalid_argument);
  }
  SUBCASE("high-resolution preset is finer at the top") {
    const std::vector<double> e = high_resolution_edges();
    CHECK(e.front() == 0.0);
    CHECK(e.back() == 9.0);
    CHECK(e[1] - e[0] == 1.0);
    CHECK(e[e.size() - 1] - e[e.size() - 2] == 0.25);
  }
}

TEST_CASE("logistic fit") {
  SUBCASE("symmetric data puts p = 1/2 at the centre") {
    std::vector<double> s;
    std::vector<int> y;
    for (double d : {0.5, 1.0, 2.0, 3.0}) {
      s.insert(s.end(), {4.0 - d, 4.0 + d, 4.0 - d, 4.0 + d});
      y.insert(y.end(), {0, 1, 1, 0});
      s.insert(s.end(), {4.0 - d, 4.0 + d});
      y.insert(y.end(), {0, 1});
    }
    const LogisticFit f = fit_logistic(s, y);
    CHECK(f.converged);
    CHECK(std::abs(f.intercept + f.slope * 4.0) <= 1e-8);
    CHECK(f.slope > 0.0);
  }
  SUBCASE("known curve is recovered") {
    const Sample d = draw(17, 10000, -9.0, 1.5);
    LogisticOptions opt;
    opt.lambda = 1e-6;
    std::vector<double> trace;
    opt.loss_trace = &trace;
    const LogisticFit f = fit_logistic(d.s, d.y, opt);
    CHECK(f.converged);
    CHECK(f.gradient_norm < 1e-8);
    CHECK(std::abs(f.slope - 1.5) / 1.5 <= 0.05);
    REQUIRE(trace.size() >= 2);
    for (std::size_t i = 1; i < trace.size(); ++i) {
      CHECK(trace[i] <= trace[i - 1] + 1e-12 * std::abs(trace[i - 1]));
    }
    CHECK(trace.back() == f.loss);
  }
  SUBCASE("a heavy penalty flattens the slope") {
    const Sample d = draw(18, 2000, -9.0, 1.5);
    LogisticOptions opt;
    opt.lambda = 1e9;
    CHECK(std::abs(fit_logistic(d.s, d.y, opt).slope) < 1e-4);
  }
  SUBCASE("degenerate inputs") {
    const std::vector<double> s{1, 2, 3};
    CHECK_THROWS_AS(fit_logistic(s, std::vector<int>{1, 1, 1}), DegenerateFit);
    CHECK_THROWS_AS(fit_logistic(std::vector<double>{1}, std::vector<int>{1}), DegenerateFit);
    CHECK_THROWS_AS(fit_logistic(s, std::vector<int>{1, 0}), std::invalid_argument);
  }
  SUBCASE("records overload") {
    std::vector<ReviewRecord> rs;
    const Sample d = draw(19, 500, -4.0, 1.0);
    for (std::size_t i = 0; i < d.s.size(); ++i) {
      rs.push_back(rec(d.s[i], d.y[i] ? Outcome::kOral : Outcome::kRejected));
    }
    const LogisticFit a = fit_logistic(rs, at_least(Outcome::kAccepted));
    const LogisticFit b = fit_logistic(d.s, d.y);
    CHECK(a.slope == b.slope);
    CHECK(a.intercept == b.intercept);
  }
}

TEST_CASE("second derivative") {
  const LogisticFit f = fit_with(-9.0, 1.5);
  CHECK(std::abs(second_derivative(f, 6.0)) <= 1e-15);
  CHECK(second_derivative(f, 2.0) > 0.0);
  CHECK(second_derivative(f, 8.0) < 0.0);
  const double h = 1e-4;
  for (int i = 0; i < 100; ++i) {
    const double s = 9.0 * i / 99.0 + 0.013;  // stay off the inflection point
    const double fd = (f.probability(s + h) - 2.0 * f.probability(s) + f.probability(s - h)) / (h * h);
    const double an = second_derivative(f, s);
    CHECK(std::abs(fd - an) <= 1e-4 * std::abs(an));
  }
  // Sign follows 1 - 2p everywhere.
  const LogisticFit g = fit_with(2.0, -0.7);
  for (double s = -5.0; s <= 15.0; s += 0.1) {
    const double p = g.probability(s);
    if (std::abs(1.0 - 2.0 * p) > 1e-9) CHECK((second_derivative(g, s) > 0) == (1.0 - 2.0 * p > 0));
  }
}

TEST_CASE("convexity report") {
  SUBCASE("saturation above the range is convex") {
    const ConvexityReport r = convexity_report(fit_with(-14.0, 1.2), 0.0, 9.0);
    CHECK(r.verdict == ConvexityReport::Verdict::kConvex);
    CHECK(r.saturation_beyond_range);
    CHECK(*r.saturation == doctest::Approx(14.0 / 1.2));
    CHECK(r.grid.size() == 1000);
  }
  SUBCASE("saturation inside the range is not") {
    const LogisticFit f = fit_with(-6.0, 1.5);
    const ConvexityReport r = convexity_report(f, 0.0, 9.0);
    CHECK(r.verdict == ConvexityReport::Verdict::kNonConvex);
    CHECK_FALSE(r.saturation_beyond_range);
    for (std::size_t i = 0; i < r.grid.size(); ++i) {
      CHECK(r.convex_at[i] == (f.probability(r.grid[i]) < 0.5));
    }
  }
  SUBCASE("flat and decreasing fits") {
    CHECK(convexity_report(fit_with(0.3, 0.0), 0.0, 9.0).verdict == ConvexityReport::Verdict::kFlat);
    CHECK_FALSE(convexity_report(fit_with(0.3, 0.0), 0.0, 9.0).saturation.has_value());
    // Decreasing fit with s* = 3: p > 1/2 to the left, so concave there.
    CHECK(convexity_report(fit_with(3.0, -1.0), 0.0, 2.5).verdict ==
          ConvexityReport::Verdict::kNonConvex);
    CHECK(convexity_report(fit_with(3.0, -1.0), 4.0, 9.0).verdict ==
          ConvexityReport::Verdict::kConvex);
  }
  SUBCASE("requires a converged fit") {
    LogisticFit f = fit_with(1.0, 1.0);
    f.converged = false;
    CHECK_THROWS_AS(convexity_report(f, 0.0, 9.0), std::invalid_argument);
  }
  SUBCASE("probability is monotone for a positive slope") {
    const LogisticFit f = fit_with(-9.0, 1.5);
    for (double s = 0.0; s < 9.0; s += 0.01) CHECK(f.probability(s + 0.01) >= f.probability(s));
  }
}
