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

#include "isomech/audit.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "isomech/errors.hpp"

namespace isomech {

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::kRejected: return "rejected";
    case Outcome::kAccepted: return "accepted";
    case Outcome::kSpotlight: return "spotlight";
    case Outcome::kOral: return "oral";
    case Outcome::kBest: return "best";
  }
  return "unknown";
}

Outcome outcome_from_string(const std::string& text) {
  std::string t;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) {
      t.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
  }
  if (t.empty() || t == "rejected") return Outcome::kRejected;
  if (t == "accepted") return Outcome::kAccepted;
  if (t == "spotlight") return Outcome::kSpotlight;
  if (t == "oral") return Outcome::kOral;
  if (t == "best") return Outcome::kBest;
  throw std::invalid_argument("unknown outcome '" + text + "'");
}

OutcomePredicate at_least(Outcome tier) {
  return [tier](Outcome o) { return static_cast<int>(o) >= static_cast<int>(tier); };
}

OutcomePredicate predicate_from_string(const std::string& name) {
  const Outcome tier = outcome_from_string(name);
  if (tier == Outcome::kRejected) {
    throw std::invalid_argument("outcome predicate must be accepted, spotlight, oral or best");
  }
  return at_least(tier);
}

std::vector<ReviewRecord> normalize_scores(std::vector<ReviewRecord> records, double lo,
                                           double hi) {
  for (ReviewRecord& r : records) {
    if (!(r.scale_hi > r.scale_lo)) {
      throw std::invalid_argument("record " + r.paper_id + " has a degenerate score scale");
    }
    r.score = lo + (r.score - r.scale_lo) / (r.scale_hi - r.scale_lo) * (hi - lo);
    r.scale_lo = lo;
    r.scale_hi = hi;
  }
  return records;
}

double binomial_sem(double p, std::size_t n) {
  if (n == 0) return 0.0;
  return std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

EmpiricalCurve bucket_probabilities(std::span<const ReviewRecord> records,
                                    std::span<const double> edges, const OutcomePredicate& pred) {
  if (edges.size() < 2) throw std::invalid_argument("bucketing needs at least two edges");
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    if (!(edges[i] < edges[i + 1])) throw std::invalid_argument("bucket edges must increase");
  }
  const std::size_t nb = edges.size() - 1;
  std::vector<std::size_t> count(nb, 0);
  std::vector<std::size_t> hits(nb, 0);
  for (const ReviewRecord& r : records) {
    if (r.score < edges.front() || r.score > edges.back()) continue;
    auto it = std::upper_bound(edges.begin(), edges.end(), r.score);
    std::size_t b = static_cast<std::size_t>(it - edges.begin()) - 1;
    b = std::min(b, nb - 1);
    ++count[b];
    hits[b] += pred(r.outcome) ? 1 : 0;
  }

  EmpiricalCurve curve;
  curve.reserve(nb);
  for (std::size_t b = 0; b < nb; ++b) {
    Bucket bucket{edges[b], edges[b + 1], 0.5 * (edges[b] + edges[b + 1]), count[b], {}, 0.0};
    if (count[b] > 0) {
      const double p = static_cast<double>(hits[b]) / static_cast<double>(count[b]);
      bucket.p = p;
      bucket.sem = binomial_sem(p, count[b]);
    }
    curve.push_back(bucket);
  }
  return curve;
}

std::vector<double> uniform_edges(double width, double lo, double hi) {
  if (!(width > 0) || !(hi > lo)) throw std::invalid_argument("invalid bucket width or range");
  std::vector<double> edges;
  const auto steps = static_cast<std::size_t>(std::ceil((hi - lo) / width - 1e-9));
  for (std::size_t i = 0; i < steps; ++i) edges.push_back(lo + width * static_cast<double>(i));
  edges.push_back(hi);
  return edges;
}

std::vector<double> high_resolution_edges() {
  std::vector<double> edges;
  for (double e = 0.0; e < 5.0; e += 1.0) edges.push_back(e);
  for (double e = 5.0; e < 7.0; e += 0.5) edges.push_back(e);
  for (double e = 7.0; e < 9.0; e += 0.25) edges.push_back(e);
  edges.push_back(9.0);
  return edges;
}

namespace {

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

// log(1 + exp(z)) without overflow.
double log1pexp(double z) { return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

double penalized_loss(std::span<const double> s, std::span<const int> y, double b0, double b1,
                      double lambda) {
  double loss = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double z = b0 + b1 * s[i];
    loss += log1pexp(z) - (y[i] ? z : 0.0);
  }
  return loss + 0.5 * lambda * b1 * b1;
}

}  // namespace

double LogisticFit::probability(double s) const { return sigmoid(intercept + slope * s); }

LogisticFit fit_logistic(std::span<const double> scores, std::span<const int> labels,
                         const LogisticOptions& options) {
  if (scores.size() != labels.size()) throw std::invalid_argument("scores and labels differ in length");
  if (!(options.lambda >= 0)) throw std::invalid_argument("ridge strength must be non-negative");
  if (scores.size() < 2) throw DegenerateFit("logistic fit needs at least two records");
  const auto positives = std::count_if(labels.begin(), labels.end(), [](int v) { return v != 0; });
  if (positives == 0 || positives == static_cast<std::ptrdiff_t>(labels.size())) {
    throw DegenerateFit("logistic fit needs both outcome classes");
  }

  const double lambda = options.lambda;
  LogisticFit fit;
  fit.lambda = lambda;
  double b0 = 0.0;
  double b1 = 0.0;
  double loss = penalized_loss(scores, labels, b0, b1, lambda);
  if (options.loss_trace) options.loss_trace->assign(1, loss);

  double gnorm = 0.0;
  int it = 0;
  for (;; ++it) {
    double g0 = 0.0, g1 = 0.0, h00 = 0.0, h01 = 0.0, h11 = 0.0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
      const double s = scores[i];
      const double p = sigmoid(b0 + b1 * s);
      const double r = p - (labels[i] ? 1.0 : 0.0);
      const double w = p * (1.0 - p);
      g0 += r;
      g1 += r * s;
      h00 += w;
      h01 += w * s;
      h11 += w * s * s;
    }
    g1 += lambda * b1;
    h11 += lambda;
    gnorm = std::hypot(g0, g1);
    if (gnorm < options.gradient_tol || it >= options.max_iterations) break;

    const double det = h00 * h11 - h01 * h01;
    double d0, d1;
    if (det > 1e-300 && std::isfinite(det)) {
      d0 = -(h11 * g0 - h01 * g1) / det;
      d1 = -(-h01 * g0 + h00 * g1) / det;
    } else {
      d0 = -g0;
      d1 = -g1;
    }

    // Near the optimum the predicted decrease drops below the rounding
    // error of the loss itself; the full Newton step is taken there since a
    // loss comparison can no longer tell better from worse.
    const double predicted = -0.5 * (g0 * d0 + g1 * d1);
    if (predicted >= 0.0 && predicted <= 64.0 * std::numeric_limits<double>::epsilon() * std::abs(loss)) {
      b0 += d0;
      b1 += d1;
      loss = penalized_loss(scores, labels, b0, b1, lambda);
      if (options.loss_trace) options.loss_trace->push_back(loss);
      continue;
    }

    // Halve the step until the penalized loss does not increase.
    double t = 1.0;
    bool accepted = false;
    for (int half = 0; half < 60; ++half, t *= 0.5) {
      const double cand = penalized_loss(scores, labels, b0 + t * d0, b1 + t * d1, lambda);
      if (cand <= loss) {
        b0 += t * d0;
        b1 += t * d1;
        loss = cand;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
    if (options.loss_trace) options.loss_trace->push_back(loss);
  }

  fit.intercept = b0;
  fit.slope = b1;
  fit.iterations = it;
  fit.gradient_norm = gnorm;
  fit.loss = loss;
  fit.converged = gnorm < options.gradient_tol;
  return fit;
}

LogisticFit fit_logistic(std::span<const ReviewRecord> records, const OutcomePredicate& pred,
                         const LogisticOptions& options) {
  std::vector<double> s;
  std::vector<int> y;
  s.reserve(records.size());
  y.reserve(records.size());
  for (const ReviewRecord& r : records) {
    s.push_back(r.score);
    y.push_back(pred(r.outcome) ? 1 : 0);
  }
  return fit_logistic(s, y, options);
}

double second_derivative(const LogisticFit& fit, double s) {
  const double p = fit.probability(s);
  return fit.slope * fit.slope * p * (1.0 - p) * (1.0 - 2.0 * p);
}

std::string to_string(ConvexityReport::Verdict v) {
  switch (v) {
    case ConvexityReport::Verdict::kConvex: return "convex over range";
    case ConvexityReport::Verdict::kNonConvex: return "non-convex";
    case ConvexityReport::Verdict::kFlat: return "flat";
  }
  return "unknown";
}

ConvexityReport convexity_report(const LogisticFit& fit, double lo, double hi,
                                 std::size_t grid_points) {
  if (!fit.converged) throw std::invalid_argument("convexity report needs a converged fit");
  if (!(hi > lo) || grid_points < 2) throw std::invalid_argument("invalid convexity range");
  ConvexityReport rep;
  rep.range_lo = lo;
  rep.range_hi = hi;
  if (fit.slope == 0.0) {
    rep.verdict = ConvexityReport::Verdict::kFlat;
    return rep;
  }
  rep.saturation = -fit.intercept / fit.slope;
  rep.saturation_beyond_range = *rep.saturation > hi;
  rep.grid.resize(grid_points);
  rep.convex_at.resize(grid_points);
  bool all = true;
  for (std::size_t i = 0; i < grid_points; ++i) {
    const double s = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(grid_points - 1);
    rep.grid[i] = s;
    // The sign of the second derivative is the sign of 1 - 2p; reading it
    // from p avoids underflow in the product far from the inflection.
    const double bend = 1.0 - 2.0 * fit.probability(s);
    rep.convex_at[i] = bend > 0.0;
    all = all && bend >= 0.0;
  }
  rep.verdict = all ? ConvexityReport::Verdict::kConvex : ConvexityReport::Verdict::kNonConvex;
  return rep;
}

}  // namespace isomech
