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

#include "isomech/isotonic.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>

#include "isomech/errors.hpp"

namespace isomech {

void require_valid_scores(std::span<const double> v, const char* what) {
  if (v.empty()) throw std::invalid_argument(std::string(what) + " is empty");
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i])) {
      throw std::invalid_argument(std::string(what) + " has a non-finite entry at index " +
                                  std::to_string(i));
    }
  }
}

Ranking::Ranking(std::vector<std::size_t> order) : order_(std::move(order)) {
  std::vector<bool> seen(order_.size(), false);
  for (std::size_t idx : order_) {
    if (idx >= order_.size() || seen[idx]) {
      throw std::invalid_argument("ranking is not a permutation of 0.." +
                                  std::to_string(order_.size()) + "-1");
    }
    seen[idx] = true;
  }
}

Ranking Ranking::identity(std::size_t n) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  return Ranking(std::move(order));
}

Ranking Ranking::by_scores_descending(std::span<const double> scores) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t l, std::size_t r) { return scores[l] > scores[r]; });
  return Ranking(std::move(order));
}

IsotonicFit pava_descending(std::span<const double> y) {
  require_valid_scores(y, "pava input");

  struct Pool {
    double sum;
    std::size_t count;
    std::size_t start;
    double mean() const { return sum / static_cast<double>(count); }
  };
  std::vector<Pool> pools;
  pools.reserve(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    pools.push_back({y[i], 1, i});
    // A pool must have a strictly smaller mean than its predecessor.
    while (pools.size() > 1 && pools[pools.size() - 2].mean() <= pools.back().mean()) {
      Pool top = pools.back();
      pools.pop_back();
      pools.back().sum += top.sum;
      pools.back().count += top.count;
    }
  }

  IsotonicFit fit;
  fit.fitted.resize(y.size());
  fit.blocks.reserve(pools.size());
  fit.block_means.reserve(pools.size());
  for (const Pool& p : pools) {
    const double m = p.mean();
    std::fill_n(fit.fitted.begin() + static_cast<std::ptrdiff_t>(p.start), p.count, m);
    fit.blocks.push_back({p.start, p.start + p.count});
    fit.block_means.push_back(m);
  }
  return fit;
}

ScoreVector project_onto_ranking(std::span<const double> y, const Ranking& ranking) {
  if (ranking.size() != y.size()) {
    throw std::invalid_argument("ranking length " + std::to_string(ranking.size()) +
                                " does not match score length " + std::to_string(y.size()));
  }
  ScoreVector permuted(y.size());
  for (std::size_t pos = 0; pos < y.size(); ++pos) permuted[pos] = y[ranking[pos]];
  const IsotonicFit fit = pava_descending(permuted);
  ScoreVector out(y.size());
  for (std::size_t pos = 0; pos < y.size(); ++pos) out[ranking[pos]] = fit.fitted[pos];
  return out;
}

namespace {

void require_same_length(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("length mismatch: " + std::to_string(a.size()) + " vs " +
                                std::to_string(b.size()));
  }
}

std::vector<double> sorted_descending(std::span<const double> v) {
  std::vector<double> s(v.begin(), v.end());
  std::sort(s.begin(), s.end(), std::greater<>());
  return s;
}

bool prefix_dominates(std::span<const double> a, std::span<const double> b, double tol,
                      bool require_equal_total) {
  double pa = 0.0;
  double pb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    pa += a[i];
    pb += b[i];
    if (pa < pb - tol) return false;
  }
  return !require_equal_total || std::abs(pa - pb) <= tol;
}

}  // namespace

bool majorizes(std::span<const double> a, std::span<const double> b, double tol) {
  require_same_length(a, b);
  return prefix_dominates(sorted_descending(a), sorted_descending(b), tol, true);
}

bool weakly_majorizes(std::span<const double> a, std::span<const double> b, double tol) {
  require_same_length(a, b);
  return prefix_dominates(sorted_descending(a), sorted_descending(b), tol, false);
}

bool majorizes_natural_order(std::span<const double> a, std::span<const double> b, double tol) {
  require_same_length(a, b);
  return prefix_dominates(a, b, tol, true);
}

ScoreVector t_transform(std::span<const double> x, std::size_t i, std::size_t j, double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw std::invalid_argument("T-transform lambda must lie in [0, 1]");
  }
  if (i == j) throw std::invalid_argument("T-transform needs two distinct coordinates");
  if (i >= x.size() || j >= x.size()) throw std::invalid_argument("T-transform index out of range");
  ScoreVector out(x.begin(), x.end());
  out[i] = lambda * x[i] + (1.0 - lambda) * x[j];
  out[j] = lambda * x[j] + (1.0 - lambda) * x[i];
  return out;
}

ScoreVector apply_chain(std::span<const double> x, std::span<const TTransform> chain) {
  ScoreVector v(x.begin(), x.end());
  for (const TTransform& t : chain) v = t_transform(v, t.i, t.j, t.lambda);
  return v;
}

std::vector<TTransform> t_transform_chain(std::span<const double> a, std::span<const double> b,
                                          double tol) {
  require_same_length(a, b);
  if (!majorizes(a, b, tol)) {
    throw PreconditionViolation("t_transform_chain: first vector does not majorize the second");
  }
  const std::size_t n = a.size();
  auto descending_order = [n](std::span<const double> v) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t l, std::size_t r) { return v[l] > v[r]; });
    return idx;
  };
  const std::vector<std::size_t> sigma = descending_order(a);
  const std::vector<std::size_t> tau = descending_order(b);

  double scale = 1.0;
  for (double v : a) scale = std::max(scale, std::abs(v));
  const double eps = 1e-12 * scale;

  // Muirhead construction in a's sorted frame: move mass from the last
  // surplus position before the first deficit into that deficit.
  ScoreVector w(a.begin(), a.end());
  std::vector<TTransform> chain;
  auto diff = [&](std::size_t p) { return w[sigma[p]] - b[tau[p]]; };
  for (std::size_t guard = 0; guard < 2 * n; ++guard) {
    std::size_t k = n;
    for (std::size_t p = 0; p < n; ++p) {
      if (diff(p) < -eps) {
        k = p;
        break;
      }
    }
    if (k == n) break;
    std::size_t j = n;
    for (std::size_t p = k; p-- > 0;) {
      if (diff(p) > eps) {
        j = p;
        break;
      }
    }
    if (j == n) break;
    const double hi = w[sigma[j]];
    const double lo = w[sigma[k]];
    const double delta = std::min(diff(j), -diff(k));
    const double lambda = std::clamp(1.0 - delta / (hi - lo), 0.0, 1.0);
    chain.push_back({sigma[j], sigma[k], lambda});
    w = t_transform(w, sigma[j], sigma[k], lambda);
  }

  // Rearrange into b's order with plain swaps when the orders differ.
  for (std::size_t idx = 0; idx < n; ++idx) {
    if (std::abs(w[idx] - b[idx]) <= std::max(eps, tol)) continue;
    std::size_t best = n;
    double best_err = 0.0;
    for (std::size_t m = idx + 1; m < n; ++m) {
      const double err = std::abs(w[m] - b[idx]);
      if (best == n || err < best_err) {
        best = m;
        best_err = err;
      }
    }
    if (best == n) break;
    chain.push_back({idx, best, 0.0});
    std::swap(w[idx], w[best]);
  }
  return chain;
}

}  // namespace isomech
