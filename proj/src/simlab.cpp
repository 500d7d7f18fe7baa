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

#include "isomech/simlab.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "isomech/errors.hpp"
#include "isomech/rng.hpp"

namespace isomech {

double normalized_quality(std::span<const PaperId> selected, std::span<const double> quality,
                          std::size_t winners) {
  if (winners < 1 || winners > quality.size()) {
    throw std::invalid_argument("normalized_quality: F=" + std::to_string(winners) +
                                " outside [1, " + std::to_string(quality.size()) + "]");
  }
  if (selected.size() != winners) {
    throw std::invalid_argument("normalized_quality: expected " + std::to_string(winners) +
                                " selected papers, got " + std::to_string(selected.size()));
  }
  // Shift only when needed so the ratio stays in (0, 1].
  const double lowest = *std::min_element(quality.begin(), quality.end());
  const double shift = lowest > 0.0 ? 0.0 : lowest - 1.0;
  std::vector<double> sorted(quality.begin(), quality.end());
  std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(winners - 1),
                   sorted.end(), std::greater<>());
  double top = 0.0;
  for (std::size_t i = 0; i < winners; ++i) top += sorted[i] - shift;
  double chosen = 0.0;
  for (PaperId p : selected) chosen += quality[p] - shift;
  return chosen / top;
}

bool SweepConfig::redraw_network() const {
  if (redraw_override) return *redraw_override;
  return network.kind == NetworkModel::Kind::kUniform;
}

void SweepConfig::validate() const {
  network.validate();
  quality.validate();
  if (rounds < 2) throw std::invalid_argument("a sweep needs at least 2 rounds");
  if (epsilons.empty() || quotas.empty() || winners.empty() || protocols.empty()) {
    throw std::invalid_argument("sweep grids must be nonempty");
  }
  for (double e : epsilons) NoiseModel{e}.validate();
  for (std::size_t k : quotas) {
    if (k < 1) throw std::invalid_argument("quota must be at least 1");
  }
  for (std::size_t f : winners) {
    if (f < 1) throw std::invalid_argument("number of winners must be at least 1");
  }
}

const SweepCell& SweepResult::at(double epsilon, std::size_t quota, std::size_t winners,
                                 Protocol protocol) const {
  for (const SweepCell& c : cells) {
    if (c.epsilon == epsilon && c.quota == quota && c.winners == winners && c.protocol == protocol) {
      return c;
    }
  }
  throw std::out_of_range("no sweep cell for the requested parameters");
}

SweepResult run_sweep(const SweepConfig& cfg) {
  cfg.validate();
  const std::size_t ne = cfg.epsilons.size();
  const std::size_t nk = cfg.quotas.size();
  const std::size_t nf = cfg.winners.size();
  const std::size_t np = cfg.protocols.size();
  const std::size_t num_cells = ne * nk * nf * np;
  auto cell_index = [&](std::size_t e, std::size_t k, std::size_t f, std::size_t p) {
    return ((e * nk + k) * nf + f) * np + p;
  };

  // values[cell][round]; each round writes only its own column.
  std::vector<std::vector<double>> values(num_cells, std::vector<double>(cfg.rounds));
  std::vector<std::vector<double>> modified(ne, std::vector<double>(cfg.rounds));

  std::optional<AuthorshipNetwork> fixed_net;
  std::optional<Partition> fixed_part;
  if (!cfg.redraw_network()) {
    fixed_net = gen_network(cfg.network, cfg.seed);
    fixed_part = greedy_partition(*fixed_net);
  }

  auto run_round = [&](std::size_t r) {
    const std::uint64_t seed = round_seed(cfg.seed, r);
    AuthorshipNetwork drawn;
    Partition drawn_part;
    if (!fixed_net) {
      drawn = gen_network(cfg.network, seed);
      drawn_part = greedy_partition(drawn);
    }
    const AuthorshipNetwork& net = fixed_net ? *fixed_net : drawn;
    const Partition& part = fixed_part ? *fixed_part : drawn_part;
    const ScoreVector q = gen_quality(net, cfg.quality, seed);
    const AuthorRankings rankings = truthful_rankings(net, q);

    for (std::size_t e = 0; e < ne; ++e) {
      const ScoreVector y = gen_reviews(q, NoiseModel{cfg.epsilons[e]}, seed);
      const AdjustedScores adj = adjusted_scores(net, rankings, y, part);
      modified[e][r] = fraction_modified(adj);
      for (std::size_t k = 0; k < nk; ++k) {
        for (std::size_t f = 0; f < nf; ++f) {
          for (std::size_t p = 0; p < np; ++p) {
            const ProtocolSpec spec{cfg.protocols[p], cfg.quotas[k], cfg.winners[f]};
            const SelectionResult sel = select(spec, net, &rankings, y, adj.values);
            values[cell_index(e, k, f, p)][r] =
                normalized_quality(sel.paper_ids(), q, cfg.winners[f]);
          }
        }
      }
    }
  };

  const unsigned jobs = std::max(1u, cfg.jobs);
  if (jobs == 1) {
    for (std::size_t r = 0; r < cfg.rounds; ++r) run_round(r);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    std::mutex failure_mutex;
    std::vector<std::thread> workers;
    for (unsigned t = 0; t < jobs; ++t) {
      workers.emplace_back([&] {
        for (std::size_t r; !failed && (r = next++) < cfg.rounds;) {
          try {
            run_round(r);
          } catch (...) {
            std::lock_guard<std::mutex> lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            failed = true;
          }
        }
      });
    }
    for (auto& w : workers) w.join();
    if (failure) std::rethrow_exception(failure);
  }

  SweepResult result;
  const double rounds = static_cast<double>(cfg.rounds);
  for (std::size_t e = 0; e < ne; ++e) {
    for (std::size_t k = 0; k < nk; ++k) {
      for (std::size_t f = 0; f < nf; ++f) {
        for (std::size_t p = 0; p < np; ++p) {
          const auto& v = values[cell_index(e, k, f, p)];
          const double mean = std::accumulate(v.begin(), v.end(), 0.0) / rounds;
          double ss = 0.0;
          for (double x : v) ss += (x - mean) * (x - mean);
          const double sd = std::sqrt(ss / (rounds - 1.0));
          result.cells.push_back({cfg.epsilons[e], cfg.quotas[k], cfg.winners[f],
                                  cfg.protocols[p], mean, sd / std::sqrt(rounds), cfg.rounds, v});
        }
      }
    }
    result.mean_fraction_modified.push_back(
        std::accumulate(modified[e].begin(), modified[e].end(), 0.0) / rounds);
  }
  return result;
}

PairedGap paired_gap(const SweepCell& a, const SweepCell& b) {
  if (a.values.size() != b.values.size() || a.values.size() < 2) {
    throw std::invalid_argument("paired_gap needs cells with the same number (>= 2) of rounds");
  }
  const double n = static_cast<double>(a.values.size());
  double mean = 0.0;
  for (std::size_t r = 0; r < a.values.size(); ++r) mean += a.values[r] - b.values[r];
  mean /= n;
  double ss = 0.0;
  for (std::size_t r = 0; r < a.values.size(); ++r) {
    const double d = a.values[r] - b.values[r] - mean;
    ss += d * d;
  }
  return {mean, std::sqrt(ss / (n - 1.0)) / std::sqrt(n)};
}

VectorUtility VectorUtility::blind(BlindUtility u) {
  std::string d = u.describe();
  return {[u = std::move(u)](std::span<const double> x) { return u(x); }, std::move(d)};
}

VectorUtility VectorUtility::informed(InformedUtility u) {
  std::string d = u.describe();
  return {[u = std::move(u)](std::span<const double> x) { return u(x); }, std::move(d)};
}

namespace {

struct RunningStats {
  double sum = 0.0;
  double sumsq = 0.0;
  void add(double x) {
    sum += x;
    sumsq += x * x;
  }
  double mean(std::size_t n) const { return sum / static_cast<double>(n); }
  double sem(std::size_t n) const {
    const double m = mean(n);
    const double var = std::max(0.0, (sumsq - static_cast<double>(n) * m * m) /
                                         static_cast<double>(n - 1));
    return std::sqrt(var / static_cast<double>(n));
  }
};

// Fisher-Yates with the portable integer distribution.
void shuffle(std::vector<std::size_t>& v, Engine& eng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::swap(v[i - 1], v[uniform_int<std::size_t>(eng, 0, i - 1)]);
  }
}

std::string vec_str(std::span<const double> v) {
  std::ostringstream os;
  os.precision(17);
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
  os << ')';
  return os.str();
}

ScoreVector sorted_normal_scores(Engine& eng, std::size_t n) {
  ScoreVector r(n);
  for (double& v : r) v = 5.0 + std::sqrt(2.0) * standard_normal(eng);
  std::sort(r.begin(), r.end(), std::greater<>());
  return r;
}

std::size_t draw_size(Engine& eng, const RandomInstanceOptions& opts) {
  if (opts.min_n < 1 || opts.max_n < opts.min_n) {
    throw std::invalid_argument("invalid random instance size range");
  }
  return uniform_int<std::size_t>(eng, opts.min_n, opts.max_n);
}

}  // namespace

TruthfulnessReport verify_truthfulness(std::span<const double> true_scores,
                                       const VectorUtility& utility, double noise_var,
                                       std::size_t trials, std::uint64_t seed) {
  const std::size_t n = true_scores.size();
  if (n > kMaxEnumeratedSize) {
    throw UnsupportedSize("truthfulness check enumerates n! rankings; n=" + std::to_string(n) +
                          " exceeds " + std::to_string(kMaxEnumeratedSize));
  }
  require_valid_scores(true_scores, "true scores");
  if (!std::is_sorted(true_scores.begin(), true_scores.end(), std::greater<>())) {
    throw std::invalid_argument("true scores must be sorted descending");
  }
  if (trials < 10000) throw std::invalid_argument("truthfulness check needs at least 10^4 trials");
  if (!(noise_var >= 0)) throw std::invalid_argument("noise variance must be non-negative");

  std::vector<Ranking> reports;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  do {
    reports.emplace_back(order);
  } while (std::next_permutation(order.begin(), order.end()));

  const std::size_t m = reports.size();
  std::vector<RunningStats> level(m), diff(m);
  Engine eng = make_engine(seed, Stream::kTrials);
  const double sd = std::sqrt(noise_var);
  ScoreVector y(n);
  std::vector<double> u(m);
  for (std::size_t t = 0; t < trials; ++t) {
    for (std::size_t i = 0; i < n; ++i) y[i] = true_scores[i] + sd * standard_normal(eng);
    for (std::size_t r = 0; r < m; ++r) u[r] = utility.eval(project_onto_ranking(y, reports[r]));
    for (std::size_t r = 0; r < m; ++r) {
      level[r].add(u[r]);
      diff[r].add(u[r] - u[0]);
    }
  }

  TruthfulnessReport rep;
  rep.n = n;
  rep.utility = utility.description;
  rep.noise_var = noise_var;
  rep.trials = trials;
  rep.seed = seed;
  rep.truthful = true;
  double scale = 1.0;
  for (std::size_t r = 0; r < m; ++r) {
    scale = std::max(scale, std::abs(level[r].mean(trials)));
  }
  for (std::size_t r = 0; r < m; ++r) {
    PermutationStats ps{reports[r].order(), level[r].mean(trials), level[r].sem(trials),
                        diff[r].mean(trials), diff[r].sem(trials)};
    if (r > 0) {
      // A tiny absolute slack absorbs rounding when the paired difference
      // is identically zero.
      if (ps.diff_mean > kVerdictSigmas * ps.diff_sem + 1e-12 * scale) rep.truthful = false;
      if (ps.diff_mean > 0 && ps.diff_sem > 0) {
        rep.worst_z = std::max(rep.worst_z, ps.diff_mean / ps.diff_sem);
      }
    }
    rep.permutations.push_back(std::move(ps));
  }
  return rep;
}

ExactCheckReport verify_majorization_step(std::size_t trials, std::uint64_t seed,
                                          RandomInstanceOptions opts) {
  if (trials < 1) throw std::invalid_argument("need at least one trial");
  ExactCheckReport rep;
  rep.name = "majorization";
  rep.trials = trials;
  rep.seed = seed;
  Engine eng = make_engine(seed, Stream::kTrials);
  const double sd = std::sqrt(opts.noise_var);
  for (std::size_t t = 0; t < trials; ++t) {
    const std::size_t n = draw_size(eng, opts);
    const ScoreVector r = sorted_normal_scores(eng, n);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    shuffle(perm, eng);
    ScoreVector truthful(n), permuted(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double e = sd * standard_normal(eng);
      truthful[i] = r[i] + e;
      permuted[i] = r[perm[i]] + e;
    }
    const IsotonicFit a = pava_descending(truthful);
    const IsotonicFit b = pava_descending(permuted);
    if (!majorizes(a.fitted, b.fitted)) {
      ++rep.violations;
      if (rep.examples.size() < 5) {
        rep.examples.push_back("trial " + std::to_string(t) + ": R+e=" + vec_str(truthful) +
                               " pi(R)+e=" + vec_str(permuted));
      }
    }
  }
  return rep;
}

ExactCheckReport verify_individual_rationality(std::size_t trials, std::uint64_t seed,
                                               const ScalarUtility* u,
                                               RandomInstanceOptions opts) {
  if (trials < 1) throw std::invalid_argument("need at least one trial");
  if (u && trials < 2) throw std::invalid_argument("utility gap needs at least two trials");
  ExactCheckReport rep;
  rep.name = "individual_rationality";
  rep.trials = trials;
  rep.seed = seed;
  Engine eng = make_engine(seed, Stream::kTrials);
  const double sd = std::sqrt(opts.noise_var);
  RunningStats gap;
  for (std::size_t t = 0; t < trials; ++t) {
    const std::size_t n = draw_size(eng, opts);
    ScoreVector y = sorted_normal_scores(eng, n);
    for (double& v : y) v += sd * standard_normal(eng);
    const IsotonicFit fit = pava_descending(y);
    double scale = 1.0;
    for (double v : y) scale = std::max(scale, std::abs(v));
    // Block means are exact averages up to rounding of the running sum.
    const double slack = 1e-12 * scale;
    const bool first_ok = fit.fitted.front() >= y.front() - slack;
    const bool last_ok = fit.fitted.back() <= y.back() + slack;
    if (!first_ok || !last_ok) {
      ++rep.violations;
      if (rep.examples.size() < 5) {
        rep.examples.push_back("trial " + std::to_string(t) + ": y=" + vec_str(y) +
                               " fitted=" + vec_str(fit.fitted));
      }
    }
    if (u) gap.add((*u)(fit.fitted.front()) - (*u)(y.front()));
  }
  if (u) {
    rep.utility_gap = gap.mean(trials);
    rep.utility_gap_sem = gap.sem(trials);
  }
  return rep;
}

}  // namespace isomech
