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

#include "isomech/report_json.hpp"

#include <ostream>

#include "isomech/csv_io.hpp"

namespace isomech {

nlohmann::json to_json(const TruthfulnessReport& rep) {
  nlohmann::json perms = nlohmann::json::array();
  for (const PermutationStats& p : rep.permutations) {
    perms.push_back({{"order", p.order},
                     {"mean", p.mean},
                     {"sem", p.sem},
                     {"diff_mean", p.diff_mean},
                     {"diff_sem", p.diff_sem}});
  }
  return {{"check", "truthfulness"},
          {"n", rep.n},
          {"utility", rep.utility},
          {"noise_var", rep.noise_var},
          {"trials", rep.trials},
          {"seed", rep.seed},
          {"threshold_sigmas", kVerdictSigmas},
          {"worst_z", rep.worst_z},
          {"verdict", rep.truthful ? "truthful" : "violated"},
          {"permutations", perms}};
}

nlohmann::json to_json(const ExactCheckReport& rep) {
  nlohmann::json j = {{"check", rep.name},
                      {"trials", rep.trials},
                      {"violations", rep.violations},
                      {"seed", rep.seed},
                      {"examples", rep.examples},
                      {"verdict", rep.passed() ? "pass" : "fail"}};
  if (rep.utility_gap) {
    j["utility_gap"] = *rep.utility_gap;
    j["utility_gap_sem"] = *rep.utility_gap_sem;
  }
  return j;
}

nlohmann::json to_json(const LogisticFit& fit, const ConvexityReport& rep) {
  nlohmann::json j = {{"beta0", fit.intercept},
                      {"beta1", fit.slope},
                      {"lambda", fit.lambda},
                      {"converged", fit.converged},
                      {"iterations", fit.iterations},
                      {"gradient_norm", fit.gradient_norm},
                      {"range", {rep.range_lo, rep.range_hi}},
                      {"verdict", to_string(rep.verdict)},
                      {"saturation_beyond_range", rep.saturation_beyond_range}};
  j["s_star"] = rep.saturation ? nlohmann::json(*rep.saturation) : nlohmann::json(nullptr);
  return j;
}

void write_sweep_csv(std::ostream& out, const SweepResult& result) {
  out << "epsilon,k,F,protocol,mean_norm_quality,sem,rounds\n";
  for (const SweepCell& c : result.cells) {
    out << format_double(c.epsilon) << ',' << c.quota << ',' << c.winners << ','
        << to_string(c.protocol) << ',' << format_double(c.mean) << ',' << format_double(c.sem)
        << ',' << c.rounds << '\n';
  }
}

void write_curve_csv(std::ostream& out, const EmpiricalCurve& curve) {
  out << "bucket_lo,bucket_hi,n,p,sem\n";
  for (const Bucket& b : curve) {
    out << format_double(b.lo) << ',' << format_double(b.hi) << ',' << b.n << ','
        << (b.p ? format_double(*b.p) : std::string()) << ',' << format_double(b.sem) << '\n';
  }
}

}  // namespace isomech
