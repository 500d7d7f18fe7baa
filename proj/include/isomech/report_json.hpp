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

// JSON and CSV renderings of result objects.

#pragma once

#include <iosfwd>

#include <json.hpp>

#include "isomech/audit.hpp"
#include "isomech/simlab.hpp"

namespace isomech {

nlohmann::json to_json(const TruthfulnessReport& rep);
nlohmann::json to_json(const ExactCheckReport& rep);
nlohmann::json to_json(const LogisticFit& fit, const ConvexityReport& rep);

/// `epsilon,k,F,protocol,mean_norm_quality,sem,rounds`.
void write_sweep_csv(std::ostream& out, const SweepResult& result);
/// `bucket_lo,bucket_hi,n,p,sem`; p is empty for an empty bucket.
void write_curve_csv(std::ostream& out, const EmpiricalCurve& curve);

}  // namespace isomech
