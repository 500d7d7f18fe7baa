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

// Run configuration: an INI file with [network], [quality], [noise],
// [protocol], [sweep] and [audit] sections. Every section and key is
// optional, but unknown sections or keys are rejected. See README.md for
// the schema.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "isomech/selection.hpp"
#include "isomech/simlab.hpp"
#include "isomech/synthesis.hpp"

namespace isomech {

struct AuditSettings {
  std::string outcome = "best";
  double lambda = 1.0;
  std::string buckets = "uniform";  // "uniform" or "high_resolution"
  double bucket_width = 0.5;
  double range_lo = 0.0;
  double range_hi = 9.0;
};

struct RunConfig {
  SweepConfig sweep;  // also carries the network and quality models
  NoiseModel noise;
  ProtocolSpec protocol;
  AuditSettings audit;
  std::string output_dir;
  /// FNV-1a hash of the raw config text (0 when built from defaults).
  std::uint64_t content_hash = 0;
};

/// Throws InputError on a syntax error, unknown section/key or bad value.
RunConfig parse_run_config(std::istream& in, const std::string& source);
RunConfig load_run_config(const std::string& path);

std::uint64_t fnv1a(const std::string& text);

}  // namespace isomech
