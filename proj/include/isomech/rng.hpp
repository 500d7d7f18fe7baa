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

// Seeded random streams. The engine is std::mt19937_64 and the
// distributions come from Boost.Random, whose algorithms are fixed across
// platforms (unlike the std:: distributions), so a seed reproduces the same
// draws everywhere.
//
// Splitting rule: stream `s` of round `r` under master seed `m` is seeded
// with splitmix64(splitmix64(m ^ splitmix64(r)) + s).

#pragma once

#include <cstdint>
#include <random>

#include <boost/random/normal_distribution.hpp>
#include <boost/random/uniform_int_distribution.hpp>
#include <boost/random/uniform_real_distribution.hpp>

namespace isomech {

using Engine = std::mt19937_64;

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t round_seed(std::uint64_t master, std::uint64_t round) {
  return splitmix64(master ^ splitmix64(round));
}

enum class Stream : std::uint64_t { kNetwork = 1, kQuality = 2, kNoise = 3, kTrials = 4 };

constexpr std::uint64_t stream_seed(std::uint64_t seed, Stream s) {
  return splitmix64(seed + static_cast<std::uint64_t>(s));
}

inline Engine make_engine(std::uint64_t seed, Stream s) { return Engine(stream_seed(seed, s)); }

inline double standard_normal(Engine& eng) {
  boost::random::normal_distribution<double> dist(0.0, 1.0);
  return dist(eng);
}

inline double uniform01(Engine& eng) {
  boost::random::uniform_real_distribution<double> dist(0.0, 1.0);
  return dist(eng);
}

/// Uniform integer on [lo, hi].
template <typename Int>
Int uniform_int(Engine& eng, Int lo, Int hi) {
  boost::random::uniform_int_distribution<Int> dist(lo, hi);
  return dist(eng);
}

}  // namespace isomech
