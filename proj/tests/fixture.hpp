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

// Three authors, twelve papers: A owns 0..5, B owns 4..9, C owns 8..11.
// Raw scores are 1..12 and every author ranks their papers in id order,
// i.e. against the scores.

#pragma once

#include <numeric>
#include <vector>

#include "isomech/mechanism.hpp"

namespace fixture {

inline isomech::AuthorshipNetwork network() {
  auto range = [](std::size_t lo, std::size_t hi) {
    std::vector<std::size_t> v(hi - lo);
    std::iota(v.begin(), v.end(), lo);
    return v;
  };
  return isomech::AuthorshipNetwork(12, {range(0, 6), range(4, 10), range(8, 12)});
}

inline isomech::AuthorRankings rankings(const isomech::AuthorshipNetwork& net) {
  isomech::AuthorRankings rk(net.num_authors());
  for (std::size_t j = 0; j < net.num_authors(); ++j) rk.set(net, j, net.papers_of(j));
  return rk;
}

inline std::vector<double> scores() {
  std::vector<double> s(12);
  std::iota(s.begin(), s.end(), 1.0);
  return s;
}

}  // namespace fixture
