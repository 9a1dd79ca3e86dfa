// Copyright 2026 The Newsdiv Authors.
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

#include "newsdiv/rank_overlap.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"

using namespace newsdiv;
using List = std::vector<std::string>;

namespace {

// Direct evaluation from the definition: prefix intersections, geometric
// weights via pow, truncation normalizer 1 - s^D.
double rbo_bruteforce(const List& a, const List& b, double s) {
  const std::size_t depth = std::min(a.size(), b.size());
  double acc = 0.0;
  for (std::size_t d = 1; d <= depth; ++d) {
    std::set<std::string> pa(a.begin(), a.begin() + d);
    std::set<std::string> pb(b.begin(), b.begin() + d);
    std::size_t common = 0;
    for (const auto& id : pa) common += pb.count(id);
    acc += std::pow(s, static_cast<double>(d - 1)) *
           (static_cast<double>(common) / static_cast<double>(d));
  }
  return (1.0 - s) * acc / (1.0 - std::pow(s, static_cast<double>(depth)));
}

List random_list(std::mt19937_64& rng, std::size_t min_len, std::size_t max_len,
                 int alphabet_size) {
  std::vector<int> symbols(alphabet_size);
  for (int i = 0; i < alphabet_size; ++i) symbols[i] = i;
  std::shuffle(symbols.begin(), symbols.end(), rng);
  const std::size_t len = min_len + rng() % (max_len - min_len + 1);
  List out;
  for (std::size_t i = 0; i < len; ++i) out.push_back("x" + std::to_string(symbols[i]));
  return out;
}

}  // namespace

TEST_CASE("identical lists score exactly 1") {
  const List a{"x", "y", "z"};
  CHECK(rbo(a, a, 0.9) == 1.0);
  CHECK(rbo(a, a, 0.5) == 1.0);
  const List longer{"a", "b", "c", "d", "e", "f", "g"};
  CHECK(rbo(longer, longer, 0.37) == 1.0);
}

TEST_CASE("disjoint lists score exactly 0") {
  const List a{"x", "y", "z"};
  const List b{"p", "q", "r"};
  CHECK(rbo(a, b, 0.9) == 0.0);
}

TEST_CASE("worked example: head transposition at s = 0.9") {
  const List a{"x", "y", "z"};
  const List b{"y", "x", "z"};
  // agreement profile (0, 1, 1): 0.1*(0 + 0.9 + 0.81) / (1 - 0.729)
  CHECK(rbo(a, b, 0.9) == doctest::Approx(0.171 / 0.271).epsilon(1e-12));
  CHECK(rbo(a, b, 0.9) == doctest::Approx(0.6310).epsilon(1e-4));
}

TEST_CASE("rbo validates its input") {
  const List a{"x", "y"};
  CHECK_THROWS_AS(rbo(a, List{}, 0.9), Error);
  CHECK_THROWS_AS(rbo(List{}, a, 0.9), Error);
  CHECK_THROWS_AS(rbo(a, a, 0.0), Error);
  CHECK_THROWS_AS(rbo(a, a, 1.0), Error);
  CHECK_THROWS_AS(rbo(a, List{"x", "x"}, 0.9), Error);
}

TEST_CASE("rbo is symmetric") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 500; ++trial) {
    const List a = random_list(rng, 1, 10, 14);
    const List b = random_list(rng, 1, 10, 14);
    const double s = 0.05 + 0.9 * std::uniform_real_distribution<double>(0, 1)(rng);
    CHECK(rbo(a, b, s) == rbo(b, a, s));
  }
}

TEST_CASE("rbo stays in [0,1] and matches brute force") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 1000; ++trial) {
    const List a = random_list(rng, 1, 6, 8);
    const List b = random_list(rng, 1, 6, 8);
    const double s = 0.05 + 0.9 * std::uniform_real_distribution<double>(0, 1)(rng);
    const double value = rbo(a, b, s);
    CHECK(value >= 0.0);
    CHECK(value <= 1.0 + 1e-12);
    CHECK(value == doctest::Approx(rbo_bruteforce(a, b, s)).epsilon(1e-12));
  }
}

TEST_CASE("head disagreement costs at least as much as tail disagreement") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 300; ++trial) {
    const List a = random_list(rng, 3, 10, 12);
    List head_swapped = a;
    std::swap(head_swapped[0], head_swapped[1]);
    List tail_swapped = a;
    std::swap(tail_swapped[a.size() - 2], tail_swapped[a.size() - 1]);
    const double s = 0.05 + 0.9 * std::uniform_real_distribution<double>(0, 1)(rng);
    CHECK(rbo(a, head_swapped, s) <= rbo(a, tail_swapped, s) + 1e-15);
  }
}

TEST_CASE("overlap_profile worked examples") {
  const List a{"x", "y", "z"};
  CHECK(overlap_profile(a, a) == std::vector<double>{1.0, 1.0, 1.0});

  const List disjoint{"p", "q", "r"};
  CHECK(overlap_profile(a, disjoint) == std::vector<double>{0.0, 0.0, 0.0});

  const List swapped{"y", "x", "z"};
  CHECK(overlap_profile(a, swapped) == std::vector<double>{0.0, 1.0, 1.0});
}

TEST_CASE("overlap_profile intersection sizes grow by at most 2") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 500; ++trial) {
    const List a = random_list(rng, 1, 10, 12);
    const List b = random_list(rng, 1, 10, 12);
    const auto profile = overlap_profile(a, b);
    double previous = 0.0;
    for (std::size_t d = 1; d <= profile.size(); ++d) {
      const double size = profile[d - 1] * static_cast<double>(d);
      CHECK(std::abs(size - std::round(size)) < 1e-9);
      CHECK(size >= previous - 1e-9);
      CHECK(size <= previous + 2.0 + 1e-9);
      CHECK(profile[d - 1] >= 0.0);
      CHECK(profile[d - 1] <= 1.0 + 1e-12);
      previous = size;
    }
  }
}
