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

#include "newsdiv/distribution.hpp"

#include <cmath>
#include <random>

#include "doctest.h"

using namespace newsdiv;

namespace {

CategoricalDistribution random_distribution(std::mt19937_64& rng, int min_k = 2, int max_k = 8) {
  std::uniform_int_distribution<int> k_dist(min_k, max_k);
  std::uniform_real_distribution<double> w_dist(0.01, 1.0);
  const int k = k_dist(rng);
  std::map<std::string, double> counts;
  for (int i = 0; i < k; ++i) counts.emplace("c" + std::to_string(i), w_dist(rng));
  return CategoricalDistribution::from_counts(counts);
}

// Straight-line evaluation of the KL sum, independent of the library path.
double kl_bruteforce(const CategoricalDistribution& target, const CategoricalDistribution& approx) {
  double total = 0.0;
  for (const auto& [cat, p] : target.weights()) {
    if (p > 0.0) total += p * std::log(p / approx.prob(cat));
  }
  return total;
}

}  // namespace

TEST_CASE("from_counts normalizes counts") {
  const auto half = CategoricalDistribution::from_counts({{"A", 2.0}, {"B", 2.0}});
  CHECK(half.prob("A") == doctest::Approx(0.5));
  CHECK(half.prob("B") == doctest::Approx(0.5));

  const auto single = CategoricalDistribution::from_counts({{"A", 3.0}});
  CHECK(single.prob("A") == doctest::Approx(1.0));

  const auto skewed = CategoricalDistribution::from_counts({{"A", 1.0}, {"B", 3.0}});
  CHECK(skewed.prob("A") == doctest::Approx(0.25));
  CHECK(skewed.prob("B") == doctest::Approx(0.75));
}

TEST_CASE("from_counts rejects degenerate input") {
  CHECK_THROWS_AS(CategoricalDistribution::from_counts({}), Error);
  CHECK_THROWS_AS(CategoricalDistribution::from_counts({{"A", 0.0}, {"B", 0.0}}), Error);
  CHECK_THROWS_AS(CategoricalDistribution::from_counts({{"A", -1.0}, {"B", 2.0}}), Error);
}

TEST_CASE("from_counts is scale invariant") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> scale_dist(1e-6, 1e6);
  for (int trial = 0; trial < 300; ++trial) {
    const auto base = random_distribution(rng);
    const double k = scale_dist(rng);
    std::map<std::string, double> scaled;
    for (const auto& [cat, p] : base.weights()) scaled.emplace(cat, p * k);
    const auto rescaled = CategoricalDistribution::from_counts(scaled);
    for (const auto& [cat, p] : base.weights()) {
      CHECK(rescaled.prob(cat) == doctest::Approx(p).epsilon(1e-12));
    }
  }
}

TEST_CASE("distribution constructor validates invariants") {
  CHECK_THROWS_AS(CategoricalDistribution(std::map<std::string, double>{}), Error);
  CHECK_THROWS_AS(CategoricalDistribution({{"A", 0.7}, {"B", 0.7}}), Error);
  CHECK_THROWS_AS(CategoricalDistribution({{"A", 1.5}, {"B", -0.5}}), Error);
  CHECK_NOTHROW(CategoricalDistribution({{"A", 1.0}, {"B", 0.0}}));
}

TEST_CASE("smooth blends toward the reference") {
  const CategoricalDistribution observed({{"A", 1.0}, {"B", 0.0}});
  const CategoricalDistribution reference({{"A", 0.5}, {"B", 0.5}});
  const auto blended = smooth(observed, reference, 0.01);
  CHECK(blended.prob("A") == doctest::Approx(0.995).epsilon(1e-9));
  CHECK(blended.prob("B") == doctest::Approx(0.005).epsilon(1e-9));
}

TEST_CASE("smooth unions the category sets") {
  const CategoricalDistribution observed({{"B", 1.0}});
  const CategoricalDistribution reference({{"A", 1.0}});
  const auto blended = smooth(observed, reference, 0.01);
  CHECK(blended.prob("A") == doctest::Approx(0.01).epsilon(1e-9));
  CHECK(blended.prob("B") == doctest::Approx(0.99).epsilon(1e-9));
  CHECK(blended.prob("A") > 0.0);
}

TEST_CASE("smoothing a distribution toward itself is a fixed point") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const auto d = random_distribution(rng);
    const auto s = smooth(d, d, 0.3);
    for (const auto& [cat, p] : d.weights()) {
      CHECK(s.prob(cat) == doctest::Approx(p).epsilon(1e-12));
    }
  }
}

TEST_CASE("smooth rejects alpha outside (0,1)") {
  const CategoricalDistribution d({{"A", 1.0}});
  CHECK_THROWS_AS(smooth(d, d, 0.0), Error);
  CHECK_THROWS_AS(smooth(d, d, 1.0), Error);
  CHECK_THROWS_AS(smooth(d, d, -0.1), Error);
  CHECK_THROWS_AS(smooth(d, d, 1.5), Error);
}

TEST_CASE("smooth output stays a distribution") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> alpha_dist(1e-6, 1.0 - 1e-6);
  for (int trial = 0; trial < 500; ++trial) {
    const auto observed = random_distribution(rng);
    const auto reference = random_distribution(rng);
    const auto s = smooth(observed, reference, alpha_dist(rng));
    double sum = 0.0;
    for (const auto& [cat, p] : s.weights()) {
      CHECK(p >= 0.0);
      sum += p;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("kl divergence of identical distributions is zero") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const auto d = random_distribution(rng);
    CHECK(std::abs(kl_divergence(d, d)) <= 1e-12);
  }
}

TEST_CASE("kl divergence worked values") {
  const CategoricalDistribution target({{"A", 0.5}, {"B", 0.5}});
  const CategoricalDistribution approx({{"A", 0.25}, {"B", 0.75}});
  // 0.5*ln(2) + 0.5*ln(2/3)
  CHECK(kl_divergence(target, approx) == doctest::Approx(0.1438410362258904).epsilon(1e-12));

  const CategoricalDistribution point({{"A", 1.0}});
  const CategoricalDistribution uniform({{"A", 0.5}, {"B", 0.5}});
  CHECK(kl_divergence(point, uniform) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("kl divergence is non-negative after smoothing") {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> alpha_dist(1e-4, 0.5);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto target = random_distribution(rng);
    const auto observed = random_distribution(rng);
    const auto approx = smooth(observed, target, alpha_dist(rng));
    const double kl = kl_divergence(target, approx);
    CHECK(kl >= -1e-12);
    CHECK(kl == doctest::Approx(kl_bruteforce(target, approx)).epsilon(1e-12));
  }
}

TEST_CASE("kl divergence rejects support violations") {
  const CategoricalDistribution target({{"A", 0.5}, {"B", 0.5}});
  const CategoricalDistribution approx({{"A", 1.0}});
  CHECK_THROWS_AS(kl_divergence(target, approx), Error);
}

TEST_CASE("kl divergence ignores zero-probability target categories") {
  const CategoricalDistribution target({{"A", 1.0}, {"B", 0.0}});
  const CategoricalDistribution approx({{"A", 1.0}});
  CHECK(kl_divergence(target, approx) == doctest::Approx(0.0));
}

TEST_CASE("uniform_target splits mass evenly") {
  const auto two = uniform_target({"X", "Y"});
  CHECK(two.prob("X") == doctest::Approx(0.5));
  CHECK(two.prob("Y") == doctest::Approx(0.5));

  const auto one = uniform_target({"X"});
  CHECK(one.prob("X") == doctest::Approx(1.0));

  const auto four = uniform_target({"X", "Y", "Z", "W"});
  for (const auto& [cat, p] : four.weights()) CHECK(p == doctest::Approx(0.25));

  CHECK_THROWS_AS(uniform_target({}), Error);
}

TEST_CASE("inverse_target worked values") {
  const auto two = inverse_target(CategoricalDistribution({{"X", 0.75}, {"Y", 0.25}}));
  CHECK(two.prob("X") == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(two.prob("Y") == doctest::Approx(0.75).epsilon(1e-12));

  const auto three = inverse_target(CategoricalDistribution({{"X", 0.5}, {"Y", 0.3}, {"Z", 0.2}}));
  CHECK(three.prob("X") == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(three.prob("Y") == doctest::Approx(0.35).epsilon(1e-12));
  CHECK(three.prob("Z") == doctest::Approx(0.4).epsilon(1e-12));
}

TEST_CASE("inverse_target fixes uniform distributions") {
  const auto uniform = uniform_target({"X", "Y", "Z"});
  const auto inverse = inverse_target(uniform);
  for (const auto& [cat, p] : uniform.weights()) {
    CHECK(inverse.prob(cat) == doctest::Approx(p).epsilon(1e-12));
  }
}

TEST_CASE("inverse_target rejects a single category") {
  CHECK_THROWS_AS(inverse_target(CategoricalDistribution({{"X", 1.0}})), Error);
}

TEST_CASE("inverse_target swaps the most and least prevalent categories") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> w_dist(0.01, 1.0);
  for (int trial = 0; trial < 300; ++trial) {
    // Distinct weights so argmax/argmin are unique.
    std::map<std::string, double> counts;
    const int k = 2 + static_cast<int>(rng() % 6);
    for (int i = 0; i < k; ++i) counts.emplace("c" + std::to_string(i), w_dist(rng) + i * 1.01);
    const auto base = CategoricalDistribution::from_counts(counts);
    const auto inverse = inverse_target(base);

    std::string base_max, base_min, inv_max, inv_min;
    double best = -1.0, worst = 2.0;
    for (const auto& [cat, p] : base.weights()) {
      if (p > best) {
        best = p;
        base_max = cat;
      }
      if (p < worst) {
        worst = p;
        base_min = cat;
      }
    }
    best = -1.0;
    worst = 2.0;
    for (const auto& [cat, p] : inverse.weights()) {
      if (p > best) {
        best = p;
        inv_max = cat;
      }
      if (p < worst) {
        worst = p;
        inv_min = cat;
      }
    }
    CHECK(base_max == inv_min);
    CHECK(base_min == inv_max);

    double sum = 0.0;
    for (const auto& [cat, p] : inverse.weights()) sum += p;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  }
}
