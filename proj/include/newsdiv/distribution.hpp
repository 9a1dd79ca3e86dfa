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

#pragma once

#include <cmath>
#include <map>
#include <set>
#include <string>

#include "newsdiv/error.hpp"

namespace newsdiv {

/// A normalized distribution over string categories. Zero-probability
/// categories may be present; the category set is never empty and the
/// probabilities sum to 1 (within 1e-9).
///
/// All divergences in this library are computed in nats (natural log).
class CategoricalDistribution {
 public:
  explicit CategoricalDistribution(std::map<std::string, double> weights)
      : weights_(std::move(weights)) {
    if (weights_.empty()) throw Error("distribution must have at least one category");
    double sum = 0.0;
    for (const auto& [cat, p] : weights_) {
      if (!(p >= 0.0)) throw Error("negative probability for category \"" + cat + "\"");
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
      throw Error("probabilities sum to " + std::to_string(sum) + ", expected 1");
    }
  }

  /// Normalizes non-negative counts into a distribution.
  static CategoricalDistribution from_counts(const std::map<std::string, double>& counts) {
    if (counts.empty()) throw Error("from_counts: empty count map");
    double total = 0.0;
    for (const auto& [cat, c] : counts) {
      if (!(c >= 0.0)) throw Error("from_counts: negative count for category \"" + cat + "\"");
      total += c;
    }
    if (total <= 0.0) throw Error("from_counts: all counts are zero");
    std::map<std::string, double> w;
    for (const auto& [cat, c] : counts) w.emplace(cat, c / total);
    return CategoricalDistribution(std::move(w), Unchecked{});
  }

  double prob(const std::string& category) const {
    auto it = weights_.find(category);
    return it == weights_.end() ? 0.0 : it->second;
  }

  const std::map<std::string, double>& weights() const { return weights_; }
  std::size_t size() const { return weights_.size(); }

  friend bool operator==(const CategoricalDistribution& a,
                         const CategoricalDistribution& b) = default;

 private:
  struct Unchecked {};
  CategoricalDistribution(std::map<std::string, double> weights, Unchecked)
      : weights_(std::move(weights)) {}

  std::map<std::string, double> weights_;

  friend CategoricalDistribution smooth(const CategoricalDistribution&,
                                        const CategoricalDistribution&, double);
  friend CategoricalDistribution uniform_target(const std::set<std::string>&);
  friend CategoricalDistribution inverse_target(const CategoricalDistribution&);
};

/// Blends the observed distribution toward a reference so that every
/// category in the union of the two supports ends up with positive mass:
///
///   result(c) = (1 - alpha) * observed(c) + alpha * reference(c)
///
/// The reference is first extended to the union and given a uniform floor
/// of 1e-12 (then renormalized), so the result is strictly positive
/// everywhere. Keeps KL divergence finite when the observed distribution
/// misses a category. alpha must lie strictly inside (0, 1).
inline CategoricalDistribution smooth(const CategoricalDistribution& observed,
                                      const CategoricalDistribution& reference, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw Error("smoothing alpha must lie in (0,1), got " + std::to_string(alpha));
  }
  std::set<std::string> categories;
  for (const auto& [cat, p] : observed.weights()) categories.insert(cat);
  for (const auto& [cat, p] : reference.weights()) categories.insert(cat);

  constexpr double kFloor = 1e-12;
  double ref_total = 0.0;
  for (const auto& cat : categories) ref_total += reference.prob(cat) + kFloor;

  std::map<std::string, double> result;
  for (const auto& cat : categories) {
    const double ref = (reference.prob(cat) + kFloor) / ref_total;
    result.emplace(cat, (1.0 - alpha) * observed.prob(cat) + alpha * ref);
  }
  return CategoricalDistribution(std::move(result), CategoricalDistribution::Unchecked{});
}

/// Kullback-Leibler divergence KL(target || approx) in nats:
///
///   sum_c target(c) * ln(target(c) / approx(c))
///
/// Categories with target(c) = 0 contribute nothing. Throws if the approx
/// assigns zero mass where the target is positive (smooth() guarantees
/// this never happens for its outputs).
inline double kl_divergence(const CategoricalDistribution& target,
                            const CategoricalDistribution& approx) {
  double total = 0.0;
  for (const auto& [cat, p] : target.weights()) {
    if (p <= 0.0) continue;
    const double q = approx.prob(cat);
    if (q <= 0.0) {
      throw Error("kl_divergence: approx has zero mass on category \"" + cat +
                  "\" where target is positive");
    }
    total += p * std::log(p / q);
  }
  // Gibbs' inequality puts the true value at >= 0; clip rounding noise.
  return total > 0.0 ? total : 0.0;
}

/// Uniform distribution: every category gets 1/K.
inline CategoricalDistribution uniform_target(const std::set<std::string>& categories) {
  if (categories.empty()) throw Error("uniform_target: empty category set");
  const double p = 1.0 / static_cast<double>(categories.size());
  std::map<std::string, double> w;
  for (const auto& cat : categories) w.emplace(cat, p);
  return CategoricalDistribution(std::move(w), CategoricalDistribution::Unchecked{});
}

/// Prevalence-reversing target: result(c) = (1 - base(c)) / (K - 1).
/// Sums to exactly 1 and reverses the ordering of categories by
/// probability, without the blow-up that 1/p weighting gives rare
/// categories. Undefined for a single-category base.
inline CategoricalDistribution inverse_target(const CategoricalDistribution& base) {
  const std::size_t k = base.size();
  if (k < 2) throw Error("inverse_target: base distribution needs at least two categories");
  std::map<std::string, double> w;
  for (const auto& [cat, p] : base.weights()) {
    w.emplace(cat, (1.0 - p) / static_cast<double>(k - 1));
  }
  return CategoricalDistribution(std::move(w), CategoricalDistribution::Unchecked{});
}

}  // namespace newsdiv
