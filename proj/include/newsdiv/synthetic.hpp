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
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "newsdiv/corpus.hpp"
#include "newsdiv/error.hpp"

// Deterministic synthetic corpora, user histories and baseline
// recommenders, so metric behavior can be exercised end-to-end without
// proprietary impression logs. The baselines are deliberately simple:
// they are yardsticks to compare against, not competitors.

namespace newsdiv {

/// Everything needed to generate a corpus. A fixed seed makes generation
/// fully deterministic, down to serialized bytes.
struct CorpusSpec {
  int n_articles = 1000;
  int n_users = 100;
  std::map<std::string, double> topic_weights = {
      {"culture", 1.0}, {"economy", 2.0}, {"politics", 3.0}, {"sports", 2.0}, {"tech", 1.0}};
  std::map<std::string, double> viewpoint_weights = {{"left", 1.0}, {"center", 2.0},
                                                     {"right", 1.0}};
  // Polarity is a three-point mixture: mass at 0 plus symmetric peaks at
  // +/- activation_level, so the pool's mean |polarity| is directly
  // (1 - neutral_fraction) * activation_level.
  double neutral_fraction = 0.5;
  double activation_level = 0.8;
  double minority_mention_rate = 0.3;
  int stories_per_topic = 20;
  double complexity_min = 0.0;
  double complexity_max = 100.0;
  int history_length = 20;
  // Dirichlet concentration for per-user topic preferences; smaller means
  // more specialized users, which gives Calibration something to detect.
  double topic_concentration = 0.1;
  // How strongly reading follows the preference (0 = uniform browsing).
  double history_affinity = 0.95;
  std::uint64_t seed = 0;
};

struct SyntheticData {
  Corpus corpus;
  HistorySet histories;
  PoolSet pools;
  std::string pool_id;
};

struct RecommenderSpec {
  enum class Kind { Random, MostPopular, TopicAffinity };
  Kind kind = Kind::Random;
  std::size_t slate_size = 10;
  std::uint64_t seed = 0;
  double lambda = 0.5;  // TopicAffinity only: 0 = uniform, 1 = pure history affinity
};

inline const char* to_string(RecommenderSpec::Kind k) {
  switch (k) {
    case RecommenderSpec::Kind::Random: return "random";
    case RecommenderSpec::Kind::MostPopular: return "most_popular";
    case RecommenderSpec::Kind::TopicAffinity: return "topic_affinity";
  }
  throw Error("unknown recommender kind enum value");
}

inline RecommenderSpec::Kind recommender_kind_from_string(const std::string& s) {
  for (auto k : {RecommenderSpec::Kind::Random, RecommenderSpec::Kind::MostPopular,
                 RecommenderSpec::Kind::TopicAffinity}) {
    if (s == to_string(k)) return k;
  }
  throw Error("unknown recommender kind \"" + s + "\"");
}

namespace detail {

// Hand-rolled sampling on top of splitmix64 so generation does not depend
// on standard-library distribution internals.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ^ 0x9e3779b97f4a7c15ULL) { next_u64(); }

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  std::size_t uniform_index(std::size_t n) {
    return static_cast<std::size_t>(uniform01() * static_cast<double>(n)) % n;
  }

  double normal() {
    const double u1 = 1.0 - uniform01();  // (0, 1]
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }

  // Marsaglia-Tsang; shape 0 degenerates to 0.
  double gamma(double shape) {
    if (shape <= 0.0) return 0.0;
    if (shape < 1.0) {
      const double u = uniform01();
      return gamma(shape + 1.0) * std::pow(u + 1e-300, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      const double x = normal();
      const double t = 1.0 + c * x;
      if (t <= 0.0) continue;
      const double v = t * t * t;
      const double u = uniform01();
      if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
      if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
  }

 private:
  std::uint64_t state_;
};

inline std::uint64_t fnv1a_str(const std::string& s) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

inline std::string weighted_choice(Rng& rng, const std::map<std::string, double>& weights,
                                   double total) {
  double u = rng.uniform01() * total;
  for (const auto& [key, w] : weights) {
    u -= w;
    if (u < 0.0) return key;
  }
  return weights.rbegin()->first;  // guard against accumulated rounding
}

inline std::string padded_id(const char* prefix, int index, int width) {
  std::string digits = std::to_string(index);
  std::string out = prefix;
  for (int i = static_cast<int>(digits.size()); i < width; ++i) out.push_back('0');
  return out + digits;
}

}  // namespace detail

inline constexpr Timestamp kSyntheticEpoch = 1704067200;  // 2024-01-01T00:00:00Z
inline constexpr int kSyntheticCorpusDays = 14;
inline constexpr Timestamp kSyntheticIssueTime =
    kSyntheticEpoch + (kSyntheticCorpusDays + 1) * kSecondsPerDay;

/// Generates the corpus, one pool holding every article, and one history
/// per user, sampled from a per-user Dirichlet topic preference.
inline SyntheticData generate_corpus(const CorpusSpec& spec) {
  if (spec.n_articles < 1 || spec.n_users < 1) {
    throw Error("generate_corpus: need at least one article and one user");
  }
  double topic_total = 0.0;
  for (const auto& [topic, w] : spec.topic_weights) {
    if (!(w >= 0.0)) throw Error("generate_corpus: negative topic weight");
    topic_total += w;
  }
  if (!(topic_total > 0.0)) throw Error("generate_corpus: topic weights sum to zero");
  double viewpoint_total = 0.0;
  for (const auto& [vp, w] : spec.viewpoint_weights) {
    if (!(w >= 0.0)) throw Error("generate_corpus: negative viewpoint weight");
    viewpoint_total += w;
  }
  if (!(viewpoint_total > 0.0)) throw Error("generate_corpus: viewpoint weights sum to zero");
  if (!(spec.complexity_min >= 0.0 && spec.complexity_max <= 100.0 &&
        spec.complexity_min <= spec.complexity_max)) {
    throw Error("generate_corpus: complexity range must satisfy 0 <= min <= max <= 100");
  }
  if (spec.stories_per_topic < 1) throw Error("generate_corpus: stories_per_topic must be >= 1");
  if (spec.history_length < 0) throw Error("generate_corpus: history_length must be >= 0");

  detail::Rng rng(spec.seed);
  SyntheticData data;
  data.pool_id = "pool";

  PoolSnapshot pool;
  pool.pool_id = data.pool_id;
  for (int i = 0; i < spec.n_articles; ++i) {
    Article a;
    a.id = detail::padded_id("a", i, 6);
    a.published_at = kSyntheticEpoch +
                     static_cast<Timestamp>(rng.uniform01() * kSyntheticCorpusDays *
                                            static_cast<double>(kSecondsPerDay));
    // Weighted topic mix: a dominant topic plus a secondary one, so topic
    // distributions are graded rather than one-hot.
    const std::string primary = detail::weighted_choice(rng, spec.topic_weights, topic_total);
    std::map<std::string, double> others;
    double others_total = 0.0;
    for (const auto& [topic, w] : spec.topic_weights) {
      if (topic != primary && w > 0.0) {
        others.emplace(topic, w);
        others_total += w;
      }
    }
    if (others.empty()) {
      a.topics.emplace(primary, 1.0);
    } else {
      const std::string secondary = detail::weighted_choice(rng, others, others_total);
      const double share = 0.6 + 0.3 * rng.uniform01();
      a.topics.emplace(primary, share);
      a.topics.emplace(secondary, 1.0 - share);
    }
    a.story_id = primary + "#" + std::to_string(rng.uniform_index(spec.stories_per_topic));
    a.complexity =
        spec.complexity_min + rng.uniform01() * (spec.complexity_max - spec.complexity_min);
    if (rng.uniform01() < spec.neutral_fraction) {
      a.polarity = 0.0;
    } else {
      a.polarity = rng.uniform01() < 0.5 ? spec.activation_level : -spec.activation_level;
    }
    a.viewpoint = detail::weighted_choice(rng, spec.viewpoint_weights, viewpoint_total);
    a.minority_mentions =
        rng.uniform01() < spec.minority_mention_rate ? 1 + rng.uniform_index(3) : 0;
    a.majority_mentions = 1 + rng.uniform_index(4);
    pool.article_ids.push_back(a.id);
    data.corpus.add(std::move(a));
  }
  data.pools.add(std::move(pool), data.corpus);

  const int n_topics = static_cast<int>(spec.topic_weights.size());
  for (int u = 0; u < spec.n_users; ++u) {
    // Per-user topic preference ~ Dirichlet(concentration * K * prevalence).
    std::map<std::string, double> pref;
    double pref_total = 0.0;
    for (const auto& [topic, w] : spec.topic_weights) {
      const double alpha = spec.topic_concentration * n_topics * (w / topic_total);
      const double g = rng.gamma(alpha);
      pref.emplace(topic, g);
      pref_total += g;
    }
    if (pref_total <= 0.0) {
      // All-zero gamma draws (degenerate prevalence): fall back to prevalence itself.
      pref = spec.topic_weights;
      pref_total = topic_total;
    }

    // History: the user reads the articles scoring highest under a noisy
    // blend of chance and topic preference, mimicking preference-driven
    // selection. history_affinity = 0 degenerates to uniform reading.
    std::vector<std::pair<double, std::size_t>> scored;
    scored.reserve(data.corpus.size());
    for (std::size_t i = 0; i < data.corpus.size(); ++i) {
      const Article& a = data.corpus.articles()[i];
      double affinity = 0.0;
      for (const auto& [topic, w] : a.topics) affinity += (pref.at(topic) / pref_total) * w;
      const double score =
          (1.0 - spec.history_affinity) * rng.uniform01() + spec.history_affinity * affinity;
      scored.emplace_back(score, i);
    }
    std::sort(scored.begin(), scored.end(), [&](const auto& x, const auto& y) {
      if (x.first != y.first) return x.first > y.first;
      return data.corpus.articles()[x.second].id < data.corpus.articles()[y.second].id;
    });

    UserHistory history;
    history.user_id = detail::padded_id("u", u, 4);
    std::vector<const Article*> picked;
    const int wanted = std::min<int>(spec.history_length, spec.n_articles);
    for (int k = 0; k < wanted; ++k) {
      picked.push_back(&data.corpus.articles()[scored[k].second]);
    }
    std::sort(picked.begin(), picked.end(), [](const Article* a, const Article* b) {
      if (a->published_at != b->published_at) return a->published_at < b->published_at;
      return a->id < b->id;
    });
    for (const Article* a : picked) history.consumed.push_back(a->id);
    data.histories.add(std::move(history), data.corpus);
  }
  return data;
}

/// Issues one slate per user. All three baselines rank the pool by a
/// per-user score and keep the top slate_size (ties broken by article id):
///
///   random          score = U(user, article), an i.i.d. uniform draw —
///                   the top-k of i.i.d. uniforms is a uniform sample
///                   without replacement
///   most_popular    score = a global popularity draw fixed by the seed;
///                   every user gets the identical slate
///   topic_affinity  score = (1-lambda) * U + lambda * <history topic
///                   distribution, article topic distribution>; lambda=0
///                   reproduces random draw-for-draw under the same seed
inline std::vector<RecommendationSlate> recommend(const RecommenderSpec& spec,
                                                  const Corpus& corpus,
                                                  const HistorySet& histories,
                                                  const PoolSnapshot& pool) {
  if (spec.slate_size < 1) throw Error("recommend: slate_size must be >= 1");
  if (spec.slate_size > pool.article_ids.size()) {
    throw Error("recommend: slate_size " + std::to_string(spec.slate_size) +
                " exceeds pool size " + std::to_string(pool.article_ids.size()));
  }
  if (spec.kind == RecommenderSpec::Kind::TopicAffinity &&
      !(spec.lambda >= 0.0 && spec.lambda <= 1.0)) {
    throw Error("recommend: lambda must lie in [0,1]");
  }

  const std::vector<std::string>& pool_ids = pool.article_ids;  // sorted
  std::vector<double> popularity;
  if (spec.kind == RecommenderSpec::Kind::MostPopular) {
    detail::Rng rng(spec.seed);
    popularity.resize(pool_ids.size());
    for (auto& p : popularity) p = rng.uniform01();
  }

  std::vector<RecommendationSlate> slates;
  slates.reserve(histories.size());
  for (const auto& history : histories.items()) {
    std::vector<double> scores(pool_ids.size());
    switch (spec.kind) {
      case RecommenderSpec::Kind::MostPopular:
        scores = popularity;
        break;
      case RecommenderSpec::Kind::Random:
      case RecommenderSpec::Kind::TopicAffinity: {
        detail::Rng rng(spec.seed ^ detail::fnv1a_str(history.user_id));
        for (auto& s : scores) s = rng.uniform01();
        if (spec.kind == RecommenderSpec::Kind::TopicAffinity) {
          std::map<std::string, double> hist_counts;
          double hist_total = 0.0;
          for (const auto& id : history.consumed) {
            const Article& a = corpus.at(id);
            double sum = 0.0;
            for (const auto& [topic, w] : a.topics) sum += w;
            for (const auto& [topic, w] : a.topics) {
              hist_counts[topic] += w / sum;
              hist_total += w / sum;
            }
          }
          for (std::size_t i = 0; i < pool_ids.size(); ++i) {
            double affinity = 0.0;
            if (hist_total > 0.0) {
              const Article& a = corpus.at(pool_ids[i]);
              double sum = 0.0;
              for (const auto& [topic, w] : a.topics) sum += w;
              for (const auto& [topic, w] : a.topics) {
                auto it = hist_counts.find(topic);
                if (it != hist_counts.end()) {
                  affinity += (it->second / hist_total) * (w / sum);
                }
              }
            }
            scores[i] = (1.0 - spec.lambda) * scores[i] + spec.lambda * affinity;
          }
        }
        break;
      }
    }

    std::vector<std::size_t> order(pool_ids.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (scores[a] != scores[b]) return scores[a] > scores[b];
      return pool_ids[a] < pool_ids[b];
    });

    RecommendationSlate slate;
    slate.user_id = history.user_id;
    slate.issued_at = kSyntheticIssueTime;
    slate.pool_id = pool.pool_id;
    for (std::size_t k = 0; k < spec.slate_size; ++k) {
      slate.ranked_items.push_back(pool_ids[order[k]]);
    }
    slates.push_back(std::move(slate));
  }
  return slates;
}

}  // namespace newsdiv
