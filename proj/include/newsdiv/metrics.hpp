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

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "newsdiv/corpus.hpp"
#include "newsdiv/distribution.hpp"
#include "newsdiv/error.hpp"
#include "newsdiv/rank_overlap.hpp"
#include "newsdiv/story_chains.hpp"

// The five exposure-diversity metrics over a recommendation log:
//
//   Calibration         KL(history distribution || recommended distribution)
//                       per user, over topics or complexity bins; median.
//   Fragmentation       1 - rank-biased overlap of story chains between two
//                       users' recommendations; mean over user pairs.
//   Activation          (mean |polarity| recommended - mean |polarity| pool)/2
//                       per user; mean.
//   Representation      KL(target viewpoint distribution || recommended
//                       viewpoint distribution) per user, target = pool /
//                       uniform / prevalence-reversed; mean.
//   Alternative Voices  (q+/p+) / (q-/p-) share of protected-group mentions,
//                       recommendations relative to pool, per user; mean.
//
// Per-user and per-pair work is independent; everything is accumulated in
// canonical id order so results are bitwise reproducible, and permuting a
// slate's internal order can only affect Fragmentation (the one metric
// that reads ranks).

namespace newsdiv {

enum class Metric {
  CalibrationTopic,
  CalibrationComplexity,
  Fragmentation,
  Activation,
  Representation,
  AlternativeVoices,
};

inline constexpr Metric kAllMetrics[] = {
    Metric::CalibrationTopic, Metric::CalibrationComplexity, Metric::Fragmentation,
    Metric::Activation,       Metric::Representation,        Metric::AlternativeVoices,
};

inline const char* to_string(Metric m) {
  switch (m) {
    case Metric::CalibrationTopic: return "calibration_topic";
    case Metric::CalibrationComplexity: return "calibration_complexity";
    case Metric::Fragmentation: return "fragmentation";
    case Metric::Activation: return "activation";
    case Metric::Representation: return "representation";
    case Metric::AlternativeVoices: return "alternative_voices";
  }
  throw Error("unknown metric enum value");
}

inline Metric metric_from_string(const std::string& s) {
  for (Metric m : kAllMetrics) {
    if (s == to_string(m)) return m;
  }
  throw Error("unknown metric name \"" + s + "\"");
}

enum class TargetMode { Reflective, Equal, Inverse };

inline const char* to_string(TargetMode m) {
  switch (m) {
    case TargetMode::Reflective: return "reflective";
    case TargetMode::Equal: return "equal";
    case TargetMode::Inverse: return "inverse";
  }
  throw Error("unknown target mode enum value");
}

inline TargetMode target_mode_from_string(const std::string& s) {
  for (TargetMode m : {TargetMode::Reflective, TargetMode::Equal, TargetMode::Inverse}) {
    if (s == to_string(m)) return m;
  }
  throw Error("unknown representation target mode \"" + s + "\"");
}

enum class CalibrationFacet { Topic, ComplexityBins };

/// How many users/articles were left out of a metric for missing
/// annotations or empty histories.
struct Coverage {
  std::size_t users_evaluated = 0;
  std::size_t users_excluded = 0;
  std::size_t articles_excluded = 0;

  friend bool operator==(const Coverage&, const Coverage&) = default;
};

struct ActivationBaseline {
  std::map<std::string, double> per_user_mean_abs_polarity;

  friend bool operator==(const ActivationBaseline&, const ActivationBaseline&) = default;
};

/// One computed metric: per-user (per-pair for Fragmentation, keyed
/// "userA|userB") values plus the aggregate under the metric's own
/// aggregation rule.
struct MetricValue {
  Metric metric = Metric::CalibrationTopic;
  std::optional<TargetMode> target_mode;  // Representation only
  std::map<std::string, double> per_user;
  double aggregate = 0.0;
  Coverage coverage;
  std::vector<std::string> undefined_users;  // Alternative Voices only
  std::optional<ActivationBaseline> activation_baseline;

  friend bool operator==(const MetricValue&, const MetricValue&) = default;
};

/// Fragmentation compares every user with every other user; sampling
/// bounds that quadratic cost. Auto keeps exact all-pairs up to 2000
/// users and samples 100000 pairs beyond that.
struct PairSampling {
  enum class Mode { Auto, AllPairs, Sample };
  Mode mode = Mode::Auto;
  std::uint64_t n_pairs = 100000;

  friend bool operator==(const PairSampling&, const PairSampling&) = default;
};

inline constexpr std::size_t kAutoSamplingUserThreshold = 2000;

inline const char* to_string(PairSampling::Mode m) {
  switch (m) {
    case PairSampling::Mode::Auto: return "auto";
    case PairSampling::Mode::AllPairs: return "all";
    case PairSampling::Mode::Sample: return "sample";
  }
  throw Error("unknown sampling mode enum value");
}

inline PairSampling::Mode sampling_mode_from_string(const std::string& s) {
  for (auto m : {PairSampling::Mode::Auto, PairSampling::Mode::AllPairs,
                 PairSampling::Mode::Sample}) {
    if (s == to_string(m)) return m;
  }
  throw Error("unknown sampling mode \"" + s + "\"");
}

enum class StoryClusteringMode { Auto, Off, On };

inline const char* to_string(StoryClusteringMode m) {
  switch (m) {
    case StoryClusteringMode::Auto: return "auto";
    case StoryClusteringMode::Off: return "off";
    case StoryClusteringMode::On: return "on";
  }
  throw Error("unknown story clustering mode enum value");
}

inline StoryClusteringMode story_clustering_from_string(const std::string& s) {
  for (auto m : {StoryClusteringMode::Auto, StoryClusteringMode::Off, StoryClusteringMode::On}) {
    if (s == to_string(m)) return m;
  }
  throw Error("unknown story clustering mode \"" + s + "\"");
}

struct EvalConfig {
  std::vector<Metric> metrics{std::begin(kAllMetrics), std::end(kAllMetrics)};
  double alpha = 0.01;
  double rbo_s = 0.9;
  int complexity_bins = 5;
  std::vector<TargetMode> representation_modes{TargetMode::Reflective};
  PairSampling sampling;
  std::uint64_t seed = 0;
  std::optional<int> history_window_days;
  StoryClusteringMode story_clustering = StoryClusteringMode::Auto;
  double story_threshold = 0.5;
  int story_window_days = 3;

  friend bool operator==(const EvalConfig&, const EvalConfig&) = default;
};

/// Two reports can be compared or assessed only if the knobs that change
/// metric values agree. Metric selection and the representation-mode list
/// may differ.
inline bool config_compatible(const EvalConfig& a, const EvalConfig& b) {
  return a.alpha == b.alpha && a.rbo_s == b.rbo_s && a.complexity_bins == b.complexity_bins &&
         a.sampling == b.sampling && a.seed == b.seed &&
         a.history_window_days == b.history_window_days &&
         a.story_clustering == b.story_clustering && a.story_threshold == b.story_threshold &&
         a.story_window_days == b.story_window_days;
}

/// One report row: a computed MetricValue or the reason it failed.
/// A failed metric never aborts the rest of the report.
struct MetricEntry {
  Metric metric = Metric::CalibrationTopic;
  std::optional<TargetMode> target_mode;
  std::optional<MetricValue> value;
  std::string error;

  bool ok() const { return value.has_value(); }

  friend bool operator==(const MetricEntry&, const MetricEntry&) = default;
};

struct MetricReport {
  std::string algorithm;
  EvalConfig config;
  std::string corpus_fingerprint;
  std::size_t n_articles = 0;
  std::size_t n_users = 0;
  std::vector<MetricEntry> entries;

  const MetricEntry* find(Metric m, std::optional<TargetMode> mode = std::nullopt) const {
    for (const auto& e : entries) {
      if (e.metric != m) continue;
      if (m == Metric::Representation && mode && e.target_mode != mode) continue;
      return &e;
    }
    return nullptr;
  }

  friend bool operator==(const MetricReport&, const MetricReport&) = default;
};

namespace detail {

struct PreparedUser {
  std::string user_id;
  std::vector<std::string> exposure_ranked;      // slate concatenation, issue order
  std::vector<const Article*> exposure_sorted;   // same multiset, canonical id order
  std::vector<const Article*> history_sorted;    // consumed multiset, canonical id order
};

struct PreparedRun {
  std::vector<PreparedUser> users;        // sorted by user id
  std::vector<const Article*> pool;       // union of referenced pools, sorted by id
};

inline void sort_by_id(std::vector<const Article*>& v) {
  std::sort(v.begin(), v.end(),
            [](const Article* a, const Article* b) { return a->id < b->id; });
}

/// Groups slates per user (issue order), resolves the exposure and
/// history multisets, and unions the referenced pools. Sorting fixes the
/// floating-point accumulation order once and for all.
inline PreparedRun prepare(const EvaluationRun& run,
                           std::optional<int> history_window_days = std::nullopt) {
  if (!run.corpus || !run.histories || !run.pools) {
    throw Error("evaluation run is missing its corpus, histories or pools");
  }
  if (run.slates.empty()) throw Error("evaluation run has no slates");

  std::map<std::string, std::vector<const RecommendationSlate*>> by_user;
  std::set<std::string> pool_ids;
  for (const auto& slate : run.slates) {
    by_user[slate.user_id].push_back(&slate);
    pool_ids.insert(slate.pool_id);
  }

  PreparedRun prepared;
  for (auto& [user_id, slates] : by_user) {
    std::stable_sort(slates.begin(), slates.end(),
                     [](const RecommendationSlate* a, const RecommendationSlate* b) {
                       return a->issued_at < b->issued_at;
                     });
    PreparedUser user;
    user.user_id = user_id;
    for (const auto* slate : slates) {
      for (const auto& id : slate->ranked_items) {
        user.exposure_ranked.push_back(id);
        user.exposure_sorted.push_back(&run.corpus->at(id));
      }
    }
    sort_by_id(user.exposure_sorted);

    const UserHistory* history = run.histories->find(user_id);
    if (!history) throw Error("slate user \"" + user_id + "\" has no history record");
    std::optional<Timestamp> cutoff;
    if (history_window_days) {
      const Timestamp first_issue = slates.front()->issued_at;
      cutoff = first_issue - static_cast<Timestamp>(*history_window_days) * kSecondsPerDay;
    }
    for (const auto& id : history->consumed) {
      const Article& a = run.corpus->at(id);
      if (cutoff && a.published_at < *cutoff) continue;
      user.history_sorted.push_back(&a);
    }
    sort_by_id(user.history_sorted);

    prepared.users.push_back(std::move(user));
  }

  std::set<std::string> pool_articles;
  for (const auto& pool_id : pool_ids) {
    const PoolSnapshot* pool = run.pools->find(pool_id);
    if (!pool) throw Error("slate references unknown pool \"" + pool_id + "\"");
    pool_articles.insert(pool->article_ids.begin(), pool->article_ids.end());
  }
  for (const auto& id : pool_articles) prepared.pool.push_back(&run.corpus->at(id));
  return prepared;
}

inline double mean(const std::vector<double>& v) {
  double sum = 0.0;
  for (double x : v) sum += x;
  return sum / static_cast<double>(v.size());
}

inline double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  if (n % 2 == 1) return v[n / 2];
  return (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

/// Per-article topic mass, normalized so each article contributes 1.
inline void add_topic_counts(const Article& a, std::map<std::string, double>& counts) {
  double sum = 0.0;
  for (const auto& [topic, w] : a.topics) sum += w;
  for (const auto& [topic, w] : a.topics) {
    if (w > 0.0) counts[topic] += w / sum;
  }
}

inline std::map<std::string, double> facet_counts(const std::vector<const Article*>& articles,
                                                  CalibrationFacet facet, int complexity_bins,
                                                  std::set<std::string>& excluded) {
  std::map<std::string, double> counts;
  for (const Article* a : articles) {
    if (facet == CalibrationFacet::Topic) {
      add_topic_counts(*a, counts);
    } else {
      if (!a->complexity) {
        excluded.insert(a->id);
        continue;
      }
      counts[complexity_bin_label(*a->complexity, complexity_bins)] += 1.0;
    }
  }
  return counts;
}

inline std::map<std::string, double> viewpoint_counts(const std::vector<const Article*>& articles,
                                                      std::set<std::string>& excluded) {
  std::map<std::string, double> counts;
  for (const Article* a : articles) {
    if (!a->viewpoint) {
      excluded.insert(a->id);
      continue;
    }
    counts[*a->viewpoint] += 1.0;
  }
  return counts;
}

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t bounded_uint64(std::uint64_t& state, std::uint64_t bound) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t r;
  do {
    r = splitmix64(state);
  } while (r >= limit);
  return r % bound;
}

}  // namespace detail

/// Calibration: for each user with a non-empty history, the KL divergence
/// between the facet distribution of their history (the target) and the
/// smoothed facet distribution of their recommendations. KL blows up on
/// outliers, so the aggregate is the median across users.
inline MetricValue calibration(const EvaluationRun& run, CalibrationFacet facet, double alpha,
                               int complexity_bins = 5,
                               std::optional<int> history_window_days = std::nullopt) {
  const detail::PreparedRun prepared = detail::prepare(run, history_window_days);
  MetricValue out;
  out.metric =
      facet == CalibrationFacet::Topic ? Metric::CalibrationTopic : Metric::CalibrationComplexity;

  std::set<std::string> excluded_articles;
  std::vector<double> values;
  for (const auto& user : prepared.users) {
    if (user.history_sorted.empty()) {
      out.coverage.users_excluded++;
      continue;
    }
    const auto target_counts =
        detail::facet_counts(user.history_sorted, facet, complexity_bins, excluded_articles);
    const auto observed_counts =
        detail::facet_counts(user.exposure_sorted, facet, complexity_bins, excluded_articles);
    if (target_counts.empty() || observed_counts.empty()) {
      out.coverage.users_excluded++;
      continue;
    }
    const auto target = CategoricalDistribution::from_counts(target_counts);
    const auto observed = CategoricalDistribution::from_counts(observed_counts);
    const double value = kl_divergence(target, smooth(observed, target, alpha));
    out.per_user.emplace(user.user_id, value);
    values.push_back(value);
  }
  out.coverage.articles_excluded = excluded_articles.size();
  out.coverage.users_evaluated = values.size();
  if (values.empty()) {
    throw Error("calibration: no eligible users (empty or unannotated histories)");
  }
  out.aggregate = detail::median(std::move(values));
  return out;
}

/// Fragmentation: per unordered user pair, 1 - rbo of the two users' story
/// chains (recommendations mapped to stories, deduplicated at first
/// occurrence so ranks survive). Aggregate is the mean over all pairs, or
/// over a seeded uniform sample of pairs when the quadratic blow-up bites.
inline MetricValue fragmentation(const EvaluationRun& run, double s, PairSampling sampling = {},
                                 std::uint64_t seed = 0,
                                 const StoryAssignment* stories = nullptr) {
  const detail::PreparedRun prepared = detail::prepare(run);
  const std::size_t n = prepared.users.size();
  if (n < 2) throw Error("fragmentation: need at least two users");

  MetricValue out;
  out.metric = Metric::Fragmentation;
  out.coverage.users_evaluated = n;

  std::vector<std::vector<std::string>> chains(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::set<std::string> seen;
    for (const auto& article_id : prepared.users[i].exposure_ranked) {
      const Article& a = run.corpus->at(article_id);
      std::string story =
          a.story_id ? *a.story_id : (stories ? stories->at(a.id) : "s:" + a.id);
      if (seen.insert(story).second) chains[i].push_back(std::move(story));
    }
    if (chains[i].empty()) {
      throw Error("fragmentation: user \"" + prepared.users[i].user_id +
                  "\" has an empty story list");
    }
  }

  const std::uint64_t total =
      static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n - 1) / 2;
  std::uint64_t want = total;
  switch (sampling.mode) {
    case PairSampling::Mode::AllPairs:
      break;
    case PairSampling::Mode::Sample:
      want = std::min<std::uint64_t>(sampling.n_pairs, total);
      break;
    case PairSampling::Mode::Auto:
      if (n > kAutoSamplingUserThreshold) want = std::min<std::uint64_t>(sampling.n_pairs, total);
      break;
  }

  std::vector<std::uint64_t> pair_codes;
  if (want >= total) {
    pair_codes.resize(total);
    for (std::uint64_t k = 0; k < total; ++k) pair_codes[k] = k;
  } else {
    std::set<std::uint64_t> chosen;
    std::uint64_t state = seed ^ 0x6c62272e07bb0142ULL;
    while (chosen.size() < want) chosen.insert(detail::bounded_uint64(state, total));
    pair_codes.assign(chosen.begin(), chosen.end());
  }

  // Pair code k maps to the k-th (i,j), i<j, in row-major order; cum(i) =
  // number of pairs whose first index is below i.
  const auto cum = [&](std::uint64_t i) {
    return i * (2 * static_cast<std::uint64_t>(n) - i - 1) / 2;
  };
  std::vector<double> values;
  values.reserve(pair_codes.size());
  for (const std::uint64_t code : pair_codes) {
    std::uint64_t lo = 0, hi = n - 1;
    while (lo + 1 < hi) {
      const std::uint64_t mid = (lo + hi) / 2;
      if (cum(mid) <= code) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    const std::uint64_t i = (cum(hi) <= code) ? hi : lo;
    const std::uint64_t j = i + 1 + (code - cum(i));
    const double value = 1.0 - rbo(chains[i], chains[j], s);
    out.per_user.emplace(prepared.users[i].user_id + "|" + prepared.users[j].user_id, value);
    values.push_back(value);
  }
  out.aggregate = detail::mean(values);
  return out;
}

/// Activation: how much more (or less) emotionally charged the
/// recommendations are than the pool they were drawn from. Positive means
/// the recommender amplifies charged content; the value lives in
/// [-0.5, 0.5] because it is a halved difference of two [0,1] means.
/// The per-user baseline (mean |polarity| of the recommendations alone)
/// rides along for reporting.
inline MetricValue activation(const EvaluationRun& run) {
  const detail::PreparedRun prepared = detail::prepare(run);
  MetricValue out;
  out.metric = Metric::Activation;
  out.activation_baseline.emplace();

  std::set<std::string> excluded_articles;
  double pool_sum = 0.0;
  std::size_t pool_count = 0;
  for (const Article* a : prepared.pool) {
    if (!a->polarity) {
      excluded_articles.insert(a->id);
      continue;
    }
    pool_sum += std::abs(*a->polarity);
    ++pool_count;
  }
  if (pool_count == 0) throw Error("activation: no polarity annotations on the pool");
  const double pool_mean = pool_sum / static_cast<double>(pool_count);

  std::vector<double> values;
  for (const auto& user : prepared.users) {
    double sum = 0.0;
    std::size_t count = 0;
    for (const Article* a : user.exposure_sorted) {
      if (!a->polarity) {
        excluded_articles.insert(a->id);
        continue;
      }
      sum += std::abs(*a->polarity);
      ++count;
    }
    if (count == 0) {
      out.coverage.users_excluded++;
      continue;
    }
    const double user_mean = sum / static_cast<double>(count);
    out.activation_baseline->per_user_mean_abs_polarity.emplace(user.user_id, user_mean);
    const double value = (user_mean - pool_mean) / 2.0;
    out.per_user.emplace(user.user_id, value);
    values.push_back(value);
  }
  out.coverage.articles_excluded = excluded_articles.size();
  out.coverage.users_evaluated = values.size();
  if (values.empty()) throw Error("activation: no users with polarity-annotated recommendations");
  out.aggregate = detail::mean(values);
  return out;
}

/// Representation: KL divergence between a target viewpoint distribution
/// and each user's smoothed recommended-viewpoint distribution, averaged
/// over users. The target encodes what balance is wanted: the pool itself
/// (reflective), a uniform spread (equal), or the pool's prevalence
/// ordering reversed (inverse).
inline MetricValue representation(const EvaluationRun& run, TargetMode mode, double alpha) {
  const detail::PreparedRun prepared = detail::prepare(run);
  MetricValue out;
  out.metric = Metric::Representation;
  out.target_mode = mode;

  std::set<std::string> excluded_articles;
  const auto pool_counts = detail::viewpoint_counts(prepared.pool, excluded_articles);
  if (pool_counts.empty()) throw Error("representation: no viewpoint annotations on the pool");
  const auto base = CategoricalDistribution::from_counts(pool_counts);

  CategoricalDistribution target = base;
  switch (mode) {
    case TargetMode::Reflective:
      break;
    case TargetMode::Equal: {
      std::set<std::string> categories;
      for (const auto& [cat, p] : base.weights()) categories.insert(cat);
      target = uniform_target(categories);
      break;
    }
    case TargetMode::Inverse:
      target = inverse_target(base);  // throws on a single-viewpoint pool
      break;
  }

  std::vector<double> values;
  for (const auto& user : prepared.users) {
    const auto observed_counts = detail::viewpoint_counts(user.exposure_sorted, excluded_articles);
    if (observed_counts.empty()) {
      out.coverage.users_excluded++;
      continue;
    }
    const auto observed = CategoricalDistribution::from_counts(observed_counts);
    const double value = kl_divergence(target, smooth(observed, target, alpha));
    out.per_user.emplace(user.user_id, value);
    values.push_back(value);
  }
  out.coverage.articles_excluded = excluded_articles.size();
  out.coverage.users_evaluated = values.size();
  if (values.empty()) {
    throw Error("representation: no users with viewpoint-annotated recommendations");
  }
  out.aggregate = detail::mean(values);
  return out;
}

/// Alternative Voices: the share of protected-group mentions a user was
/// shown, relative to that share in the pool: (q+/p+) / (q-/p-). Exactly 1
/// when recommendations mirror the pool's balance; above 1 the protected
/// group is over-represented. Users whose recommendations carry no
/// unprotected mentions (q- = 0) have no defined ratio and are reported
/// separately rather than coerced to a number.
inline MetricValue alternative_voices(const EvaluationRun& run) {
  const detail::PreparedRun prepared = detail::prepare(run);
  MetricValue out;
  out.metric = Metric::AlternativeVoices;

  std::set<std::string> excluded_articles;
  std::int64_t pool_protected = 0, pool_unprotected = 0;
  for (const Article* a : prepared.pool) {
    if (!a->has_mention_counts()) {
      excluded_articles.insert(a->id);
      continue;
    }
    pool_protected += *a->minority_mentions;
    pool_unprotected += *a->majority_mentions;
  }
  if (pool_protected == 0) {
    throw Error("alternative_voices: pool has no protected-group mentions (p+ = 0)");
  }
  if (pool_unprotected == 0) {
    throw Error("alternative_voices: pool has no unprotected-group mentions (p- = 0)");
  }

  std::vector<double> values;
  for (const auto& user : prepared.users) {
    std::int64_t q_protected = 0, q_unprotected = 0;
    for (const Article* a : user.exposure_sorted) {
      if (!a->has_mention_counts()) {
        excluded_articles.insert(a->id);
        continue;
      }
      q_protected += *a->minority_mentions;
      q_unprotected += *a->majority_mentions;
    }
    if (q_unprotected == 0) {
      out.undefined_users.push_back(user.user_id);
      continue;
    }
    const double value =
        (static_cast<double>(q_protected) / static_cast<double>(pool_protected)) /
        (static_cast<double>(q_unprotected) / static_cast<double>(pool_unprotected));
    out.per_user.emplace(user.user_id, value);
    values.push_back(value);
  }
  out.coverage.articles_excluded = excluded_articles.size();
  out.coverage.users_evaluated = values.size();
  if (values.empty()) {
    throw Error("alternative_voices: no users with a defined mention ratio");
  }
  out.aggregate = detail::mean(values);
  return out;
}

namespace detail {

inline std::uint64_t fnv1a(std::uint64_t hash, const std::string& s) {
  for (unsigned char c : s) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  hash ^= 0x1f;
  hash *= 0x100000001b3ULL;
  return hash;
}

}  // namespace detail

/// Stable identity of the evaluated data (articles + users), so compared
/// reports can be checked for having been computed on the same inputs.
inline std::string corpus_fingerprint(const Corpus& corpus, const HistorySet& histories) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (const auto& a : corpus.articles()) hash = detail::fnv1a(hash, a.id);
  for (const auto& h : histories.items()) hash = detail::fnv1a(hash, h.user_id);
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

/// Runs every selected metric, isolating failures: a metric that is
/// undefined for this run becomes a failed entry with its reason, and the
/// rest of the report is still produced. Deterministic for a fixed config
/// (seeds included).
inline MetricReport evaluate_all(const EvaluationRun& run, const EvalConfig& config) {
  MetricReport report;
  report.algorithm = run.algorithm_name;
  report.config = config;
  if (run.corpus && run.histories) {
    report.corpus_fingerprint = corpus_fingerprint(*run.corpus, *run.histories);
    report.n_articles = run.corpus->size();
    report.n_users = run.histories->size();
  }

  // One story assignment is shared by all Fragmentation work. Auto only
  // bothers clustering when some article lacks a story annotation but has
  // text to cluster on; everything else falls back to singletons.
  std::optional<StoryAssignment> stories;
  const bool fragmentation_selected =
      std::find(config.metrics.begin(), config.metrics.end(), Metric::Fragmentation) !=
      config.metrics.end();
  if (fragmentation_selected && run.corpus && config.story_clustering != StoryClusteringMode::Off) {
    bool need = config.story_clustering == StoryClusteringMode::On;
    if (!need) {
      for (const auto& a : run.corpus->articles()) {
        if (!a.story_id && a.text && !a.text->empty()) {
          need = true;
          break;
        }
      }
    }
    if (need) {
      stories = cluster_stories(*run.corpus, config.story_threshold, config.story_window_days);
    }
  }

  const auto push = [&](Metric m, std::optional<TargetMode> mode, auto&& compute) {
    MetricEntry entry;
    entry.metric = m;
    entry.target_mode = mode;
    try {
      entry.value = compute();
    } catch (const Error& e) {
      entry.error = e.what();
    }
    report.entries.push_back(std::move(entry));
  };

  for (Metric m : config.metrics) {
    switch (m) {
      case Metric::CalibrationTopic:
        push(m, std::nullopt, [&] {
          return calibration(run, CalibrationFacet::Topic, config.alpha, config.complexity_bins,
                             config.history_window_days);
        });
        break;
      case Metric::CalibrationComplexity:
        push(m, std::nullopt, [&] {
          return calibration(run, CalibrationFacet::ComplexityBins, config.alpha,
                             config.complexity_bins, config.history_window_days);
        });
        break;
      case Metric::Fragmentation:
        push(m, std::nullopt, [&] {
          return fragmentation(run, config.rbo_s, config.sampling, config.seed,
                               stories ? &*stories : nullptr);
        });
        break;
      case Metric::Activation:
        push(m, std::nullopt, [&] { return activation(run); });
        break;
      case Metric::Representation:
        for (TargetMode mode : config.representation_modes) {
          push(m, mode, [&] { return representation(run, mode, config.alpha); });
        }
        break;
      case Metric::AlternativeVoices:
        push(m, std::nullopt, [&] { return alternative_voices(run); });
        break;
    }
  }
  return report;
}

}  // namespace newsdiv
