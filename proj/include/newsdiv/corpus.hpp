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
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "newsdiv/error.hpp"
#include "newsdiv/iso8601.hpp"

namespace newsdiv {

/// An annotated news item. Topic weights are required (a one-hot label is
/// stored as a weight-1 map); the editorial annotations — complexity,
/// polarity, viewpoint, group-mention counts — are optional, and articles
/// missing one are excluded from the metric that needs it.
struct Article {
  std::string id;
  Timestamp published_at = 0;
  std::map<std::string, double> topics;
  std::optional<double> complexity;  // readability-style score in [0, 100]
  std::optional<double> polarity;    // signed intensity in [-1, 1]
  std::optional<std::string> viewpoint;
  std::optional<std::int64_t> minority_mentions;
  std::optional<std::int64_t> majority_mentions;
  std::optional<std::string> story_id;
  std::optional<std::string> text;

  bool has_mention_counts() const {
    return minority_mentions.has_value() && majority_mentions.has_value();
  }

  friend bool operator==(const Article&, const Article&) = default;
};

/// Checks every per-article invariant; returns an error message or empty.
inline std::string validate_article(const Article& a) {
  if (a.id.empty()) return "article id must be non-empty";
  if (a.topics.empty()) return "article \"" + a.id + "\" has no topic annotation";
  double topic_sum = 0.0;
  for (const auto& [topic, w] : a.topics) {
    if (!(w >= 0.0)) return "negative topic weight for \"" + topic + "\"";
    topic_sum += w;
  }
  if (!(topic_sum > 0.0)) return "topic weights of \"" + a.id + "\" sum to zero";
  if (a.complexity && !(*a.complexity >= 0.0 && *a.complexity <= 100.0)) {
    return "complexity out of range [0,100]: " + std::to_string(*a.complexity);
  }
  if (a.polarity && !(*a.polarity >= -1.0 && *a.polarity <= 1.0)) {
    return "polarity out of range [-1,1]: " + std::to_string(*a.polarity);
  }
  if (a.minority_mentions && *a.minority_mentions < 0) return "minority_mentions must be >= 0";
  if (a.majority_mentions && *a.majority_mentions < 0) return "majority_mentions must be >= 0";
  if (a.minority_mentions.has_value() != a.majority_mentions.has_value()) {
    return "minority_mentions and majority_mentions must appear together";
  }
  return {};
}

/// Equal-width complexity bin over [0, 100], as a categorical label.
/// Values on the upper edge fall into the last bin.
inline std::string complexity_bin_label(double value, int n_bins) {
  if (n_bins < 1) throw Error("complexity_bin_label: need at least one bin");
  int bin = static_cast<int>(std::floor(value / 100.0 * n_bins));
  bin = std::clamp(bin, 0, n_bins - 1);
  return "bin" + std::to_string(bin);
}

/// An immutable, duplicate-free collection of articles with id lookup.
class Corpus {
 public:
  void add(Article article) {
    const std::string err = validate_article(article);
    if (!err.empty()) throw Error(err);
    auto [it, inserted] = index_.emplace(article.id, articles_.size());
    if (!inserted) throw Error("duplicate article id \"" + article.id + "\"");
    articles_.push_back(std::move(article));
  }

  const Article* find(const std::string& id) const {
    auto it = index_.find(id);
    return it == index_.end() ? nullptr : &articles_[it->second];
  }

  const Article& at(const std::string& id) const {
    const Article* a = find(id);
    if (!a) throw Error("unknown article id \"" + id + "\"");
    return *a;
  }

  const std::vector<Article>& articles() const { return articles_; }
  std::size_t size() const { return articles_.size(); }
  bool empty() const { return articles_.empty(); }

  friend bool operator==(const Corpus& a, const Corpus& b) {
    return a.articles_ == b.articles_;
  }

 private:
  std::vector<Article> articles_;
  std::map<std::string, std::size_t> index_;
};

/// Article ids one user consumed before the evaluation window,
/// chronological. May legitimately be empty.
struct UserHistory {
  std::string user_id;
  std::vector<std::string> consumed;

  friend bool operator==(const UserHistory&, const UserHistory&) = default;
};

class HistorySet {
 public:
  void add(UserHistory history, const Corpus& corpus) {
    if (history.user_id.empty()) throw Error("user id must be non-empty");
    for (const auto& id : history.consumed) {
      if (!corpus.find(id)) {
        throw Error("history of user \"" + history.user_id + "\" references unknown article \"" +
                    id + "\"");
      }
    }
    auto [it, inserted] = index_.emplace(history.user_id, items_.size());
    if (!inserted) throw Error("duplicate user id \"" + history.user_id + "\"");
    items_.push_back(std::move(history));
  }

  const UserHistory* find(const std::string& user_id) const {
    auto it = index_.find(user_id);
    return it == index_.end() ? nullptr : &items_[it->second];
  }

  const std::vector<UserHistory>& items() const { return items_; }
  std::size_t size() const { return items_.size(); }

  friend bool operator==(const HistorySet& a, const HistorySet& b) {
    return a.items_ == b.items_;
  }

 private:
  std::vector<UserHistory> items_;
  std::map<std::string, std::size_t> index_;
};

/// The candidate articles a recommender could have picked from at issue
/// time. Ids are kept sorted and unique.
struct PoolSnapshot {
  std::string pool_id;
  std::vector<std::string> article_ids;  // sorted, unique

  bool contains(const std::string& id) const {
    return std::binary_search(article_ids.begin(), article_ids.end(), id);
  }

  friend bool operator==(const PoolSnapshot&, const PoolSnapshot&) = default;
};

class PoolSet {
 public:
  void add(PoolSnapshot pool, const Corpus& corpus) {
    if (pool.pool_id.empty()) throw Error("pool id must be non-empty");
    if (pool.article_ids.empty()) throw Error("pool \"" + pool.pool_id + "\" is empty");
    std::sort(pool.article_ids.begin(), pool.article_ids.end());
    if (std::adjacent_find(pool.article_ids.begin(), pool.article_ids.end()) !=
        pool.article_ids.end()) {
      throw Error("pool \"" + pool.pool_id + "\" lists an article twice");
    }
    for (const auto& id : pool.article_ids) {
      if (!corpus.find(id)) {
        throw Error("pool \"" + pool.pool_id + "\" references unknown article \"" + id + "\"");
      }
    }
    auto [it, inserted] = index_.emplace(pool.pool_id, items_.size());
    if (!inserted) throw Error("duplicate pool id \"" + pool.pool_id + "\"");
    items_.push_back(std::move(pool));
  }

  const PoolSnapshot* find(const std::string& pool_id) const {
    auto it = index_.find(pool_id);
    return it == index_.end() ? nullptr : &items_[it->second];
  }

  const std::vector<PoolSnapshot>& items() const { return items_; }
  std::size_t size() const { return items_.size(); }

 private:
  std::vector<PoolSnapshot> items_;
  std::map<std::string, std::size_t> index_;
};

/// One ranked delivery to one user: rank 1 first, no duplicates, every
/// item drawn from the referenced pool.
struct RecommendationSlate {
  std::string user_id;
  Timestamp issued_at = 0;
  std::string pool_id;
  std::vector<std::string> ranked_items;

  friend bool operator==(const RecommendationSlate&, const RecommendationSlate&) = default;
};

inline void validate_slate(const RecommendationSlate& slate, const PoolSet& pools) {
  if (slate.user_id.empty()) throw Error("slate user id must be non-empty");
  if (slate.ranked_items.empty()) {
    throw Error("slate for user \"" + slate.user_id + "\" is empty");
  }
  const PoolSnapshot* pool = pools.find(slate.pool_id);
  if (!pool) throw Error("slate references unknown pool \"" + slate.pool_id + "\"");
  std::vector<std::string> sorted = slate.ranked_items;
  std::sort(sorted.begin(), sorted.end());
  auto dup = std::adjacent_find(sorted.begin(), sorted.end());
  if (dup != sorted.end()) {
    throw Error("slate for user \"" + slate.user_id + "\" lists article \"" + *dup + "\" twice");
  }
  for (const auto& id : slate.ranked_items) {
    if (!pool->contains(id)) {
      throw Error("slate for user \"" + slate.user_id + "\" recommends article \"" + id +
                  "\" outside pool \"" + slate.pool_id + "\"");
    }
  }
}

/// One algorithm's full log over a shared corpus. Non-owning: the corpus,
/// histories and pools outlive the run.
struct EvaluationRun {
  std::string algorithm_name;
  const Corpus* corpus = nullptr;
  const HistorySet* histories = nullptr;
  const PoolSet* pools = nullptr;
  std::vector<RecommendationSlate> slates;
};

inline EvaluationRun make_evaluation_run(std::string algorithm_name, const Corpus& corpus,
                                         const HistorySet& histories, const PoolSet& pools,
                                         std::vector<RecommendationSlate> slates) {
  for (const auto& slate : slates) {
    validate_slate(slate, pools);
    if (!histories.find(slate.user_id)) {
      throw Error("slate user \"" + slate.user_id + "\" has no history record");
    }
  }
  return EvaluationRun{std::move(algorithm_name), &corpus, &histories, &pools, std::move(slates)};
}

}  // namespace newsdiv
