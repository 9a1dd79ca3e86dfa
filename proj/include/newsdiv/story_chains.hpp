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
#include <cctype>
#include <cmath>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "newsdiv/corpus.hpp"
#include "newsdiv/error.hpp"

// Groups articles that cover the same story: tf-idf cosine similarity
// builds edges between articles published within a moving time window,
// and connected components become the stories. Used by Fragmentation for
// corpora that lack story_id annotations.

namespace newsdiv {

/// Sparse tf-idf vector: term -> weight, zero weights dropped.
using TermVector = std::map<std::string, double>;

/// article_id -> story_id. Total over the corpus it was built from.
struct StoryAssignment {
  std::map<std::string, std::string> story_of;
  std::vector<std::string> skipped_no_text;  // articles clustered as singletons

  const std::string& at(const std::string& article_id) const {
    auto it = story_of.find(article_id);
    if (it == story_of.end()) throw Error("no story assignment for article \"" + article_id + "\"");
    return it->second;
  }
};

namespace detail {

inline std::vector<std::string> tokenize(const std::string& text) {
  std::vector<std::string> terms;
  std::string current;
  for (unsigned char c : text) {
    if (std::isalnum(c)) {
      current.push_back(static_cast<char>(std::tolower(c)));
    } else if (!current.empty()) {
      if (current.size() >= 2) terms.push_back(current);
      current.clear();
    }
  }
  if (current.size() >= 2) terms.push_back(current);
  return terms;
}

inline double cosine_similarity(const TermVector& a, const TermVector& b) {
  double dot = 0.0, norm_a = 0.0, norm_b = 0.0;
  for (const auto& [term, w] : a) norm_a += w * w;
  for (const auto& [term, w] : b) norm_b += w * w;
  if (norm_a == 0.0 || norm_b == 0.0) return 0.0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      dot += ia->second * ib->second;
      ++ia;
      ++ib;
    }
  }
  return dot / std::sqrt(norm_a * norm_b);
}

// Union-find over indices, path-halving.
class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace detail

/// Sparse tf-idf vectors for every article with non-empty text.
/// weight(term) = count(term in doc) * ln(N / df(term)), where N counts
/// the documents that have text. Terms are lowercased, split on
/// non-alphanumeric bytes, and must be at least two characters long.
/// Articles without text get no vector; callers see them in
/// StoryAssignment::skipped_no_text after clustering.
inline std::map<std::string, TermVector> tfidf_vectors(const Corpus& corpus) {
  std::vector<std::pair<std::string, std::vector<std::string>>> docs;
  for (const auto& a : corpus.articles()) {
    if (a.text && !a.text->empty()) docs.emplace_back(a.id, detail::tokenize(*a.text));
  }
  const double n_docs = static_cast<double>(docs.size());

  std::map<std::string, std::size_t> df;
  for (const auto& [id, terms] : docs) {
    std::map<std::string, bool> seen;
    for (const auto& t : terms) {
      if (!seen[t]) {
        seen[t] = true;
        ++df[t];
      }
    }
  }

  std::map<std::string, TermVector> vectors;
  for (const auto& [id, terms] : docs) {
    std::map<std::string, double> tf;
    for (const auto& t : terms) tf[t] += 1.0;
    TermVector v;
    for (const auto& [term, count] : tf) {
      const double idf = std::log(n_docs / static_cast<double>(df[term]));
      const double w = count * idf;
      if (w > 0.0) v.emplace(term, w);
    }
    vectors.emplace(id, std::move(v));
  }
  return vectors;
}

/// Clusters articles into stories. Two articles are linked when their
/// tf-idf cosine similarity reaches the threshold AND their publication
/// times differ by at most window_days; stories are the connected
/// components of that graph. Articles without text become singleton
/// stories. Story ids are "s:" + the lowest article id in the component,
/// so the result is deterministic for a fixed corpus regardless of
/// article order.
inline StoryAssignment cluster_stories(const Corpus& corpus, double threshold, int window_days) {
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw Error("cluster_stories: threshold must lie in (0,1), got " + std::to_string(threshold));
  }
  if (window_days < 0) throw Error("cluster_stories: window_days must be >= 0");

  const auto vectors = tfidf_vectors(corpus);

  struct Doc {
    const Article* article;
    const TermVector* vec;
  };
  std::vector<Doc> docs;
  for (const auto& a : corpus.articles()) {
    auto it = vectors.find(a.id);
    if (it != vectors.end()) docs.push_back({&a, &it->second});
  }
  // Sort by time so only pairs inside the window get compared.
  std::sort(docs.begin(), docs.end(), [](const Doc& a, const Doc& b) {
    if (a.article->published_at != b.article->published_at) {
      return a.article->published_at < b.article->published_at;
    }
    return a.article->id < b.article->id;
  });

  const std::int64_t window_seconds = static_cast<std::int64_t>(window_days) * kSecondsPerDay;
  detail::DisjointSets sets(docs.size());
  for (std::size_t i = 0; i < docs.size(); ++i) {
    for (std::size_t j = i + 1; j < docs.size(); ++j) {
      if (docs[j].article->published_at - docs[i].article->published_at > window_seconds) break;
      if (detail::cosine_similarity(*docs[i].vec, *docs[j].vec) >= threshold) {
        sets.unite(i, j);
      }
    }
  }

  std::map<std::size_t, std::string> root_label;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    const std::size_t root = sets.find(i);
    auto it = root_label.find(root);
    if (it == root_label.end()) {
      root_label.emplace(root, docs[i].article->id);
    } else if (docs[i].article->id < it->second) {
      it->second = docs[i].article->id;
    }
  }

  StoryAssignment assignment;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    assignment.story_of.emplace(docs[i].article->id, "s:" + root_label.at(sets.find(i)));
  }
  for (const auto& a : corpus.articles()) {
    if (!assignment.story_of.count(a.id)) {
      assignment.story_of.emplace(a.id, "s:" + a.id);
      assignment.skipped_no_text.push_back(a.id);
    }
  }
  std::sort(assignment.skipped_no_text.begin(), assignment.skipped_no_text.end());
  return assignment;
}

}  // namespace newsdiv
