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

#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

#include "json.hpp"
#include "newsdiv/corpus.hpp"
#include "newsdiv/error.hpp"

// Line-delimited JSON readers and writers for the four input files:
//
//   articles.jsonl   {"id","published_at","topics":{str:num}|"topic":str,
//                     "complexity"?,"polarity"?,"viewpoint"?,
//                     "minority_mentions"?,"majority_mentions"?,
//                     "story_id"?,"text"?}
//   histories.jsonl  {"user_id","consumed":[str]}
//   pools.jsonl      {"pool_id","article_ids":[str]}
//   slates.jsonl     {"user_id","issued_at","pool_id","ranked_items":[str]}
//
// Every line either yields a validated record or a positioned error;
// nothing is dropped silently. Unknown keys are ignored so logs may carry
// extra fields.

namespace newsdiv {

namespace detail {

using Json = nlohmann::ordered_json;

inline void for_each_line(const std::filesystem::path& path,
                          const std::function<void(std::size_t, const std::string&)>& fn) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open file: " + path.string());
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    bool blank = true;
    for (char c : line) {
      if (c != ' ' && c != '\t') {
        blank = false;
        break;
      }
    }
    if (blank) continue;
    fn(line_no, line);
  }
}

inline Json parse_line(const std::string& file, std::size_t line_no, const std::string& line) {
  Json j = Json::parse(line, nullptr, false);
  if (j.is_discarded()) throw IngestError(file, line_no, "invalid JSON");
  if (!j.is_object()) throw IngestError(file, line_no, "expected a JSON object");
  return j;
}

inline std::string require_string(const Json& j, const char* key, const std::string& file,
                                  std::size_t line_no) {
  auto it = j.find(key);
  if (it == j.end()) throw IngestError(file, line_no, std::string("missing field \"") + key + "\"");
  if (!it->is_string()) {
    throw IngestError(file, line_no, std::string("field \"") + key + "\" must be a string");
  }
  return it->get<std::string>();
}

}  // namespace detail

inline Corpus load_corpus(const std::filesystem::path& path) {
  using detail::Json;
  const std::string file = path.filename().string();
  Corpus corpus;
  detail::for_each_line(path, [&](std::size_t line_no, const std::string& line) {
    const Json j = detail::parse_line(file, line_no, line);
    Article a;
    a.id = detail::require_string(j, "id", file, line_no);
    try {
      a.published_at = parse_iso8601(detail::require_string(j, "published_at", file, line_no));
    } catch (const IngestError&) {
      throw;
    } catch (const Error& e) {
      throw IngestError(file, line_no, std::string("field \"published_at\": ") + e.what());
    }

    const bool has_map = j.contains("topics");
    const bool has_label = j.contains("topic");
    if (has_map && has_label) {
      throw IngestError(file, line_no, "give either \"topics\" or \"topic\", not both");
    }
    if (!has_map && !has_label) {
      throw IngestError(file, line_no, "missing field \"topics\" (or one-hot \"topic\")");
    }
    if (has_map) {
      const Json& topics = j.at("topics");
      if (!topics.is_object()) {
        throw IngestError(file, line_no, "field \"topics\" must be an object of weights");
      }
      for (const auto& [topic, weight] : topics.items()) {
        if (!weight.is_number()) {
          throw IngestError(file, line_no, "field \"topics\": weight of \"" + topic +
                                               "\" must be a number");
        }
        a.topics.emplace(topic, weight.get<double>());
      }
    } else {
      const Json& label = j.at("topic");
      if (!label.is_string()) {
        throw IngestError(file, line_no, "field \"topic\" must be a string");
      }
      a.topics.emplace(label.get<std::string>(), 1.0);
    }

    const auto optional_number = [&](const char* key) -> std::optional<double> {
      auto it = j.find(key);
      if (it == j.end() || it->is_null()) return std::nullopt;
      if (!it->is_number()) {
        throw IngestError(file, line_no, std::string("field \"") + key + "\" must be a number");
      }
      return it->get<double>();
    };
    const auto optional_string = [&](const char* key) -> std::optional<std::string> {
      auto it = j.find(key);
      if (it == j.end() || it->is_null()) return std::nullopt;
      if (!it->is_string()) {
        throw IngestError(file, line_no, std::string("field \"") + key + "\" must be a string");
      }
      return it->get<std::string>();
    };
    const auto optional_count = [&](const char* key) -> std::optional<std::int64_t> {
      auto it = j.find(key);
      if (it == j.end() || it->is_null()) return std::nullopt;
      if (!it->is_number_integer()) {
        throw IngestError(file, line_no, std::string("field \"") + key + "\" must be an integer");
      }
      return it->get<std::int64_t>();
    };

    a.complexity = optional_number("complexity");
    a.polarity = optional_number("polarity");
    a.viewpoint = optional_string("viewpoint");
    a.minority_mentions = optional_count("minority_mentions");
    a.majority_mentions = optional_count("majority_mentions");
    a.story_id = optional_string("story_id");
    a.text = optional_string("text");

    try {
      corpus.add(std::move(a));
    } catch (const Error& e) {
      throw IngestError(file, line_no, e.what());
    }
  });
  return corpus;
}

inline PoolSet load_pools(const std::filesystem::path& path, const Corpus& corpus) {
  using detail::Json;
  const std::string file = path.filename().string();
  PoolSet pools;
  detail::for_each_line(path, [&](std::size_t line_no, const std::string& line) {
    const Json j = detail::parse_line(file, line_no, line);
    PoolSnapshot pool;
    pool.pool_id = detail::require_string(j, "pool_id", file, line_no);
    auto it = j.find("article_ids");
    if (it == j.end() || !it->is_array()) {
      throw IngestError(file, line_no, "field \"article_ids\" must be an array of strings");
    }
    for (const auto& id : *it) {
      if (!id.is_string()) {
        throw IngestError(file, line_no, "field \"article_ids\" must be an array of strings");
      }
      pool.article_ids.push_back(id.get<std::string>());
    }
    try {
      pools.add(std::move(pool), corpus);
    } catch (const Error& e) {
      throw IngestError(file, line_no, e.what());
    }
  });
  return pools;
}

inline HistorySet load_histories(const std::filesystem::path& path, const Corpus& corpus) {
  using detail::Json;
  const std::string file = path.filename().string();
  HistorySet histories;
  detail::for_each_line(path, [&](std::size_t line_no, const std::string& line) {
    const Json j = detail::parse_line(file, line_no, line);
    UserHistory h;
    h.user_id = detail::require_string(j, "user_id", file, line_no);
    auto it = j.find("consumed");
    if (it == j.end() || !it->is_array()) {
      throw IngestError(file, line_no, "field \"consumed\" must be an array of strings");
    }
    for (const auto& id : *it) {
      if (!id.is_string()) {
        throw IngestError(file, line_no, "field \"consumed\" must be an array of strings");
      }
      h.consumed.push_back(id.get<std::string>());
    }
    try {
      histories.add(std::move(h), corpus);
    } catch (const Error& e) {
      throw IngestError(file, line_no, e.what());
    }
  });
  return histories;
}

inline std::vector<RecommendationSlate> load_slates(const std::filesystem::path& path,
                                                    const PoolSet& pools) {
  using detail::Json;
  const std::string file = path.filename().string();
  std::vector<RecommendationSlate> slates;
  detail::for_each_line(path, [&](std::size_t line_no, const std::string& line) {
    const Json j = detail::parse_line(file, line_no, line);
    RecommendationSlate s;
    s.user_id = detail::require_string(j, "user_id", file, line_no);
    try {
      s.issued_at = parse_iso8601(detail::require_string(j, "issued_at", file, line_no));
    } catch (const IngestError&) {
      throw;
    } catch (const Error& e) {
      throw IngestError(file, line_no, std::string("field \"issued_at\": ") + e.what());
    }
    s.pool_id = detail::require_string(j, "pool_id", file, line_no);
    auto it = j.find("ranked_items");
    if (it == j.end() || !it->is_array()) {
      throw IngestError(file, line_no, "field \"ranked_items\" must be an array of strings");
    }
    for (const auto& id : *it) {
      if (!id.is_string()) {
        throw IngestError(file, line_no, "field \"ranked_items\" must be an array of strings");
      }
      s.ranked_items.push_back(id.get<std::string>());
    }
    try {
      validate_slate(s, pools);
    } catch (const Error& e) {
      throw IngestError(file, line_no, e.what());
    }
    slates.push_back(std::move(s));
  });
  return slates;
}

// --- serialization ---------------------------------------------------------

inline detail::Json article_to_json(const Article& a) {
  detail::Json j;
  j["id"] = a.id;
  j["published_at"] = format_iso8601(a.published_at);
  detail::Json topics = detail::Json::object();
  for (const auto& [topic, w] : a.topics) topics[topic] = w;
  j["topics"] = std::move(topics);
  if (a.complexity) j["complexity"] = *a.complexity;
  if (a.polarity) j["polarity"] = *a.polarity;
  if (a.viewpoint) j["viewpoint"] = *a.viewpoint;
  if (a.minority_mentions) j["minority_mentions"] = *a.minority_mentions;
  if (a.majority_mentions) j["majority_mentions"] = *a.majority_mentions;
  if (a.story_id) j["story_id"] = *a.story_id;
  if (a.text) j["text"] = *a.text;
  return j;
}

inline std::string corpus_to_jsonl(const Corpus& corpus) {
  std::ostringstream out;
  for (const auto& a : corpus.articles()) out << article_to_json(a).dump() << '\n';
  return out.str();
}

inline std::string histories_to_jsonl(const HistorySet& histories) {
  std::ostringstream out;
  for (const auto& h : histories.items()) {
    detail::Json j;
    j["user_id"] = h.user_id;
    j["consumed"] = h.consumed;
    out << j.dump() << '\n';
  }
  return out.str();
}

inline std::string pools_to_jsonl(const PoolSet& pools) {
  std::ostringstream out;
  for (const auto& p : pools.items()) {
    detail::Json j;
    j["pool_id"] = p.pool_id;
    j["article_ids"] = p.article_ids;
    out << j.dump() << '\n';
  }
  return out.str();
}

inline std::string slates_to_jsonl(const std::vector<RecommendationSlate>& slates) {
  std::ostringstream out;
  for (const auto& s : slates) {
    detail::Json j;
    j["user_id"] = s.user_id;
    j["issued_at"] = format_iso8601(s.issued_at);
    j["pool_id"] = s.pool_id;
    j["ranked_items"] = s.ranked_items;
    out << j.dump() << '\n';
  }
  return out.str();
}

/// Writes content to path via a temp file in the same directory plus an
/// atomic rename, so readers never observe a half-written file.
inline void atomic_write_file(const std::filesystem::path& path, const std::string& content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write file: " + tmp.string());
    out << content;
    if (!out) throw Error("short write: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace newsdiv
