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
#include <string>
#include <vector>

#include "json.hpp"
#include "newsdiv/error.hpp"
#include "newsdiv/metrics.hpp"
#include "newsdiv/profiles.hpp"
#include "newsdiv/version.hpp"

// Machine-readable outputs: the per-algorithm metric report, the
// cross-algorithm radar data, and profile assessments. Serialization is
// deterministic — same report, same bytes — and refuses to emit NaN or
// infinity anywhere.

namespace newsdiv {

using Json = nlohmann::ordered_json;

namespace detail {

inline void check_finite(const Json& j, const std::string& where) {
  if (j.is_number_float() && !std::isfinite(j.get<double>())) {
    throw Error("non-finite number in " + where);
  }
  if (j.is_object() || j.is_array()) {
    for (const auto& item : j) check_finite(item, where);
  }
}

inline std::string entry_label(const MetricEntry& e) {
  std::string label = to_string(e.metric);
  if (e.metric == Metric::Representation && e.target_mode) {
    label += std::string("_") + to_string(*e.target_mode);
  }
  return label;
}

}  // namespace detail

inline Json config_to_json(const EvalConfig& config) {
  Json j;
  Json metrics = Json::array();
  for (Metric m : config.metrics) metrics.push_back(to_string(m));
  j["metrics"] = std::move(metrics);
  j["alpha"] = config.alpha;
  j["rbo_s"] = config.rbo_s;
  j["complexity_bins"] = config.complexity_bins;
  Json modes = Json::array();
  for (TargetMode m : config.representation_modes) modes.push_back(to_string(m));
  j["representation_modes"] = std::move(modes);
  j["sampling"] = Json{{"mode", to_string(config.sampling.mode)},
                       {"n_pairs", config.sampling.n_pairs}};
  j["seed"] = config.seed;
  if (config.history_window_days) j["history_window_days"] = *config.history_window_days;
  j["story_clustering"] = to_string(config.story_clustering);
  j["story_threshold"] = config.story_threshold;
  j["story_window_days"] = config.story_window_days;
  return j;
}

inline EvalConfig config_from_json(const Json& j) {
  EvalConfig config;
  config.metrics.clear();
  for (const auto& m : j.at("metrics")) config.metrics.push_back(metric_from_string(m));
  config.alpha = j.at("alpha").get<double>();
  config.rbo_s = j.at("rbo_s").get<double>();
  config.complexity_bins = j.at("complexity_bins").get<int>();
  config.representation_modes.clear();
  for (const auto& m : j.at("representation_modes")) {
    config.representation_modes.push_back(target_mode_from_string(m));
  }
  config.sampling.mode = sampling_mode_from_string(j.at("sampling").at("mode"));
  config.sampling.n_pairs = j.at("sampling").at("n_pairs").get<std::uint64_t>();
  config.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("history_window_days")) {
    config.history_window_days = j.at("history_window_days").get<int>();
  }
  config.story_clustering = story_clustering_from_string(j.at("story_clustering"));
  config.story_threshold = j.at("story_threshold").get<double>();
  config.story_window_days = j.at("story_window_days").get<int>();
  return config;
}

inline Json report_to_json(const MetricReport& report) {
  Json j;
  j["algorithm"] = report.algorithm;
  j["config"] = config_to_json(report.config);
  j["corpus"] = Json{{"fingerprint", report.corpus_fingerprint},
                     {"articles", report.n_articles},
                     {"users", report.n_users}};

  Json metrics = Json::array();
  Json exclusions = Json::object();
  for (const auto& entry : report.entries) {
    Json e;
    e["metric"] = to_string(entry.metric);
    if (entry.target_mode) e["target_mode"] = to_string(*entry.target_mode);
    e["ok"] = entry.ok();
    if (entry.ok()) {
      const MetricValue& v = *entry.value;
      e["aggregate"] = v.aggregate;
      Json per_user = Json::object();
      for (const auto& [key, value] : v.per_user) per_user[key] = value;
      e["per_user"] = std::move(per_user);
      if (!v.undefined_users.empty()) e["undefined_users"] = v.undefined_users;
      if (v.activation_baseline) {
        Json baseline = Json::object();
        for (const auto& [user, value] : v.activation_baseline->per_user_mean_abs_polarity) {
          baseline[user] = value;
        }
        e["baseline_per_user"] = std::move(baseline);
      }
      exclusions[detail::entry_label(entry)] =
          Json{{"users_evaluated", v.coverage.users_evaluated},
               {"users_excluded", v.coverage.users_excluded},
               {"articles_excluded", v.coverage.articles_excluded}};
    } else {
      e["error"] = entry.error;
    }
    metrics.push_back(std::move(e));
  }
  j["metrics"] = std::move(metrics);
  j["exclusions"] = std::move(exclusions);
  j["versions"] = Json{{"format", kReportFormatVersion}, {"tool", kToolVersion}};
  detail::check_finite(j, "report for \"" + report.algorithm + "\"");
  return j;
}

inline std::string report_to_string(const MetricReport& report) {
  return report_to_json(report).dump(2) + "\n";
}

inline MetricReport report_from_json(const Json& j) {
  MetricReport report;
  report.algorithm = j.at("algorithm").get<std::string>();
  report.config = config_from_json(j.at("config"));
  const Json& corpus = j.at("corpus");
  report.corpus_fingerprint = corpus.at("fingerprint").get<std::string>();
  report.n_articles = corpus.at("articles").get<std::size_t>();
  report.n_users = corpus.at("users").get<std::size_t>();

  const Json& exclusions = j.at("exclusions");
  for (const auto& je : j.at("metrics")) {
    MetricEntry entry;
    entry.metric = metric_from_string(je.at("metric"));
    if (je.contains("target_mode")) {
      entry.target_mode = target_mode_from_string(je.at("target_mode"));
    }
    if (je.at("ok").get<bool>()) {
      MetricValue v;
      v.metric = entry.metric;
      v.target_mode = entry.target_mode;
      v.aggregate = je.at("aggregate").get<double>();
      for (const auto& [key, value] : je.at("per_user").items()) {
        v.per_user.emplace(key, value.get<double>());
      }
      if (je.contains("undefined_users")) {
        v.undefined_users = je.at("undefined_users").get<std::vector<std::string>>();
      }
      if (je.contains("baseline_per_user")) {
        v.activation_baseline.emplace();
        for (const auto& [user, value] : je.at("baseline_per_user").items()) {
          v.activation_baseline->per_user_mean_abs_polarity.emplace(user, value.get<double>());
        }
      }
      const Json& cov = exclusions.at(detail::entry_label(entry));
      v.coverage.users_evaluated = cov.at("users_evaluated").get<std::size_t>();
      v.coverage.users_excluded = cov.at("users_excluded").get<std::size_t>();
      v.coverage.articles_excluded = cov.at("articles_excluded").get<std::size_t>();
      entry.value = std::move(v);
    } else {
      entry.error = je.at("error").get<std::string>();
    }
    report.entries.push_back(std::move(entry));
  }
  return report;
}

inline MetricReport report_from_string(const std::string& text) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) throw Error("report is not valid JSON");
  return report_from_json(j);
}

// --- radar ------------------------------------------------------------------

/// Cross-algorithm view: for every metric defined in all compared
/// reports, each algorithm's aggregate min-max normalized to [0,1] across
/// the algorithms on that axis. A constant axis maps to 0.5.
/// Representation is read in reflective mode.
struct RadarReport {
  std::vector<Metric> axes;
  std::vector<std::string> algorithms;                 // order of the input reports
  std::map<std::string, std::vector<double>> values;   // algorithm -> per-axis, normalized
};

inline RadarReport build_radar(const std::vector<MetricReport>& reports) {
  if (reports.size() < 2) throw Error("radar comparison needs at least two reports");
  for (std::size_t i = 1; i < reports.size(); ++i) {
    if (!config_compatible(reports[0].config, reports[i].config)) {
      throw Error("radar: report \"" + reports[i].algorithm +
                  "\" was computed with a different configuration");
    }
    if (!reports[0].corpus_fingerprint.empty() && !reports[i].corpus_fingerprint.empty() &&
        reports[0].corpus_fingerprint != reports[i].corpus_fingerprint) {
      throw Error("radar: report \"" + reports[i].algorithm +
                  "\" was computed on a different corpus");
    }
  }

  RadarReport radar;
  for (const auto& r : reports) {
    for (const auto& other : radar.algorithms) {
      if (other == r.algorithm) throw Error("radar: duplicate algorithm name \"" + r.algorithm + "\"");
    }
    radar.algorithms.push_back(r.algorithm);
  }

  std::map<Metric, std::vector<double>> raw;  // axis -> per-report values
  for (Metric m : kAllMetrics) {
    std::vector<double> values;
    bool defined_everywhere = true;
    for (const auto& r : reports) {
      const MetricEntry* e = m == Metric::Representation ? r.find(m, TargetMode::Reflective)
                                                         : r.find(m);
      if (!e || !e->ok()) {
        defined_everywhere = false;
        break;
      }
      values.push_back(e->value->aggregate);
    }
    if (defined_everywhere) {
      radar.axes.push_back(m);
      raw.emplace(m, std::move(values));
    }
  }
  if (radar.axes.empty()) throw Error("radar: no metric is defined in every report");

  for (std::size_t a = 0; a < radar.algorithms.size(); ++a) {
    std::vector<double> normalized;
    for (Metric m : radar.axes) {
      const auto& values = raw.at(m);
      double lo = values[0], hi = values[0];
      for (double v : values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
      normalized.push_back(hi > lo ? (values[a] - lo) / (hi - lo) : 0.5);
    }
    radar.values.emplace(radar.algorithms[a], std::move(normalized));
  }
  return radar;
}

inline Json radar_to_json(const RadarReport& radar) {
  Json j;
  Json axes = Json::array();
  for (Metric m : radar.axes) axes.push_back(to_string(m));
  j["axes"] = std::move(axes);
  Json algorithms = Json::object();
  for (const auto& name : radar.algorithms) algorithms[name] = radar.values.at(name);
  j["algorithms"] = std::move(algorithms);
  detail::check_finite(j, "radar report");
  return j;
}

inline Json assessment_to_json(const ProfileAssessment& assessment) {
  Json j;
  j["profile"] = to_string(assessment.model);
  Json verdicts = Json::object();
  for (const auto& [metric, verdict] : assessment.verdicts) {
    verdicts[to_string(metric)] = to_string(verdict);
  }
  j["verdicts"] = std::move(verdicts);
  j["conformance"] = assessment.conformance;
  detail::check_finite(j, "profile assessment");
  return j;
}

}  // namespace newsdiv
