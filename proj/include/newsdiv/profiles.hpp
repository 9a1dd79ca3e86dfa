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

#include "newsdiv/error.hpp"
#include "newsdiv/metrics.hpp"

// Editorial-mission profiles: per metric, the value range a recommender
// serving that mission should land in, relative to an unpersonalized
// baseline. Four presets ship built in (liberal, participatory,
// deliberative, critical); assess() turns a candidate report, a baseline
// report and a profile into per-metric verdicts.

namespace newsdiv {

enum class Model { Liberal, Participatory, Deliberative, Critical };

inline constexpr Model kAllModels[] = {Model::Liberal, Model::Participatory, Model::Deliberative,
                                       Model::Critical};

inline const char* to_string(Model m) {
  switch (m) {
    case Model::Liberal: return "liberal";
    case Model::Participatory: return "participatory";
    case Model::Deliberative: return "deliberative";
    case Model::Critical: return "critical";
  }
  throw Error("unknown model enum value");
}

inline Model model_from_string(const std::string& s) {
  for (Model m : kAllModels) {
    if (s == to_string(m)) return m;
  }
  throw Error("unknown profile \"" + s + "\"");
}

/// Expected value range for one metric under one model. High/Medium/Low
/// are read against the baseline; Reflective/Equal/Inverse name the
/// Representation target the model calls for.
enum class Expectation { High, Medium, Low, Reflective, Equal, Inverse, NotApplicable };

inline const char* to_string(Expectation e) {
  switch (e) {
    case Expectation::High: return "high";
    case Expectation::Medium: return "medium";
    case Expectation::Low: return "low";
    case Expectation::Reflective: return "reflective";
    case Expectation::Equal: return "equal";
    case Expectation::Inverse: return "inverse";
    case Expectation::NotApplicable: return "not_applicable";
  }
  throw Error("unknown expectation enum value");
}

struct ModelProfile {
  Model model = Model::Liberal;
  std::map<Metric, Expectation> expectations;

  Expectation expectation(Metric m) const {
    auto it = expectations.find(m);
    return it == expectations.end() ? Expectation::NotApplicable : it->second;
  }
};

/// Calibration and Representation are distances from a target, so a
/// "high" expectation on them means a value close to zero — the direction
/// of High/Low comparisons is inverted for these metrics.
inline bool is_distance_metric(Metric m) {
  return m == Metric::CalibrationTopic || m == Metric::CalibrationComplexity ||
         m == Metric::Representation;
}

/// The four built-in model profiles, cell for cell:
///
///                  Cal(topic) Cal(style) Frag  Activ  Repr        AltVoices
///   liberal        High       High       High  -      -           -
///   participatory  Low        High       Low   Medium Reflective  Medium
///   deliberative   -          -          Low   Low    Equal       -
///   critical       -          -          -     High   Inverse     High
inline std::vector<ModelProfile> builtin_profiles() {
  using E = Expectation;
  std::vector<ModelProfile> profiles;
  profiles.push_back({Model::Liberal,
                      {{Metric::CalibrationTopic, E::High},
                       {Metric::CalibrationComplexity, E::High},
                       {Metric::Fragmentation, E::High},
                       {Metric::Activation, E::NotApplicable},
                       {Metric::Representation, E::NotApplicable},
                       {Metric::AlternativeVoices, E::NotApplicable}}});
  profiles.push_back({Model::Participatory,
                      {{Metric::CalibrationTopic, E::Low},
                       {Metric::CalibrationComplexity, E::High},
                       {Metric::Fragmentation, E::Low},
                       {Metric::Activation, E::Medium},
                       {Metric::Representation, E::Reflective},
                       {Metric::AlternativeVoices, E::Medium}}});
  profiles.push_back({Model::Deliberative,
                      {{Metric::CalibrationTopic, E::NotApplicable},
                       {Metric::CalibrationComplexity, E::NotApplicable},
                       {Metric::Fragmentation, E::Low},
                       {Metric::Activation, E::Low},
                       {Metric::Representation, E::Equal},
                       {Metric::AlternativeVoices, E::NotApplicable}}});
  profiles.push_back({Model::Critical,
                      {{Metric::CalibrationTopic, E::NotApplicable},
                       {Metric::CalibrationComplexity, E::NotApplicable},
                       {Metric::Fragmentation, E::NotApplicable},
                       {Metric::Activation, E::High},
                       {Metric::Representation, E::Inverse},
                       {Metric::AlternativeVoices, E::High}}});
  return profiles;
}

inline ModelProfile profile_for(Model model) {
  for (auto& p : builtin_profiles()) {
    if (p.model == model) return p;
  }
  throw Error("no builtin profile for model");
}

enum class Verdict { Conforms, Violates, NotApplicable, Undefined };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Conforms: return "conforms";
    case Verdict::Violates: return "violates";
    case Verdict::NotApplicable: return "not_applicable";
    case Verdict::Undefined: return "undefined";
  }
  throw Error("unknown verdict enum value");
}

inline Verdict verdict_from_string(const std::string& s) {
  for (Verdict v : {Verdict::Conforms, Verdict::Violates, Verdict::NotApplicable,
                    Verdict::Undefined}) {
    if (s == to_string(v)) return v;
  }
  throw Error("unknown verdict \"" + s + "\"");
}

struct ProfileAssessment {
  Model model = Model::Liberal;
  std::map<Metric, Verdict> verdicts;
  double conformance = 0.0;  // conforms / (conforms + violates); 0 when neither
};

/// Scores a candidate report against a baseline report under one profile.
///
/// High/Low read the candidate against the baseline in the expected
/// direction (inverted for distance metrics); a candidate within epsilon
/// of the baseline counts as "at baseline", which satisfies Medium but
/// fails a directional High/Low expectation. Reflective/Equal/Inverse
/// require the candidate's mode-matched Representation to not exceed the
/// baseline's reflective value — i.e. the candidate tracks the wanted
/// balance at least as well as an unpersonalized feed. Metrics that are
/// failed/undefined in either report yield Undefined, never Conforms.
inline ProfileAssessment assess(const MetricReport& candidate, const MetricReport& baseline,
                                const ModelProfile& profile, double epsilon = 0.05) {
  if (!candidate.corpus_fingerprint.empty() && !baseline.corpus_fingerprint.empty() &&
      candidate.corpus_fingerprint != baseline.corpus_fingerprint) {
    throw Error("assess: reports were computed on different corpora");
  }
  if (!config_compatible(candidate.config, baseline.config)) {
    throw Error("assess: reports were computed with different configurations");
  }

  ProfileAssessment out;
  out.model = profile.model;
  std::size_t conforms = 0, violates = 0;

  for (Metric m : kAllMetrics) {
    const Expectation e = profile.expectation(m);
    if (e == Expectation::NotApplicable) {
      out.verdicts.emplace(m, Verdict::NotApplicable);
      continue;
    }

    const MetricEntry* cand_entry = nullptr;
    const MetricEntry* base_entry = nullptr;
    if (m == Metric::Representation) {
      // Mode-matched candidate; the baseline anchor is always reflective.
      std::optional<TargetMode> mode;
      if (e == Expectation::Reflective) mode = TargetMode::Reflective;
      if (e == Expectation::Equal) mode = TargetMode::Equal;
      if (e == Expectation::Inverse) mode = TargetMode::Inverse;
      cand_entry = candidate.find(m, mode);
      base_entry = baseline.find(m, TargetMode::Reflective);
    } else {
      cand_entry = candidate.find(m);
      base_entry = baseline.find(m);
    }

    if (!cand_entry || !cand_entry->ok() || !base_entry || !base_entry->ok()) {
      out.verdicts.emplace(m, Verdict::Undefined);
      continue;
    }
    const double cand = cand_entry->value->aggregate;
    const double base = base_entry->value->aggregate;

    Verdict v = Verdict::Undefined;
    switch (e) {
      case Expectation::Medium:
        v = std::abs(cand - base) <= epsilon ? Verdict::Conforms : Verdict::Violates;
        break;
      case Expectation::High:
      case Expectation::Low: {
        // "High" on a distance metric means close to zero, so the wanted
        // direction flips.
        bool want_above = (e == Expectation::High);
        if (is_distance_metric(m)) want_above = !want_above;
        const double diff = cand - base;
        if (std::abs(diff) <= epsilon) {
          v = Verdict::Violates;  // indistinguishable from baseline
        } else {
          v = (diff > 0.0) == want_above ? Verdict::Conforms : Verdict::Violates;
        }
        break;
      }
      case Expectation::Reflective:
      case Expectation::Equal:
      case Expectation::Inverse:
        v = cand <= base ? Verdict::Conforms : Verdict::Violates;
        break;
      case Expectation::NotApplicable:
        break;  // handled above
    }
    if (v == Verdict::Conforms) ++conforms;
    if (v == Verdict::Violates) ++violates;
    out.verdicts.emplace(m, v);
  }

  if (conforms + violates > 0) {
    out.conformance = static_cast<double>(conforms) / static_cast<double>(conforms + violates);
  }
  return out;
}

}  // namespace newsdiv
