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

// newsdiv — evaluates news-recommendation logs against five exposure
// diversity metrics and compares algorithms against baselines.
//
//   newsdiv synthesize       generate a synthetic corpus plus baseline slates
//   newsdiv evaluate         compute the metric report for one algorithm
//   newsdiv compare          radar + profile assessments across reports
//   newsdiv cluster-stories  derive story chains from article text
//
// Exit codes: 0 success, 1 metric failure, 2 usage or validation error.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "newsdiv/jsonl.hpp"
#include "newsdiv/metrics.hpp"
#include "newsdiv/profiles.hpp"
#include "newsdiv/report.hpp"
#include "newsdiv/story_chains.hpp"
#include "newsdiv/svg.hpp"
#include "newsdiv/synthetic.hpp"
#include "newsdiv/version.hpp"

namespace {

using namespace newsdiv;

constexpr int kExitOk = 0;
constexpr int kExitMetricFailure = 1;
constexpr int kExitUsage = 2;

std::vector<std::string> split_csv(const std::string& text) {
  std::vector<std::string> out;
  std::string current;
  for (char c : text) {
    if (c == ',') {
      if (!current.empty()) out.push_back(current);
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  if (!current.empty()) out.push_back(current);
  return out;
}

std::map<std::string, double> parse_weight_list(const std::string& text, const char* what) {
  std::map<std::string, double> weights;
  for (const auto& item : split_csv(text)) {
    const auto colon = item.rfind(':');
    if (colon == std::string::npos || colon == 0) {
      throw Error(std::string(what) + ": expected name:weight, got \"" + item + "\"");
    }
    weights[item.substr(0, colon)] = std::stod(item.substr(colon + 1));
  }
  if (weights.empty()) throw Error(std::string(what) + ": empty list");
  return weights;
}

std::string read_file_or_throw(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open file: " + path.string());
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

struct EvaluateArgs {
  std::string articles, histories, slates, pools;
  std::string output = "report.json";
  std::string algorithm;
  std::string metrics;
  std::string representation_modes = "reflective";
  std::string story_clustering = "auto";
  double alpha = 0.01;
  double rbo_s = 0.9;
  int complexity_bins = 5;
  double story_threshold = 0.5;
  int story_window_days = 3;
  std::uint64_t seed = 0;
  int history_window_days = -1;
  std::uint64_t sample_pairs = 0;
  bool all_pairs = false;
};

int run_evaluate(const EvaluateArgs& args) {
  const auto corpus = load_corpus(args.articles);
  const auto pools = load_pools(args.pools, corpus);
  const auto histories = load_histories(args.histories, corpus);
  auto slates = load_slates(args.slates, pools);

  std::string algorithm = args.algorithm;
  if (algorithm.empty()) algorithm = std::filesystem::path(args.slates).stem().string();
  const auto run = make_evaluation_run(algorithm, corpus, histories, pools, std::move(slates));

  EvalConfig config;
  if (!args.metrics.empty()) {
    config.metrics.clear();
    for (const auto& name : split_csv(args.metrics)) {
      const Metric m = metric_from_string(name);
      if (std::find(config.metrics.begin(), config.metrics.end(), m) == config.metrics.end()) {
        config.metrics.push_back(m);
      }
    }
  }
  config.alpha = args.alpha;
  config.rbo_s = args.rbo_s;
  config.complexity_bins = args.complexity_bins;
  config.representation_modes.clear();
  if (args.representation_modes == "all") {
    config.representation_modes = {TargetMode::Reflective, TargetMode::Equal,
                                   TargetMode::Inverse};
  } else {
    for (const auto& name : split_csv(args.representation_modes)) {
      config.representation_modes.push_back(target_mode_from_string(name));
    }
  }
  config.seed = args.seed;
  if (args.history_window_days >= 0) config.history_window_days = args.history_window_days;
  config.story_clustering = story_clustering_from_string(args.story_clustering);
  config.story_threshold = args.story_threshold;
  config.story_window_days = args.story_window_days;
  if (args.all_pairs) {
    config.sampling.mode = PairSampling::Mode::AllPairs;
  } else if (args.sample_pairs > 0) {
    config.sampling.mode = PairSampling::Mode::Sample;
    config.sampling.n_pairs = args.sample_pairs;
  }

  const auto report = evaluate_all(run, config);
  atomic_write_file(args.output, report_to_string(report));

  bool any_failed = false;
  for (const auto& entry : report.entries) {
    std::string label = to_string(entry.metric);
    if (entry.target_mode) label += std::string("/") + to_string(*entry.target_mode);
    if (entry.ok()) {
      std::printf("%-28s %.6f\n", label.c_str(), entry.value->aggregate);
    } else {
      std::printf("%-28s FAILED: %s\n", label.c_str(), entry.error.c_str());
      any_failed = true;
    }
  }
  std::printf("report written to %s\n", args.output.c_str());
  return any_failed ? kExitMetricFailure : kExitOk;
}

struct CompareArgs {
  std::vector<std::string> reports;
  std::string output = ".";
  std::string baseline = "random";
  std::vector<std::string> profiles;
  double epsilon = 0.05;
  bool svg = false;
};

int run_compare(const CompareArgs& args) {
  if (args.reports.size() < 2) {
    std::fprintf(stderr, "error: compare needs at least two report files\n");
    return kExitUsage;
  }
  std::vector<MetricReport> reports;
  for (const auto& path : args.reports) {
    reports.push_back(report_from_string(read_file_or_throw(path)));
  }

  const std::filesystem::path outdir = args.output;
  std::filesystem::create_directories(outdir);

  const auto radar = build_radar(reports);
  atomic_write_file(outdir / "radar.json", radar_to_json(radar).dump(2) + "\n");
  std::printf("radar.json written (%zu axes, %zu algorithms)\n", radar.axes.size(),
              radar.algorithms.size());
  if (args.svg) {
    atomic_write_file(outdir / "radar.svg", radar_to_svg(radar));
    std::printf("radar.svg written\n");
  }

  if (!args.profiles.empty()) {
    const MetricReport* baseline = nullptr;
    for (const auto& r : reports) {
      if (r.algorithm == args.baseline) baseline = &r;
    }
    if (!baseline) {
      std::fprintf(stderr, "error: baseline algorithm \"%s\" not among the reports\n",
                   args.baseline.c_str());
      return kExitUsage;
    }
    for (const auto& profile_name : args.profiles) {
      const auto profile = profile_for(model_from_string(profile_name));
      for (const auto& r : reports) {
        if (r.algorithm == baseline->algorithm) continue;
        const auto assessment = assess(r, *baseline, profile, args.epsilon);
        const std::string file = "assessment_" + profile_name + "_" + r.algorithm + ".json";
        atomic_write_file(outdir / file, assessment_to_json(assessment).dump(2) + "\n");
        std::printf("%-14s %-16s conformance %.2f\n", profile_name.c_str(), r.algorithm.c_str(),
                    assessment.conformance);
      }
    }
  }
  return kExitOk;
}

struct SynthesizeArgs {
  std::string output = ".";
  std::string recommenders = "random,most_popular,topic_affinity";
  std::string topics;
  std::string viewpoints;
  int n_articles = 1000;
  int n_users = 100;
  int slate_size = 10;
  int history_length = 20;
  int stories_per_topic = 20;
  double neutral_fraction = 0.5;
  double activation_level = 0.8;
  double minority_rate = 0.3;
  double affinity_lambda = 0.5;
  double topic_concentration = 0.1;
  double history_affinity = 0.95;
  double complexity_min = 0.0;
  double complexity_max = 100.0;
  std::uint64_t seed = 0;
};

int run_synthesize(const SynthesizeArgs& args) {
  CorpusSpec spec;
  spec.n_articles = args.n_articles;
  spec.n_users = args.n_users;
  if (!args.topics.empty()) spec.topic_weights = parse_weight_list(args.topics, "--topics");
  if (!args.viewpoints.empty()) {
    spec.viewpoint_weights = parse_weight_list(args.viewpoints, "--viewpoints");
  }
  spec.neutral_fraction = args.neutral_fraction;
  spec.activation_level = args.activation_level;
  spec.minority_mention_rate = args.minority_rate;
  spec.stories_per_topic = args.stories_per_topic;
  spec.history_length = args.history_length;
  spec.topic_concentration = args.topic_concentration;
  spec.history_affinity = args.history_affinity;
  spec.complexity_min = args.complexity_min;
  spec.complexity_max = args.complexity_max;
  spec.seed = args.seed;

  const auto data = generate_corpus(spec);
  const std::filesystem::path outdir = args.output;
  std::filesystem::create_directories(outdir);
  atomic_write_file(outdir / "articles.jsonl", corpus_to_jsonl(data.corpus));
  atomic_write_file(outdir / "histories.jsonl", histories_to_jsonl(data.histories));
  atomic_write_file(outdir / "pools.jsonl", pools_to_jsonl(data.pools));
  std::printf("corpus: %d articles, %d users -> %s\n", args.n_articles, args.n_users,
              outdir.string().c_str());

  for (const auto& name : split_csv(args.recommenders)) {
    RecommenderSpec rec;
    rec.kind = recommender_kind_from_string(name);
    rec.slate_size = static_cast<std::size_t>(args.slate_size);
    rec.seed = args.seed;
    rec.lambda = args.affinity_lambda;
    const auto slates = recommend(rec, data.corpus, data.histories, *data.pools.find("pool"));
    const std::string file = "slates_" + name + ".jsonl";
    atomic_write_file(outdir / file, slates_to_jsonl(slates));
    std::printf("%s written (%zu slates)\n", file.c_str(), slates.size());
  }
  return kExitOk;
}

struct ClusterArgs {
  std::string articles;
  std::string output = "stories.jsonl";
  double threshold = 0.5;
  int window_days = 3;
};

int run_cluster_stories(const ClusterArgs& args) {
  const auto corpus = load_corpus(args.articles);
  const auto assignment = cluster_stories(corpus, args.threshold, args.window_days);

  std::string out;
  for (const auto& [article_id, story_id] : assignment.story_of) {
    Json j;
    j["article_id"] = article_id;
    j["story_id"] = story_id;
    out += j.dump() + "\n";
  }
  atomic_write_file(args.output, out);

  std::map<std::string, int> sizes;
  for (const auto& [article_id, story_id] : assignment.story_of) ++sizes[story_id];
  std::printf("%zu articles -> %zu stories (%zu without text) -> %s\n",
              assignment.story_of.size(), sizes.size(), assignment.skipped_no_text.size(),
              args.output.c_str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"newsdiv: exposure-diversity evaluation for news recommenders"};
  app.set_version_flag("--version", std::string("newsdiv ") + kToolVersion);
  app.require_subcommand(1);

  EvaluateArgs ev;
  auto* evaluate = app.add_subcommand("evaluate", "Compute the metric report for one algorithm");
  evaluate->add_option("--articles", ev.articles, "articles.jsonl")->required();
  evaluate->add_option("--histories", ev.histories, "histories.jsonl")->required();
  evaluate->add_option("--slates", ev.slates, "slates.jsonl")->required();
  evaluate->add_option("--pools", ev.pools, "pools.jsonl")->required();
  evaluate->add_option("--output", ev.output, "report file (default report.json)");
  evaluate->add_option("--algorithm", ev.algorithm, "algorithm name (default: slates file stem)");
  evaluate->add_option("--metrics", ev.metrics,
                       "comma list: calibration_topic,calibration_complexity,fragmentation,"
                       "activation,representation,alternative_voices (default: all)");
  evaluate->add_option("--representation-mode", ev.representation_modes,
                       "reflective,equal,inverse or 'all' (default reflective)");
  evaluate->add_option("--alpha", ev.alpha, "smoothing blend in (0,1), default 0.01");
  evaluate->add_option("--rbo-s", ev.rbo_s, "rank-overlap persistence in (0,1), default 0.9");
  evaluate->add_option("--complexity-bins", ev.complexity_bins,
                       "equal-width bins over [0,100], default 5");
  evaluate->add_option("--seed", ev.seed, "seed for pair sampling");
  evaluate->add_option("--history-window-days", ev.history_window_days,
                       "only count history published within N days of the first slate");
  evaluate->add_option("--sample-pairs", ev.sample_pairs,
                       "sample this many user pairs for fragmentation");
  evaluate->add_flag("--all-pairs", ev.all_pairs, "force exact all-pairs fragmentation");
  evaluate->add_option("--story-clustering", ev.story_clustering, "auto|off|on (default auto)");
  evaluate->add_option("--story-threshold", ev.story_threshold,
                       "cosine threshold for story clustering, default 0.5");
  evaluate->add_option("--story-window-days", ev.story_window_days,
                       "story clustering time window, default 3");

  CompareArgs cmp;
  auto* compare = app.add_subcommand("compare", "Compare metric reports across algorithms");
  compare->add_option("reports", cmp.reports, "two or more report.json files");
  compare->add_option("--output", cmp.output, "output directory (default .)");
  compare->add_option("--baseline", cmp.baseline,
                      "algorithm treated as the baseline (default random)");
  compare->add_option("--profile", cmp.profiles,
                      "assess against this profile: liberal|participatory|deliberative|critical "
                      "(repeatable)");
  compare->add_option("--epsilon", cmp.epsilon, "at-baseline tolerance, default 0.05");
  compare->add_flag("--svg", cmp.svg, "also render radar.svg");

  SynthesizeArgs sy;
  auto* synthesize =
      app.add_subcommand("synthesize", "Generate a synthetic corpus and baseline slates");
  synthesize->add_option("--output", sy.output, "output directory (default .)");
  synthesize->add_option("--seed", sy.seed, "generator seed");
  synthesize->add_option("--n-articles", sy.n_articles, "articles (default 1000)");
  synthesize->add_option("--n-users", sy.n_users, "users (default 100)");
  synthesize->add_option("--slate-size", sy.slate_size, "items per slate (default 10)");
  synthesize->add_option("--recommenders", sy.recommenders,
                         "comma list of random,most_popular,topic_affinity (default all)");
  synthesize->add_option("--topics", sy.topics, "topic prevalence, e.g. politics:3,sports:2");
  synthesize->add_option("--viewpoints", sy.viewpoints,
                         "viewpoint prevalence, e.g. left:1,center:2");
  synthesize->add_option("--history-length", sy.history_length,
                         "articles per history (default 20)");
  synthesize->add_option("--stories-per-topic", sy.stories_per_topic, "default 20");
  synthesize->add_option("--neutral-fraction", sy.neutral_fraction,
                         "share of polarity-0 articles (default 0.5)");
  synthesize->add_option("--activation-level", sy.activation_level,
                         "|polarity| of charged articles (default 0.8)");
  synthesize->add_option("--minority-rate", sy.minority_rate,
                         "share of articles mentioning the protected group (default 0.3)");
  synthesize->add_option("--affinity-lambda", sy.affinity_lambda,
                         "topic_affinity strength in [0,1] (default 0.5)");
  synthesize->add_option("--topic-concentration", sy.topic_concentration,
                         "user preference concentration (default 0.1)");
  synthesize->add_option("--history-affinity", sy.history_affinity,
                         "how strongly reading follows preference (default 0.95)");
  synthesize->add_option("--complexity-min", sy.complexity_min, "default 0");
  synthesize->add_option("--complexity-max", sy.complexity_max, "default 100");

  ClusterArgs cl;
  auto* cluster = app.add_subcommand("cluster-stories", "Derive story chains from article text");
  cluster->add_option("--articles", cl.articles, "articles.jsonl")->required();
  cluster->add_option("--output", cl.output, "stories.jsonl (default)");
  cluster->add_option("--story-threshold", cl.threshold, "cosine threshold (default 0.5)");
  cluster->add_option("--story-window-days", cl.window_days, "time window (default 3)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*evaluate) return run_evaluate(ev);
    if (*compare) return run_compare(cmp);
    if (*synthesize) return run_synthesize(sy);
    if (*cluster) return run_cluster_stories(cl);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
  return kExitUsage;
}
