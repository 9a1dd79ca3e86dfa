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

// End-to-end checks against the installed binary (path in NEWSDIV_BIN).

#include <sys/wait.h>

#include <cstdlib>
#include <map>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "test_util.hpp"

using newsdiv_test::TempDir;
using newsdiv_test::read_file;
using Json = nlohmann::ordered_json;

namespace {

std::string binary() {
  const char* bin = std::getenv("NEWSDIV_BIN");
  REQUIRE_MESSAGE(bin != nullptr, "NEWSDIV_BIN must point at the newsdiv binary");
  return bin;
}

int run(const std::string& args) {
  const std::string cmd = binary() + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("cli pipeline: synthesize, evaluate, compare") {
  TempDir dir;
  const std::string d = dir.path().string();

  CHECK(run("synthesize --output " + d + " --seed 7 --n-articles 200 --n-users 20") == 0);
  for (const char* f : {"articles.jsonl", "histories.jsonl", "pools.jsonl",
                        "slates_random.jsonl", "slates_most_popular.jsonl",
                        "slates_topic_affinity.jsonl"}) {
    CHECK(std::filesystem::exists(dir.path() / f));
  }

  const std::string inputs = " --articles " + d + "/articles.jsonl --histories " + d +
                             "/histories.jsonl --pools " + d + "/pools.jsonl";
  CHECK(run("evaluate" + inputs + " --slates " + d +
            "/slates_random.jsonl --algorithm random --representation-mode all --output " + d +
            "/random.json") == 0);
  CHECK(run("evaluate" + inputs + " --slates " + d +
            "/slates_most_popular.jsonl --algorithm most_popular --representation-mode all "
            "--output " +
            d + "/popular.json") == 0);

  const Json report = Json::parse(read_file(dir.path() / "random.json"));
  CHECK(report["algorithm"] == "random");
  CHECK(report["metrics"].size() == 8);  // 5 metrics + representation in 3 modes
  CHECK(report["versions"]["format"] == "1");

  // Byte-identical on a rerun with the same seed and config.
  CHECK(run("evaluate" + inputs + " --slates " + d +
            "/slates_random.jsonl --algorithm random --representation-mode all --output " + d +
            "/random2.json") == 0);
  CHECK(read_file(dir.path() / "random.json") == read_file(dir.path() / "random2.json"));

  // Metric selection trims the report.
  CHECK(run("evaluate" + inputs + " --slates " + d +
            "/slates_random.jsonl --metrics fragmentation --output " + d + "/frag.json") == 0);
  const Json frag = Json::parse(read_file(dir.path() / "frag.json"));
  CHECK(frag["metrics"].size() == 1);
  CHECK(frag["metrics"][0]["metric"] == "fragmentation");

  // Compare: radar + profile assessments + svg.
  CHECK(run("compare " + d + "/random.json " + d + "/popular.json --output " + d +
            "/cmp --profile liberal --profile critical --svg") == 0);
  const Json radar = Json::parse(read_file(dir.path() / "cmp" / "radar.json"));
  CHECK(radar["algorithms"].size() == 2);
  CHECK(radar["axes"].size() >= 5);
  const std::string svg = read_file(dir.path() / "cmp" / "radar.svg");
  CHECK(svg.find("<svg") == 0);
  CHECK(svg.find("<polygon") != std::string::npos);

  const Json assessment =
      Json::parse(read_file(dir.path() / "cmp" / "assessment_liberal_most_popular.json"));
  CHECK(assessment["profile"] == "liberal");
  CHECK(assessment["verdicts"].size() == 6);
  CHECK(assessment.contains("conformance"));
}

TEST_CASE("cli usage errors exit with 2") {
  TempDir dir;
  CHECK(run("evaluate --histories missing.jsonl") == 2);          // missing required flags
  CHECK(run("") == 2);                                            // no subcommand
  CHECK(run("evaluate --articles a --histories b --slates c --pools d") == 2);  // missing files
  CHECK(run("compare onlyone.json") == 2);
  CHECK(run("synthesize --output " + dir.path().string() + " --n-articles 0") == 2);
  CHECK(run("--version") == 0);
}

TEST_CASE("cli reports metric failures with exit 1") {
  TempDir dir;
  const std::string d = dir.path().string();
  // Two bare articles: no polarity, viewpoint, or mention annotations.
  dir.write("articles.jsonl",
            R"({"id":"a1","published_at":"2024-01-01T00:00:00Z","topic":"x"}
{"id":"a2","published_at":"2024-01-02T00:00:00Z","topic":"y"}
)");
  dir.write("histories.jsonl",
            R"({"user_id":"u1","consumed":["a1"]}
{"user_id":"u2","consumed":["a2"]}
)");
  dir.write("pools.jsonl", R"({"pool_id":"p","article_ids":["a1","a2"]}
)");
  dir.write("slates.jsonl",
            R"({"user_id":"u1","issued_at":"2024-01-03T00:00:00Z","pool_id":"p","ranked_items":["a1"]}
{"user_id":"u2","issued_at":"2024-01-03T00:00:00Z","pool_id":"p","ranked_items":["a2"]}
)");

  CHECK(run("evaluate --articles " + d + "/articles.jsonl --histories " + d +
            "/histories.jsonl --pools " + d + "/pools.jsonl --slates " + d +
            "/slates.jsonl --output " + d + "/report.json") == 1);

  const Json report = Json::parse(read_file(dir.path() / "report.json"));
  int failed = 0, ok = 0;
  for (const auto& e : report["metrics"]) {
    if (e["ok"].get<bool>()) {
      ++ok;
    } else {
      ++failed;
      CHECK(e.contains("error"));
    }
  }
  CHECK(failed >= 3);  // activation, representation, alternative_voices
  CHECK(ok >= 2);      // calibration_topic, fragmentation
}

TEST_CASE("cli clusters stories from text") {
  TempDir dir;
  const std::string d = dir.path().string();
  dir.write("articles.jsonl",
            R"({"id":"a1","published_at":"2024-01-01T00:00:00Z","topic":"x","text":"storm batters northern coast overnight flooding homes"}
{"id":"a2","published_at":"2024-01-02T00:00:00Z","topic":"x","text":"storm batters northern coast overnight flooding roads"}
{"id":"a3","published_at":"2024-01-02T00:00:00Z","topic":"y","text":"parliament debates budget bill marathon session"}
{"id":"a4","published_at":"2024-01-03T00:00:00Z","topic":"y","text":"local team wins championship match extra time"}
{"id":"a5","published_at":"2024-01-04T00:00:00Z","topic":"y"}
)");

  CHECK(run("cluster-stories --articles " + d + "/articles.jsonl --output " + d +
            "/stories.jsonl") == 0);
  std::map<std::string, std::string> story_of;
  std::istringstream lines(read_file(dir.path() / "stories.jsonl"));
  std::string line;
  while (std::getline(lines, line)) {
    const Json j = Json::parse(line);
    story_of[j.at("article_id")] = j.at("story_id");
  }
  CHECK(story_of.size() == 5);
  CHECK(story_of.at("a1") == story_of.at("a2"));
  CHECK(story_of.at("a1") != story_of.at("a3"));
  CHECK(story_of.at("a5") == "s:a5");  // no text: singleton
}
