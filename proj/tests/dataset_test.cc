// Copyright 2026 The Labelflow Authors.
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

#include <algorithm>
#include <random>

#include "doctest.h"
#include "fixtures.h"
#include "labelflow/dataset.h"

namespace labelflow {
namespace {

using testing::ReadData;

constexpr const char *kMinimal = R"({
  "documents": [{"id": "d", "text": "the dog barks"}],
  "labels": [{"name": "class", "direction": "forward"}],
  "annotations": [{"doc": "d", "label": "class", "mention": [4, 7], "entity": [0, 13]}]
})";

AnnotationSet Base() {
  AnnotationSet set;
  set.documents.push_back({"d", std::string(60, 'x')});
  set.labels.push_back({"class", Direction::kForward});
  return set;
}

ErrorKind ParseErrorKind(const std::string &text) {
  try {
    ParseDataset(text);
  } catch (const Error &e) {
    return e.kind();
  }
  FAIL("expected parse failure");
  return ErrorKind::kMalformedInput;
}

TEST_CASE("minimal dataset parses") {
  AnnotationSet set = ParseDataset(kMinimal);
  REQUIRE(set.annotations.size() == 1);
  CHECK(set.annotations[0].mention == Region{"d", 4, 7});
  CHECK(set.annotations[0].entity == Region{"d", 0, 13});
  CHECK(set.labels[0].direction == Direction::kForward);
}

TEST_CASE("overlap without inclusion is BadNesting") {
  std::string text = kMinimal;
  text.replace(text.find("[4, 7]"), 6, "[5, 30]");
  text.replace(text.find("[0, 13]"), 7, "[10, 40]");
  text.replace(text.find("the dog barks"), 13, std::string(50, 'y'));
  CHECK(ParseErrorKind(text) == ErrorKind::kBadNesting);
}

TEST_CASE("malformed input") {
  CHECK(ParseErrorKind("{") == ErrorKind::kMalformedInput);
  CHECK(ParseErrorKind("[]") == ErrorKind::kMalformedInput);
  CHECK(ParseErrorKind(R"({"documents": [], "labels": []})") == ErrorKind::kMalformedInput);

  std::string negative = kMinimal;
  negative.replace(negative.find("[4, 7]"), 6, "[-1, 7]");
  CHECK(ParseErrorKind(negative) == ErrorKind::kMalformedInput);

  std::string fractional = kMinimal;
  fractional.replace(fractional.find("[4, 7]"), 6, "[4.5, 7]");
  CHECK(ParseErrorKind(fractional) == ErrorKind::kMalformedInput);

  std::string direction = kMinimal;
  direction.replace(direction.find("forward"), 7, "sideways");
  CHECK(ParseErrorKind(direction) == ErrorKind::kMalformedInput);
}

TEST_CASE("reference and bounds errors") {
  std::string oob = kMinimal;
  oob.replace(oob.find("[0, 13]"), 7, "[0, 14]");
  CHECK(ParseErrorKind(oob) == ErrorKind::kSpanOutOfBounds);

  std::string label = kMinimal;
  label.replace(label.find("\"label\": \"class\""), 16, "\"label\": \"kind\"");
  CHECK(ParseErrorKind(label) == ErrorKind::kUnknownLabel);

  std::string doc = kMinimal;
  doc.replace(doc.find("\"doc\": \"d\""), 10, "\"doc\": \"e\"");
  CHECK(ParseErrorKind(doc) == ErrorKind::kUnknownDocument);

  std::string docs = kMinimal;
  docs.replace(docs.find("[{\"id\""), 1, R"([{"id": "d", "text": ""}, )");
  CHECK(ParseErrorKind(docs) == ErrorKind::kDuplicateDocId);

  std::string labels = kMinimal;
  labels.replace(labels.find("[{\"name\""), 1,
                 R"([{"name": "class", "direction": "backward"}, )");
  CHECK(ParseErrorKind(labels) == ErrorKind::kDuplicateLabelName);
}

TEST_CASE("validate reports findings") {
  AnnotationSet set = Base();
  set.annotations.push_back({"class", Region{"d", 1, 2}, Region{"d", 0, 10}});
  CHECK(Validate(set).empty());

  SUBCASE("one functionality conflict names both annotations") {
    set.annotations.push_back({"class", Region{"d", 5, 6}, Region{"d", 0, 10}});
    set.annotations.push_back({"class", Region{"d", 1, 2}, Region{"d", 0, 20}});
    auto findings = Validate(set);
    REQUIRE(findings.size() == 1);
    CHECK(findings[0].kind == ErrorKind::kMapNotWellDefined);
    CHECK(findings[0].related == std::vector<std::size_t>{0, 2});
    CHECK_THROWS_AS(BuildGraph(set), DatasetError);
  }

  SUBCASE("two out-of-bounds spans give two findings") {
    set.annotations.push_back({"class", Region{"d", 1, 2}, Region{"d", 0, 61}});
    set.annotations.push_back({"class", Region{"d", 70, 72}, Region{"d", 0, 80}});
    auto findings = Validate(set);
    REQUIRE(findings.size() == 2);
    CHECK(findings[0].kind == ErrorKind::kSpanOutOfBounds);
    CHECK(findings[0].annotation == 1u);
    CHECK(findings[1].annotation == 2u);
  }

  SUBCASE("empty spans are out of bounds") {
    set.annotations.push_back({"class", Region{"d", 3, 3}, Region{"d", 0, 10}});
    auto findings = Validate(set);
    REQUIRE(findings.size() == 1);
    CHECK(findings[0].kind == ErrorKind::kSpanOutOfBounds);
  }
}

TEST_CASE("exact duplicate annotations are absorbed") {
  AnnotationSet set = Base();
  set.annotations.push_back({"class", Region{"d", 1, 2}, Region{"d", 0, 10}});
  set.annotations.push_back({"class", Region{"d", 1, 2}, Region{"d", 0, 10}});
  CHECK(Validate(set).empty());
  LabeledGraph graph = BuildGraph(set);
  CHECK(graph.edges().size() == 1);
  CHECK(graph.nodes().size() == 2);
}

TEST_CASE("empty dataset gives empty graph") {
  LabeledGraph graph = BuildGraph(ParseDataset(ReadData("empty.json")));
  CHECK(graph.nodes().empty());
  CHECK(graph.edges().empty());
}

TEST_CASE("taxonomy chains: dog -> mammal -> animal") {
  AnnotationSet set = ParseDataset(ReadData("taxonomy.json"));
  LabeledGraph graph = BuildGraph(set);
  const std::string &text = set.documents[0].text;
  auto find = [&](const std::string &surface) {
    auto at = text.find(surface);
    REQUIRE(at != std::string::npos);
    return Region{"zoo", at, at + surface.size()};
  };
  Region dog = find("dog"), crow = find("crow");
  Region mammal = find("mammal paragraph: the dog and the cat.");
  Region bird = find("bird paragraph: the crow.");
  Region animal{"zoo", 0, text.size()};

  CHECK(*graph.Target("class", dog) == mammal);
  CHECK(*graph.Target("class", mammal) == animal);
  CHECK(*graph.Target("class", crow) == bird);
  CHECK(*graph.Target("class", bird) == animal);
  CHECK(graph.Target("class", animal) == nullptr);
}

TEST_CASE("two bags: bag2 is both a source and a target") {
  LabeledGraph graph = BuildGraph(ParseDataset(ReadData("bags.json")));
  CHECK(graph.nodes().size() == 5);
  CHECK(graph.edges().size() == 4);

  Region bag2{"bags", 22, 100};
  const auto &in = graph.InEdges(bag2);
  const auto &out = graph.OutEdges(bag2);
  REQUIRE(out.size() == 1);
  CHECK(out[0].label == "color");
  REQUIRE(in.size() == 2);
  CHECK(in[0].label == "owning");
  CHECK(in[1].label == "owning");
}

TEST_CASE("golden files are canonical") {
  for (const char *name : {"taxonomy.json", "bags.json", "example1.json",
                           "example2.json", "empty.json"}) {
    CAPTURE(name);
    std::string text = ReadData(name);
    AnnotationSet set = ParseDataset(text);
    CHECK(SerializeDataset(set) == text);
    CHECK(ParseDataset(SerializeDataset(set)) == set);
  }
}

TEST_CASE("serialization canonicalizes order") {
  AnnotationSet set = Base();
  set.documents.push_back({"a", "zz"});
  set.labels.push_back({"attr", Direction::kBackward});
  set.annotations.push_back({"class", Region{"d", 5, 6}, Region{"d", 0, 10}});
  set.annotations.push_back({"class", Region{"d", 1, 2}, Region{"d", 0, 10}});
  set.annotations.push_back({"attr", Region{"d", 1, 2}, Region{"d", 0, 30}});

  AnnotationSet round = ParseDataset(SerializeDataset(set));
  CHECK(round == Canonicalize(set));
  CHECK(round.documents[0].id == "a");
  CHECK(round.labels[0].name == "attr");
  CHECK(round.annotations[0].label == "attr");
  CHECK(round.annotations[2].mention.start == 5);
}

TEST_CASE("byte offsets address UTF-8 text") {
  // "naïve café": the i-diaeresis and e-acute take two bytes each.
  AnnotationSet set;
  set.documents.push_back({"u", "na\xC3\xAFve caf\xC3\xA9"});
  set.labels.push_back({"w", Direction::kForward});
  set.annotations.push_back({"w", Region{"u", 7, 12}, Region{"u", 0, 12}});
  CHECK(Validate(set).empty());
  CHECK(ParseDataset(SerializeDataset(set)) == set);
  set.annotations[0].entity.end = 13;
  CHECK(Validate(set).size() == 1);
}

// Permutation invariance: the graph, or the conflict set, does not depend on
// annotation order.
TEST_CASE("build_graph ignores annotation order") {
  std::mt19937_64 rng(11);
  for (const char *name : {"taxonomy.json", "bags.json", "example2.json"}) {
    AnnotationSet set = ParseDataset(ReadData(name));
    LabeledGraph reference = BuildGraph(set);
    for (int i = 0; i < 20; ++i) {
      std::shuffle(set.annotations.begin(), set.annotations.end(), rng);
      CHECK(BuildGraph(set) == reference);
    }
  }

  AnnotationSet conflicted = Base();
  conflicted.annotations = {
      {"class", Region{"d", 1, 2}, Region{"d", 0, 10}},
      {"class", Region{"d", 1, 2}, Region{"d", 0, 20}},
      {"class", Region{"d", 1, 2}, Region{"d", 0, 30}},
      {"class", Region{"d", 4, 5}, Region{"d", 0, 30}},
      {"class", Region{"d", 4, 5}, Region{"d", 3, 30}},
  };
  auto conflict_set = [](const AnnotationSet &set) {
    std::set<std::set<std::pair<std::uint64_t, std::uint64_t>>> out;
    for (const Finding &finding : Validate(set)) {
      std::set<std::pair<std::uint64_t, std::uint64_t>> group;
      for (std::size_t i : finding.related) {
        group.insert({set.annotations[i].mention.start, set.annotations[i].entity.start * 100 +
                                                            set.annotations[i].entity.end});
      }
      out.insert(group);
    }
    return out;
  };
  auto reference = conflict_set(conflicted);
  CHECK(reference.size() == 2);
  for (int i = 0; i < 20; ++i) {
    std::shuffle(conflicted.annotations.begin(), conflicted.annotations.end(), rng);
    CHECK(conflict_set(conflicted) == reference);
  }
}

}  // namespace
}  // namespace labelflow
