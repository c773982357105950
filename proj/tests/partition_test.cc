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

#include <random>

#include "doctest.h"
#include "fixtures.h"
#include "labelflow/partition.h"
#include "labelflow/synth.h"

namespace labelflow {
namespace {

using testing::Element;
using testing::Elements;
using testing::NamedClasses;
using testing::PartitionOf;

using Names = std::set<std::set<std::string>>;

struct Example {
  Universe universe;
  LabeledGraph graph;
  std::vector<Node> entities;

  explicit Example(const char *spec)
      : universe(GenerateUniverse(testing::LoadSpec(spec))),
        graph(BuildGraph(universe.dataset)),
        entities(MakeUniverse(universe.entity_regions)) {}

  Partition Of(const char *label) const { return Fibers(graph, label, entities); }
};

struct Zoo {
  LabeledGraph graph = BuildGraph(ParseDataset(testing::ReadData("taxonomy.json")));
  Region dog{"zoo", 38, 41}, cat{"zoo", 50, 53}, crow{"zoo", 75, 79};
  std::vector<Node> animals = MakeUniverse({dog, cat, crow});
};

TEST_CASE("fibers reproduce the example-1 quotient sets") {
  Example ex("example1_rules.json");
  CHECK(NamedClasses(ex.Of("color"), ex.universe) ==
        Names{{"red.large", "red.small"},
              {"black.large", "black.small"},
              {"blue.large", "blue.small"}});
  CHECK(NamedClasses(ex.Of("size"), ex.universe) ==
        Names{{"red.large", "black.large", "blue.large"},
              {"red.small", "black.small", "blue.small"}});
  CHECK(NamedClasses(ex.Of("price"), ex.universe) ==
        Names{{"red.large", "black.large", "blue.large"},
              {"red.small", "black.small", "blue.small"}});
}

TEST_CASE("fibers of an injective label are singletons") {
  AnnotationSet set = testing::RandomMapDataset({0, 1, 2, 3, 4});
  LabeledGraph graph = BuildGraph(set);
  Partition p = Fibers(graph, "f", graph.Domain("f"));
  CHECK(p.class_count() == 5);
  CHECK(p == Partition::Discrete(graph.Domain("f")));
}

TEST_CASE("fibers outside the domain") {
  Zoo zoo;
  std::vector<Node> universe = zoo.animals;
  universe.push_back(Region{"zoo", 0, 80});
  try {
    Fibers(zoo.graph, "class", universe);
    FAIL("expected DomainGap");
  } catch (const DomainGapError &e) {
    CHECK(e.step() == 0);
    CHECK(e.nodes() == std::vector<Node>{Region{"zoo", 0, 80}});
  }
  CHECK_THROWS_AS(Fibers(zoo.graph, "nope", zoo.animals), Error);
}

TEST_CASE("composite partition over the taxonomy") {
  Zoo zoo;
  const std::vector<std::string> one = {"class"}, two = {"class", "class"};
  Partition first = CompositePartition(zoo.graph, one, zoo.animals);
  Partition both = CompositePartition(zoo.graph, two, zoo.animals);

  CHECK(first.class_count() == 2);
  CHECK(first.classes() ==
        std::vector<std::vector<Node>>{{zoo.dog, zoo.cat}, {zoo.crow}});
  CHECK(both.class_count() == 1);
  CHECK(first == Fibers(zoo.graph, "class", zoo.animals));
  CHECK(Refines(first, both));

  const std::vector<std::string> three = {"class", "class", "class"};
  try {
    CompositePartition(zoo.graph, three, zoo.animals);
    FAIL("expected DomainGap");
  } catch (const DomainGapError &e) {
    CHECK(e.step() == 2);
    CHECK(e.nodes() == std::vector<Node>{Region{"zoo", 0, 80}});
  }
}

TEST_CASE("composite domain drops nodes the path cannot carry") {
  Zoo zoo;
  const std::vector<std::string> two = {"class", "class"};
  CommonDomain domain = CompositeDomainOf(zoo.graph, two);
  CHECK(domain.universe == zoo.animals);
  CHECK(domain.excluded == 2);

  const std::vector<std::string> three = {"class", "class", "class"};
  CHECK_THROWS_AS(CompositeDomainOf(zoo.graph, three), DomainGapError);
}

TEST_CASE("composite of injective labels stays discrete") {
  // Two-level nesting where every parent has exactly one child.
  AnnotationSet set;
  set.documents.push_back({"c", std::string(30, 'x')});
  set.labels = {{"f", Direction::kForward}, {"g", Direction::kForward}};
  for (std::uint64_t i = 0; i < 5; ++i) {
    Region leaf{"c", 6 * i + 2, 6 * i + 3}, mid{"c", 6 * i + 1, 6 * i + 4},
        top{"c", 6 * i, 6 * i + 5};
    set.annotations.push_back({"f", leaf, mid});
    set.annotations.push_back({"g", mid, top});
  }
  LabeledGraph graph = BuildGraph(set);
  const std::vector<std::string> path = {"f", "g"};
  Partition p = CompositePartition(graph, path, graph.Domain("f"));
  CHECK(p.class_count() == 5);
}

TEST_CASE("meet and directed intersection on the worked examples") {
  Example one("example1_rules.json");
  CHECK(DirectedIntersectionCount(one.Of("color"), one.Of("price")) == 0);
  CHECK(DirectedIntersectionCount(one.Of("size"), one.Of("price")) == 2);

  Example two("example2_rules.json");
  CHECK(NamedClasses(two.Of("price"), two.universe) ==
        Names{{"red.small", "red.large", "black.large", "blue.large"},
              {"black.small", "blue.small"}});
  CHECK(DirectedIntersectionCount(two.Of("color"), two.Of("price")) == 1);
  CHECK(DirectedIntersectionCount(two.Of("size"), two.Of("price")) == 1);

  Partition product = Meet(two.Of("color"), two.Of("size"));
  CHECK(product.class_count() == 6);
  CHECK(product == Partition::Discrete(two.entities));
  CHECK(DirectedIntersectionCount(product, two.Of("price")) == 6);
}

TEST_CASE("meet identities") {
  Partition p = PartitionOf({0, 1, 0, 2, 1});
  CHECK(Meet(p, p) == p);
  CHECK(Meet(p, Partition::Indiscrete(Elements(5))) == p);
  CHECK(Meet(p, Partition::Discrete(Elements(5))) == Partition::Discrete(Elements(5)));
  CHECK(DirectedIntersectionCount(p, p) == p.class_count());
}

TEST_CASE("universe mismatch") {
  Partition p = PartitionOf({0, 1, 0});
  Partition q = PartitionOf({0, 1, 0, 1});
  CHECK_THROWS_AS(Meet(p, q), Error);
  CHECK_THROWS_AS(DirectedIntersectionCount(p, q), Error);
  try {
    Meet(p, q);
  } catch (const Error &e) {
    CHECK(e.kind() == ErrorKind::kUniverseMismatch);
  }
}

TEST_CASE("partitions are canonical") {
  Partition p = PartitionOf({7, 3, 7, 9, 3});
  CHECK(p.class_indices() ==
        std::vector<std::vector<std::size_t>>{{0, 2}, {1, 4}, {3}});
  CHECK_NOTHROW(p.CheckInvariants());
  CHECK(PartitionOf({1, 0, 1, 2, 0}) == p);
  CHECK_THROWS(Partition::FromBlockIds({Element(1), Element(0)},
                                       std::vector<std::uint64_t>{0, 0}));
}

TEST_CASE("asymmetry of directed intersection") {
  Partition fine = PartitionOf({0, 1, 2, 3});
  Partition coarse = PartitionOf({0, 0, 1, 1});
  CHECK(DirectedIntersectionCount(fine, coarse) == 4);
  CHECK(DirectedIntersectionCount(coarse, fine) == 0);
}

TEST_CASE("meet bounds and intersection bounds over small universes") {
  for (std::size_t n = 1; n <= 5; ++n) {
    auto all = testing::AllSetPartitions(n);
    for (const auto &a : all) {
      Partition p = PartitionOf(a);
      for (const auto &b : all) {
        Partition q = PartitionOf(b);
        Partition m = Meet(p, q);
        m.CheckInvariants();
        CHECK(std::max(p.class_count(), q.class_count()) <= m.class_count());
        CHECK(m.class_count() <= std::min(p.class_count() * q.class_count(), n));
        std::size_t count = DirectedIntersectionCount(p, q);
        CHECK(count <= p.class_count());
        CHECK((count == p.class_count()) == testing::RefinesPairwise(p, q));
      }
    }
  }
}

TEST_CASE("directed intersection matches the brute-force scan") {
  std::mt19937_64 rng(3);
  for (int round = 0; round < 300; ++round) {
    std::size_t n = 1 + rng() % 8;
    std::vector<std::uint64_t> a(n), b(n);
    for (auto &x : a) x = rng() % (1 + rng() % n);
    for (auto &x : b) x = rng() % (1 + rng() % n);
    Partition p = PartitionOf(a), q = PartitionOf(b);

    auto as_sets = [](const Partition &partition) {
      std::vector<std::set<std::size_t>> out;
      for (const auto &members : partition.class_indices()) {
        out.emplace_back(members.begin(), members.end());
      }
      return out;
    };
    auto ps = as_sets(p), qs = as_sets(q);
    CHECK(DirectedIntersectionCount(p, q) == BruteForceIntersectionCount(ps, qs));
    CHECK(DirectedIntersectionCount(q, p) == BruteForceIntersectionCount(qs, ps));
  }
}

TEST_CASE("composite quotients refine monotonically") {
  std::mt19937_64 rng(5);
  const std::vector<std::string> labels = {"f", "g", "h"};
  for (int round = 0; round < 100; ++round) {
    testing::Chain chain = testing::RandomChain(rng, 40);
    LabeledGraph graph = BuildGraph(chain.dataset);
    Partition previous = Partition::Discrete(chain.leaves);
    for (std::size_t n = 1; n <= 3; ++n) {
      Partition p = CompositePartition(
          graph, std::span<const std::string>(labels).first(n), chain.leaves);
      p.CheckInvariants();
      CHECK(Refines(previous, p));
      CHECK(p.class_count() <= previous.class_count());
      previous = p;
    }
  }
}

TEST_CASE("common domain excludes partially labelled nodes") {
  LabeledGraph graph = BuildGraph(ParseDataset(testing::ReadData("bags.json")));
  const std::vector<std::string> both = {"color", "owning"};
  CommonDomain domain = CommonDomainOf(graph, both);
  CHECK(domain.universe.empty());
  CHECK(domain.excluded == 4);

  const std::vector<std::string> twice = {"color", "color"};
  domain = CommonDomainOf(graph, twice);
  CHECK(domain.universe.size() == 2);
  CHECK(domain.excluded == 0);
}

TEST_CASE("partition JSON form") {
  Partition p = Partition::FromBlockIds({Region{"d", 0, 1}, Region{"d", 2, 3}},
                                        std::vector<std::uint64_t>{4, 4});
  CHECK(PartitionToJson(p).dump() ==
        R"({"classes":[["d:0-1","d:2-3"]],"universe_size":2})");
}

}  // namespace
}  // namespace labelflow
