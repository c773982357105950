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

// Shared test fixtures: golden data access, small-universe partition
// enumeration, and random graph builders.

#ifndef LABELFLOW_TESTS_FIXTURES_H_
#define LABELFLOW_TESTS_FIXTURES_H_

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "labelflow/dataset.h"
#include "labelflow/graph.h"
#include "labelflow/partition.h"
#include "labelflow/synth.h"

namespace labelflow::testing {

inline std::string DataPath(const std::string &name) {
  return std::string(LABELFLOW_TEST_DATA_DIR) + "/" + name;
}

inline std::string ReadData(const std::string &name) {
  std::ifstream in(DataPath(name), std::ios::binary);
  if (!in) throw std::runtime_error("missing test data " + name);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline RuleSpec LoadSpec(const std::string &name) {
  return ParseRuleSpec(ReadData(name));
}

// Abstract universe element i: the byte [i, i+1) of document "u".
inline Node Element(std::uint64_t i) { return Region{"u", i, i + 1}; }

inline std::vector<Node> Elements(std::size_t n) {
  std::vector<Node> nodes;
  for (std::size_t i = 0; i < n; ++i) nodes.push_back(Element(i));
  return nodes;
}

// Every set partition of {0..n-1} as a restricted growth string.
inline std::vector<std::vector<std::uint64_t>> AllSetPartitions(std::size_t n) {
  std::vector<std::vector<std::uint64_t>> out;
  std::vector<std::uint64_t> rgs(n, 0);
  std::function<void(std::size_t, std::uint64_t)> extend =
      [&](std::size_t i, std::uint64_t max_block) {
        if (i == n) {
          out.push_back(rgs);
          return;
        }
        for (std::uint64_t b = 0; b <= max_block + 1; ++b) {
          rgs[i] = b;
          extend(i + 1, std::max(max_block, b));
        }
      };
  if (n == 0) {
    out.emplace_back();
  } else {
    rgs[0] = 0;
    extend(1, 0);
  }
  return out;
}

inline Partition PartitionOf(const std::vector<std::uint64_t> &blocks) {
  return Partition::FromBlockIds(Elements(blocks.size()), blocks);
}

// Refinement by its definition: elements together in p are together in q.
inline bool RefinesPairwise(const Partition &p, const Partition &q) {
  for (std::size_t i = 0; i < p.universe_size(); ++i) {
    for (std::size_t j = 0; j < p.universe_size(); ++j) {
      if (p.class_of(i) == p.class_of(j) && q.class_of(i) != q.class_of(j)) {
        return false;
      }
    }
  }
  return true;
}

// A single backward label "f" over `n` entity regions mapping source i to
// target assignment[i]. Returns the dataset; sources are [0, 200 - i).
inline AnnotationSet RandomMapDataset(const std::vector<std::size_t> &assignment) {
  AnnotationSet set;
  set.documents.push_back({"m", std::string(200, 'x')});
  set.labels.push_back({"f", Direction::kBackward});
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    set.annotations.push_back({"f", Region{"m", assignment[i], assignment[i] + 1},
                               Region{"m", 0, 200 - i}});
  }
  return set;
}

// A forward hierarchy: leaves -f-> level 1 -g-> level 2 -h-> level 3, with
// parents drawn at random. Regions nest: every parent covers its children
// plus one padding byte on each side.
struct Chain {
  AnnotationSet dataset;
  std::vector<Node> leaves;
};

inline Chain RandomChain(std::mt19937_64 &rng, std::size_t max_leaves) {
  auto uniform = [&](std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  };
  const std::size_t leaf_count = uniform(1, max_leaves);

  // children[level][parent] = child indices at level - 1.
  std::vector<std::vector<std::vector<std::size_t>>> children;
  std::size_t below = leaf_count;
  for (int level = 1; level <= 3; ++level) {
    std::size_t groups = uniform(1, below);
    std::vector<std::vector<std::size_t>> grouped(groups);
    for (std::size_t c = 0; c < below; ++c) grouped[uniform(0, groups - 1)].push_back(c);
    grouped.erase(std::remove_if(grouped.begin(), grouped.end(),
                                 [](const auto &g) { return g.empty(); }),
                  grouped.end());
    below = grouped.size();
    children.push_back(std::move(grouped));
  }

  // regions[level][index]
  std::vector<std::vector<Region>> regions(4);
  regions[0].resize(leaf_count);
  for (int level = 1; level <= 3; ++level) regions[level].resize(children[level - 1].size());

  std::function<std::uint64_t(int, std::size_t, std::uint64_t)> layout =
      [&](int level, std::size_t index, std::uint64_t offset) -> std::uint64_t {
    if (level == 0) {
      regions[0][index] = Region{"c", offset, offset + 1};
      return offset + 1;
    }
    std::uint64_t position = offset + 1;
    for (std::size_t child : children[level - 1][index]) {
      position = layout(level - 1, child, position);
    }
    regions[level][index] = Region{"c", offset, position + 1};
    return position + 1;
  };
  std::uint64_t end = 0;
  for (std::size_t top = 0; top < regions[3].size(); ++top) end = layout(3, top, end);

  Chain chain;
  AnnotationSet &set = chain.dataset;
  set.documents.push_back({"c", std::string(end, 'x')});
  const char *names[] = {"f", "g", "h"};
  for (const char *name : names) set.labels.push_back({name, Direction::kForward});
  for (int level = 1; level <= 3; ++level) {
    for (std::size_t parent = 0; parent < children[level - 1].size(); ++parent) {
      for (std::size_t child : children[level - 1][parent]) {
        set.annotations.push_back({names[level - 1], regions[level - 1][child],
                                   regions[level][parent]});
      }
    }
  }
  chain.leaves = regions[0];
  std::sort(chain.leaves.begin(), chain.leaves.end());
  chain.dataset = Canonicalize(std::move(chain.dataset));
  return chain;
}

// Class memberships as sets of entity names, for set-exact comparison.
inline std::set<std::set<std::string>> NamedClasses(const Partition &partition,
                                                    const Universe &universe) {
  std::map<Region, std::string> names;
  for (std::size_t i = 0; i < universe.entity_regions.size(); ++i) {
    names[universe.entity_regions[i]] = universe.entity_names[i];
  }
  std::set<std::set<std::string>> out;
  for (const auto &members : partition.classes()) {
    std::set<std::string> named;
    for (const Node &node : members) named.insert(names.at(node));
    out.insert(std::move(named));
  }
  return out;
}

}  // namespace labelflow::testing

#endif  // LABELFLOW_TESTS_FIXTURES_H_
