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

#include "labelflow/partition.h"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <unordered_map>
#include <utility>

namespace labelflow {

Partition Partition::FromBlockIds(std::vector<Node> universe,
                                  std::span<const std::uint64_t> block_ids) {
  if (universe.size() != block_ids.size()) {
    throw std::invalid_argument("one block id per universe element required");
  }
  for (std::size_t i = 1; i < universe.size(); ++i) {
    if (!(universe[i - 1] < universe[i])) {
      throw std::invalid_argument("universe must be sorted and duplicate-free");
    }
  }

  Partition partition;
  partition.universe_ = std::move(universe);
  partition.class_of_.resize(block_ids.size());
  // Scanning in universe order numbers classes by their smallest member.
  std::unordered_map<std::uint64_t, std::size_t> class_for_block;
  for (std::size_t i = 0; i < block_ids.size(); ++i) {
    auto [it, inserted] =
        class_for_block.emplace(block_ids[i], partition.classes_.size());
    if (inserted) partition.classes_.emplace_back();
    partition.class_of_[i] = it->second;
    partition.classes_[it->second].push_back(i);
  }
  return partition;
}

Partition Partition::Discrete(std::vector<Node> universe) {
  std::vector<std::uint64_t> ids(universe.size());
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = i;
  return FromBlockIds(std::move(universe), ids);
}

Partition Partition::Indiscrete(std::vector<Node> universe) {
  std::vector<std::uint64_t> ids(universe.size(), 0);
  return FromBlockIds(std::move(universe), ids);
}

std::vector<std::vector<Node>> Partition::classes() const {
  std::vector<std::vector<Node>> out;
  out.reserve(classes_.size());
  for (const auto &members : classes_) {
    auto &nodes = out.emplace_back();
    nodes.reserve(members.size());
    for (std::size_t i : members) nodes.push_back(universe_[i]);
  }
  return out;
}

void Partition::CheckInvariants() const {
  if (class_of_.size() != universe_.size()) {
    throw std::logic_error("partition: class map does not cover the universe");
  }
  for (std::size_t i = 1; i < universe_.size(); ++i) {
    if (!(universe_[i - 1] < universe_[i])) {
      throw std::logic_error("partition: universe not sorted or has duplicates");
    }
  }
  std::vector<bool> seen(universe_.size(), false);
  std::size_t previous_min = 0;
  for (std::size_t c = 0; c < classes_.size(); ++c) {
    const auto &members = classes_[c];
    if (members.empty()) throw std::logic_error("partition: empty class");
    if (c > 0 && members.front() <= previous_min) {
      throw std::logic_error("partition: classes not ordered by minimum");
    }
    previous_min = members.front();
    for (std::size_t k = 0; k < members.size(); ++k) {
      std::size_t i = members[k];
      if (i >= universe_.size()) throw std::logic_error("partition: bad index");
      if (k > 0 && members[k - 1] >= i) {
        throw std::logic_error("partition: class members not ordered");
      }
      if (seen[i]) throw std::logic_error("partition: classes overlap");
      if (class_of_[i] != c) throw std::logic_error("partition: class map stale");
      seen[i] = true;
    }
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
    throw std::logic_error("partition: classes do not cover the universe");
  }
}

namespace {

std::string GapMessage(std::size_t step, const std::string &label,
                       const std::vector<Node> &nodes) {
  std::string message = "label '" + label + "' (path step " +
                        std::to_string(step) + ") does not map " +
                        std::to_string(nodes.size()) + " node(s):";
  for (const Node &node : nodes) message += " " + NodeKey(node);
  return message;
}

void RequireLabel(const LabeledGraph &graph, std::string_view label) {
  if (graph.FindLabel(label) == nullptr) {
    throw Error(ErrorKind::kUnknownLabel,
                "label '" + std::string(label) + "' is not declared");
  }
}

void RequireSameUniverse(const Partition &p, const Partition &q) {
  if (p.universe() != q.universe()) {
    throw Error(ErrorKind::kUniverseMismatch,
                "partitions are over different universes (" +
                    std::to_string(p.universe_size()) + " vs " +
                    std::to_string(q.universe_size()) + " nodes)");
  }
}

}  // namespace

DomainGapError::DomainGapError(std::size_t step, std::string label,
                               std::vector<Node> nodes)
    : Error(ErrorKind::kDomainGap, GapMessage(step, label, nodes)),
      step_(step),
      label_(std::move(label)),
      nodes_(std::move(nodes)) {}

std::vector<Node> MakeUniverse(std::vector<Node> nodes) {
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  return nodes;
}

Partition Fibers(const LabeledGraph &graph, std::string_view label,
                 std::span<const Node> universe) {
  const std::string path[] = {std::string(label)};
  return CompositePartition(graph, path, universe);
}

Partition CompositePartition(const LabeledGraph &graph,
                             std::span<const std::string> path,
                             std::span<const Node> universe) {
  if (path.empty()) throw std::invalid_argument("label path must not be empty");
  for (const std::string &label : path) RequireLabel(graph, label);

  std::vector<Node> elements =
      MakeUniverse(std::vector<Node>(universe.begin(), universe.end()));

  // Image of every element after each step.
  std::vector<const Node *> image(elements.size());
  for (std::size_t i = 0; i < elements.size(); ++i) image[i] = &elements[i];

  for (std::size_t step = 0; step < path.size(); ++step) {
    std::vector<Node> gap;
    for (const Node *&current : image) {
      const Node *next = graph.Target(path[step], *current);
      if (next == nullptr) {
        gap.push_back(*current);
      } else {
        current = next;
      }
    }
    if (!gap.empty()) throw DomainGapError(step, path[step], MakeUniverse(gap));
  }

  std::map<Node, std::uint64_t> block_of_target;
  std::vector<std::uint64_t> ids(elements.size());
  for (std::size_t i = 0; i < elements.size(); ++i) {
    ids[i] = block_of_target.emplace(*image[i], block_of_target.size())
                 .first->second;
  }
  return Partition::FromBlockIds(std::move(elements), ids);
}

Partition Meet(const Partition &p, const Partition &q) {
  RequireSameUniverse(p, q);
  std::vector<std::uint64_t> ids(p.universe_size());
  const std::uint64_t width = q.class_count();
  for (std::size_t i = 0; i < ids.size(); ++i) {
    ids[i] = p.class_of(i) * width + q.class_of(i);
  }
  return Partition::FromBlockIds(p.universe(), ids);
}

Partition Meet(std::span<const Partition> partitions) {
  if (partitions.empty()) throw std::invalid_argument("nothing to meet");
  Partition result = partitions.front();
  for (std::size_t i = 1; i < partitions.size(); ++i) {
    result = Meet(result, partitions[i]);
  }
  return result;
}

std::size_t DirectedIntersectionCount(const Partition &p, const Partition &q) {
  RequireSameUniverse(p, q);
  std::size_t count = 0;
  for (const auto &members : p.class_indices()) {
    const std::size_t target = q.class_of(members.front());
    bool inside = std::all_of(members.begin(), members.end(),
                              [&](std::size_t i) { return q.class_of(i) == target; });
    if (inside) ++count;
  }
  return count;
}

bool Refines(const Partition &p, const Partition &q) {
  return DirectedIntersectionCount(p, q) == p.class_count();
}

CommonDomain CommonDomainOf(const LabeledGraph &graph,
                            std::span<const std::string> labels) {
  if (labels.empty()) throw std::invalid_argument("no labels given");
  std::vector<std::string> distinct(labels.begin(), labels.end());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

  std::map<Node, std::size_t> hits;
  for (const std::string &label : distinct) {
    RequireLabel(graph, label);
    for (Node &node : graph.Domain(label)) ++hits[std::move(node)];
  }

  CommonDomain domain;
  for (auto &[node, count] : hits) {
    if (count == distinct.size()) {
      domain.universe.push_back(node);
    } else {
      ++domain.excluded;
    }
  }
  return domain;
}

CommonDomain CompositeDomainOf(const LabeledGraph &graph,
                               std::span<const std::string> path) {
  if (path.empty()) throw std::invalid_argument("label path must not be empty");
  for (const std::string &label : path) RequireLabel(graph, label);

  std::vector<Node> domain = graph.Domain(path.front());
  CommonDomain result;
  for (const Node &start : domain) {
    const Node *current = graph.Target(path.front(), start);
    for (std::size_t step = 1; step < path.size() && current != nullptr; ++step) {
      current = graph.Target(path[step], *current);
    }
    if (current != nullptr) {
      result.universe.push_back(start);
    } else {
      ++result.excluded;
    }
  }

  if (result.universe.empty() && !domain.empty()) {
    // Report the step where the last surviving nodes dropped out.
    std::vector<Node> images = domain;
    for (std::size_t step = 1; step < path.size(); ++step) {
      std::vector<Node> next, gap;
      for (const Node &node : images) {
        const Node *target = graph.Target(path[step - 1], node);
        if (target == nullptr) continue;
        if (graph.Target(path[step], *target) != nullptr) {
          next.push_back(*target);
        } else {
          gap.push_back(*target);
        }
      }
      if (next.empty()) throw DomainGapError(step, path[step], MakeUniverse(gap));
      images = MakeUniverse(next);
    }
  }
  return result;
}

nlohmann::json PartitionToJson(const Partition &partition) {
  nlohmann::json classes = nlohmann::json::array();
  for (const auto &members : partition.classes()) {
    nlohmann::json keys = nlohmann::json::array();
    for (const Node &node : members) keys.push_back(NodeKey(node));
    classes.push_back(std::move(keys));
  }
  return {{"universe_size", partition.universe_size()},
          {"classes", std::move(classes)}};
}

}  // namespace labelflow
