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

#ifndef LABELFLOW_PARTITION_H_
#define LABELFLOW_PARTITION_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "labelflow/error.h"
#include "labelflow/graph.h"
#include "labelflow/region.h"

namespace labelflow {

// A quotient set of a finite universe of nodes.
//
// The universe is kept sorted and duplicate-free. Classes are canonical:
// ordered by their smallest member, members in universe order. Two
// partitions are equal iff they have the same universe and the same classes.
class Partition {
 public:
  Partition() = default;

  // Groups universe[i] by block_ids[i]. The universe must be sorted and
  // free of duplicates; block ids are arbitrary integers.
  static Partition FromBlockIds(std::vector<Node> universe,
                                std::span<const std::uint64_t> block_ids);

  // One class per element / one class holding everything.
  static Partition Discrete(std::vector<Node> universe);
  static Partition Indiscrete(std::vector<Node> universe);

  const std::vector<Node> &universe() const { return universe_; }
  std::size_t universe_size() const { return universe_.size(); }
  std::size_t class_count() const { return classes_.size(); }

  // Classes as indices into universe().
  const std::vector<std::vector<std::size_t>> &class_indices() const {
    return classes_;
  }

  // Class of universe()[element].
  std::size_t class_of(std::size_t element) const { return class_of_[element]; }

  std::vector<std::vector<Node>> classes() const;

  // Throws std::logic_error if the classes are not a canonical partition of
  // the universe.
  void CheckInvariants() const;

  friend bool operator==(const Partition &a, const Partition &b) {
    return a.universe_ == b.universe_ && a.class_of_ == b.class_of_;
  }

 private:
  std::vector<Node> universe_;
  std::vector<std::size_t> class_of_;
  std::vector<std::vector<std::size_t>> classes_;
};

// Universe nodes outside a map's domain. `step` is the index in the label
// path at which the gap occurred; `nodes` are the elements at that step
// that the label does not map.
class DomainGapError : public Error {
 public:
  DomainGapError(std::size_t step, std::string label, std::vector<Node> nodes);

  std::size_t step() const { return step_; }
  const std::string &label() const { return label_; }
  const std::vector<Node> &nodes() const { return nodes_; }

 private:
  std::size_t step_;
  std::string label_;
  std::vector<Node> nodes_;
};

// Sorts and deduplicates a node list so it can serve as a universe.
std::vector<Node> MakeUniverse(std::vector<Node> nodes);

// Fibers of `label` over `universe`: a ~ b iff label(a) == label(b).
// Throws kUnknownLabel, or DomainGapError for nodes the label does not map.
Partition Fibers(const LabeledGraph &graph, std::string_view label,
                 std::span<const Node> universe);

// Fibers of the composite path.back() o ... o path.front(), pulled back to
// `universe`. A one-label path is the same as Fibers().
Partition CompositePartition(const LabeledGraph &graph,
                             std::span<const std::string> path,
                             std::span<const Node> universe);

// Coarsest common refinement. Throws kUniverseMismatch.
Partition Meet(const Partition &p, const Partition &q);
Partition Meet(std::span<const Partition> partitions);

// Number of classes A of `p` that lie inside some class B of `q`.
// Asymmetric. Throws kUniverseMismatch.
std::size_t DirectedIntersectionCount(const Partition &p, const Partition &q);

// True iff every class of `p` lies inside a class of `q`.
bool Refines(const Partition &p, const Partition &q);

// The nodes mapped by every one of `labels`, plus how many nodes are in the
// domain of some but not all of them.
struct CommonDomain {
  std::vector<Node> universe;
  std::size_t excluded = 0;
};

CommonDomain CommonDomainOf(const LabeledGraph &graph,
                            std::span<const std::string> labels);

// The nodes on which the whole composite path.back() o ... o path.front() is
// defined, plus how many nodes of path.front()'s domain fall out along the
// way. Throws DomainGapError when no node survives the whole path.
CommonDomain CompositeDomainOf(const LabeledGraph &graph,
                               std::span<const std::string> path);

// {"universe_size": n, "classes": [["doc:start-end", ...], ...]}
nlohmann::json PartitionToJson(const Partition &partition);

}  // namespace labelflow

#endif  // LABELFLOW_PARTITION_H_
