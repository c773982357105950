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

#ifndef LABELFLOW_GRAPH_H_
#define LABELFLOW_GRAPH_H_

#include <compare>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "labelflow/error.h"
#include "labelflow/region.h"

namespace labelflow {

// One instance of a map. Forward edges run mention -> entity, backward
// edges entity -> mention.
struct MapEdge {
  std::string label;
  Node source;
  Node target;

  friend auto operator<=>(const MapEdge &, const MapEdge &) = default;
  friend bool operator==(const MapEdge &, const MapEdge &) = default;
};

// The graph induced by a set of annotations. Every label is kept a partial
// function on nodes: a node is the source of at most one edge per label.
//
// Construction is single-writer. Once built, all const members are safe to
// call concurrently.
class LabeledGraph {
 public:
  // Declares a label. Re-declaring with the same direction is a no-op;
  // a conflicting direction throws kDuplicateLabelName, an empty name
  // kInvalidLabel.
  void DeclareLabel(const LabelDecl &decl);

  // Adds the edge induced by `annotation`, creating its endpoint nodes.
  // Adding the exact same annotation twice leaves the graph unchanged.
  //
  // Throws kUnknownLabel, kBadNesting (mention not strictly inside entity)
  // or kMapNotWellDefined (source already mapped elsewhere by this label).
  void AddAnnotation(const Annotation &annotation);

  // The edge `annotation` would induce, without touching the graph.
  MapEdge EdgeFor(const Annotation &annotation) const;

  const std::map<std::string, LabelDecl, std::less<>> &labels() const {
    return labels_;
  }
  const std::set<Node> &nodes() const { return nodes_; }
  const std::set<MapEdge> &edges() const { return edges_; }

  const LabelDecl *FindLabel(std::string_view name) const;
  bool HasNode(const Node &node) const { return nodes_.count(node) > 0; }

  // Image of `source` under `label`, or nullptr outside the label's domain.
  const Node *Target(std::string_view label, const Node &source) const;

  // Sources of `label` in node order.
  std::vector<Node> Domain(std::string_view label) const;

  // Edges leaving / entering a node, sorted by (label, source, target).
  const std::vector<MapEdge> &OutEdges(const Node &node) const;
  const std::vector<MapEdge> &InEdges(const Node &node) const;

  // Graphs compare by labels, nodes and edges.
  friend bool operator==(const LabeledGraph &a, const LabeledGraph &b) {
    return a.labels_ == b.labels_ && a.nodes_ == b.nodes_ &&
           a.edges_ == b.edges_;
  }

 private:
  std::map<std::string, LabelDecl, std::less<>> labels_;
  std::set<Node> nodes_;
  std::set<MapEdge> edges_;

  // label -> source -> target.
  std::map<std::string, std::map<Node, Node>, std::less<>> maps_;
  std::map<Node, std::vector<MapEdge>> out_;
  std::map<Node, std::vector<MapEdge>> in_;
};

}  // namespace labelflow

#endif  // LABELFLOW_GRAPH_H_
