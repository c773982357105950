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

#include "labelflow/graph.h"

#include <algorithm>

namespace labelflow {

namespace {

const std::vector<MapEdge> kNoEdges;

void InsertSorted(std::vector<MapEdge> *edges, const MapEdge &edge) {
  edges->insert(std::lower_bound(edges->begin(), edges->end(), edge), edge);
}

}  // namespace

void LabeledGraph::DeclareLabel(const LabelDecl &decl) {
  if (decl.name.empty()) {
    throw Error(ErrorKind::kInvalidLabel, "label name must not be empty");
  }
  auto it = labels_.find(decl.name);
  if (it != labels_.end()) {
    if (it->second.direction != decl.direction) {
      throw Error(ErrorKind::kDuplicateLabelName,
                  "label '" + decl.name + "' declared with both directions");
    }
    return;
  }
  labels_.emplace(decl.name, decl);
}

const LabelDecl *LabeledGraph::FindLabel(std::string_view name) const {
  auto it = labels_.find(name);
  return it == labels_.end() ? nullptr : &it->second;
}

MapEdge LabeledGraph::EdgeFor(const Annotation &annotation) const {
  const LabelDecl *decl = FindLabel(annotation.label);
  if (decl == nullptr) {
    throw Error(ErrorKind::kUnknownLabel,
                "label '" + annotation.label + "' is not declared");
  }
  if (!RegionContains(annotation.entity, annotation.mention)) {
    throw Error(ErrorKind::kBadNesting,
                "mention " + NodeKey(annotation.mention) +
                    " is not strictly inside entity " +
                    NodeKey(annotation.entity));
  }
  if (decl->direction == Direction::kForward) {
    return MapEdge{annotation.label, annotation.mention, annotation.entity};
  }
  return MapEdge{annotation.label, annotation.entity, annotation.mention};
}

void LabeledGraph::AddAnnotation(const Annotation &annotation) {
  MapEdge edge = EdgeFor(annotation);

  auto &map = maps_[edge.label];
  auto it = map.find(edge.source);
  if (it != map.end()) {
    if (it->second == edge.target) return;
    throw Error(ErrorKind::kMapNotWellDefined,
                "label '" + edge.label + "' maps " + NodeKey(edge.source) +
                    " to both " + NodeKey(it->second) + " and " +
                    NodeKey(edge.target));
  }

  map.emplace(edge.source, edge.target);
  nodes_.insert(edge.source);
  nodes_.insert(edge.target);
  InsertSorted(&out_[edge.source], edge);
  InsertSorted(&in_[edge.target], edge);
  edges_.insert(std::move(edge));
}

const Node *LabeledGraph::Target(std::string_view label,
                                 const Node &source) const {
  auto map = maps_.find(label);
  if (map == maps_.end()) return nullptr;
  auto it = map->second.find(source);
  return it == map->second.end() ? nullptr : &it->second;
}

std::vector<Node> LabeledGraph::Domain(std::string_view label) const {
  std::vector<Node> domain;
  auto map = maps_.find(label);
  if (map == maps_.end()) return domain;
  domain.reserve(map->second.size());
  for (const auto &[source, target] : map->second) domain.push_back(source);
  return domain;
}

const std::vector<MapEdge> &LabeledGraph::OutEdges(const Node &node) const {
  auto it = out_.find(node);
  return it == out_.end() ? kNoEdges : it->second;
}

const std::vector<MapEdge> &LabeledGraph::InEdges(const Node &node) const {
  auto it = in_.find(node);
  return it == in_.end() ? kNoEdges : it->second;
}

}  // namespace labelflow
