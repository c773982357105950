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

#include "labelflow/dataset.h"

#include <algorithm>
#include <map>
#include <set>
#include <span>
#include <tuple>
#include <utility>

namespace labelflow {

using nlohmann::json;

DatasetError::DatasetError(std::vector<Finding> findings)
    : Error(findings.empty() ? ErrorKind::kMalformedInput : findings[0].kind,
            std::to_string(findings.size()) + " validation finding(s)" +
                (findings.empty() ? std::string()
                                  : "; first: " + findings[0].message)),
      findings_(std::move(findings)) {}

namespace {

[[noreturn]] void Malformed(const std::string &what) {
  throw Error(ErrorKind::kMalformedInput, what);
}

const json &Field(const json &object, const char *name, const std::string &where) {
  if (!object.is_object()) Malformed(where + " must be an object");
  auto it = object.find(name);
  if (it == object.end()) Malformed(where + " is missing \"" + name + "\"");
  return *it;
}

std::string StringField(const json &object, const char *name,
                        const std::string &where) {
  const json &value = Field(object, name, where);
  if (!value.is_string()) Malformed(where + "." + name + " must be a string");
  return value.get<std::string>();
}

const json &ArrayField(const json &object, const char *name,
                       const std::string &where) {
  const json &value = Field(object, name, where);
  if (!value.is_array()) Malformed(where + "." + name + " must be an array");
  return value;
}

Region SpanField(const json &object, const char *name, const std::string &doc,
                 const std::string &where) {
  const json &value = Field(object, name, where);
  if (!value.is_array() || value.size() != 2 || !value[0].is_number_unsigned() ||
      !value[1].is_number_unsigned()) {
    Malformed(where + "." + name +
              " must be a pair of non-negative integer offsets");
  }
  return Region{doc, value[0].get<std::uint64_t>(), value[1].get<std::uint64_t>()};
}

// Annotation-level check, at most one finding per annotation.
std::optional<Finding> CheckAnnotation(
    const Annotation &annotation, std::size_t index,
    const std::map<std::string, const Document *> &documents,
    const std::set<std::string> &labels) {
  auto finding = [&](ErrorKind kind, std::string message) {
    return Finding{kind, index, {index},
                   "annotation " + std::to_string(index) + ": " + message};
  };

  if (annotation.mention.doc_id != annotation.entity.doc_id) {
    return finding(ErrorKind::kBadNesting,
                   "mention and entity lie on different documents");
  }
  auto doc = documents.find(annotation.mention.doc_id);
  if (doc == documents.end()) {
    return finding(ErrorKind::kUnknownDocument,
                   "unknown document '" + annotation.mention.doc_id + "'");
  }
  if (labels.count(annotation.label) == 0) {
    return finding(ErrorKind::kUnknownLabel,
                   "unknown label '" + annotation.label + "'");
  }
  const std::uint64_t size = doc->second->text.size();
  for (const auto &[role, span] :
       {std::pair<const char *, const Region *>{"mention", &annotation.mention},
        {"entity", &annotation.entity}}) {
    if (span->start >= span->end) {
      return finding(ErrorKind::kSpanOutOfBounds,
                     std::string(role) + " span " + NodeKey(*span) +
                         " is empty or inverted");
    }
    if (span->end > size) {
      return finding(ErrorKind::kSpanOutOfBounds,
                     std::string(role) + " span " + NodeKey(*span) +
                         " exceeds document length " + std::to_string(size));
    }
  }
  if (!RegionContains(annotation.entity, annotation.mention)) {
    return finding(ErrorKind::kBadNesting,
                   "mention " + NodeKey(annotation.mention) +
                       " is not strictly inside entity " +
                       NodeKey(annotation.entity));
  }
  return std::nullopt;
}

// Structural findings plus the indices of annotations that passed them.
std::vector<Finding> StructuralFindings(const AnnotationSet &set,
                                        std::vector<std::size_t> *valid) {
  std::vector<Finding> findings;

  std::map<std::string, const Document *> documents;
  for (const Document &doc : set.documents) {
    if (!documents.emplace(doc.id, &doc).second) {
      findings.push_back({ErrorKind::kDuplicateDocId, std::nullopt, {},
                          "duplicate document id '" + doc.id + "'"});
    }
  }

  std::set<std::string> labels;
  for (const LabelDecl &label : set.labels) {
    if (label.name.empty()) {
      findings.push_back({ErrorKind::kInvalidLabel, std::nullopt, {},
                          "label name must not be empty"});
      continue;
    }
    if (!labels.insert(label.name).second) {
      findings.push_back({ErrorKind::kDuplicateLabelName, std::nullopt, {},
                          "duplicate label name '" + label.name + "'"});
    }
  }

  for (std::size_t i = 0; i < set.annotations.size(); ++i) {
    auto finding = CheckAnnotation(set.annotations[i], i, documents, labels);
    if (finding) {
      findings.push_back(std::move(*finding));
    } else if (valid != nullptr) {
      valid->push_back(i);
    }
  }
  return findings;
}

std::vector<Finding> FunctionalityFindings(const AnnotationSet &set,
                                           std::span<const std::size_t> valid) {
  std::map<std::string, Direction> directions;
  for (const LabelDecl &label : set.labels) {
    directions.emplace(label.name, label.direction);
  }

  // (label, source) -> annotations, and the distinct targets among them.
  std::map<std::pair<std::string, Node>, std::vector<std::size_t>> groups;
  std::map<std::pair<std::string, Node>, std::set<Node>> targets;
  for (std::size_t i : valid) {
    const Annotation &a = set.annotations[i];
    bool forward = directions.at(a.label) == Direction::kForward;
    const Node &source = forward ? a.mention : a.entity;
    const Node &target = forward ? a.entity : a.mention;
    auto key = std::make_pair(a.label, source);
    groups[key].push_back(i);
    targets[key].insert(target);
  }

  std::vector<Finding> findings;
  for (const auto &[key, members] : groups) {
    if (targets[key].size() < 2) continue;
    std::string message = "label '" + key.first + "' maps " +
                          NodeKey(key.second) + " to several targets:";
    for (std::size_t i : members) {
      const Annotation &a = set.annotations[i];
      bool forward = directions.at(a.label) == Direction::kForward;
      message += " " + NodeKey(forward ? a.entity : a.mention) +
                 " (annotation " + std::to_string(i) + ")";
    }
    findings.push_back({ErrorKind::kMapNotWellDefined, members.front(), members,
                        std::move(message)});
  }
  return findings;
}

}  // namespace

AnnotationSet DecodeDataset(std::string_view json_text) {
  json root = json::parse(json_text, nullptr, /*allow_exceptions=*/false);
  if (root.is_discarded()) Malformed("dataset is not valid JSON");
  if (!root.is_object()) Malformed("dataset must be a JSON object");

  AnnotationSet set;
  for (const json &doc : ArrayField(root, "documents", "dataset")) {
    set.documents.push_back({StringField(doc, "id", "document"),
                             StringField(doc, "text", "document")});
  }
  for (const json &label : ArrayField(root, "labels", "dataset")) {
    std::string name = StringField(label, "name", "label");
    std::string direction = StringField(label, "direction", "label");
    auto parsed = ParseDirection(direction);
    if (!parsed) {
      Malformed("label '" + name + "' has unknown direction '" + direction + "'");
    }
    set.labels.push_back({std::move(name), *parsed});
  }
  const json &annotations = ArrayField(root, "annotations", "dataset");
  for (std::size_t i = 0; i < annotations.size(); ++i) {
    const std::string where = "annotations[" + std::to_string(i) + "]";
    const json &a = annotations[i];
    std::string doc = StringField(a, "doc", where);
    std::string label = StringField(a, "label", where);
    Region mention = SpanField(a, "mention", doc, where);
    Region entity = SpanField(a, "entity", doc, where);
    set.annotations.push_back({std::move(label), std::move(mention), std::move(entity)});
  }
  return set;
}

AnnotationSet ParseDataset(std::string_view json_text) {
  AnnotationSet set = DecodeDataset(json_text);
  std::vector<Finding> findings = StructuralFindings(set, nullptr);
  if (!findings.empty()) throw DatasetError(std::move(findings));
  return set;
}

AnnotationSet Canonicalize(AnnotationSet set) {
  std::stable_sort(set.documents.begin(), set.documents.end(),
                   [](const Document &a, const Document &b) { return a.id < b.id; });
  std::stable_sort(set.labels.begin(), set.labels.end(),
                   [](const LabelDecl &a, const LabelDecl &b) { return a.name < b.name; });
  std::stable_sort(set.annotations.begin(), set.annotations.end(), CanonicalLess);
  return set;
}

json DatasetToJson(const AnnotationSet &set) {
  AnnotationSet canonical = Canonicalize(set);
  json documents = json::array();
  for (const Document &doc : canonical.documents) {
    documents.push_back({{"id", doc.id}, {"text", doc.text}});
  }
  json labels = json::array();
  for (const LabelDecl &label : canonical.labels) {
    labels.push_back({{"name", label.name},
                      {"direction", std::string(DirectionName(label.direction))}});
  }
  json annotations = json::array();
  for (const Annotation &a : canonical.annotations) {
    annotations.push_back({{"doc", a.mention.doc_id},
                           {"label", a.label},
                           {"mention", {a.mention.start, a.mention.end}},
                           {"entity", {a.entity.start, a.entity.end}}});
  }
  return {{"documents", std::move(documents)},
          {"labels", std::move(labels)},
          {"annotations", std::move(annotations)}};
}

std::string SerializeDataset(const AnnotationSet &set) {
  return DatasetToJson(set).dump(2) + "\n";
}

std::vector<Finding> Validate(const AnnotationSet &set) {
  std::vector<std::size_t> valid;
  std::vector<Finding> findings = StructuralFindings(set, &valid);
  std::vector<Finding> conflicts = FunctionalityFindings(set, valid);
  findings.insert(findings.end(), std::make_move_iterator(conflicts.begin()),
                  std::make_move_iterator(conflicts.end()));
  return findings;
}

LabeledGraph BuildGraph(const AnnotationSet &set) {
  std::vector<Finding> findings = Validate(set);
  if (!findings.empty()) throw DatasetError(std::move(findings));

  LabeledGraph graph;
  for (const LabelDecl &label : set.labels) graph.DeclareLabel(label);
  for (const Annotation &annotation : set.annotations) {
    graph.AddAnnotation(annotation);
  }
  return graph;
}

json FindingToJson(const Finding &finding) {
  json out = {{"kind", std::string(ErrorKindName(finding.kind))},
              {"related", finding.related},
              {"message", finding.message}};
  out["annotation"] = finding.annotation ? json(*finding.annotation) : json(nullptr);
  return out;
}

}  // namespace labelflow
