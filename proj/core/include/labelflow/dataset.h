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

#ifndef LABELFLOW_DATASET_H_
#define LABELFLOW_DATASET_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "labelflow/error.h"
#include "labelflow/graph.h"
#include "labelflow/region.h"

namespace labelflow {

// Documents, label declarations and annotations as read from a dataset file.
struct AnnotationSet {
  std::vector<Document> documents;
  std::vector<LabelDecl> labels;
  std::vector<Annotation> annotations;

  friend bool operator==(const AnnotationSet &, const AnnotationSet &) = default;
};

// One validation problem. `annotation` is the index of the offending
// annotation (absent for document/label level problems); `related` lists
// every annotation involved, e.g. both sides of a functionality conflict.
struct Finding {
  ErrorKind kind;
  std::optional<std::size_t> annotation;
  std::vector<std::size_t> related;
  std::string message;

  friend bool operator==(const Finding &, const Finding &) = default;
};

// Raised when a dataset fails validation. kind() is the kind of the first
// finding.
class DatasetError : public Error {
 public:
  explicit DatasetError(std::vector<Finding> findings);

  const std::vector<Finding> &findings() const { return findings_; }

 private:
  std::vector<Finding> findings_;
};

// Decodes the dataset JSON without validating references or spans. Throws
// Error(kMalformedInput) when the text is not JSON of the expected shape.
AnnotationSet DecodeDataset(std::string_view json_text);

// Decodes and validates everything except label functionality (which is a
// property of the whole set, reported by Validate() and BuildGraph()).
// Throws Error(kMalformedInput) or DatasetError.
AnnotationSet ParseDataset(std::string_view json_text);

// Sorts documents by id, labels by name and annotations by CanonicalLess.
AnnotationSet Canonicalize(AnnotationSet set);

// Canonical JSON text: canonical order, sorted keys, two-space indent,
// trailing newline. Equal sets serialize to identical bytes.
std::string SerializeDataset(const AnnotationSet &set);
nlohmann::json DatasetToJson(const AnnotationSet &set);

// Structural findings (ids, references, spans, nesting) in input order,
// followed by one kMapNotWellDefined finding per (label, source) that is
// mapped to more than one target. Empty iff BuildGraph() succeeds.
std::vector<Finding> Validate(const AnnotationSet &set);

// Builds the graph by adding the annotations in input order. Throws
// DatasetError carrying all findings when Validate() is not empty.
LabeledGraph BuildGraph(const AnnotationSet &set);

nlohmann::json FindingToJson(const Finding &finding);

}  // namespace labelflow

#endif  // LABELFLOW_DATASET_H_
