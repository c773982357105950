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

#ifndef LABELFLOW_REGION_H_
#define LABELFLOW_REGION_H_

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace labelflow {

// A document of the dataset. Offsets into `text` are byte offsets.
struct Document {
  std::string id;
  std::string text;

  friend bool operator==(const Document &, const Document &) = default;
};

// Half-open byte span [start, end) on a document. Regions order by
// (doc_id, start, end), which is the iteration order used everywhere.
struct Region {
  std::string doc_id;
  std::uint64_t start = 0;
  std::uint64_t end = 0;

  std::uint64_t length() const { return end > start ? end - start : 0; }

  friend auto operator<=>(const Region &, const Region &) = default;
  friend bool operator==(const Region &, const Region &) = default;
};

// Graph nodes are regions: two annotations touching the same span touch
// the same node.
using Node = Region;

// Strict containment: same document, outer covers inner, and they differ.
bool RegionContains(const Region &outer, const Region &inner);

// True if the spans share at least one byte.
bool RegionsOverlap(const Region &a, const Region &b);

// "doc:start-end". The document id may itself contain ':'; the key is split
// at the last one.
std::string NodeKey(const Region &region);
std::optional<Region> ParseNodeKey(std::string_view key);

// Forward maps go from the small region to the large one containing it
// (mention to entity); backward maps go the other way.
enum class Direction { kForward, kBackward };

std::string_view DirectionName(Direction direction);
std::optional<Direction> ParseDirection(std::string_view name);

struct LabelDecl {
  std::string name;
  Direction direction = Direction::kForward;

  friend bool operator==(const LabelDecl &, const LabelDecl &) = default;
};

// One instance of a label: a mention region nested inside an entity region.
struct Annotation {
  std::string label;
  Region mention;
  Region entity;

  friend bool operator==(const Annotation &, const Annotation &) = default;
};

// Canonical annotation order: (doc, mention.start, mention.end, label), then
// the entity span to make the order total.
bool CanonicalLess(const Annotation &a, const Annotation &b);

}  // namespace labelflow

#endif  // LABELFLOW_REGION_H_
