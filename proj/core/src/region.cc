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

#include "labelflow/region.h"

#include <charconv>
#include <tuple>

namespace labelflow {

bool RegionContains(const Region &outer, const Region &inner) {
  return outer.doc_id == inner.doc_id && outer.start <= inner.start &&
         inner.end <= outer.end && outer != inner;
}

bool RegionsOverlap(const Region &a, const Region &b) {
  return a.doc_id == b.doc_id && a.start < b.end && b.start < a.end;
}

std::string NodeKey(const Region &region) {
  return region.doc_id + ":" + std::to_string(region.start) + "-" +
         std::to_string(region.end);
}

namespace {

bool ParseOffset(std::string_view text, std::uint64_t *value) {
  if (text.empty()) return false;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), *value);
  return ec == std::errc() && ptr == text.data() + text.size();
}

}  // namespace

std::optional<Region> ParseNodeKey(std::string_view key) {
  size_t colon = key.rfind(':');
  if (colon == std::string_view::npos) return std::nullopt;
  std::string_view span = key.substr(colon + 1);
  size_t dash = span.find('-');
  if (dash == std::string_view::npos) return std::nullopt;

  Region region;
  region.doc_id = std::string(key.substr(0, colon));
  if (!ParseOffset(span.substr(0, dash), &region.start)) return std::nullopt;
  if (!ParseOffset(span.substr(dash + 1), &region.end)) return std::nullopt;
  return region;
}

std::string_view DirectionName(Direction direction) {
  return direction == Direction::kForward ? "forward" : "backward";
}

std::optional<Direction> ParseDirection(std::string_view name) {
  if (name == "forward") return Direction::kForward;
  if (name == "backward") return Direction::kBackward;
  return std::nullopt;
}

bool CanonicalLess(const Annotation &a, const Annotation &b) {
  return std::tie(a.mention.doc_id, a.mention.start, a.mention.end, a.label,
                  a.entity.doc_id, a.entity.start, a.entity.end) <
         std::tie(b.mention.doc_id, b.mention.start, b.mention.end, b.label,
                  b.entity.doc_id, b.entity.start, b.entity.end);
}

}  // namespace labelflow
