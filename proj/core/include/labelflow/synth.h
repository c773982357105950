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

#ifndef LABELFLOW_SYNTH_H_
#define LABELFLOW_SYNTH_H_

#include <cstddef>
#include <map>
#include <random>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "labelflow/dataset.h"
#include "labelflow/error.h"
#include "labelflow/region.h"

namespace labelflow {

// Rule-driven synthetic universes: every combination of the free attribute
// values is an entity, derived attributes are assigned by rules.

// Condition tree over attribute values: conjunction, disjunction, and the
// atoms attribute == value / attribute != value.
struct Condition {
  enum class Op { kAll, kAny, kIs, kNot };

  Op op = Op::kAll;
  std::vector<Condition> children;  // kAll / kAny
  std::string attribute;            // kIs / kNot
  std::string value;                // kIs / kNot

  static Condition All(std::vector<Condition> children);
  static Condition Any(std::vector<Condition> children);
  static Condition Is(std::string attribute, std::string value);
  static Condition Not(std::string attribute, std::string value);

  friend bool operator==(const Condition &, const Condition &) = default;
};

struct Rule {
  Condition when;
  std::string then;

  friend bool operator==(const Rule &, const Rule &) = default;
};

struct FreeAttribute {
  std::string name;
  std::vector<std::string> values;

  friend bool operator==(const FreeAttribute &, const FreeAttribute &) = default;
};

// The value domain of a derived attribute is the set of `then` values of its
// rules, in first-appearance order. Conditions may refer to free attributes
// and to derived attributes declared earlier.
struct DerivedAttribute {
  std::string name;
  std::vector<Rule> rules;

  friend bool operator==(const DerivedAttribute &,
                         const DerivedAttribute &) = default;
};

struct RuleSpec {
  std::vector<FreeAttribute> free;
  std::vector<DerivedAttribute> derived;

  friend bool operator==(const RuleSpec &, const RuleSpec &) = default;
};

// Raised for IncompleteRules / ContradictoryRules. `combination` holds the
// free attribute values (in declaration order) of the entity that failed.
class RuleError : public Error {
 public:
  RuleError(ErrorKind kind, const std::string &message,
            std::vector<std::string> combination);

  const std::vector<std::string> &combination() const { return combination_; }

 private:
  std::vector<std::string> combination_;
};

// Throws Error(kMalformedInput) for bad JSON shape and
// Error(kInvalidRuleSpec) for bad references.
RuleSpec ParseRuleSpec(std::string_view json_text);
nlohmann::json RuleSpecToJson(const RuleSpec &spec);

// Attribute values of every entity, computed straight from the rules.
struct EntityTable {
  std::vector<std::string> attributes;               // free, then derived
  std::vector<std::vector<std::string>> domains;     // per attribute
  std::vector<std::vector<std::size_t>> rows;        // value index per attribute
  std::size_t free_count = 0;

  std::size_t AttributeIndex(std::string_view name) const;
  // Free attribute values joined by '.', e.g. "red.large".
  std::string EntityName(std::size_t row) const;
};

// Checks the spec, enumerates the free cross-product (first attribute most
// significant) and applies the rules. Every rule is tried on every entity:
// no match is IncompleteRules, matches that disagree are
// ContradictoryRules.
EntityTable EvaluateRules(const RuleSpec &spec);

// A generated dataset together with the regions that realize it.
struct Universe {
  AnnotationSet dataset;
  std::vector<std::string> entity_names;
  std::vector<Region> entity_regions;  // parallel to entity_names
  // (attribute, value) -> mention region.
  std::map<std::pair<std::string, std::string>, Region> value_regions;
};

inline constexpr std::string_view kSynthDocId = "synth";

// One document: a header line per attribute listing its values, then one
// line per entity. Each value is a single shared mention on the header line.
// An entity's region runs from the start of the document to the end of its
// own line, so it contains every value mention. Each attribute becomes a
// backward label mapping entity regions to value mentions. The dataset is in
// canonical order.
Universe GenerateUniverse(const RuleSpec &spec);

struct OracleCounts {
  std::size_t class_count = 0;
  std::size_t intersection_count = 0;

  friend bool operator==(const OracleCounts &, const OracleCounts &) = default;
};

// (|C_from|, |C_from ->n C_to|) computed from the entity table alone: the
// classes group entities by their tuple of `from` values, and inclusions are
// counted with an exhaustive pairwise subset scan.
OracleCounts ComputeOracleCounts(const RuleSpec &spec,
                                 std::span<const std::string> from_attributes,
                                 std::string_view to_attribute);

// Brute-force |P ->n Q| for partitions given as explicit classes.
std::size_t BruteForceIntersectionCount(
    std::span<const std::set<std::size_t>> p,
    std::span<const std::set<std::size_t>> q);

struct RandomSpecLimits {
  std::size_t max_attributes = 4;
  std::size_t max_values = 4;
};

// A valid random spec: at least one free attribute, total attribute count
// and per-attribute value count within the limits. Derived attributes get a
// random function of the free attributes, written as rules that mix
// equality and inequality atoms.
RuleSpec RandomRuleSpec(std::mt19937_64 &rng, const RandomSpecLimits &limits);

}  // namespace labelflow

#endif  // LABELFLOW_SYNTH_H_
