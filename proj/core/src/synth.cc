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

#include "labelflow/synth.h"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <utility>

namespace labelflow {

using nlohmann::json;

Condition Condition::All(std::vector<Condition> children) {
  Condition c;
  c.op = Op::kAll;
  c.children = std::move(children);
  return c;
}

Condition Condition::Any(std::vector<Condition> children) {
  Condition c;
  c.op = Op::kAny;
  c.children = std::move(children);
  return c;
}

Condition Condition::Is(std::string attribute, std::string value) {
  Condition c;
  c.op = Op::kIs;
  c.attribute = std::move(attribute);
  c.value = std::move(value);
  return c;
}

Condition Condition::Not(std::string attribute, std::string value) {
  Condition c = Is(std::move(attribute), std::move(value));
  c.op = Op::kNot;
  return c;
}

RuleError::RuleError(ErrorKind kind, const std::string &message,
                     std::vector<std::string> combination)
    : Error(kind, message), combination_(std::move(combination)) {}

namespace {

[[noreturn]] void Malformed(const std::string &what) {
  throw Error(ErrorKind::kMalformedInput, "rule spec: " + what);
}

[[noreturn]] void Invalid(const std::string &what) {
  throw Error(ErrorKind::kInvalidRuleSpec, "rule spec: " + what);
}

std::string ExpectString(const json &value, const std::string &where) {
  if (!value.is_string()) Malformed(where + " must be a string");
  return value.get<std::string>();
}

const json &ExpectMember(const json &object, const char *name,
                         const std::string &where) {
  if (!object.is_object()) Malformed(where + " must be an object");
  auto it = object.find(name);
  if (it == object.end()) Malformed(where + " is missing \"" + name + "\"");
  return *it;
}

Condition DecodeCondition(const json &node, const std::string &where) {
  if (!node.is_object() || node.size() != 1) {
    Malformed(where + " must be an object with exactly one of all/any/is/not");
  }
  const auto &[key, body] = *node.items().begin();
  if (key == "all" || key == "any") {
    if (!body.is_array()) Malformed(where + "." + key + " must be an array");
    std::vector<Condition> children;
    for (std::size_t i = 0; i < body.size(); ++i) {
      children.push_back(DecodeCondition(
          body[i], where + "." + key + "[" + std::to_string(i) + "]"));
    }
    return key == "all" ? Condition::All(std::move(children))
                        : Condition::Any(std::move(children));
  }
  if (key == "is" || key == "not") {
    if (!body.is_array() || body.size() != 2) {
      Malformed(where + "." + key + " must be [attribute, value]");
    }
    std::string attribute = ExpectString(body[0], where + "." + key + "[0]");
    std::string value = ExpectString(body[1], where + "." + key + "[1]");
    return key == "is" ? Condition::Is(std::move(attribute), std::move(value))
                       : Condition::Not(std::move(attribute), std::move(value));
  }
  Malformed(where + " has unknown operator '" + key + "'");
}

json EncodeCondition(const Condition &condition) {
  switch (condition.op) {
    case Condition::Op::kAll:
    case Condition::Op::kAny: {
      json children = json::array();
      for (const Condition &child : condition.children) {
        children.push_back(EncodeCondition(child));
      }
      return {{condition.op == Condition::Op::kAll ? "all" : "any", children}};
    }
    case Condition::Op::kIs:
      return {{"is", {condition.attribute, condition.value}}};
    case Condition::Op::kNot:
      return {{"not", {condition.attribute, condition.value}}};
  }
  return nullptr;
}

// Attribute name -> value domain, filled in declaration order while checking.
using Domains = std::vector<std::pair<std::string, std::vector<std::string>>>;

const std::vector<std::string> *FindDomain(const Domains &domains,
                                           const std::string &name) {
  for (const auto &[attribute, values] : domains) {
    if (attribute == name) return &values;
  }
  return nullptr;
}

void CheckCondition(const Condition &condition, const Domains &known,
                    const std::string &where) {
  if (condition.op == Condition::Op::kAll || condition.op == Condition::Op::kAny) {
    for (const Condition &child : condition.children) {
      CheckCondition(child, known, where);
    }
    return;
  }
  const auto *values = FindDomain(known, condition.attribute);
  if (values == nullptr) {
    Invalid(where + " refers to attribute '" + condition.attribute +
            "' which is not declared before it");
  }
  if (std::find(values->begin(), values->end(), condition.value) == values->end()) {
    Invalid(where + " refers to value '" + condition.value +
            "' outside the domain of '" + condition.attribute + "'");
  }
}

Domains CheckSpec(const RuleSpec &spec) {
  if (spec.free.empty()) Invalid("at least one free attribute is required");

  Domains domains;
  std::set<std::string> names;
  auto declare = [&](const std::string &name) {
    if (name.empty()) Invalid("attribute names must not be empty");
    if (!names.insert(name).second) Invalid("duplicate attribute '" + name + "'");
  };

  for (const FreeAttribute &attribute : spec.free) {
    declare(attribute.name);
    if (attribute.values.empty()) {
      Invalid("free attribute '" + attribute.name + "' has no values");
    }
    std::set<std::string> seen;
    for (const std::string &value : attribute.values) {
      if (value.empty()) Invalid("attribute '" + attribute.name + "' has an empty value");
      if (!seen.insert(value).second) {
        Invalid("attribute '" + attribute.name + "' repeats value '" + value + "'");
      }
    }
    domains.emplace_back(attribute.name, attribute.values);
  }

  for (const DerivedAttribute &attribute : spec.derived) {
    declare(attribute.name);
    if (attribute.rules.empty()) {
      Invalid("derived attribute '" + attribute.name + "' has no rules");
    }
    std::vector<std::string> values;
    for (std::size_t r = 0; r < attribute.rules.size(); ++r) {
      const Rule &rule = attribute.rules[r];
      CheckCondition(rule.when, domains,
                     "rule " + std::to_string(r) + " of '" + attribute.name + "'");
      if (rule.then.empty()) {
        Invalid("rule " + std::to_string(r) + " of '" + attribute.name +
                "' assigns an empty value");
      }
      if (std::find(values.begin(), values.end(), rule.then) == values.end()) {
        values.push_back(rule.then);
      }
    }
    domains.emplace_back(attribute.name, std::move(values));
  }
  return domains;
}

bool Holds(const Condition &condition, const EntityTable &table,
           const std::vector<std::size_t> &row) {
  switch (condition.op) {
    case Condition::Op::kAll:
      return std::all_of(condition.children.begin(), condition.children.end(),
                         [&](const Condition &c) { return Holds(c, table, row); });
    case Condition::Op::kAny:
      return std::any_of(condition.children.begin(), condition.children.end(),
                         [&](const Condition &c) { return Holds(c, table, row); });
    case Condition::Op::kIs:
    case Condition::Op::kNot: {
      std::size_t a = table.AttributeIndex(condition.attribute);
      bool equal = table.domains[a][row[a]] == condition.value;
      return condition.op == Condition::Op::kIs ? equal : !equal;
    }
  }
  return false;
}

}  // namespace

RuleSpec ParseRuleSpec(std::string_view json_text) {
  json root = json::parse(json_text, nullptr, /*allow_exceptions=*/false);
  if (root.is_discarded()) Malformed("not valid JSON");
  if (!root.is_object()) Malformed("must be a JSON object");

  RuleSpec spec;
  const json &free = ExpectMember(root, "free", "spec");
  if (!free.is_array()) Malformed("\"free\" must be an array");
  for (std::size_t i = 0; i < free.size(); ++i) {
    const std::string where = "free[" + std::to_string(i) + "]";
    FreeAttribute attribute;
    attribute.name = ExpectString(ExpectMember(free[i], "name", where), where + ".name");
    const json &values = ExpectMember(free[i], "values", where);
    if (!values.is_array()) Malformed(where + ".values must be an array");
    for (const json &value : values) {
      attribute.values.push_back(ExpectString(value, where + ".values[]"));
    }
    spec.free.push_back(std::move(attribute));
  }

  if (root.contains("derived")) {
    const json &derived = root["derived"];
    if (!derived.is_array()) Malformed("\"derived\" must be an array");
    for (std::size_t i = 0; i < derived.size(); ++i) {
      const std::string where = "derived[" + std::to_string(i) + "]";
      DerivedAttribute attribute;
      attribute.name =
          ExpectString(ExpectMember(derived[i], "name", where), where + ".name");
      const json &rules = ExpectMember(derived[i], "rules", where);
      if (!rules.is_array()) Malformed(where + ".rules must be an array");
      for (std::size_t r = 0; r < rules.size(); ++r) {
        const std::string rule_where = where + ".rules[" + std::to_string(r) + "]";
        Rule rule;
        rule.when = DecodeCondition(ExpectMember(rules[r], "when", rule_where),
                                    rule_where + ".when");
        rule.then = ExpectString(ExpectMember(rules[r], "then", rule_where),
                                 rule_where + ".then");
        attribute.rules.push_back(std::move(rule));
      }
      spec.derived.push_back(std::move(attribute));
    }
  }

  CheckSpec(spec);
  return spec;
}

json RuleSpecToJson(const RuleSpec &spec) {
  json free = json::array();
  for (const FreeAttribute &attribute : spec.free) {
    free.push_back({{"name", attribute.name}, {"values", attribute.values}});
  }
  json derived = json::array();
  for (const DerivedAttribute &attribute : spec.derived) {
    json rules = json::array();
    for (const Rule &rule : attribute.rules) {
      rules.push_back({{"when", EncodeCondition(rule.when)}, {"then", rule.then}});
    }
    derived.push_back({{"name", attribute.name}, {"rules", std::move(rules)}});
  }
  return {{"free", std::move(free)}, {"derived", std::move(derived)}};
}

std::size_t EntityTable::AttributeIndex(std::string_view name) const {
  for (std::size_t i = 0; i < attributes.size(); ++i) {
    if (attributes[i] == name) return i;
  }
  throw Error(ErrorKind::kInvalidRuleSpec,
              "unknown attribute '" + std::string(name) + "'");
}

std::string EntityTable::EntityName(std::size_t row) const {
  std::string name;
  for (std::size_t a = 0; a < free_count; ++a) {
    if (a > 0) name += '.';
    name += domains[a][rows[row][a]];
  }
  return name;
}

EntityTable EvaluateRules(const RuleSpec &spec) {
  Domains domains = CheckSpec(spec);

  EntityTable table;
  table.free_count = spec.free.size();
  for (auto &[name, values] : domains) {
    table.attributes.push_back(name);
    table.domains.push_back(values);
  }

  std::size_t combinations = 1;
  for (const FreeAttribute &attribute : spec.free) {
    combinations *= attribute.values.size();
  }

  for (std::size_t index = 0; index < combinations; ++index) {
    std::vector<std::size_t> row(table.attributes.size(), 0);
    // Mixed radix, first free attribute most significant.
    std::size_t rest = index;
    for (std::size_t a = table.free_count; a-- > 0;) {
      row[a] = rest % table.domains[a].size();
      rest /= table.domains[a].size();
    }

    for (std::size_t d = 0; d < spec.derived.size(); ++d) {
      const DerivedAttribute &attribute = spec.derived[d];
      const std::size_t column = table.free_count + d;
      std::set<std::string> assigned;
      for (const Rule &rule : attribute.rules) {
        if (Holds(rule.when, table, row)) assigned.insert(rule.then);
      }

      std::vector<std::string> combination;
      for (std::size_t a = 0; a < table.free_count; ++a) {
        combination.push_back(table.domains[a][row[a]]);
      }
      std::string entity;
      for (const std::string &value : combination) {
        entity += (entity.empty() ? "" : ".") + value;
      }

      if (assigned.empty()) {
        throw RuleError(ErrorKind::kIncompleteRules,
                        "no rule of '" + attribute.name + "' matches entity " + entity,
                        std::move(combination));
      }
      if (assigned.size() > 1) {
        std::string values;
        for (const std::string &v : assigned) values += " " + v;
        throw RuleError(ErrorKind::kContradictoryRules,
                        "rules of '" + attribute.name + "' assign different values to entity " +
                            entity + ":" + values,
                        std::move(combination));
      }
      const auto &domain = table.domains[column];
      row[column] = static_cast<std::size_t>(
          std::find(domain.begin(), domain.end(), *assigned.begin()) - domain.begin());
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

Universe GenerateUniverse(const RuleSpec &spec) {
  EntityTable table = EvaluateRules(spec);
  Universe universe;
  const std::string doc_id(kSynthDocId);

  std::string text;
  auto region = [&](std::size_t start) {
    return Region{doc_id, start, text.size()};
  };

  // Header: one line per attribute, one shared mention per value.
  std::vector<std::vector<Region>> value_regions(table.attributes.size());
  for (std::size_t a = 0; a < table.attributes.size(); ++a) {
    text += table.attributes[a] + ":";
    for (const std::string &value : table.domains[a]) {
      text += ' ';
      std::size_t start = text.size();
      text += value;
      value_regions[a].push_back(region(start));
      universe.value_regions.emplace(std::make_pair(table.attributes[a], value),
                                     value_regions[a].back());
    }
    text += '\n';
  }

  // Entity lines; each entity region runs from offset 0 through its line.
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    std::string name = table.EntityName(r);
    text += name;
    for (std::size_t a = 0; a < table.attributes.size(); ++a) {
      text += " " + table.attributes[a] + "=" + table.domains[a][table.rows[r][a]];
    }
    universe.entity_names.push_back(std::move(name));
    universe.entity_regions.push_back(region(0));
    text += '\n';
  }

  AnnotationSet &set = universe.dataset;
  set.documents.push_back({doc_id, std::move(text)});
  for (const std::string &attribute : table.attributes) {
    set.labels.push_back({attribute, Direction::kBackward});
  }
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    for (std::size_t a = 0; a < table.attributes.size(); ++a) {
      set.annotations.push_back({table.attributes[a],
                                 value_regions[a][table.rows[r][a]],
                                 universe.entity_regions[r]});
    }
  }
  set = Canonicalize(std::move(set));
  return universe;
}

std::size_t BruteForceIntersectionCount(
    std::span<const std::set<std::size_t>> p,
    std::span<const std::set<std::size_t>> q) {
  std::size_t count = 0;
  for (const auto &a : p) {
    for (const auto &b : q) {
      bool subset = true;
      for (std::size_t x : a) {
        if (b.count(x) == 0) {
          subset = false;
          break;
        }
      }
      if (subset) {
        ++count;
        break;
      }
    }
  }
  return count;
}

OracleCounts ComputeOracleCounts(const RuleSpec &spec,
                                 std::span<const std::string> from_attributes,
                                 std::string_view to_attribute) {
  EntityTable table = EvaluateRules(spec);
  if (from_attributes.empty()) {
    throw std::invalid_argument("at least one source attribute required");
  }
  std::vector<std::size_t> from;
  for (const std::string &name : from_attributes) {
    from.push_back(table.AttributeIndex(name));
  }
  const std::size_t to = table.AttributeIndex(to_attribute);

  std::map<std::vector<std::size_t>, std::set<std::size_t>> from_groups;
  std::map<std::size_t, std::set<std::size_t>> to_groups;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    std::vector<std::size_t> key;
    for (std::size_t a : from) key.push_back(table.rows[r][a]);
    from_groups[key].insert(r);
    to_groups[table.rows[r][to]].insert(r);
  }

  std::vector<std::set<std::size_t>> p, q;
  for (auto &[key, members] : from_groups) p.push_back(std::move(members));
  for (auto &[key, members] : to_groups) q.push_back(std::move(members));
  return {p.size(), BruteForceIntersectionCount(p, q)};
}

RuleSpec RandomRuleSpec(std::mt19937_64 &rng, const RandomSpecLimits &limits) {
  auto uniform = [&](std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  };

  const std::size_t attributes = uniform(1, std::max<std::size_t>(1, limits.max_attributes));
  const std::size_t free_count = uniform(1, attributes);
  const std::size_t max_values = std::max<std::size_t>(1, limits.max_values);

  RuleSpec spec;
  std::size_t combinations = 1;
  for (std::size_t a = 0; a < free_count; ++a) {
    FreeAttribute attribute{"a" + std::to_string(a), {}};
    std::size_t n = uniform(1, max_values);
    for (std::size_t v = 0; v < n; ++v) attribute.values.push_back("v" + std::to_string(v));
    combinations *= n;
    spec.free.push_back(std::move(attribute));
  }

  for (std::size_t d = free_count; d < attributes; ++d) {
    const std::size_t n = uniform(1, max_values);
    // Random function of the free attributes, one disjunct per combination.
    std::vector<std::vector<Condition>> disjuncts(n);
    std::vector<Condition> conjunctions;
    for (std::size_t index = 0; index < combinations; ++index) {
      std::vector<Condition> atoms;
      std::size_t rest = index;
      std::vector<std::size_t> row(free_count);
      for (std::size_t a = free_count; a-- > 0;) {
        row[a] = rest % spec.free[a].values.size();
        rest /= spec.free[a].values.size();
      }
      for (std::size_t a = 0; a < free_count; ++a) {
        const FreeAttribute &attribute = spec.free[a];
        if (uniform(0, 1) == 0) {
          atoms.push_back(Condition::Is(attribute.name, attribute.values[row[a]]));
        } else {
          // Same constraint spelled as "not any other value".
          std::vector<Condition> others;
          for (std::size_t v = 0; v < attribute.values.size(); ++v) {
            if (v != row[a]) others.push_back(Condition::Not(attribute.name, attribute.values[v]));
          }
          atoms.push_back(Condition::All(std::move(others)));
        }
      }
      disjuncts[uniform(0, n - 1)].push_back(Condition::All(std::move(atoms)));
    }

    DerivedAttribute attribute{"a" + std::to_string(d), {}};
    for (std::size_t v = 0; v < n; ++v) {
      if (disjuncts[v].empty()) continue;
      std::string value = "v" + std::to_string(v);
      // Occasionally repeat one disjunct as its own rule: overlapping rules
      // that agree must be accepted.
      if (uniform(0, 3) == 0) attribute.rules.push_back({disjuncts[v].front(), value});
      attribute.rules.push_back({Condition::Any(std::move(disjuncts[v])), value});
    }
    spec.derived.push_back(std::move(attribute));
  }
  return spec;
}

}  // namespace labelflow
