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

#include "commands.h"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "labelflow/dataset.h"
#include "labelflow/graph.h"
#include "labelflow/infoflow.h"
#include "labelflow/partition.h"
#include "labelflow/synth.h"

namespace labelflow::cli {
namespace {

using nlohmann::json;

// Bad arguments, unreadable files, unknown labels or node keys: exit 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Outcome {
  int code = kExitOk;
  json payload;
};

std::string ReadFile(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw UsageError("error reading '" + path + "'");
  return buffer.str();
}

std::vector<std::string> SplitList(const std::string &text) {
  std::vector<std::string> items;
  std::string item;
  std::istringstream stream(text);
  while (std::getline(stream, item, ',')) {
    if (item.empty()) throw UsageError("empty entry in list '" + text + "'");
    items.push_back(item);
  }
  if (items.empty()) throw UsageError("empty label list");
  return items;
}

// A dataset that passed Validate(), with its graph.
struct Loaded {
  AnnotationSet set;
  LabeledGraph graph;
};

Loaded LoadDataset(const std::string &path) {
  Loaded loaded;
  loaded.set = DecodeDataset(ReadFile(path));
  loaded.graph = BuildGraph(loaded.set);
  return loaded;
}

void RequireLabels(const LabeledGraph &graph, const std::vector<std::string> &labels) {
  for (const std::string &label : labels) {
    if (graph.FindLabel(label) == nullptr) {
      throw UsageError("unknown label '" + label + "'");
    }
  }
}

Node RequireNode(const LabeledGraph &graph, const std::string &key) {
  auto node = ParseNodeKey(key);
  if (!node) throw UsageError("malformed node key '" + key + "' (want doc:start-end)");
  if (!graph.HasNode(*node)) throw UsageError("unknown node '" + key + "'");
  return *node;
}

// Surface text of a region, clipped for display without splitting a UTF-8
// sequence.
std::string Surface(const AnnotationSet &set, const Region &region,
                    std::size_t limit = 0) {
  for (const Document &doc : set.documents) {
    if (doc.id != region.doc_id) continue;
    std::string text = doc.text.substr(region.start, region.length());
    if (limit == 0 || text.size() <= limit) return text;
    std::size_t cut = limit;
    while (cut > 0 && (static_cast<unsigned char>(text[cut]) & 0xC0) == 0x80) --cut;
    return text.substr(0, cut) + "...";
  }
  return "";
}

std::string DotQuote(const std::string &text) {
  std::string out = "\"";
  for (char c : text) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': break;
      default: out += c;
    }
  }
  return out + "\"";
}

Outcome Validate(const std::string &path) {
  std::vector<Finding> findings;
  try {
    findings = labelflow::Validate(DecodeDataset(ReadFile(path)));
  } catch (const Error &e) {
    if (e.kind() != ErrorKind::kMalformedInput) throw;
    findings.push_back({ErrorKind::kMalformedInput, std::nullopt, {}, e.what()});
  }
  json payload = json::array();
  for (const Finding &finding : findings) payload.push_back(FindingToJson(finding));
  return {findings.empty() ? kExitOk : kExitValidation, std::move(payload)};
}

Outcome Graph(const std::string &path, const std::string &format,
              std::ostream &out) {
  Loaded loaded = LoadDataset(path);
  const LabeledGraph &graph = loaded.graph;

  if (format == "dot") {
    out << "digraph labelflow {\n";
    for (const Node &node : graph.nodes()) {
      out << "  " << DotQuote(NodeKey(node))
          << " [label=" << DotQuote(Surface(loaded.set, node, 40)) << "];\n";
    }
    for (const MapEdge &edge : graph.edges()) {
      const LabelDecl *decl = graph.FindLabel(edge.label);
      out << "  " << DotQuote(NodeKey(edge.source)) << " -> "
          << DotQuote(NodeKey(edge.target)) << " [label="
          << DotQuote(edge.label + " (" + std::string(DirectionName(decl->direction)) + ")")
          << "];\n";
    }
    out << "}\n";
    return {kExitOk, nullptr};
  }

  json nodes = json::array();
  for (const Node &node : graph.nodes()) {
    nodes.push_back({{"key", NodeKey(node)},
                     {"doc", node.doc_id},
                     {"start", node.start},
                     {"end", node.end},
                     {"text", Surface(loaded.set, node)}});
  }
  json edges = json::array();
  for (const MapEdge &edge : graph.edges()) {
    edges.push_back({{"label", edge.label},
                     {"direction",
                      std::string(DirectionName(graph.FindLabel(edge.label)->direction))},
                     {"source", NodeKey(edge.source)},
                     {"target", NodeKey(edge.target)}});
  }
  return {kExitOk, {{"nodes", std::move(nodes)}, {"edges", std::move(edges)}}};
}

Outcome Entropy(const std::string &path, const std::string &label,
                const std::string &path_list) {
  Loaded loaded = LoadDataset(path);
  std::vector<std::string> labels =
      path_list.empty() ? std::vector<std::string>{label} : SplitList(path_list);
  RequireLabels(loaded.graph, labels);

  CommonDomain domain = CompositeDomainOf(loaded.graph, labels);
  Partition partition = CompositePartition(loaded.graph, labels, domain.universe);
  json payload = InfoReportToJson(MakeInfoReport(partition, domain.excluded));
  payload["query"] = path_list.empty() ? json{{"label", label}}
                                       : json{{"path", labels}};
  payload["partition"] = PartitionToJson(partition);
  return {kExitOk, std::move(payload)};
}

Outcome Depend(const std::string &path, const std::string &from_list,
               const std::string &to) {
  Loaded loaded = LoadDataset(path);
  std::vector<std::string> from = SplitList(from_list);
  RequireLabels(loaded.graph, from);
  RequireLabels(loaded.graph, {to});

  std::vector<std::string> all = from;
  all.push_back(to);
  CommonDomain domain = CommonDomainOf(loaded.graph, all);

  std::vector<Partition> from_partitions;
  for (const std::string &label : from) {
    from_partitions.push_back(Fibers(loaded.graph, label, domain.universe));
  }
  Partition p_from = Meet(from_partitions);
  Partition p_to = Fibers(loaded.graph, to, domain.universe);

  json payload = DependencyReportToJson(AnalyzeDependency(p_from, p_to, domain.excluded));
  payload["query"] = {{"from", from}, {"to", to}};
  return {kExitOk, std::move(payload)};
}

Outcome Distance(const std::string &path, const std::string &from,
                 const std::string &to) {
  Loaded loaded = LoadDataset(path);
  Node source = RequireNode(loaded.graph, from);
  Node target = RequireNode(loaded.graph, to);
  json payload = PathResultToJson(PathDistance(loaded.graph, source, target));
  payload["query"] = {{"from", from}, {"to", to}};
  return {kExitOk, std::move(payload)};
}

Outcome Synth(const std::string &spec_path, const std::string &out_path) {
  RuleSpec spec = ParseRuleSpec(ReadFile(spec_path));
  Universe universe = GenerateUniverse(spec);

  std::ofstream file(out_path, std::ios::binary | std::ios::trunc);
  if (!file) throw UsageError("cannot write '" + out_path + "'");
  file << SerializeDataset(universe.dataset);
  file.close();
  if (!file) throw UsageError("error writing '" + out_path + "'");

  json labels = json::array();
  for (const LabelDecl &label : universe.dataset.labels) labels.push_back(label.name);
  return {kExitOk,
          {{"out", out_path},
           {"entities", universe.entity_names},
           {"labels", std::move(labels)},
           {"annotations", universe.dataset.annotations.size()}}};
}

json ErrorPayload(const Error &e) {
  return {{"error", std::string(ErrorKindName(e.kind()))}, {"message", e.what()}};
}

}  // namespace

int RunCli(std::span<const std::string> args, std::ostream &out,
           std::ostream &err) {
  CLI::App app{"Information flow analysis over standoff text labels", "labelflow"};
  app.require_subcommand(1);

  std::string dataset, format = "json", label, path_list, from, to, spec, out_path;

  auto *validate = app.add_subcommand("validate", "Check a dataset; print findings");
  validate->add_option("dataset", dataset, "Dataset JSON file")->required();

  auto *graph = app.add_subcommand("graph", "Export the induced map graph");
  graph->add_option("dataset", dataset, "Dataset JSON file")->required();
  graph->add_option("--format", format, "json or dot")
      ->check(CLI::IsMember({"json", "dot"}));

  auto *entropy = app.add_subcommand("entropy", "Entropy report for a label or path");
  entropy->add_option("dataset", dataset, "Dataset JSON file")->required();
  auto *label_opt = entropy->add_option("--label", label, "Single label");
  auto *path_opt = entropy->add_option("--path", path_list, "Comma-separated label path");
  label_opt->excludes(path_opt);
  path_opt->excludes(label_opt);

  auto *depend = app.add_subcommand("depend", "Dependency of one property on others");
  depend->add_option("dataset", dataset, "Dataset JSON file")->required();
  depend->add_option("--from", from, "Comma-separated source labels")->required();
  depend->add_option("--to", to, "Target label")->required();

  auto *distance = app.add_subcommand("distance", "Information distance between nodes");
  distance->add_option("dataset", dataset, "Dataset JSON file")->required();
  distance->add_option("--from", from, "Node key doc:start-end")->required();
  distance->add_option("--to", to, "Node key doc:start-end")->required();

  auto *synth = app.add_subcommand("synth", "Generate a dataset from a rule spec");
  synth->add_option("rulespec", spec, "Rule spec JSON file")->required();
  synth->add_option("--out", out_path, "Dataset file to write")->required();

  std::vector<const char *> argv;
  for (const std::string &arg : args) argv.push_back(arg.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
    if (entropy->parsed() && label.empty() && path_list.empty()) {
      throw CLI::RequiredError("--label or --path");
    }
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  Outcome outcome;
  try {
    if (validate->parsed()) {
      outcome = Validate(dataset);
    } else if (graph->parsed()) {
      outcome = Graph(dataset, format, out);
    } else if (entropy->parsed()) {
      outcome = Entropy(dataset, label, path_list);
    } else if (depend->parsed()) {
      outcome = Depend(dataset, from, to);
    } else if (distance->parsed()) {
      outcome = Distance(dataset, from, to);
    } else {
      outcome = Synth(spec, out_path);
    }
  } catch (const UsageError &e) {
    err << "labelflow: " << e.what() << "\n";
    outcome = {kExitUsage, {{"error", "Usage"}, {"message", e.what()}}};
  } catch (const DatasetError &e) {
    err << "labelflow: " << e.what() << "\n";
    json findings = json::array();
    for (const Finding &finding : e.findings()) findings.push_back(FindingToJson(finding));
    outcome = {kExitValidation, ErrorPayload(e)};
    outcome.payload["findings"] = std::move(findings);
  } catch (const DomainGapError &e) {
    err << "labelflow: " << e.what() << "\n";
    json nodes = json::array();
    for (const Node &node : e.nodes()) nodes.push_back(NodeKey(node));
    outcome = {kExitValidation, ErrorPayload(e)};
    outcome.payload["step"] = e.step();
    outcome.payload["label"] = e.label();
    outcome.payload["nodes"] = std::move(nodes);
  } catch (const RuleError &e) {
    err << "labelflow: " << e.what() << "\n";
    outcome = {kExitValidation, ErrorPayload(e)};
    outcome.payload["combination"] = e.combination();
  } catch (const Error &e) {
    err << "labelflow: " << e.what() << "\n";
    outcome = {kExitValidation, ErrorPayload(e)};
  } catch (const std::exception &e) {
    err << "labelflow: internal error: " << e.what() << "\n";
    return kExitInternal;
  }

  if (!outcome.payload.is_null()) out << outcome.payload.dump(2) << "\n";
  return outcome.code;
}

}  // namespace labelflow::cli
