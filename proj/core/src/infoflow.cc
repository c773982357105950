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

#include "labelflow/infoflow.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <map>
#include <set>
#include <utility>

namespace labelflow {

namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

double Log(std::size_t n) { return std::log(static_cast<double>(n)); }

}  // namespace

double Entropy(const Partition &partition) {
  if (partition.class_count() == 0) {
    throw Error(ErrorKind::kEmptyUniverse, "entropy of an empty universe");
  }
  return Log(partition.class_count());
}

double EntropyLoss(const Partition &partition) {
  if (partition.universe_size() == 0) {
    throw Error(ErrorKind::kEmptyUniverse, "entropy loss of an empty universe");
  }
  return Log(partition.universe_size()) - Log(partition.class_count());
}

double PropagationProbability(double loss) {
  if (std::isinf(loss)) return 0.0;
  return std::exp(-loss);
}

double DependencyEntropy(const Partition &p_f, const Partition &p_g) {
  std::size_t count = DirectedIntersectionCount(p_f, p_g);
  return count == 0 ? -kInfinity : Log(count);
}

double DependencyLoss(const Partition &p_f, const Partition &p_g) {
  std::size_t count = DirectedIntersectionCount(p_f, p_g);
  if (count == 0) return kInfinity;
  return Log(p_f.class_count()) - Log(count);
}

std::optional<double> RelevancyScore(std::size_t count) {
  if (count == 0) return std::nullopt;
  return Log(count) / static_cast<double>(count);
}

double CompositeLoss(const LabeledGraph &graph,
                     std::span<const std::string> path,
                     std::span<const Node> universe) {
  return EntropyLoss(CompositePartition(graph, path, universe));
}

std::vector<double> StepLosses(const LabeledGraph &graph,
                               std::span<const std::string> path,
                               std::span<const Node> universe) {
  std::vector<double> losses;
  losses.reserve(path.size());
  double previous = 0;
  for (std::size_t n = 1; n <= path.size(); ++n) {
    Partition prefix = CompositePartition(graph, path.first(n), universe);
    if (n == 1) {
      losses.push_back(EntropyLoss(prefix));
    } else {
      losses.push_back(previous - Log(prefix.class_count()));
    }
    previous = Log(prefix.class_count());
  }
  return losses;
}

InfoReport MakeInfoReport(const Partition &partition,
                          std::size_t excluded_nodes) {
  InfoReport report;
  report.universe_size = partition.universe_size();
  report.class_count = partition.class_count();
  report.entropy = Entropy(partition);
  report.entropy_loss = EntropyLoss(partition);
  report.propagation = PropagationProbability(report.entropy_loss);
  report.relevancy = RelevancyScore(report.class_count);
  report.excluded_nodes = excluded_nodes;
  return report;
}

DependencyReport AnalyzeDependency(const Partition &p_f, const Partition &p_g,
                                   std::size_t excluded_nodes) {
  DependencyReport report;
  report.universe_size = p_f.universe_size();
  report.from_class_count = p_f.class_count();
  report.to_class_count = p_g.class_count();
  report.intersection_count = DirectedIntersectionCount(p_f, p_g);
  report.entropy = Entropy(p_f);
  report.dependency_entropy = DependencyEntropy(p_f, p_g);
  report.entropy_loss = DependencyLoss(p_f, p_g);
  report.propagation = PropagationProbability(report.entropy_loss);
  report.relevancy = RelevancyScore(report.intersection_count);
  report.terminated = report.intersection_count == 0;
  report.excluded_nodes = excluded_nodes;
  return report;
}

bool PathResult::reachable() const { return std::isfinite(distance); }

namespace {

// Depth-first enumeration of simple paths with cost pruning. Losses are
// non-negative, so a prefix that already costs more than the best complete
// path cannot win.
class PathSearch {
 public:
  PathSearch(const LabeledGraph &graph, const Node &to)
      : graph_(graph), to_(to) {}

  PathResult Run(const Node &from) {
    on_path_.insert(from);
    Visit(from, nullptr, 0.0);
    PathResult result;
    result.distance = best_cost_;
    result.hops = best_hops_;
    return result;
  }

 private:
  void Visit(const Node &node, const std::vector<Node> *carried, double cost) {
    if (node == to_) {
      if (cost < best_cost_ || (cost == best_cost_ && names_ < best_names_)) {
        best_cost_ = cost;
        best_hops_ = hops_;
        best_names_ = names_;
      }
      return;
    }
    if (cost > best_cost_) return;

    for (const MapEdge &edge : graph_.OutEdges(node)) {
      if (on_path_.count(edge.target) > 0) continue;
      auto [loss, next] = ChainStep(edge.label, carried);
      Push({HopKind::kMap, edge.label, "", node, Node{}, edge.target, loss},
           {edge.label}, {edge.target});
      Visit(edge.target, &next, cost + loss);
      Pop({edge.target});
    }

    for (const MapEdge &in : graph_.InEdges(node)) {
      const Node &via = in.source;
      if (on_path_.count(via) > 0) continue;
      for (const MapEdge &out : graph_.OutEdges(via)) {
        if (out.label == in.label || on_path_.count(out.target) > 0) continue;
        double loss = JunctionLoss(in.label, out.label);
        if (std::isinf(loss)) continue;
        Push({HopKind::kJunction, out.label, in.label, node, via, out.target, loss},
             {in.label, out.label}, {via, out.target});
        Visit(out.target, nullptr, cost + loss);
        Pop({via, out.target});
      }
    }
  }

  // Loss of following `label` with the chain carrying `carried` (the whole
  // domain when no chain is running), and the set carried afterwards.
  std::pair<double, std::vector<Node>> ChainStep(const std::string &label,
                                                 const std::vector<Node> *carried) {
    const std::vector<Node> &domain = DomainOf(label);
    std::vector<Node> mapped;
    if (carried == nullptr) {
      mapped = domain;
    } else {
      std::set_intersection(carried->begin(), carried->end(), domain.begin(),
                            domain.end(), std::back_inserter(mapped));
    }
    std::vector<Node> image;
    image.reserve(mapped.size());
    for (const Node &x : mapped) image.push_back(*graph_.Target(label, x));
    image = MakeUniverse(std::move(image));
    return {Log(mapped.size()) - Log(image.size()), std::move(image)};
  }

  const std::vector<Node> &DomainOf(const std::string &label) {
    auto it = domains_.find(label);
    if (it == domains_.end()) {
      it = domains_.emplace(label, graph_.Domain(label)).first;
    }
    return it->second;
  }

  double JunctionLoss(const std::string &f, const std::string &g) {
    auto key = std::make_pair(f, g);
    auto it = junctions_.find(key);
    if (it != junctions_.end()) return it->second;
    const std::string labels[] = {f, g};
    CommonDomain common = CommonDomainOf(graph_, labels);
    double loss = DependencyLoss(Fibers(graph_, f, common.universe),
                                 Fibers(graph_, g, common.universe));
    junctions_.emplace(key, loss);
    return loss;
  }

  void Push(Hop hop, std::initializer_list<std::string> names,
            std::initializer_list<Node> visited) {
    hops_.push_back(std::move(hop));
    names_.insert(names_.end(), names.begin(), names.end());
    for (const Node &node : visited) on_path_.insert(node);
  }

  void Pop(std::initializer_list<Node> visited) {
    names_.resize(names_.size() - (hops_.back().kind == HopKind::kMap ? 1 : 2));
    hops_.pop_back();
    for (const Node &node : visited) on_path_.erase(node);
  }

  const LabeledGraph &graph_;
  const Node &to_;

  std::map<std::string, std::vector<Node>> domains_;
  std::map<std::pair<std::string, std::string>, double> junctions_;

  std::vector<Hop> hops_;
  std::vector<std::string> names_;
  std::set<Node> on_path_;

  double best_cost_ = kInfinity;
  std::vector<Hop> best_hops_;
  std::vector<std::string> best_names_;
};

}  // namespace

PathResult PathDistance(const LabeledGraph &graph, const Node &from,
                        const Node &to) {
  for (const Node *node : {&from, &to}) {
    if (!graph.HasNode(*node)) {
      throw Error(ErrorKind::kUnknownNode,
                  "node " + NodeKey(*node) + " is not in the graph");
    }
  }
  if (from == to) return PathResult{};
  return PathSearch(graph, to).Run(from);
}

nlohmann::json RealToJson(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (std::isnan(value)) return "nan";
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.12g", value);
  double rounded = std::strtod(buffer, nullptr);
  return rounded == 0.0 ? 0.0 : rounded;
}

namespace {

nlohmann::json RelevancyToJson(const std::optional<double> &relevancy) {
  return relevancy ? RealToJson(*relevancy) : nlohmann::json("undefined");
}

}  // namespace

nlohmann::json InfoReportToJson(const InfoReport &report) {
  return {{"universe_size", report.universe_size},
          {"class_count", report.class_count},
          {"entropy_nats", RealToJson(report.entropy)},
          {"entropy_loss_nats", RealToJson(report.entropy_loss)},
          {"propagation", RealToJson(report.propagation)},
          {"relevancy_nats", RelevancyToJson(report.relevancy)},
          {"excluded_nodes", report.excluded_nodes}};
}

nlohmann::json DependencyReportToJson(const DependencyReport &report) {
  return {{"universe_size", report.universe_size},
          {"class_count", report.from_class_count},
          {"to_class_count", report.to_class_count},
          {"intersection_count", report.intersection_count},
          {"entropy_nats", RealToJson(report.entropy)},
          {"dependency_entropy_nats", RealToJson(report.dependency_entropy)},
          {"entropy_loss_nats", RealToJson(report.entropy_loss)},
          {"propagation", RealToJson(report.propagation)},
          {"relevancy_nats", RelevancyToJson(report.relevancy)},
          {"information_terminated", report.terminated},
          {"excluded_nodes", report.excluded_nodes}};
}

nlohmann::json PathResultToJson(const PathResult &result) {
  nlohmann::json path = nlohmann::json::array();
  for (const Hop &hop : result.hops) {
    nlohmann::json entry = {{"kind", hop.kind == HopKind::kMap ? "map" : "junction"},
                            {"label", hop.label},
                            {"source", NodeKey(hop.source)},
                            {"target", NodeKey(hop.target)},
                            {"loss_nats", RealToJson(hop.loss)}};
    if (hop.kind == HopKind::kJunction) {
      entry["inverse_label"] = hop.inverse_label;
      entry["via"] = NodeKey(hop.via);
    }
    path.push_back(std::move(entry));
  }
  return {{"distance_nats", RealToJson(result.distance)},
          {"reachable", result.reachable()},
          {"path", std::move(path)}};
}

}  // namespace labelflow
