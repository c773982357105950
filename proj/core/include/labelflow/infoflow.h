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

#ifndef LABELFLOW_INFOFLOW_H_
#define LABELFLOW_INFOFLOW_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "labelflow/graph.h"
#include "labelflow/partition.h"

namespace labelflow {

// Information measures over quotient sets. All logarithms are natural, so
// every entropy is in nats. Terminated information is a loss of +infinity
// with propagation 0.

// ln |classes|. Throws kEmptyUniverse for a partition with no classes.
double Entropy(const Partition &partition);

// ln |universe| - ln |classes|, the information a map destroys.
double EntropyLoss(const Partition &partition);

// exp(-loss), in [0, 1]; 0 for an infinite loss.
double PropagationProbability(double loss);

// ln |C_f ->n C_g|, or -infinity when no class of p_f lies in a class of p_g.
double DependencyEntropy(const Partition &p_f, const Partition &p_g);

// ln |C_f| - ln |C_f ->n C_g|, +infinity when the count is zero.
// exp(-loss) is the share of property f that propagates to property g.
double DependencyLoss(const Partition &p_f, const Partition &p_g);

// (1/n) ln n for n >= 1; nullopt for n == 0.
std::optional<double> RelevancyScore(std::size_t count);

// EntropyLoss of CompositePartition(graph, path, universe).
double CompositeLoss(const LabeledGraph &graph,
                     std::span<const std::string> path,
                     std::span<const Node> universe);

// Loss contributed by each label of the path: the first entry is the loss
// of path[0] over the universe, entry i is ln|C_{i-1}| - ln|C_i| for the
// successive composite quotients. Sums to CompositeLoss().
std::vector<double> StepLosses(const LabeledGraph &graph,
                               std::span<const std::string> path,
                               std::span<const Node> universe);

struct InfoReport {
  std::size_t universe_size = 0;
  std::size_t class_count = 0;
  double entropy = 0;
  double entropy_loss = 0;
  double propagation = 1;
  std::optional<double> relevancy;
  std::size_t excluded_nodes = 0;
};

// Relevancy for a single quotient set uses its class count.
InfoReport MakeInfoReport(const Partition &partition,
                          std::size_t excluded_nodes = 0);

struct DependencyReport {
  std::size_t universe_size = 0;
  std::size_t from_class_count = 0;
  std::size_t to_class_count = 0;
  std::size_t intersection_count = 0;
  double entropy = 0;             // ln |C_f|
  double dependency_entropy = 0;  // ln |C_f ->n C_g|, may be -inf
  double entropy_loss = 0;        // may be +inf
  double propagation = 1;
  std::optional<double> relevancy;
  bool terminated = false;
  std::size_t excluded_nodes = 0;
};

DependencyReport AnalyzeDependency(const Partition &p_f, const Partition &p_g,
                                   std::size_t excluded_nodes = 0);

// Path distance.
//
// A path is a sequence of hops. A map hop follows one edge source -> target.
// Consecutive map hops form a chain and each costs the incremental loss of
// the growing composite, computed on the set the chain carries: the chain
// starts from the whole domain of its first label, and each hop keeps the
// carried elements its label maps. A junction hop X <-f- Z -g-> Y moves
// between two properties of a shared node Z and costs
// DependencyLoss(C_f, C_g) over the common domain of f and g; it ends any
// running chain. Paths never revisit a node.
enum class HopKind { kMap, kJunction };

struct Hop {
  HopKind kind = HopKind::kMap;
  std::string label;          // followed label (g for junctions)
  std::string inverse_label;  // f for junctions, empty for map hops
  Node source;
  Node via;  // Z for junctions, unset for map hops
  Node target;
  double loss = 0;
};

struct PathResult {
  double distance = 0;  // +infinity when unreachable or terminated
  std::vector<Hop> hops;

  bool reachable() const;
};

// Minimum total loss from `from` to `to`. Among equal-cost paths the one
// whose label-name sequence is lexicographically smallest wins. Throws
// kUnknownNode.
PathResult PathDistance(const LabeledGraph &graph, const Node &from,
                        const Node &to);

// Reals are printed with 12 significant digits; +/-infinity become the
// strings "inf" / "-inf".
nlohmann::json RealToJson(double value);

nlohmann::json InfoReportToJson(const InfoReport &report);
nlohmann::json DependencyReportToJson(const DependencyReport &report);
nlohmann::json PathResultToJson(const PathResult &result);

}  // namespace labelflow

#endif  // LABELFLOW_INFOFLOW_H_
