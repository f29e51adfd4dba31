// Copyright 2026 The twomatch Authors
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

#ifndef TWOMATCH_NEGCYCLE_HPP
#define TWOMATCH_NEGCYCLE_HPP

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "twomatch/model.hpp"

namespace twomatch {

inline constexpr EdgeId kMarkerEdge = -1;

/// Undirected simple graph with signed edge costs. Vertices are local
/// indices; `labels` maps them back to instance vertices. Each edge also
/// remembers its instance weight w and the instance edge it came from
/// (kMarkerEdge for the added s-t edge of a path variant).
struct CostedGraph {
  std::vector<VertexId> labels;
  std::vector<Edge> edges;
  std::vector<Rational> cost;
  std::vector<Rational> weight;
  std::vector<EdgeId> origin;

  int n() const { return static_cast<int>(labels.size()); }
  int m() const { return static_cast<int>(edges.size()); }
  std::optional<int> marker() const;

  /// Plain graph with the given costs; labels are 0..n-1, weights zero.
  static CostedGraph from_costs(int n, std::vector<Edge> edges,
                                std::vector<Rational> cost);
};

/// A simple cycle in local indices; vertices[i] and vertices[i+1] (cyclic)
/// are joined by edges[i].
struct Cycle {
  std::vector<VertexId> vertices;
  std::vector<EdgeId> edges;
  Rational cost;
};

class TJoinError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Minimum-cost T-join for nonnegative costs: shortest paths between
/// T-vertices, a minimum perfect matching on the metric closure, and the
/// symmetric difference of the matched paths. Returns sorted edge ids.
/// Throws TJoinError for odd |T| or when T cannot be paired up.
std::vector<EdgeId> min_t_join(const CostedGraph& g,
                               std::span<const Rational> cost,
                               std::span<const VertexId> t);

struct ZeroJoin {
  std::vector<EdgeId> edges;  // sorted
  Rational cost;              // always <= 0
};

/// Minimum-cost even-degree edge set with respect to g.cost.
ZeroJoin min_zero_join(const CostedGraph& g);

/// Splits an even-degree edge set into edge-disjoint simple cycles.
std::vector<Cycle> decompose_even_subgraph(const CostedGraph& g,
                                           std::span<const EdgeId> join);

/// Some simple cycle of negative cost, or nullopt if none exists.
std::optional<Cycle> find_negative_cycle(const CostedGraph& g);

}  // namespace twomatch

#endif  // TWOMATCH_NEGCYCLE_HPP
