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

#ifndef TWOMATCH_FLAWED_HPP
#define TWOMATCH_FLAWED_HPP

// Layered-graph path separation as published before the corrected method.
// It walks a product of G with a path, so a "path" may revisit vertices and
// report a negative weight for an allocation that is in the core. Kept for
// reproducing that failure, not for deciding membership.

#include <optional>
#include <string>
#include <vector>

#include "twomatch/model.hpp"

namespace twomatch {

/// Node of the layered graph: layer 0 holds only i0, layer k only j0, and
/// layers 1..k-1 each hold a copy of N2.
struct LayerNode {
  int layer = 0;
  VertexId vertex = 0;
  friend bool operator==(const LayerNode&, const LayerNode&) = default;
};

struct LayeredArc {
  LayerNode from;
  LayerNode to;
  EdgeId edge = 0;
  Rational weight;
};

struct LayeredGraph {
  VertexId i0 = 0;
  VertexId j0 = 0;
  int k = 1;
  std::vector<VertexId> middle;  // N2 in id order, copied per inner layer
  std::vector<LayeredArc> arcs;  // sorted by layer, then tail, then head
};

struct LayeredPath {
  VertexId i0 = 0;
  VertexId j0 = 0;
  int k = 0;
  std::vector<VertexId> vertices;  // k + 1 entries, may repeat
  Rational weight;
};

/// Throws std::invalid_argument for i0 == j0 or k outside [1, n-1].
LayeredGraph build_layered(const Instance& inst, const Allocation& p,
                           VertexId i0, VertexId j0, int k);

/// Layer-by-layer dynamic program; ties keep the smallest predecessor.
std::optional<LayeredPath> shortest_layered_path(const LayeredGraph& g);

/// Scans i0 < j0, then k = 1..n-1, and returns the first strictly negative
/// shortest layered path.
std::optional<LayeredPath> flawed_separate_paths(const Instance& inst,
                                                 const Allocation& p);

/// The five-vertex counterexample: s, t, u, v, w = ids 0..4, b = (1,1,2,2,1),
/// edges su, tu, uv, vw with weights 1, 1, 10, 1.
Instance counterexample_instance();
/// p = (0, 0, 2, 10, 0), which lies in the core.
Allocation counterexample_allocation();
/// Display names for the counterexample vertices.
std::string counterexample_name(VertexId v);

/// Runs corrected separation, the brute-force oracle and the layered method
/// on the counterexample and renders the comparison.
std::string demo_counterexample();

/// Same comparison for arbitrary input; vertex names are the ids.
std::string flawed_report(const Instance& inst, const Allocation& p);

}  // namespace twomatch

#endif  // TWOMATCH_FLAWED_HPP
