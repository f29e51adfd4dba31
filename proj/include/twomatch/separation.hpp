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

#ifndef TWOMATCH_SEPARATION_HPP
#define TWOMATCH_SEPARATION_HPP

#include <optional>
#include <vector>

#include "twomatch/model.hpp"
#include "twomatch/negcycle.hpp"

namespace twomatch {

/// One member of the path-separation family for the endpoint pair {s,t}:
/// the graph induced by N2 + {s,t}, with a zero-weight marker edge st
/// (replacing a real st edge if present). A capacity-1 endpoint keeps only
/// st and one other incident edge (`kept_s` / `kept_t`, instance ids).
struct VariantGraph {
  CostedGraph graph;
  VertexId s = 0;
  VertexId t = 0;
  std::optional<EdgeId> kept_s;
  std::optional<EdgeId> kept_t;
};

struct SeparationVerdict {
  std::optional<Violation> violation;
  bool in_core() const { return !violation.has_value(); }
};

struct SeparationOptions {
  /// Worker threads for the path kernel; 1 runs the serial reference.
  int jobs = 1;
};

std::optional<Violation> check_total_value(const Instance& inst,
                                           const Allocation& p);
std::optional<Violation> separate_vertices_edges(const Instance& inst,
                                                 const Allocation& p);

/// c_e = (p_u + p_v)/2 - w_e for every edge of g (labels index p).
void assign_costs(CostedGraph& g, const Allocation& p);

/// G2 = G[N2] with transferred costs. With p == nullptr costs stay zero.
CostedGraph build_g2(const Instance& inst, const Allocation* p);

/// Variant family for the unordered pair {s, t}; costs are assigned when
/// p is given. Throws std::invalid_argument when s == t.
std::vector<VariantGraph> variants(const Instance& inst, const Allocation* p,
                                   VertexId s, VertexId t);

std::optional<Violation> separate_cycles(const Instance& inst,
                                         const Allocation& p);

/// Assumes vertex, edge and cycle constraints already hold. The parallel
/// kernel returns exactly what the serial reference returns.
std::optional<Violation> separate_paths(const Instance& inst,
                                        const Allocation& p,
                                        const SeparationOptions& opts = {});
std::optional<Violation> separate_paths_serial(const Instance& inst,
                                               const Allocation& p);

SeparationVerdict separate(const Instance& inst, const Allocation& p,
                           const SeparationOptions& opts = {});

/// Every violated family member: total value, each vertex, each edge, the
/// most violated cycle found in G2 and one path per violated variant.
std::vector<Violation> separate_all(const Instance& inst, const Allocation& p);

/// Turns a negative cycle of a variant (or of G2) into a certificate.
Violation certificate_from_cycle(const CostedGraph& g, const Cycle& c,
                                 const Allocation& p);

}  // namespace twomatch

#endif  // TWOMATCH_SEPARATION_HPP
