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

#ifndef TWOMATCH_EXTFORM_HPP
#define TWOMATCH_EXTFORM_HPP

#include <optional>
#include <string>
#include <vector>

#include "twomatch/lp.hpp"
#include "twomatch/model.hpp"
#include "twomatch/negcycle.hpp"

namespace twomatch {

struct FamilyMember {
  std::string label;
  CostedGraph graph;  // zero costs
  std::optional<VertexId> s;
  std::optional<VertexId> t;
};

/// The graphs whose cycle cones make up the core: G2 first, then the
/// path variants of every pair {s,t} in lexicographic order. Variants in
/// which s or t touches nothing but the marker edge are left out; every
/// cycle of such a graph already lies in G2.
struct GraphFamily {
  std::vector<FamilyMember> members;
};

GraphFamily enumerate_family(const Instance& inst);

/// Flow model of { x : x >= 0, x_e <= x(B \ e) for every cut B }: for each
/// edge uv a block routing x_uv from u to v through the other edges with
/// capacities x. Minimizes g.cost . x; the optimum is 0 iff g has no
/// negative cycle and unbounded otherwise.
ConstraintSystem build_flow_primal(const CostedGraph& g);

/// LP dual of build_flow_primal: feasible iff g has no negative cycle.
/// One block of potentials and capacity multipliers per edge.
ConstraintSystem build_dual_system(const CostedGraph& g);

/// Variables p0..p(n-1) (free) come first; then rows p(N) = nu(N),
/// p_i >= 0 and p_u + p_v >= w_e; then one block per family member
/// whose dual system has costs (p_u + p_v)/2 - w_e written with p on the
/// left-hand side. The projection onto p is the core.
ConstraintSystem build_extended_formulation(const Instance& inst);

struct MembershipResult {
  bool in_core = false;
  std::string failed;  // failing base row or block label
};

/// Substitutes p into the extended formulation and decides feasibility of
/// every block by exact simplex. `jobs` > 1 solves blocks in parallel;
/// the answer and the reported label match the serial run.
MembershipResult check_membership(const Instance& inst, const Allocation& p,
                                  int jobs = 1);

struct MemberSize {
  std::string label;
  int vertices = 0;
  int edges = 0;
  long long gamma = 0;   // |E'| * |N'|
  long long lambda = 0;  // 2 |E'| (|E'| - 1)
  long long rows = 0;    // 2 |E'| (|E'| - 1) + |E'|
};

struct SizeReport {
  int n = 0;
  int m = 0;
  long long family_size = 0;
  long long family_bound = 0;  // 1 + sum over pairs of (d_s - 1)(d_t - 1)
  std::vector<MemberSize> members;
  long long variables = 0;
  long long constraints = 0;
  long long nonnegative_variables = 0;
  long long family_envelope = 0;      // n^4
  long long variable_envelope = 0;    // n + n^4 ((m+1) n + 2 (m+1) m)
  long long constraint_envelope = 0;  // 1 + n + m + n^4 (2 (m+1) m + m + 1)
};

SizeReport size_report(const Instance& inst);
std::string format_size_report(const SizeReport& r);

}  // namespace twomatch

#endif  // TWOMATCH_EXTFORM_HPP
