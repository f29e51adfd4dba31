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

#include "twomatch/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>

namespace twomatch {

namespace {

// Visits every edge subset of `edges` (ids into inst) whose degrees stay
// within capacity, reporting (vertex mask covered, weight).
void for_each_b_matching(
    const Instance& inst, const std::vector<EdgeId>& edges,
    const std::function<void(std::uint64_t, const Rational&)>& visit) {
  std::vector<int> degree(static_cast<size_t>(inst.n()), 0);
  Rational weight;
  std::uint64_t covered = 0;
  std::function<void(size_t)> rec = [&](size_t i) {
    if (i == edges.size()) {
      visit(covered, weight);
      return;
    }
    rec(i + 1);
    const EdgeId e = edges[i];
    const auto [u, v] = inst.edge(e);
    if (degree[u] < inst.capacity(u) && degree[v] < inst.capacity(v)) {
      ++degree[u];
      ++degree[v];
      const std::uint64_t saved = covered;
      covered |= (std::uint64_t{1} << u) | (std::uint64_t{1} << v);
      weight += inst.weight(e);
      rec(i + 1);
      weight -= inst.weight(e);
      covered = saved;
      --degree[u];
      --degree[v];
    }
  };
  rec(0);
}

Violation make_violation(ViolationKind kind, std::vector<VertexId> members,
                         Rational allocated, Rational bound,
                         std::vector<EdgeId> witness) {
  return Violation{kind, Coalition(std::move(members)), std::move(allocated),
                   std::move(bound), std::move(witness)};
}

}  // namespace

Rational nu_bruteforce(const Instance& inst, const Coalition& s) {
  std::vector<EdgeId> edges;
  for (EdgeId e = 0; e < inst.m(); ++e) {
    if (s.contains(inst.edge(e).u) && s.contains(inst.edge(e).v)) {
      edges.push_back(e);
    }
  }
  if (static_cast<int>(edges.size()) > kOracleMaxEdges) {
    throw SizeGuardError("nu_bruteforce: more than 25 edges in G[S]");
  }
  Rational best;
  for_each_b_matching(inst, edges, [&](std::uint64_t, const Rational& w) {
    if (w > best) best = w;
  });
  return best;
}

std::vector<Rational> nu_table_bruteforce(const Instance& inst) {
  if (inst.n() > kOracleMaxVertices) {
    throw SizeGuardError("brute-force core check limited to 12 vertices");
  }
  const std::uint64_t full = (std::uint64_t{1} << inst.n());
  std::vector<Rational> table(full);
  std::vector<EdgeId> all(static_cast<size_t>(inst.m()));
  for (EdgeId e = 0; e < inst.m(); ++e) all[e] = e;
  for_each_b_matching(inst, all, [&](std::uint64_t mask, const Rational& w) {
    if (w > table[mask]) table[mask] = w;
  });
  // nu(S) = best over matchings covering a subset of S.
  for (int i = 0; i < inst.n(); ++i) {
    const std::uint64_t bit = std::uint64_t{1} << i;
    for (std::uint64_t s = 0; s < full; ++s) {
      if ((s & bit) && table[s ^ bit] > table[s]) table[s] = table[s ^ bit];
    }
  }
  return table;
}

std::optional<Violation> core_check_bruteforce(const Instance& inst,
                                               const Allocation& p) {
  const auto table = nu_table_bruteforce(inst);
  const std::uint64_t full = (std::uint64_t{1} << inst.n()) - 1;
  const Rational total = p.total();
  if (total != table[full]) {
    return Violation{ViolationKind::TotalValue, Coalition::grand(inst.n()),
                     total, table[full], {}};
  }
  std::optional<Violation> best;
  Rational best_gap;
  for (std::uint64_t mask = 1; mask < full; ++mask) {
    const Coalition s = Coalition::from_mask(mask);
    Rational allocated = p.sum(s);
    Rational gap = table[mask] - allocated;
    if (gap.sign() <= 0) continue;
    if (!best || gap > best_gap || (gap == best_gap && s < best->coalition)) {
      best_gap = std::move(gap);
      best = Violation{ViolationKind::Coalition, s, std::move(allocated),
                       table[mask], {}};
    }
  }
  return best;
}

ConstraintFamily enumerate_constraints(const Instance& inst) {
  if (inst.n() > kOracleMaxVertices) {
    throw SizeGuardError("constraint enumeration limited to 12 vertices");
  }
  ConstraintFamily family;
  const int n = inst.n();
  std::vector<char> on_path(static_cast<size_t>(n), 0);
  std::vector<VertexId> verts;
  std::vector<EdgeId> edges;

  // Paths: record each when its first vertex is smaller than its last.
  std::function<void()> extend_path = [&]() {
    const VertexId end = verts.back();
    if (verts.size() > 1 && inst.capacity(end) != 2) return;
    for (EdgeId e : inst.incident(end)) {
      const VertexId nxt = inst.edge(e).other(end);
      if (on_path[nxt]) continue;
      on_path[nxt] = 1;
      verts.push_back(nxt);
      edges.push_back(e);
      if (verts.front() < nxt) family.paths.push_back({verts, edges});
      extend_path();
      edges.pop_back();
      verts.pop_back();
      on_path[nxt] = 0;
    }
  };
  for (VertexId s = 0; s < n; ++s) {
    verts = {s};
    edges.clear();
    on_path[s] = 1;
    family.paths.push_back({verts, edges});
    extend_path();
    on_path[s] = 0;
  }

  // Cycles over capacity-2 vertices, rooted at their smallest vertex.
  std::function<void(VertexId)> extend_cycle = [&](VertexId root) {
    const VertexId end = verts.back();
    for (EdgeId e : inst.incident(end)) {
      const VertexId nxt = inst.edge(e).other(end);
      if (nxt == root && verts.size() >= 3 && verts[1] < verts.back()) {
        auto cv = verts;
        auto ce = edges;
        ce.push_back(e);
        family.cycles.push_back({std::move(cv), std::move(ce)});
        continue;
      }
      if (nxt <= root || on_path[nxt] || inst.capacity(nxt) != 2) continue;
      on_path[nxt] = 1;
      verts.push_back(nxt);
      edges.push_back(e);
      extend_cycle(root);
      edges.pop_back();
      verts.pop_back();
      on_path[nxt] = 0;
    }
  };
  for (VertexId root = 0; root < n; ++root) {
    if (inst.capacity(root) != 2) continue;
    verts = {root};
    edges.clear();
    on_path[root] = 1;
    extend_cycle(root);
    on_path[root] = 0;
  }
  return family;
}

std::optional<Violation> constraint_check_bruteforce(const Instance& inst,
                                                     const Allocation& p) {
  const auto table = nu_table_bruteforce(inst);
  const std::uint64_t full = (std::uint64_t{1} << inst.n()) - 1;
  const Rational total = p.total();
  if (total != table[full]) {
    return Violation{ViolationKind::TotalValue, Coalition::grand(inst.n()),
                     total, table[full], {}};
  }
  const auto family = enumerate_constraints(inst);
  std::optional<Violation> best;
  Rational best_gap;
  auto consider = [&](const ConstraintFamily::Walk& walk, bool cycle) {
    Rational allocated = p.sum(walk.vertices);
    Rational bound;
    for (EdgeId e : walk.edges) bound += inst.weight(e);
    Rational gap = bound - allocated;
    if (gap.sign() <= 0 || (best && gap <= best_gap)) return;
    ViolationKind kind = ViolationKind::Path;
    if (cycle) {
      kind = ViolationKind::Cycle;
    } else if (walk.edges.empty()) {
      kind = ViolationKind::Vertex;
    } else if (walk.edges.size() == 1) {
      kind = ViolationKind::Edge;
    }
    best_gap = std::move(gap);
    best = make_violation(kind, walk.vertices, std::move(allocated),
                          std::move(bound), walk.edges);
  };
  for (const auto& c : family.cycles) consider(c, true);
  for (const auto& path : family.paths) consider(path, false);
  return best;
}

std::vector<Cycle> enumerate_cycles(const CostedGraph& g) {
  const int n = g.n();
  std::vector<std::vector<EdgeId>> adj(static_cast<size_t>(n));
  for (EdgeId e = 0; e < g.m(); ++e) {
    adj[g.edges[e].u].push_back(e);
    adj[g.edges[e].v].push_back(e);
  }
  std::vector<Cycle> cycles;
  std::vector<char> on_path(static_cast<size_t>(n), 0);
  std::vector<VertexId> verts;
  std::vector<EdgeId> edges;
  std::function<void(VertexId)> extend = [&](VertexId root) {
    const VertexId end = verts.back();
    for (EdgeId e : adj[end]) {
      const VertexId nxt = g.edges[e].other(end);
      if (nxt == root && verts.size() >= 3 && verts[1] < verts.back()) {
        Cycle c{verts, edges, Rational(0)};
        c.edges.push_back(e);
        for (EdgeId ce : c.edges) c.cost += g.cost[ce];
        cycles.push_back(std::move(c));
        continue;
      }
      if (nxt <= root || on_path[nxt]) continue;
      on_path[nxt] = 1;
      verts.push_back(nxt);
      edges.push_back(e);
      extend(root);
      edges.pop_back();
      verts.pop_back();
      on_path[nxt] = 0;
    }
  };
  for (VertexId root = 0; root < n; ++root) {
    verts = {root};
    edges.clear();
    on_path[root] = 1;
    extend(root);
    on_path[root] = 0;
  }
  return cycles;
}

std::optional<Cycle> negative_cycle_bruteforce(const CostedGraph& g) {
  if (g.n() > kNegCycleMaxVertices) {
    throw SizeGuardError("negative_cycle_bruteforce limited to 9 vertices");
  }
  std::optional<Cycle> best;
  for (auto& c : enumerate_cycles(g)) {
    if (c.cost.sign() < 0 && (!best || c.cost < best->cost)) {
      best = std::move(c);
    }
  }
  return best;
}

std::optional<CutViolation> check_cut_system(const CostedGraph& g,
                                             std::span<const Rational> x) {
  if (g.n() > kCutSystemMaxVertices) {
    throw SizeGuardError("check_cut_system limited to 10 vertices");
  }
  if (static_cast<int>(x.size()) != g.m()) {
    throw std::invalid_argument("check_cut_system: x has wrong length");
  }
  for (EdgeId e = 0; e < g.m(); ++e) {
    if (x[e].sign() < 0) return CutViolation{{}, e};
  }
  if (g.n() < 2) return std::nullopt;
  // X always contains vertex 0, so each cut is visited once.
  const std::uint64_t full = (std::uint64_t{1} << g.n()) - 1;
  for (std::uint64_t side = 1; side < full; side += 2) {
    std::vector<EdgeId> cut;
    Rational capacity;
    for (EdgeId e = 0; e < g.m(); ++e) {
      const bool in_u = (side >> g.edges[e].u) & 1;
      const bool in_v = (side >> g.edges[e].v) & 1;
      if (in_u != in_v) {
        cut.push_back(e);
        capacity += x[e];
      }
    }
    for (EdgeId e : cut) {
      if (x[e] + x[e] > capacity) {
        std::vector<VertexId> members;
        for (VertexId v = 0; v < g.n(); ++v) {
          if ((side >> v) & 1) members.push_back(v);
        }
        return CutViolation{std::move(members), e};
      }
    }
  }
  return std::nullopt;
}

}  // namespace twomatch
