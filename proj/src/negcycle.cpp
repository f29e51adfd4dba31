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

#include "twomatch/negcycle.hpp"

#include <algorithm>
#include <cassert>

#include "twomatch/matching.hpp"

namespace twomatch {

std::optional<int> CostedGraph::marker() const {
  for (int e = 0; e < m(); ++e) {
    if (origin[e] == kMarkerEdge) return e;
  }
  return std::nullopt;
}

CostedGraph CostedGraph::from_costs(int n, std::vector<Edge> edges,
                                    std::vector<Rational> cost) {
  CostedGraph g;
  g.labels.resize(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) g.labels[i] = i;
  g.weight.assign(edges.size(), Rational(0));
  g.origin.resize(edges.size());
  for (size_t e = 0; e < edges.size(); ++e) g.origin[e] = static_cast<int>(e);
  g.edges = std::move(edges);
  g.cost = std::move(cost);
  return g;
}

namespace {

struct ShortestPaths {
  std::vector<std::optional<Rational>> dist;
  std::vector<EdgeId> parent_edge;
};

// O(n^2) Dijkstra over nonnegative costs. Ties settle the smallest vertex
// id first and keep the first strictly improving parent.
ShortestPaths dijkstra(const CostedGraph& g, std::span<const Rational> cost,
                       const std::vector<std::vector<EdgeId>>& adj,
                       VertexId source) {
  const int n = g.n();
  ShortestPaths sp;
  sp.dist.assign(static_cast<size_t>(n), std::nullopt);
  sp.parent_edge.assign(static_cast<size_t>(n), -1);
  std::vector<char> done(static_cast<size_t>(n), 0);
  sp.dist[source] = Rational(0);
  while (true) {
    int best = -1;
    for (int v = 0; v < n; ++v) {
      if (done[v] || !sp.dist[v]) continue;
      if (best == -1 || *sp.dist[v] < *sp.dist[best]) best = v;
    }
    if (best == -1) break;
    done[best] = 1;
    for (EdgeId e : adj[best]) {
      const VertexId w = g.edges[e].other(best);
      if (done[w]) continue;
      Rational d = *sp.dist[best] + cost[e];
      if (!sp.dist[w] || d < *sp.dist[w]) {
        sp.dist[w] = std::move(d);
        sp.parent_edge[w] = e;
      }
    }
  }
  return sp;
}

std::vector<std::vector<EdgeId>> adjacency(const CostedGraph& g) {
  std::vector<std::vector<EdgeId>> adj(static_cast<size_t>(g.n()));
  for (EdgeId e = 0; e < g.m(); ++e) {
    adj[g.edges[e].u].push_back(e);
    adj[g.edges[e].v].push_back(e);
  }
  return adj;
}

}  // namespace

std::vector<EdgeId> min_t_join(const CostedGraph& g,
                               std::span<const Rational> cost,
                               std::span<const VertexId> t) {
  if (t.size() % 2 != 0) throw TJoinError("odd T");
  if (t.empty()) return {};
  for (const auto& c : cost) {
    if (c.sign() < 0) throw TJoinError("T-join needs nonnegative costs");
  }
  const auto adj = adjacency(g);
  const int k = static_cast<int>(t.size());
  std::vector<ShortestPaths> sp;
  sp.reserve(t.size());
  for (VertexId s : t) sp.push_back(dijkstra(g, cost, adj, s));

  std::vector<Edge> pair_edges;
  std::vector<Rational> pair_cost;
  for (int a = 0; a < k; ++a) {
    for (int b = a + 1; b < k; ++b) {
      const auto& d = sp[a].dist[t[b]];
      if (!d) continue;
      pair_edges.push_back({a, b});
      pair_cost.push_back(*d);
    }
  }
  MatchingResult pairing;
  try {
    pairing = min_weight_perfect_matching(k, pair_edges, pair_cost);
  } catch (const NoPerfectMatching&) {
    throw TJoinError("T-pair disconnected");
  }

  std::vector<char> in_join(static_cast<size_t>(g.m()), 0);
  for (EdgeId pe : pairing.edges) {
    const auto [a, b] = pair_edges[pe];
    VertexId v = t[b];
    while (v != t[a]) {
      const EdgeId e = sp[a].parent_edge[v];
      in_join[e] ^= 1;
      v = g.edges[e].other(v);
    }
  }
  std::vector<EdgeId> join;
  for (EdgeId e = 0; e < g.m(); ++e) {
    if (in_join[e]) join.push_back(e);
  }
  return join;
}

ZeroJoin min_zero_join(const CostedGraph& g) {
  std::vector<Rational> magnitude;
  magnitude.reserve(g.cost.size());
  std::vector<char> negative(static_cast<size_t>(g.m()), 0);
  std::vector<int> parity(static_cast<size_t>(g.n()), 0);
  for (EdgeId e = 0; e < g.m(); ++e) {
    magnitude.push_back(g.cost[e].abs());
    if (g.cost[e].sign() < 0) {
      negative[e] = 1;
      parity[g.edges[e].u] ^= 1;
      parity[g.edges[e].v] ^= 1;
    }
  }
  std::vector<VertexId> odd;
  for (VertexId v = 0; v < g.n(); ++v) {
    if (parity[v]) odd.push_back(v);
  }
  for (EdgeId e : min_t_join(g, magnitude, odd)) negative[e] ^= 1;

  ZeroJoin out;
  for (EdgeId e = 0; e < g.m(); ++e) {
    if (negative[e]) {
      out.edges.push_back(e);
      out.cost += g.cost[e];
    }
  }
  assert(out.cost.sign() <= 0);
  return out;
}

std::vector<Cycle> decompose_even_subgraph(const CostedGraph& g,
                                           std::span<const EdgeId> join) {
  std::vector<std::vector<EdgeId>> adj(static_cast<size_t>(g.n()));
  for (EdgeId e : join) {
    adj[g.edges[e].u].push_back(e);
    adj[g.edges[e].v].push_back(e);
  }
  for (const auto& a : adj) {
    if (a.size() % 2 != 0) {
      throw std::invalid_argument("decompose: odd-degree vertex");
    }
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  std::vector<char> used(static_cast<size_t>(g.m()), 0);

  auto next_unused = [&](VertexId v) -> EdgeId {
    for (EdgeId e : adj[v]) {
      if (!used[e]) return e;
    }
    return -1;
  };

  std::vector<Cycle> cycles;
  for (VertexId start = 0; start < g.n(); ++start) {
    while (next_unused(start) != -1) {
      // Walk until a vertex repeats; peel off the closed part each time.
      std::vector<VertexId> trail{start};
      std::vector<EdgeId> trail_edges;
      std::vector<int> pos(static_cast<size_t>(g.n()), -1);
      pos[start] = 0;
      VertexId cur = start;
      while (!trail_edges.empty() || cur == start) {
        const EdgeId e = next_unused(cur);
        if (e == -1) break;  // only possible when the trail is closed
        used[e] = 1;
        const VertexId nxt = g.edges[e].other(cur);
        trail_edges.push_back(e);
        if (pos[nxt] >= 0) {
          const int at = pos[nxt];
          Cycle c;
          c.vertices.assign(trail.begin() + at, trail.end());
          c.edges.assign(trail_edges.begin() + at, trail_edges.end());
          for (EdgeId ce : c.edges) c.cost += g.cost[ce];
          for (size_t i = at + 1; i < trail.size(); ++i) pos[trail[i]] = -1;
          trail.resize(static_cast<size_t>(at) + 1);
          trail_edges.resize(static_cast<size_t>(at));
          cycles.push_back(std::move(c));
          cur = nxt;
          if (trail_edges.empty()) break;
          continue;
        }
        pos[nxt] = static_cast<int>(trail.size());
        trail.push_back(nxt);
        cur = nxt;
      }
    }
  }
  return cycles;
}

std::optional<Cycle> find_negative_cycle(const CostedGraph& g) {
  const ZeroJoin join = min_zero_join(g);
  if (join.cost.sign() >= 0) return std::nullopt;
  auto cycles = decompose_even_subgraph(g, join.edges);
  std::optional<Cycle> best;
  std::vector<EdgeId> best_key;
  for (auto& c : cycles) {
    std::vector<EdgeId> key = c.edges;
    std::sort(key.begin(), key.end());
    if (!best || c.cost < best->cost ||
        (c.cost == best->cost && key < best_key)) {
      best_key = std::move(key);
      best = std::move(c);
    }
  }
  assert(best && best->cost.sign() < 0);
  return best;
}

}  // namespace twomatch
