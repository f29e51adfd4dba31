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

#ifndef TWOMATCH_TESTS_SUPPORT_HPP
#define TWOMATCH_TESTS_SUPPORT_HPP

// Small independent reference computations for the unit tests. These share
// no code with the library beyond the value types.

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "twomatch/model.hpp"
#include "twomatch/negcycle.hpp"
#include "twomatch/rational.hpp"

namespace support {

using twomatch::CostedGraph;
using twomatch::Edge;
using twomatch::EdgeId;
using twomatch::Instance;
using twomatch::Rational;
using twomatch::VertexId;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  // Inclusive range; modulo bias is irrelevant for test sampling.
  int uniform(int lo, int hi) {
    return lo + static_cast<int>(gen_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  bool chance(int num, int den) {
    return gen_() % static_cast<std::uint64_t>(den) <
           static_cast<std::uint64_t>(num);
  }
  std::uint64_t next() { return gen_(); }

 private:
  std::mt19937_64 gen_;
};

// Best weight over all matchings (nullopt entries are never produced).
inline Rational brute_matching_weight(int n, std::span<const Edge> edges,
                                      std::span<const Rational> w) {
  std::vector<char> used(static_cast<size_t>(n), 0);
  Rational best;
  Rational cur;
  std::function<void(size_t)> rec = [&](size_t i) {
    if (i == edges.size()) {
      if (cur > best) best = cur;
      return;
    }
    rec(i + 1);
    const auto [u, v] = edges[i];
    if (!used[u] && !used[v]) {
      used[u] = used[v] = 1;
      cur += w[i];
      rec(i + 1);
      cur -= w[i];
      used[u] = used[v] = 0;
    }
  };
  rec(0);
  return best;
}

inline std::optional<Rational> brute_min_perfect(int n,
                                                 std::span<const Edge> edges,
                                                 std::span<const Rational> w) {
  std::vector<char> used(static_cast<size_t>(n), 0);
  std::optional<Rational> best;
  Rational cur;
  int covered = 0;
  std::function<void(size_t)> rec = [&](size_t i) {
    if (covered == n) {
      if (!best || cur < *best) best = cur;
      return;
    }
    if (i == edges.size()) return;
    rec(i + 1);
    const auto [u, v] = edges[i];
    if (!used[u] && !used[v]) {
      used[u] = used[v] = 1;
      covered += 2;
      cur += w[i];
      rec(i + 1);
      cur -= w[i];
      covered -= 2;
      used[u] = used[v] = 0;
    }
  };
  rec(0);
  return best;
}

// nu(S) for the vertex mask S by recursion over the edges of G[S].
inline Rational brute_nu(const Instance& inst, std::uint64_t mask) {
  std::vector<EdgeId> inside;
  for (EdgeId e = 0; e < inst.m(); ++e) {
    if ((mask >> inst.edge(e).u & 1) && (mask >> inst.edge(e).v & 1)) {
      inside.push_back(e);
    }
  }
  std::vector<int> deg(static_cast<size_t>(inst.n()), 0);
  Rational best;
  Rational cur;
  std::function<void(size_t)> rec = [&](size_t i) {
    if (i == inside.size()) {
      if (cur > best) best = cur;
      return;
    }
    rec(i + 1);
    const auto [u, v] = inst.edge(inside[i]);
    if (deg[u] < inst.capacity(u) && deg[v] < inst.capacity(v)) {
      ++deg[u];
      ++deg[v];
      cur += inst.weight(inside[i]);
      rec(i + 1);
      cur -= inst.weight(inside[i]);
      --deg[u];
      --deg[v];
    }
  };
  rec(0);
  return best;
}

// Every simple cycle as an edge set, found by testing each edge subset for
// being connected and 2-regular. Only for small m.
inline std::vector<std::vector<EdgeId>> cycle_edge_sets(
    int n, std::span<const Edge> edges) {
  std::vector<std::vector<EdgeId>> out;
  const int m = static_cast<int>(edges.size());
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m); ++mask) {
    std::vector<int> deg(static_cast<size_t>(n), 0);
    std::vector<EdgeId> set;
    for (int e = 0; e < m; ++e) {
      if (mask >> e & 1) {
        ++deg[edges[e].u];
        ++deg[edges[e].v];
        set.push_back(e);
      }
    }
    bool ok = set.size() >= 3;
    for (int v = 0; v < n && ok; ++v) ok = deg[v] == 0 || deg[v] == 2;
    if (!ok) continue;
    // Connected: flood from one endpoint across chosen edges.
    std::vector<char> seen(static_cast<size_t>(n), 0);
    std::vector<VertexId> stack{edges[set[0]].u};
    seen[edges[set[0]].u] = 1;
    while (!stack.empty()) {
      const VertexId x = stack.back();
      stack.pop_back();
      for (EdgeId e : set) {
        if (edges[e].u != x && edges[e].v != x) continue;
        const VertexId y = edges[e].other(x);
        if (!seen[y]) {
          seen[y] = 1;
          stack.push_back(y);
        }
      }
    }
    for (int v = 0; v < n && ok; ++v) ok = deg[v] == 0 || seen[v];
    if (ok) out.push_back(std::move(set));
  }
  return out;
}

// Random simple graph with integer costs in [cmin, cmax].
inline CostedGraph random_costed(Rng& rng, int n, int num, int den, int cmin,
                                 int cmax) {
  std::vector<Edge> edges;
  std::vector<Rational> cost;
  for (VertexId u = 0; u < n; ++u) {
    for (VertexId v = u + 1; v < n; ++v) {
      if (rng.chance(num, den)) {
        edges.push_back({u, v});
        cost.emplace_back(rng.uniform(cmin, cmax));
      }
    }
  }
  return CostedGraph::from_costs(n, std::move(edges), std::move(cost));
}

// True when c is a simple closed walk of g with the stated cost.
inline bool is_simple_cycle(const CostedGraph& g, const twomatch::Cycle& c) {
  const size_t len = c.vertices.size();
  if (len < 3 || c.edges.size() != len) return false;
  std::vector<char> seen(static_cast<size_t>(g.n()), 0);
  Rational total;
  for (size_t i = 0; i < len; ++i) {
    const VertexId a = c.vertices[i];
    const VertexId b = c.vertices[(i + 1) % len];
    if (a < 0 || a >= g.n() || seen[a]) return false;
    seen[a] = 1;
    const EdgeId e = c.edges[i];
    if (e < 0 || e >= g.m()) return false;
    const Edge& ed = g.edges[e];
    if (!((ed.u == a && ed.v == b) || (ed.u == b && ed.v == a))) return false;
    total += g.cost[e];
  }
  return total == c.cost;
}

}  // namespace support

#endif  // TWOMATCH_TESTS_SUPPORT_HPP
