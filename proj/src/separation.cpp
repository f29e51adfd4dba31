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

#include "twomatch/separation.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>

#include "twomatch/matching.hpp"

namespace twomatch {

std::optional<Violation> check_total_value(const Instance& inst,
                                           const Allocation& p) {
  const Rational value = max_weight_b_matching(inst).weight;
  const Rational total = p.total();
  if (total == value) return std::nullopt;
  return Violation{ViolationKind::TotalValue, Coalition::grand(inst.n()),
                   total, value, {}};
}

std::optional<Violation> separate_vertices_edges(const Instance& inst,
                                                 const Allocation& p) {
  for (VertexId v = 0; v < inst.n(); ++v) {
    if (p[v].sign() < 0) {
      return Violation{ViolationKind::Vertex, Coalition({v}), p[v],
                       Rational(0), {}};
    }
  }
  for (EdgeId e = 0; e < inst.m(); ++e) {
    const auto [u, v] = inst.edge(e);
    Rational sum = p[u] + p[v];
    if (sum < inst.weight(e)) {
      return Violation{ViolationKind::Edge, Coalition({u, v}), std::move(sum),
                       inst.weight(e), {e}};
    }
  }
  return std::nullopt;
}

void assign_costs(CostedGraph& g, const Allocation& p) {
  g.cost.resize(g.edges.size());
  for (int e = 0; e < g.m(); ++e) {
    const VertexId u = g.labels[g.edges[e].u];
    const VertexId v = g.labels[g.edges[e].v];
    g.cost[e] = (p[u] + p[v]) / Rational(2) - g.weight[e];
  }
}

namespace {

// Induced subgraph on the vertices flagged in `keep`, in id order. The
// instance edge `skip` (if any) is left out.
CostedGraph induced_costed(const Instance& inst, const std::vector<char>& keep,
                           std::optional<EdgeId> skip) {
  CostedGraph g;
  std::vector<int> local(static_cast<size_t>(inst.n()), -1);
  for (VertexId v = 0; v < inst.n(); ++v) {
    if (!keep[v]) continue;
    local[v] = g.n();
    g.labels.push_back(v);
  }
  for (EdgeId e = 0; e < inst.m(); ++e) {
    if (skip && *skip == e) continue;
    const auto [u, v] = inst.edge(e);
    if (local[u] < 0 || local[v] < 0) continue;
    g.edges.push_back({local[u], local[v]});
    g.weight.push_back(inst.weight(e));
    g.origin.push_back(e);
  }
  g.cost.assign(g.edges.size(), Rational(0));
  return g;
}

// Copy of g without the listed local edges.
CostedGraph without_edges(const CostedGraph& g,
                          const std::vector<char>& drop) {
  CostedGraph out;
  out.labels = g.labels;
  for (int e = 0; e < g.m(); ++e) {
    if (drop[e]) continue;
    out.edges.push_back(g.edges[e]);
    out.cost.push_back(g.cost[e]);
    out.weight.push_back(g.weight[e]);
    out.origin.push_back(g.origin[e]);
  }
  return out;
}

}  // namespace

CostedGraph build_g2(const Instance& inst, const Allocation* p) {
  std::vector<char> keep(static_cast<size_t>(inst.n()), 0);
  for (VertexId v = 0; v < inst.n(); ++v) keep[v] = inst.capacity(v) == 2;
  CostedGraph g = induced_costed(inst, keep, std::nullopt);
  if (p) assign_costs(g, *p);
  return g;
}

std::vector<VariantGraph> variants(const Instance& inst, const Allocation* p,
                                   VertexId s, VertexId t) {
  if (s == t) throw std::invalid_argument("variants: s == t");
  if (s > t) std::swap(s, t);
  if (inst.degree(s) == 0 || inst.degree(t) == 0) return {};
  std::vector<char> keep(static_cast<size_t>(inst.n()), 0);
  for (VertexId v = 0; v < inst.n(); ++v) keep[v] = inst.capacity(v) == 2;
  keep[s] = keep[t] = 1;
  CostedGraph base = induced_costed(inst, keep, inst.find_edge(s, t));
  const auto local_of = [&](VertexId v) {
    return static_cast<VertexId>(
        std::find(base.labels.begin(), base.labels.end(), v) -
        base.labels.begin());
  };
  const VertexId ls = local_of(s);
  const VertexId lt = local_of(t);
  base.edges.push_back({ls, lt});
  base.weight.emplace_back(0);
  base.origin.push_back(kMarkerEdge);
  base.cost.emplace_back(0);
  if (p) assign_costs(base, *p);

  // Non-marker edges at each endpoint, as local edge ids.
  auto others_at = [&](VertexId local) {
    std::vector<int> out;
    for (int e = 0; e + 1 < base.m(); ++e) {
      if (base.edges[e].u == local || base.edges[e].v == local) {
        out.push_back(e);
      }
    }
    return out;
  };
  const auto at_s = others_at(ls);
  const auto at_t = others_at(lt);
  const bool restrict_s = inst.capacity(s) == 1;
  const bool restrict_t = inst.capacity(t) == 1;

  // One option per kept edge; std::nullopt means "keep everything".
  std::vector<std::optional<int>> options_s{std::nullopt};
  std::vector<std::optional<int>> options_t{std::nullopt};
  if (restrict_s) options_s.assign(at_s.begin(), at_s.end());
  if (restrict_t) options_t.assign(at_t.begin(), at_t.end());

  std::vector<VariantGraph> out;
  for (const auto& es : options_s) {
    for (const auto& ft : options_t) {
      std::vector<char> drop(static_cast<size_t>(base.m()), 0);
      if (es) {
        for (int e : at_s) drop[e] = e != *es;
      }
      if (ft) {
        for (int e : at_t) drop[e] = drop[e] || e != *ft;
      }
      VariantGraph vg;
      vg.graph = without_edges(base, drop);
      vg.s = s;
      vg.t = t;
      if (es) vg.kept_s = base.origin[*es];
      if (ft) vg.kept_t = base.origin[*ft];
      out.push_back(std::move(vg));
    }
  }
  return out;
}

Violation certificate_from_cycle(const CostedGraph& g, const Cycle& c,
                                 const Allocation& p) {
  std::vector<VertexId> members;
  for (VertexId v : c.vertices) members.push_back(g.labels[v]);
  Violation out;
  out.coalition = Coalition(std::move(members));
  out.allocated = p.sum(out.coalition);

  const auto len = c.edges.size();
  size_t marker = len;
  for (size_t i = 0; i < len; ++i) {
    if (g.origin[c.edges[i]] == kMarkerEdge) marker = i;
  }
  if (marker == len) {
    out.kind = ViolationKind::Cycle;
    for (EdgeId e : c.edges) {
      out.witness_edges.push_back(g.origin[e]);
      out.bound += g.weight[e];
    }
    return out;
  }
  // Path = the cycle read from just after the marker edge around to just
  // before it.
  out.kind = ViolationKind::Path;
  for (size_t i = 1; i < len; ++i) {
    const EdgeId e = c.edges[(marker + i) % len];
    out.witness_edges.push_back(g.origin[e]);
    out.bound += g.weight[e];
  }
  if (out.witness_edges.size() == 1) out.kind = ViolationKind::Edge;
  return out;
}

std::optional<Violation> separate_cycles(const Instance& inst,
                                         const Allocation& p) {
  const CostedGraph g2 = build_g2(inst, &p);
  auto cycle = find_negative_cycle(g2);
  if (!cycle) return std::nullopt;
  return certificate_from_cycle(g2, *cycle, p);
}

namespace {

std::vector<std::pair<VertexId, VertexId>> endpoint_pairs(int n) {
  std::vector<std::pair<VertexId, VertexId>> pairs;
  for (VertexId s = 0; s < n; ++s) {
    for (VertexId t = s + 1; t < n; ++t) pairs.emplace_back(s, t);
  }
  return pairs;
}

std::optional<Violation> pair_violation(const Instance& inst,
                                        const Allocation& p, VertexId s,
                                        VertexId t) {
  for (const auto& vg : variants(inst, &p, s, t)) {
    if (auto cycle = find_negative_cycle(vg.graph)) {
      return certificate_from_cycle(vg.graph, *cycle, p);
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<Violation> separate_paths_serial(const Instance& inst,
                                               const Allocation& p) {
  for (const auto& [s, t] : endpoint_pairs(inst.n())) {
    if (auto v = pair_violation(inst, p, s, t)) return v;
  }
  return std::nullopt;
}

std::optional<Violation> separate_paths(const Instance& inst,
                                        const Allocation& p,
                                        const SeparationOptions& opts) {
  if (opts.jobs <= 1) return separate_paths_serial(inst, p);
  const auto pairs = endpoint_pairs(inst.n());
  const int count = static_cast<int>(pairs.size());
  std::vector<std::optional<Violation>> found(pairs.size());
  // Smallest pair index with a violation so far; later pairs are skipped.
  std::atomic<int> first(count);

#pragma omp parallel for schedule(dynamic, 1) num_threads(opts.jobs)
  for (int i = 0; i < count; ++i) {
    if (i > first.load(std::memory_order_relaxed)) continue;
    found[i] = pair_violation(inst, p, pairs[i].first, pairs[i].second);
    if (found[i]) {
      int cur = first.load();
      while (i < cur && !first.compare_exchange_weak(cur, i)) {
      }
    }
  }
  const int winner = first.load();
  if (winner == count) return std::nullopt;
  return std::move(found[winner]);
}

SeparationVerdict separate(const Instance& inst, const Allocation& p,
                           const SeparationOptions& opts) {
  if (p.size() != inst.n()) {
    throw ModelError("allocation length differs from vertex count");
  }
  if (auto v = check_total_value(inst, p)) return {std::move(v)};
  if (auto v = separate_vertices_edges(inst, p)) return {std::move(v)};
  if (auto v = separate_cycles(inst, p)) return {std::move(v)};
  return {separate_paths(inst, p, opts)};
}

std::vector<Violation> separate_all(const Instance& inst,
                                    const Allocation& p) {
  std::vector<Violation> out;
  if (auto v = check_total_value(inst, p)) out.push_back(std::move(*v));
  for (VertexId v = 0; v < inst.n(); ++v) {
    if (p[v].sign() < 0) {
      out.push_back(
          {ViolationKind::Vertex, Coalition({v}), p[v], Rational(0), {}});
    }
  }
  for (EdgeId e = 0; e < inst.m(); ++e) {
    const auto [u, v] = inst.edge(e);
    Rational sum = p[u] + p[v];
    if (sum < inst.weight(e)) {
      out.push_back({ViolationKind::Edge, Coalition({u, v}), std::move(sum),
                     inst.weight(e), {e}});
    }
  }
  if (auto v = separate_cycles(inst, p)) out.push_back(std::move(*v));
  for (const auto& [s, t] : endpoint_pairs(inst.n())) {
    for (const auto& vg : variants(inst, &p, s, t)) {
      auto cycle = find_negative_cycle(vg.graph);
      if (!cycle) continue;
      Violation v = certificate_from_cycle(vg.graph, *cycle, p);
      const bool duplicate =
          std::any_of(out.begin(), out.end(), [&](const Violation& o) {
            return o.kind == v.kind && o.witness_edges == v.witness_edges;
          });
      if (!duplicate) out.push_back(std::move(v));
    }
  }
  return out;
}

}  // namespace twomatch
