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

#include "twomatch/flawed.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "twomatch/matching.hpp"
#include "twomatch/oracle.hpp"
#include "twomatch/separation.hpp"

namespace twomatch {

LayeredGraph build_layered(const Instance& inst, const Allocation& p,
                           VertexId i0, VertexId j0, int k) {
  if (i0 == j0 || i0 < 0 || j0 < 0 || i0 >= inst.n() || j0 >= inst.n()) {
    throw std::invalid_argument("layered graph: invalid endpoints");
  }
  if (k < 1 || k > inst.n() - 1) {
    throw std::invalid_argument("layered graph: k out of range");
  }
  LayeredGraph g;
  g.i0 = i0;
  g.j0 = j0;
  g.k = k;
  for (VertexId v = 0; v < inst.n(); ++v) {
    if (inst.capacity(v) == 2) g.middle.push_back(v);
  }
  const Rational half(1, 2);

  if (k == 1) {
    if (auto e = inst.find_edge(i0, j0)) {
      g.arcs.push_back({{0, i0}, {1, j0}, *e,
                        p[i0] + p[j0] - inst.weight(*e)});
    }
    return g;
  }
  // First layer: i0 -> j^(1).
  for (EdgeId e : inst.incident(i0)) {
    const VertexId j = inst.edge(e).other(i0);
    if (inst.capacity(j) != 2) continue;
    g.arcs.push_back(
        {{0, i0}, {1, j}, e, p[i0] + p[j] * half - inst.weight(e)});
  }
  // Inner layers: i^(r-1) -> j^(r), both directions of each N2 edge.
  for (int r = 2; r <= k - 1; ++r) {
    for (VertexId i : g.middle) {
      for (EdgeId e : inst.incident(i)) {
        const VertexId j = inst.edge(e).other(i);
        if (inst.capacity(j) != 2) continue;
        g.arcs.push_back({{r - 1, i}, {r, j}, e,
                          (p[i] + p[j]) * half - inst.weight(e)});
      }
    }
  }
  // Last layer: i^(k-1) -> j0.
  for (VertexId i : g.middle) {
    for (EdgeId e : inst.incident(i)) {
      if (inst.edge(e).other(i) != j0) continue;
      g.arcs.push_back(
          {{k - 1, i}, {k, j0}, e, p[i] * half + p[j0] - inst.weight(e)});
    }
  }
  std::sort(g.arcs.begin(), g.arcs.end(),
            [](const LayeredArc& a, const LayeredArc& b) {
              return std::tie(a.from.layer, a.from.vertex, a.to.vertex) <
                     std::tie(b.from.layer, b.from.vertex, b.to.vertex);
            });
  return g;
}

std::optional<LayeredPath> shortest_layered_path(const LayeredGraph& g) {
  // dist/pred per (layer, vertex); vertices are instance ids.
  struct Label {
    std::optional<Rational> dist;
    VertexId pred = -1;
  };
  std::vector<std::vector<Label>> labels(static_cast<size_t>(g.k + 1));
  int nmax = 0;
  for (const auto& a : g.arcs) {
    nmax = std::max({nmax, a.from.vertex + 1, a.to.vertex + 1});
  }
  nmax = std::max({nmax, g.i0 + 1, g.j0 + 1});
  for (auto& layer : labels) layer.resize(static_cast<size_t>(nmax));
  labels[0][g.i0].dist = Rational(0);

  // Arcs are sorted by layer then tail id, so relaxing in order is a
  // topological sweep; a strict improvement is required to replace a
  // predecessor, which keeps the smallest tail among ties.
  for (const auto& a : g.arcs) {
    const auto& from = labels[a.from.layer][a.from.vertex];
    if (!from.dist) continue;
    Rational d = *from.dist + a.weight;
    auto& to = labels[a.to.layer][a.to.vertex];
    if (!to.dist || d < *to.dist) {
      to.dist = std::move(d);
      to.pred = a.from.vertex;
    }
  }
  const auto& end = labels[g.k][g.j0];
  if (!end.dist) return std::nullopt;
  LayeredPath path;
  path.i0 = g.i0;
  path.j0 = g.j0;
  path.k = g.k;
  path.weight = *end.dist;
  path.vertices.resize(static_cast<size_t>(g.k + 1));
  VertexId v = g.j0;
  for (int r = g.k; r >= 0; --r) {
    path.vertices[r] = v;
    v = labels[r][v].pred;
  }
  return path;
}

std::optional<LayeredPath> flawed_separate_paths(const Instance& inst,
                                                 const Allocation& p) {
  for (VertexId i0 = 0; i0 < inst.n(); ++i0) {
    for (VertexId j0 = i0 + 1; j0 < inst.n(); ++j0) {
      for (int k = 1; k <= inst.n() - 1; ++k) {
        auto path = shortest_layered_path(build_layered(inst, p, i0, j0, k));
        if (path && path->weight.sign() < 0) return path;
      }
    }
  }
  return std::nullopt;
}

Instance counterexample_instance() {
  return Instance({1, 1, 2, 2, 1}, {{0, 2}, {1, 2}, {2, 3}, {3, 4}},
                  {Rational(1), Rational(1), Rational(10), Rational(1)},
                  "counterexample");
}

Allocation counterexample_allocation() {
  return Allocation({Rational(0), Rational(0), Rational(2), Rational(10),
                     Rational(0)});
}

std::string counterexample_name(VertexId v) {
  static const char* names[] = {"s", "t", "u", "v", "w"};
  return (v >= 0 && v < 5) ? names[v] : std::to_string(v);
}

namespace {

std::string render(const Instance& inst, const Allocation& p,
                   const std::function<std::string(VertexId)>& name) {
  std::ostringstream out;
  out << "instance " << (inst.name().empty() ? "(unnamed)" : inst.name())
      << ": n=" << inst.n() << " m=" << inst.m() << "\n";
  out << "nu(N) = " << max_weight_b_matching(inst).weight << "\n";
  out << "p(N) = " << p.total() << "\n";

  const auto verdict = separate(inst, p);
  out << "corrected separation: "
      << (verdict.in_core() ? std::string("InCore")
                            : "Violated " + verdict.violation->summary())
      << "\n";

  if (inst.n() <= kOracleMaxVertices) {
    const auto oracle = core_check_bruteforce(inst, p);
    out << "brute-force oracle: "
        << (oracle ? "Violated " + oracle->summary() : std::string("InCore"))
        << "\n";
  } else {
    out << "brute-force oracle: skipped (n > " << kOracleMaxVertices << ")\n";
  }

  const auto path = flawed_separate_paths(inst, p);
  if (!path) {
    out << "layered method: no negative path\n";
    return out.str();
  }
  std::string plain = "(";
  std::string layered = "(";
  for (int r = 0; r <= path->k; ++r) {
    if (r) {
      plain += ",";
      layered += ",";
    }
    plain += name(path->vertices[r]);
    layered += name(path->vertices[r]);
    if (r > 0 && r < path->k) layered += "^" + std::to_string(r);
  }
  plain += ")";
  layered += ")";
  out << "layered method: negative path " << plain << " weight "
      << path->weight << "\n";
  out << "  layered nodes " << layered << ", k=" << path->k << ", endpoints ("
      << name(path->i0) << "," << name(path->j0) << ")\n";
  return out.str();
}

}  // namespace

std::string demo_counterexample() {
  return render(counterexample_instance(), counterexample_allocation(),
                counterexample_name);
}

std::string flawed_report(const Instance& inst, const Allocation& p) {
  return render(inst, p, [](VertexId v) { return std::to_string(v); });
}

}  // namespace twomatch
