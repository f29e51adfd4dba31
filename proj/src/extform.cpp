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

#include "twomatch/extform.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <functional>
#include <sstream>

#include "twomatch/matching.hpp"
#include "twomatch/separation.hpp"

namespace twomatch {

namespace {

std::string edge_tag(int e) { return "e" + std::to_string(e); }

bool touches_real_edge(const CostedGraph& g, int local) {
  for (int e = 0; e < g.m(); ++e) {
    if (g.origin[e] == kMarkerEdge) continue;
    if (g.edges[e].u == local || g.edges[e].v == local) return true;
  }
  return false;
}

int local_index(const CostedGraph& g, VertexId label) {
  for (int i = 0; i < g.n(); ++i) {
    if (g.labels[i] == label) return i;
  }
  return -1;
}

// Potentials gamma^ebar_i and capacity multipliers lambda^ebar_{e,dir} for
// the flow model of g. Row of edge e: potential drop across e in its own
// block plus every other block's multipliers on e, plus `extra(e)`, at
// most `rhs(e)`.
void append_dual(ConstraintSystem& sys, const CostedGraph& g,
                 const std::string& prefix,
                 const std::function<std::vector<Term>(int)>& extra,
                 const std::function<Rational(int)>& rhs) {
  const int n = g.n();
  const int m = g.m();
  std::vector<std::vector<int>> gamma(m, std::vector<int>(n));
  for (int eb = 0; eb < m; ++eb) {
    for (int i = 0; i < n; ++i) {
      gamma[eb][i] = sys.add_variable(prefix + "gamma_" + edge_tag(eb) + "_v" +
                                          std::to_string(g.labels[i]),
                                      false);
    }
  }
  // lambda[eb][e][dir]; -1 on the diagonal.
  std::vector<std::vector<std::array<int, 2>>> lambda(
      m, std::vector<std::array<int, 2>>(m, {-1, -1}));
  for (int eb = 0; eb < m; ++eb) {
    for (int e = 0; e < m; ++e) {
      if (e == eb) continue;
      const std::string base =
          prefix + "lambda_" + edge_tag(eb) + "_" + edge_tag(e);
      lambda[eb][e][0] = sys.add_variable(base + "_f");
      lambda[eb][e][1] = sys.add_variable(base + "_b");
    }
  }
  for (int eb = 0; eb < m; ++eb) {
    for (int e = 0; e < m; ++e) {
      if (e == eb) continue;
      const auto [u, v] = g.edges[e];
      const std::string base =
          prefix + "flow_" + edge_tag(eb) + "_" + edge_tag(e);
      sys.add_constraint(base + "_f",
                         {{gamma[eb][u], Rational(1)},
                          {gamma[eb][v], Rational(-1)},
                          {lambda[eb][e][0], Rational(-1)}},
                         Relation::LessEqual, Rational(0));
      sys.add_constraint(base + "_b",
                         {{gamma[eb][v], Rational(1)},
                          {gamma[eb][u], Rational(-1)},
                          {lambda[eb][e][1], Rational(-1)}},
                         Relation::LessEqual, Rational(0));
    }
  }
  for (int e = 0; e < m; ++e) {
    const auto [u, v] = g.edges[e];
    std::vector<Term> terms{{gamma[e][v], Rational(1)},
                            {gamma[e][u], Rational(-1)}};
    for (int eb = 0; eb < m; ++eb) {
      if (eb == e) continue;
      terms.push_back({lambda[eb][e][0], Rational(1)});
      terms.push_back({lambda[eb][e][1], Rational(1)});
    }
    for (auto& t : extra(e)) terms.push_back(std::move(t));
    sys.add_constraint(prefix + "edge_" + edge_tag(e), std::move(terms),
                       Relation::LessEqual, rhs(e));
  }
}

}  // namespace

GraphFamily enumerate_family(const Instance& inst) {
  GraphFamily family;
  family.members.push_back({"G2", build_g2(inst, nullptr), std::nullopt,
                            std::nullopt});
  for (VertexId s = 0; s < inst.n(); ++s) {
    for (VertexId t = s + 1; t < inst.n(); ++t) {
      for (auto& vg : variants(inst, nullptr, s, t)) {
        if (!touches_real_edge(vg.graph, local_index(vg.graph, s)) ||
            !touches_real_edge(vg.graph, local_index(vg.graph, t))) {
          continue;
        }
        std::string label = "st_" + std::to_string(s) + "_" + std::to_string(t);
        if (vg.kept_s) label += "_ks" + std::to_string(*vg.kept_s);
        if (vg.kept_t) label += "_kt" + std::to_string(*vg.kept_t);
        family.members.push_back({std::move(label), std::move(vg.graph), s, t});
      }
    }
  }
  return family;
}

ConstraintSystem build_flow_primal(const CostedGraph& g) {
  ConstraintSystem sys;
  const int n = g.n();
  const int m = g.m();
  std::vector<int> x(m);
  for (int e = 0; e < m; ++e) x[e] = sys.add_variable("x_" + edge_tag(e));
  std::vector<std::vector<std::array<int, 2>>> y(
      m, std::vector<std::array<int, 2>>(m, {-1, -1}));
  for (int eb = 0; eb < m; ++eb) {
    for (int e = 0; e < m; ++e) {
      if (e == eb) continue;
      const std::string base = "y_" + edge_tag(eb) + "_" + edge_tag(e);
      y[eb][e][0] = sys.add_variable(base + "_f");
      y[eb][e][1] = sys.add_variable(base + "_b");
    }
  }
  for (int eb = 0; eb < m; ++eb) {
    // Net outflow at i, with x_eb leaving u and arriving at v.
    std::vector<std::vector<Term>> rows(n);
    rows[g.edges[eb].u].push_back({x[eb], Rational(-1)});
    rows[g.edges[eb].v].push_back({x[eb], Rational(1)});
    for (int e = 0; e < m; ++e) {
      if (e == eb) continue;
      const auto [u, v] = g.edges[e];
      rows[u].push_back({y[eb][e][0], Rational(1)});
      rows[v].push_back({y[eb][e][0], Rational(-1)});
      rows[v].push_back({y[eb][e][1], Rational(1)});
      rows[u].push_back({y[eb][e][1], Rational(-1)});
    }
    for (int i = 0; i < n; ++i) {
      if (rows[i].empty()) continue;
      sys.add_constraint("conserve_" + edge_tag(eb) + "_v" +
                             std::to_string(g.labels[i]),
                         std::move(rows[i]), Relation::Equal, Rational(0));
    }
    for (int e = 0; e < m; ++e) {
      if (e == eb) continue;
      const std::string base = "cap_" + edge_tag(eb) + "_" + edge_tag(e);
      sys.add_constraint(base + "_f",
                         {{x[e], Rational(1)}, {y[eb][e][0], Rational(-1)}},
                         Relation::GreaterEqual, Rational(0));
      sys.add_constraint(base + "_b",
                         {{x[e], Rational(1)}, {y[eb][e][1], Rational(-1)}},
                         Relation::GreaterEqual, Rational(0));
    }
  }
  std::vector<Term> obj;
  for (int e = 0; e < m; ++e) obj.push_back({x[e], g.cost[e]});
  sys.set_objective(std::move(obj));
  return sys;
}

ConstraintSystem build_dual_system(const CostedGraph& g) {
  ConstraintSystem sys;
  append_dual(
      sys, g, "", [](int) { return std::vector<Term>{}; },
      [&](int e) { return g.cost[e]; });
  return sys;
}

ConstraintSystem build_extended_formulation(const Instance& inst) {
  ConstraintSystem sys;
  const int n = inst.n();
  for (VertexId i = 0; i < n; ++i) sys.add_variable("p" + std::to_string(i), false);

  std::vector<Term> all;
  for (VertexId i = 0; i < n; ++i) all.push_back({i, Rational(1)});
  sys.add_constraint("total", std::move(all), Relation::Equal,
                     max_weight_b_matching(inst).weight);
  for (VertexId i = 0; i < n; ++i) {
    sys.add_constraint("nonneg_" + std::to_string(i), {{i, Rational(1)}},
                       Relation::GreaterEqual, Rational(0));
  }
  for (EdgeId e = 0; e < inst.m(); ++e) {
    const auto [u, v] = inst.edge(e);
    sys.add_constraint("edge_" + std::to_string(e),
                       {{u, Rational(1)}, {v, Rational(1)}},
                       Relation::GreaterEqual, inst.weight(e));
  }

  const Rational minus_half(-1, 2);
  const GraphFamily family = enumerate_family(inst);
  for (size_t k = 0; k < family.members.size(); ++k) {
    const FamilyMember& mem = family.members[k];
    const CostedGraph& g = mem.graph;
    sys.begin_block(mem.label);
    append_dual(
        sys, g, "g" + std::to_string(k) + "_",
        [&](int e) {
          return std::vector<Term>{{g.labels[g.edges[e].u], minus_half},
                                   {g.labels[g.edges[e].v], minus_half}};
        },
        [&](int e) { return -g.weight[e]; });
    sys.end_block();
  }
  return sys;
}

MembershipResult check_membership(const Instance& inst, const Allocation& p,
                                  int jobs) {
  if (p.size() != inst.n()) {
    throw ModelError("allocation has " + std::to_string(p.size()) +
                     " entries for " + std::to_string(inst.n()) + " vertices");
  }
  const ConstraintSystem sys = build_extended_formulation(inst);
  const int base_rows = 1 + inst.n() + inst.m();
  std::span<const Rational> values = p.values();
  for (int r = 0; r < base_rows; ++r) {
    const Constraint& c = sys.constraints()[r];
    const Rational lhs = evaluate(c, values);
    const bool ok = c.relation == Relation::Equal ? lhs == c.rhs : lhs >= c.rhs;
    if (!ok) return {false, c.name};
  }

  std::vector<std::optional<Rational>> fixed(sys.variable_count());
  for (int i = 0; i < inst.n(); ++i) fixed[i] = p[i];
  const auto blocks = sys.blocks();
  const int count = static_cast<int>(blocks.size());
  std::atomic<int> first(count);
  auto solve = [&](int b) {
    const ConstraintSystem local = restrict_to_block(sys, blocks[b], fixed);
    if (!simplex_feasible(local).feasible) {
      int cur = first.load();
      while (b < cur && !first.compare_exchange_weak(cur, b)) {
      }
    }
  };
  if (jobs <= 1) {
    for (int b = 0; b < count && first.load() == count; ++b) solve(b);
  } else {
#pragma omp parallel for schedule(dynamic, 1) num_threads(jobs)
    for (int b = 0; b < count; ++b) {
      if (b > first.load(std::memory_order_relaxed)) continue;
      solve(b);
    }
  }
  if (first.load() < count) return {false, blocks[first.load()].label};
  return {true, ""};
}

SizeReport size_report(const Instance& inst) {
  SizeReport r;
  r.n = inst.n();
  r.m = inst.m();
  const GraphFamily family = enumerate_family(inst);
  r.family_size = static_cast<long long>(family.members.size());

  // d_s - 1 = neighbours of s inside N2 other than t.
  r.family_bound = 1;
  for (VertexId s = 0; s < inst.n(); ++s) {
    for (VertexId t = s + 1; t < inst.n(); ++t) {
      auto others = [&](VertexId a, VertexId b) {
        long long c = 0;
        for (EdgeId e : inst.incident(a)) {
          const VertexId x = inst.edge(e).other(a);
          if (x != b && inst.capacity(x) == 2) ++c;
        }
        return c;
      };
      r.family_bound += others(s, t) * others(t, s);
    }
  }

  r.variables = inst.n();
  r.constraints = 1 + inst.n() + inst.m();
  for (const auto& mem : family.members) {
    MemberSize ms;
    ms.label = mem.label;
    ms.vertices = mem.graph.n();
    ms.edges = mem.graph.m();
    const long long e = ms.edges;
    ms.gamma = e * ms.vertices;
    ms.lambda = 2 * e * (e - 1);
    ms.rows = 2 * e * (e - 1) + e;
    r.variables += ms.gamma + ms.lambda;
    r.constraints += ms.rows;
    r.nonnegative_variables += ms.lambda;
    r.members.push_back(std::move(ms));
  }
  const long long n = inst.n();
  const long long m1 = inst.m() + 1;
  r.family_envelope = std::max(1LL, n * n * n * n);
  r.variable_envelope = n + r.family_envelope * (m1 * n + 2 * m1 * (m1 - 1));
  r.constraint_envelope =
      1 + n + inst.m() + r.family_envelope * (2 * m1 * (m1 - 1) + m1);
  return r;
}

std::string format_size_report(const SizeReport& r) {
  std::ostringstream out;
  out << "n=" << r.n << " m=" << r.m << "\n";
  out << "family members: " << r.family_size
      << " (pair bound " << r.family_bound << ", envelope n^4 = "
      << r.family_envelope << ")\n";
  for (const auto& ms : r.members) {
    out << "  " << ms.label << ": |N'|=" << ms.vertices << " |E'|=" << ms.edges
        << " gamma=" << ms.gamma << " lambda=" << ms.lambda
        << " rows=" << ms.rows << "\n";
  }
  out << "variables: " << r.variables << " (envelope " << r.variable_envelope
      << ")\n";
  out << "constraints: " << r.constraints << " (envelope "
      << r.constraint_envelope << ")\n";
  out << "nonnegativity bounds: " << r.nonnegative_variables << "\n";
  return out.str();
}

}  // namespace twomatch
