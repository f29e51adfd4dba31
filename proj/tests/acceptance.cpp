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

// Acceptance run: one PASS/FAIL line per criterion. All comparisons are
// exact rational equalities; the only tolerances are the wall-clock limits
// below.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <string>
#include <vector>

#include "support.hpp"
#include "twomatch/extform.hpp"
#include "twomatch/flawed.hpp"
#include "twomatch/lp.hpp"
#include "twomatch/matching.hpp"
#include "twomatch/negcycle.hpp"
#include "twomatch/oracle.hpp"
#include "twomatch/separation.hpp"

using namespace twomatch;

namespace {

constexpr double kCounterexampleSeconds = 1.0;
constexpr double kSeparationSeconds = 300.0;

constexpr int kSeparationInstances = 200;
constexpr int kMatchingInstances = 100;
constexpr int kNegCycleGraphs = 500;
constexpr int kDualityGraphs = 200;
constexpr int kMembershipPairs = 100;
constexpr int kSizeInstances = 50;
constexpr int kCutSamplesAtSix = 300;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

// Extreme point of the coalition polytope minimizing a random objective.
std::optional<Allocation> core_point(const Instance& inst,
                                     const std::vector<Rational>& table,
                                     support::Rng& rng) {
  ConstraintSystem sys;
  const int n = inst.n();
  for (int i = 0; i < n; ++i) sys.add_variable("p" + std::to_string(i), false);
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  for (std::uint64_t mask = 1; mask <= full; ++mask) {
    std::vector<Term> terms;
    for (int i = 0; i < n; ++i) {
      if (mask >> i & 1) terms.push_back({i, Rational(1)});
    }
    sys.add_constraint("S" + std::to_string(mask), std::move(terms),
                       mask == full ? Relation::Equal : Relation::GreaterEqual,
                       table[mask]);
  }
  std::vector<Term> obj;
  for (int i = 0; i < n; ++i) obj.push_back({i, Rational(rng.uniform(-3, 3))});
  sys.set_objective(std::move(obj));
  const LpResult r = solve_lp(sys);
  if (r.status != LpStatus::Optimal) return std::nullopt;
  return Allocation(r.values);
}

// Allocations for one instance: raw random, normalized random, the half
// split of a maximum b-matching, and when the core is nonempty a core
// extreme point together with a total-preserving perturbation of it.
std::vector<Allocation> allocation_corpus(const Instance& inst,
                                          support::Rng& rng) {
  const int n = inst.n();
  const auto table = nu_table_bruteforce(inst);
  const Rational value = table.back();
  std::vector<Allocation> out;

  std::vector<Rational> raw;
  Rational sum;
  for (int i = 0; i < n; ++i) {
    raw.emplace_back(rng.uniform(0, 20), rng.uniform(1, 4));
    sum += raw.back();
  }
  out.emplace_back(raw);
  if (sum.sign() > 0) {
    std::vector<Rational> scaled = raw;
    for (auto& x : scaled) x = x * value / sum;
    out.emplace_back(scaled);
  } else {
    out.emplace_back(std::vector<Rational>(static_cast<size_t>(n)));
  }

  Allocation split = Allocation::zeros(n);
  for (EdgeId e : max_weight_b_matching(inst).edges) {
    split[inst.edge(e).u] += inst.weight(e) / Rational(2);
    split[inst.edge(e).v] += inst.weight(e) / Rational(2);
  }
  out.push_back(split);

  if (auto core = core_point(inst, table, rng)) {
    out.push_back(*core);
    if (n >= 2) {
      Allocation moved = *core;
      const int a = rng.uniform(0, n - 1);
      const int b = (a + rng.uniform(1, n - 1)) % n;
      const Rational eps(1, rng.uniform(2, 9));
      moved[a] -= eps;
      moved[b] += eps;
      out.push_back(moved);
    }
  }
  return out;
}

Outcome counterexample() {
  Outcome o;
  const auto start = Clock::now();
  std::ifstream in(std::string(TWOMATCH_TEST_DATA) + "/fig1.game");
  if (!in) {
    o.fail("cannot open the counterexample game file");
    return o;
  }
  const Instance inst = parse_instance(in);
  const Allocation p({0, 0, 2, 10, 0});
  if (max_weight_b_matching(inst).weight != Rational(12)) o.fail("nu(N) != 12");
  if (!separate(inst, p).in_core()) o.fail("separation rejects the allocation");
  if (!check_membership(inst, p).in_core) o.fail("extended formulation rejects");
  const auto path = flawed_separate_paths(inst, p);
  if (!path) {
    o.fail("layered method found no path");
  } else {
    if (path->vertices != std::vector<VertexId>{0, 2, 3, 2, 1} || path->k != 4) {
      o.fail("layered path is not (s,u,v,u,t) with k=4");
    }
    if (path->weight != Rational(14) - Rational(22)) o.fail("weight != -8");
  }
  // Files carry numeric ids; the built-in demo prints vertex names.
  const std::string report = flawed_report(inst, p);
  if (report.find("(0,2^1,3^2,2^3,1)") == std::string::npos ||
      report.find("weight -8") == std::string::npos) {
    o.fail("report does not show the layered path");
  }
  const std::string demo = demo_counterexample();
  if (demo.find("(s,u^1,v^2,u^3,t)") == std::string::npos ||
      demo.find("(s,u,v,u,t) weight -8") == std::string::npos) {
    o.fail("demo does not show the layered path");
  }
  const double secs = seconds_since(start);
  if (secs >= kCounterexampleSeconds) o.fail("runtime over limit");
  o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(secs) + " s";
  return o;
}

struct CorpusItem {
  Instance inst;
  std::vector<Allocation> allocations;
};

std::vector<CorpusItem> separation_corpus() {
  std::vector<CorpusItem> corpus;
  support::Rng rng(20260101);
  for (int k = 0; k < kSeparationInstances; ++k) {
    const int n = 2 + k % 6;  // 2..7
    Instance inst = random_instance(1000 + static_cast<std::uint64_t>(k), n,
                                    Rational(1, 2), 10);
    auto allocs = allocation_corpus(inst, rng);
    corpus.push_back({std::move(inst), std::move(allocs)});
  }
  return corpus;
}

Outcome separation_vs_oracle(const std::vector<CorpusItem>& corpus) {
  Outcome o;
  const auto start = Clock::now();
  long cases = 0;
  long in_core = 0;
  for (const auto& item : corpus) {
    for (const auto& p : item.allocations) {
      ++cases;
      const auto verdict = separate(item.inst, p);
      const auto oracle = core_check_bruteforce(item.inst, p);
      if (verdict.in_core() != !oracle.has_value()) {
        o.fail("disagreement on an instance with n=" +
               std::to_string(item.inst.n()));
      }
      in_core += verdict.in_core();
      if (verdict.violation) {
        const Violation& v = *verdict.violation;
        if (v.kind == ViolationKind::TotalValue) {
          if (p.total() == nu(item.inst, Coalition::grand(item.inst.n()))) {
            o.fail("spurious total-value certificate");
          }
        } else {
          const Rational exact = nu_bruteforce(item.inst, v.coalition);
          if (!(p.sum(v.coalition) < exact) || v.allocated != p.sum(v.coalition)) {
            o.fail("certificate does not re-verify");
          }
        }
      }
    }
  }
  const double secs = seconds_since(start);
  if (secs >= kSeparationSeconds) o.fail("runtime over limit");
  o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(cases) +
              " cases, " + std::to_string(in_core) + " in core, " +
              std::to_string(secs) + " s";
  return o;
}

Outcome characterization(const std::vector<CorpusItem>& corpus) {
  Outcome o;
  long cases = 0;
  for (const auto& item : corpus) {
    for (const auto& p : item.allocations) {
      ++cases;
      const bool by_walks = !constraint_check_bruteforce(item.inst, p).has_value();
      const bool by_coalitions = !core_check_bruteforce(item.inst, p).has_value();
      if (by_walks != by_coalitions) o.fail("cycle/path system disagrees");
    }
  }
  o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(cases) + " cases";
  return o;
}

Outcome matching_correctness() {
  Outcome o;
  long coalitions = 0;
  for (int k = 0; k < kMatchingInstances; ++k) {
    const int n = 1 + k % 6;
    const Instance inst = random_instance(5000 + static_cast<std::uint64_t>(k), n,
                                          Rational(1, 2), 10);
    const std::uint64_t full = (std::uint64_t{1} << n) - 1;
    for (std::uint64_t mask = 1; mask <= full; ++mask) {
      const Coalition s = Coalition::from_mask(mask);
      ++coalitions;
      if (nu(inst, s) != nu_bruteforce(inst, s)) o.fail("nu mismatch");
    }
    const Rational value = nu_bruteforce(inst, Coalition::grand(n));
    const auto g = detail::gadget_b_matching(inst, inst.weights());
    if (g.gadget_weight != inst.total_weight() + value) {
      o.fail("gadget identity fails");
    }
  }
  o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(coalitions) +
              " coalitions";
  return o;
}

Outcome negative_cycles() {
  Outcome o;
  support::Rng rng(777);
  long negative = 0;
  for (int k = 0; k < kNegCycleGraphs; ++k) {
    const CostedGraph g =
        support::random_costed(rng, rng.uniform(2, 8), 1, 2, -10, 10);
    const auto fast = find_negative_cycle(g);
    const auto slow = negative_cycle_bruteforce(g);
    if (fast.has_value() != slow.has_value()) o.fail("existence differs");
    if (fast) {
      ++negative;
      Rational cost;
      for (EdgeId e : fast->edges) cost += g.cost[e];
      if (!(cost.sign() < 0) || cost != fast->cost ||
          !support::is_simple_cycle(g, *fast)) {
        o.fail("returned cycle is not a simple negative cycle");
      }
    }
  }
  o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(negative) +
              " of " + std::to_string(kNegCycleGraphs) + " negative";
  return o;
}

Outcome duality() {
  Outcome o;
  support::Rng rng(4242);
  long negative = 0;
  for (int k = 0; k < kDualityGraphs; ++k) {
    const CostedGraph g =
        support::random_costed(rng, rng.uniform(2, 7), 1, 2, -10, 10);
    const bool has_neg = negative_cycle_bruteforce(g).has_value();
    const bool unbounded =
        solve_lp(build_flow_primal(g)).status == LpStatus::Unbounded;
    const bool infeasible = !simplex_feasible(build_dual_system(g)).feasible;
    negative += has_neg;
    if (has_neg != unbounded || unbounded != infeasible) {
      o.fail("predicates disagree on a graph with n=" + std::to_string(g.n()) +
             " m=" + std::to_string(g.m()));
    }
  }
  o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(negative) +
              " of " + std::to_string(kDualityGraphs) + " negative";
  return o;
}

Outcome membership() {
  Outcome o;
  support::Rng rng(99);
  long pairs = 0;
  long in_core = 0;
  for (int k = 0; pairs < kMembershipPairs; ++k) {
    const int n = 2 + k % 5;  // 2..6
    const Instance inst = random_instance(9000 + static_cast<std::uint64_t>(k), n,
                                          Rational(1, 2), 10);
    for (const auto& p : allocation_corpus(inst, rng)) {
      if (pairs >= kMembershipPairs) break;
      ++pairs;
      const bool a = check_membership(inst, p, 4).in_core;
      const bool b = separate(inst, p).in_core();
      in_core += b;
      if (a != b) o.fail("membership disagrees with separation");
    }
  }
  o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(pairs) +
              " pairs, " + std::to_string(in_core) + " in core";
  return o;
}

Outcome size_accounting() {
  Outcome o;
  std::vector<Instance> instances{counterexample_instance()};
  for (int k = 0; k < kSizeInstances; ++k) {
    instances.push_back(random_instance(300 + static_cast<std::uint64_t>(k),
                                        2 + k % 6, Rational(1, 2), 10));
  }
  long long largest = 0;
  for (const auto& inst : instances) {
    const SizeReport r = size_report(inst);
    const ConstraintSystem sys = build_extended_formulation(inst);
    long long nonneg = 0;
    for (const auto& v : sys.variables()) nonneg += v.nonnegative;
    // Pair bound recomputed here from the degree rule.
    long long bound = 1;
    for (VertexId s = 0; s < inst.n(); ++s) {
      for (VertexId t = s + 1; t < inst.n(); ++t) {
        auto reach = [&](VertexId a, VertexId other) {
          long long d = 0;
          for (EdgeId e : inst.incident(a)) {
            const VertexId x = inst.edge(e).other(a);
            if (x != other && inst.capacity(x) == 2) ++d;
          }
          return d;
        };
        bound += reach(s, t) * reach(t, s);
      }
    }
    const long long n = inst.n();
    const long long m = inst.m();
    const long long n4 = std::max(1LL, n * n * n * n);
    if (static_cast<long long>(sys.blocks().size()) != r.family_size) {
      o.fail("family size differs from materialized blocks");
    }
    if (r.family_size > bound || r.family_bound != bound) o.fail("pair bound");
    if (sys.variable_count() != r.variables) o.fail("variable count");
    if (sys.constraint_count() != r.constraints) o.fail("constraint count");
    if (nonneg != r.nonnegative_variables) o.fail("bound count");
    if (r.family_size > n4) o.fail("family envelope");
    if (r.variables > n + n4 * ((m + 1) * n + 2 * (m + 1) * m)) {
      o.fail("variable envelope");
    }
    if (r.constraints > 1 + n + m + n4 * (2 * (m + 1) * m + m + 1)) {
      o.fail("constraint envelope");
    }
    largest = std::max(largest, r.variables);
  }
  const SizeReport fig = size_report(counterexample_instance());
  o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(instances.size()) +
              " instances, counterexample family " +
              std::to_string(fig.family_size) + ", largest system " +
              std::to_string(largest) + " variables";
  return o;
}

Outcome cut_cone() {
  Outcome o;
  long graphs = 0;
  long cycles = 0;
  auto check_graph = [&](int n, const std::vector<Edge>& edges) {
    ++graphs;
    const CostedGraph g = CostedGraph::from_costs(
        n, edges, std::vector<Rational>(edges.size()));
    for (const Cycle& c : enumerate_cycles(g)) {
      ++cycles;
      std::vector<Rational> x(edges.size());
      for (EdgeId e : c.edges) x[e] = Rational(1);
      if (check_cut_system(g, x)) o.fail("cycle vector violates a cut");
    }
  };
  for (int n = 1; n <= 5; ++n) {
    std::vector<Edge> all;
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) all.push_back({u, v});
    }
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << all.size()); ++mask) {
      std::vector<Edge> edges;
      for (size_t i = 0; i < all.size(); ++i) {
        if (mask >> i & 1) edges.push_back(all[i]);
      }
      check_graph(n, edges);
    }
  }
  support::Rng rng(6);
  for (int k = 0; k < kCutSamplesAtSix; ++k) {
    std::vector<Edge> edges;
    for (int u = 0; u < 6; ++u) {
      for (int v = u + 1; v < 6; ++v) {
        if (rng.chance(1, 2)) edges.push_back({u, v});
      }
    }
    check_graph(6, edges);
  }
  o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(graphs) +
              " graphs, " + std::to_string(cycles) + " cycles";
  return o;
}

}  // namespace

int main() {
  bool all = true;
  auto report = [&](int id, const std::function<Outcome()>& run) {
    const auto start = Clock::now();
    const Outcome o = run();
    std::printf("criterion %d: %s (%s; %.2f s)\n", id, o.pass ? "PASS" : "FAIL",
                o.detail.c_str(), seconds_since(start));
    std::fflush(stdout);
    all = all && o.pass;
  };
  report(1, counterexample);
  const std::vector<CorpusItem> corpus = separation_corpus();
  report(2, [&] { return separation_vs_oracle(corpus); });
  report(3, [&] { return characterization(corpus); });
  report(4, matching_correctness);
  report(5, negative_cycles);
  report(6, duality);
  report(7, membership);
  report(8, size_accounting);
  report(9, cut_cone);
  return all ? 0 : 1;
}
