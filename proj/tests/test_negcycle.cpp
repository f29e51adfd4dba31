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

#include <doctest.h>

#include <algorithm>

#include "support.hpp"
#include "twomatch/negcycle.hpp"

using namespace twomatch;

namespace {

CostedGraph triangle(int a, int b, int c) {
  return CostedGraph::from_costs(3, {{0, 1}, {1, 2}, {0, 2}},
                                 {Rational(a), Rational(b), Rational(c)});
}

// Minimum cost over all even-degree edge sets, by enumeration.
Rational brute_min_even(const CostedGraph& g) {
  Rational best;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << g.m()); ++mask) {
    std::vector<int> deg(static_cast<size_t>(g.n()), 0);
    Rational c;
    for (int e = 0; e < g.m(); ++e) {
      if (mask >> e & 1) {
        ++deg[g.edges[e].u];
        ++deg[g.edges[e].v];
        c += g.cost[e];
      }
    }
    if (std::all_of(deg.begin(), deg.end(), [](int d) { return d % 2 == 0; }) &&
        c < best) {
      best = c;
    }
  }
  return best;
}

bool has_negative_cycle(const CostedGraph& g) {
  for (const auto& set : support::cycle_edge_sets(g.n(), g.edges)) {
    Rational c;
    for (EdgeId e : set) c += g.cost[e];
    if (c.sign() < 0) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("T-join examples") {
  const CostedGraph path = CostedGraph::from_costs(3, {{0, 1}, {1, 2}},
                                                   {Rational(1), Rational(1)});
  const std::vector<Rational> c{1, 1};
  CHECK(min_t_join(path, c, std::vector<VertexId>{}).empty());
  CHECK(min_t_join(path, c, std::vector<VertexId>{0, 2}) ==
        std::vector<EdgeId>{0, 1});
  CHECK_THROWS_AS(min_t_join(path, c, std::vector<VertexId>{0, 1, 2}),
                  TJoinError);
  const CostedGraph split =
      CostedGraph::from_costs(4, {{0, 1}, {2, 3}}, {Rational(1), Rational(1)});
  CHECK_THROWS_AS(min_t_join(split, c, std::vector<VertexId>{0, 2}),
                  TJoinError);
}

TEST_CASE("T-join cost matches enumeration") {
  support::Rng rng(5);
  for (int trial = 0; trial < 150; ++trial) {
    const CostedGraph g = support::random_costed(rng, rng.uniform(2, 6), 2, 3, 0, 9);
    std::vector<VertexId> t;
    for (VertexId v = 0; v < g.n(); ++v) {
      if (rng.chance(1, 2)) t.push_back(v);
    }
    if (t.size() % 2) t.pop_back();
    // Brute force: cheapest edge set whose odd-degree vertices are exactly T.
    std::optional<Rational> best;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << g.m()); ++mask) {
      std::vector<int> deg(static_cast<size_t>(g.n()), 0);
      Rational c;
      for (int e = 0; e < g.m(); ++e) {
        if (mask >> e & 1) {
          ++deg[g.edges[e].u];
          ++deg[g.edges[e].v];
          c += g.cost[e];
        }
      }
      bool ok = true;
      for (VertexId v = 0; v < g.n(); ++v) {
        const bool in_t = std::find(t.begin(), t.end(), v) != t.end();
        ok = ok && ((deg[v] % 2 == 1) == in_t);
      }
      if (ok && (!best || c < *best)) best = c;
    }
    if (!best) {
      CHECK_THROWS_AS(min_t_join(g, g.cost, t), TJoinError);
      continue;
    }
    const auto join = min_t_join(g, g.cost, t);
    Rational c;
    for (EdgeId e : join) c += g.cost[e];
    CHECK(c == *best);
  }
}

TEST_CASE("zero-join examples") {
  const CostedGraph pos = triangle(1, 2, 3);
  CHECK(min_zero_join(pos).edges.empty());
  CHECK(min_zero_join(pos).cost == Rational(0));
  const ZeroJoin tri = min_zero_join(triangle(-3, 1, 1));
  CHECK(tri.edges == std::vector<EdgeId>{0, 1, 2});
  CHECK(tri.cost == Rational(-1));
  CHECK(tri.cost == brute_min_even(triangle(-3, 1, 1)));
  const CostedGraph tree = CostedGraph::from_costs(
      4, {{0, 1}, {1, 2}, {1, 3}}, {Rational(2), Rational(-5), Rational(1)});
  CHECK(min_zero_join(tree).edges.empty());
  CHECK(min_zero_join(tree).cost == Rational(0));
}

TEST_CASE("zero-join is a minimum even subgraph") {
  support::Rng rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    const CostedGraph g =
        support::random_costed(rng, rng.uniform(2, 6), 1, 2, -10, 10);
    const ZeroJoin j = min_zero_join(g);
    CHECK(j.cost == brute_min_even(g));
    std::vector<int> deg(static_cast<size_t>(g.n()), 0);
    Rational c;
    for (EdgeId e : j.edges) {
      ++deg[g.edges[e].u];
      ++deg[g.edges[e].v];
      c += g.cost[e];
    }
    CHECK(c == j.cost);
    for (int d : deg) CHECK(d % 2 == 0);
  }
}

TEST_CASE("even subgraph decomposition") {
  const CostedGraph tri = triangle(1, 1, 1);
  CHECK(decompose_even_subgraph(tri, std::vector<EdgeId>{}).empty());
  const auto one = decompose_even_subgraph(tri, std::vector<EdgeId>{0, 1, 2});
  REQUIRE(one.size() == 1);
  CHECK(support::is_simple_cycle(tri, one[0]));

  // Bowtie: triangles 0-1-2 and 2-3-4 sharing vertex 2.
  const CostedGraph bow = CostedGraph::from_costs(
      5, {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}, {2, 4}},
      std::vector<Rational>(6, Rational(1)));
  const auto two =
      decompose_even_subgraph(bow, std::vector<EdgeId>{0, 1, 2, 3, 4, 5});
  REQUIRE(two.size() == 2);
  std::vector<std::vector<EdgeId>> sets;
  for (const auto& c : two) {
    CHECK(support::is_simple_cycle(bow, c));
    auto s = c.edges;
    std::sort(s.begin(), s.end());
    sets.push_back(s);
  }
  std::sort(sets.begin(), sets.end());
  CHECK(sets == std::vector<std::vector<EdgeId>>{{0, 1, 2}, {3, 4, 5}});
  CHECK_THROWS(decompose_even_subgraph(bow, std::vector<EdgeId>{0, 1}));
}

TEST_CASE("negative cycle examples") {
  const auto neg = find_negative_cycle(triangle(-3, 1, 1));
  REQUIRE(neg);
  CHECK(neg->cost == Rational(-1));
  CHECK(support::is_simple_cycle(triangle(-3, 1, 1), *neg));
  CHECK_FALSE(find_negative_cycle(triangle(-1, 5, 5)));
  CHECK_FALSE(find_negative_cycle(triangle(0, 0, 0)));
  CHECK_FALSE(find_negative_cycle(triangle(1, 2, 3)));
}

TEST_CASE("negative cycle detection agrees with cycle enumeration") {
  support::Rng rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    const CostedGraph g =
        support::random_costed(rng, rng.uniform(3, 6), 1, 2, -10, 10);
    const auto c = find_negative_cycle(g);
    CHECK(c.has_value() == has_negative_cycle(g));
    if (c) {
      CHECK(support::is_simple_cycle(g, *c));
      CHECK(c->cost.sign() < 0);
    }
  }
}
