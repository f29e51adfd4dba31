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

#include "twomatch/matching.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace twomatch {

namespace {

// Returns weights shifted by bonus_e = delta * 2^(m-1-e), where delta is
// small enough that the total bonus stays below the smallest positive gap
// between two distinct subset sums of `weights`. The optimum under the
// shifted weights is then optimal for the original ones and unique.
std::vector<Rational> tie_break_weights(std::span<const Rational> weights,
                                        int sign) {
  const size_t m = weights.size();
  mpz_class lcm = 1;
  for (const auto& w : weights) {
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), w.denominator().get_mpz_t());
  }
  // 1 / (lcm * 2^(m+1))
  mpz_class scale = lcm;
  mpz_mul_2exp(scale.get_mpz_t(), scale.get_mpz_t(), m + 1);
  std::vector<Rational> out;
  out.reserve(m);
  for (size_t e = 0; e < m; ++e) {
    mpz_class bonus_num = 1;
    mpz_mul_2exp(bonus_num.get_mpz_t(), bonus_num.get_mpz_t(), m - 1 - e);
    Rational bonus(mpq_class(bonus_num, scale));
    out.push_back(sign > 0 ? weights[e] + bonus : -weights[e] + bonus);
  }
  return out;
}

MatchingResult collect(std::span<const EdgeId> mates,
                       std::span<const Rational> weights) {
  MatchingResult result;
  for (size_t v = 0; v < mates.size(); ++v) {
    if (mates[v] >= 0) result.edges.push_back(mates[v]);
  }
  std::sort(result.edges.begin(), result.edges.end());
  result.edges.erase(std::unique(result.edges.begin(), result.edges.end()),
                     result.edges.end());
  for (EdgeId e : result.edges) result.weight += weights[e];
  return result;
}

void check_graph(int n, std::span<const Edge> edges,
                 std::span<const Rational> weights) {
  if (edges.size() != weights.size()) {
    throw std::invalid_argument("matching: edge/weight size mismatch");
  }
  for (const auto& e : edges) {
    if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n || e.u == e.v) {
      throw std::invalid_argument("matching: malformed edge");
    }
  }
}

}  // namespace

MatchingResult max_weight_matching(int n, std::span<const Edge> edges,
                                   std::span<const Rational> weights) {
  check_graph(n, edges, weights);
  const auto shifted = tie_break_weights(weights, +1);
  const auto mates = detail::blossom_mates(n, edges, shifted, false);
  return collect(mates, weights);
}

MatchingResult min_weight_perfect_matching(int n, std::span<const Edge> edges,
                                           std::span<const Rational> weights) {
  check_graph(n, edges, weights);
  if (n % 2 != 0) throw NoPerfectMatching();
  const auto shifted = tie_break_weights(weights, -1);
  const auto mates = detail::blossom_mates(n, edges, shifted, true);
  for (EdgeId e : mates) {
    if (e < 0) throw NoPerfectMatching();
  }
  return collect(mates, weights);
}

namespace detail {

GadgetSolve gadget_b_matching(const Instance& inst,
                              std::span<const Rational> weights) {
  // Vertex copies first, then two gadget vertices per edge.
  std::vector<int> first_copy(static_cast<size_t>(inst.n()));
  int count = 0;
  for (VertexId v = 0; v < inst.n(); ++v) {
    first_copy[v] = count;
    count += inst.capacity(v);
  }
  const int copies = count;
  std::vector<Edge> gedges;
  std::vector<Rational> gweights;
  // Gadget edge id ranges per instance edge, kept for read-out.
  struct GadgetIds {
    int side_u;
    int side_v;
  };
  std::vector<GadgetIds> gadget(static_cast<size_t>(inst.m()));
  for (EdgeId e = 0; e < inst.m(); ++e) {
    const auto [u, v] = inst.edge(e);
    const int eu = copies + 2 * e;
    const int ev = eu + 1;
    gadget[e] = {eu, ev};
    for (int i = 0; i < inst.capacity(u); ++i) {
      gedges.push_back({first_copy[u] + i, eu});
      gweights.push_back(weights[e]);
    }
    gedges.push_back({eu, ev});
    gweights.push_back(weights[e]);
    for (int j = 0; j < inst.capacity(v); ++j) {
      gedges.push_back({first_copy[v] + j, ev});
      gweights.push_back(weights[e]);
    }
  }
  const int gn = copies + 2 * inst.m();
  const auto mates = blossom_mates(gn, gedges, gweights, false);

  GadgetSolve out;
  // Count each matched gadget edge once, from its u endpoint.
  for (size_t v = 0; v < mates.size(); ++v) {
    if (mates[v] >= 0 && gedges[mates[v]].u == static_cast<int>(v)) {
      out.gadget_weight += gweights[mates[v]];
    }
  }
  auto matched_to_copy = [&](int gv) {
    const EdgeId ge = mates[gv];
    return ge >= 0 && gedges[ge].other(gv) < copies;
  };
  for (EdgeId e = 0; e < inst.m(); ++e) {
    // Half-used gadgets (one side on a copy, the other exposed) carry the
    // same value as the inner edge, so they normalize to "not in M".
    if (matched_to_copy(gadget[e].side_u) && matched_to_copy(gadget[e].side_v)) {
      out.matching.edges.push_back(e);
      out.matching.weight += inst.weight(e);
    }
  }
  return out;
}

}  // namespace detail

MatchingResult max_weight_b_matching(const Instance& inst) {
  const auto shifted = tie_break_weights(inst.weights(), +1);
  auto solve = detail::gadget_b_matching(inst, shifted);
  Rational shifted_total;
  for (const auto& w : shifted) shifted_total += w;
  Rational shifted_matching;
  for (EdgeId e : solve.matching.edges) shifted_matching += shifted[e];
  if (solve.gadget_weight != shifted_total + shifted_matching) {
    throw std::logic_error("b-matching gadget identity violated");
  }
  return std::move(solve.matching);
}

Rational nu(const Instance& inst, const Coalition& s) {
  if (s.size() == inst.n()) return max_weight_b_matching(inst).weight;
  return max_weight_b_matching(induced(inst, s).instance).weight;
}

}  // namespace twomatch
