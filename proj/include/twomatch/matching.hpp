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

#ifndef TWOMATCH_MATCHING_HPP
#define TWOMATCH_MATCHING_HPP

#include <span>
#include <stdexcept>
#include <vector>

#include "twomatch/model.hpp"

namespace twomatch {

struct MatchingResult {
  std::vector<EdgeId> edges;  // sorted
  Rational weight;
};

class NoPerfectMatching : public std::runtime_error {
 public:
  NoPerfectMatching() : std::runtime_error("no perfect matching exists") {}
};

/// Maximum-weight matching in a general graph with rational weights.
/// Among optimal matchings the one maximizing sum 2^(m-1-e) over its edges
/// is returned, i.e. lower edge ids are preferred; the result does not
/// depend on the engine's search order.
MatchingResult max_weight_matching(int n, std::span<const Edge> edges,
                                   std::span<const Rational> weights);

/// Minimum-weight perfect matching, same tie-breaking rule.
/// Throws NoPerfectMatching.
MatchingResult min_weight_perfect_matching(int n, std::span<const Edge> edges,
                                           std::span<const Rational> weights);

/// Maximum-weight b-matching for b <= 2 via the vertex-copy/edge-gadget
/// reduction to ordinary matching. The identity
///   maxweight(gadget graph) = w(E) + w(M)
/// is checked on every call.
MatchingResult max_weight_b_matching(const Instance& inst);

/// nu(S): weight of a maximum b-matching of G[S].
Rational nu(const Instance& inst, const Coalition& s);

namespace detail {

/// The O(n^3) primal-dual blossom engine. Returns mate edge ids per vertex
/// (-1 when exposed). With `max_cardinality` it maximizes weight among
/// maximum-cardinality matchings.
std::vector<EdgeId> blossom_mates(int n, std::span<const Edge> edges,
                                  std::span<const Rational> weights,
                                  bool max_cardinality);

struct GadgetSolve {
  MatchingResult matching;  // in instance edge ids
  Rational gadget_weight;   // optimum of the gadget matching
};

/// b-matching solve that also exposes the gadget optimum (for the identity
/// check in tests) using the supplied per-edge weights.
GadgetSolve gadget_b_matching(const Instance& inst,
                              std::span<const Rational> weights);

}  // namespace detail

}  // namespace twomatch

#endif  // TWOMATCH_MATCHING_HPP
