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

#ifndef TWOMATCH_ORACLE_HPP
#define TWOMATCH_ORACLE_HPP

// Exhaustive ground truth for desk-scale inputs. Nothing in here calls the
// matching, negative-cycle, separation or LP code.

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "twomatch/model.hpp"
#include "twomatch/negcycle.hpp"

namespace twomatch {

inline constexpr int kOracleMaxEdges = 25;
inline constexpr int kOracleMaxVertices = 12;
inline constexpr int kNegCycleMaxVertices = 9;
inline constexpr int kCutSystemMaxVertices = 10;

class SizeGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Cycles with every vertex of capacity 2, and paths whose inner vertices
/// have capacity 2 (lengths 0..n-1). Each listed once up to direction.
struct ConstraintFamily {
  struct Walk {
    std::vector<VertexId> vertices;
    std::vector<EdgeId> edges;
  };
  std::vector<Walk> cycles;
  std::vector<Walk> paths;
};

/// nu(S) by enumerating every edge subset of G[S]. Guard: <= 25 edges.
Rational nu_bruteforce(const Instance& inst, const Coalition& s);

/// nu(S) for every S, indexed by vertex mask, from one enumeration of all
/// b-matchings of G. Guard: n <= 12.
std::vector<Rational> nu_table_bruteforce(const Instance& inst);

/// Coalition-by-coalition core test. Returns nullopt when p is in the
/// core, else a TotalValue violation or the coalition maximizing
/// nu(S) - p(S) (ties: lexicographically smallest S).
std::optional<Violation> core_check_bruteforce(const Instance& inst,
                                               const Allocation& p);

ConstraintFamily enumerate_constraints(const Instance& inst);

/// Core test through the cycle/path system. The returned violation is the
/// most violated member (ties: enumeration order).
std::optional<Violation> constraint_check_bruteforce(const Instance& inst,
                                                     const Allocation& p);

/// All simple cycles (length >= 3), each once; vertices start at the
/// smallest id and the second vertex is smaller than the last.
std::vector<Cycle> enumerate_cycles(const CostedGraph& g);

/// Minimum-cost simple cycle if its cost is negative. Guard: <= 9 vertices.
std::optional<Cycle> negative_cycle_bruteforce(const CostedGraph& g);

struct CutViolation {
  std::vector<VertexId> side;  // X with delta(X) = B; empty when x_e < 0
  EdgeId edge = -1;
};

/// Checks x >= 0 and x_e <= x(B \ e) for every cut B = delta(X) and every
/// e in B. Guard: <= 10 vertices.
std::optional<CutViolation> check_cut_system(const CostedGraph& g,
                                             std::span<const Rational> x);

}  // namespace twomatch

#endif  // TWOMATCH_ORACLE_HPP
