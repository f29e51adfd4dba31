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

#ifndef TWOMATCH_MODEL_HPP
#define TWOMATCH_MODEL_HPP

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "twomatch/rational.hpp"

namespace twomatch {

using VertexId = int;
using EdgeId = int;

struct Edge {
  VertexId u = 0;
  VertexId v = 0;

  VertexId other(VertexId x) const { return x == u ? v : u; }
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Raised for structurally invalid instances or allocations.
class ModelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised by the text readers; carries the 1-based line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// A 2-matching game (G, b, w): simple undirected graph, capacities in
/// {1, 2}, nonnegative rational edge weights. Immutable once built.
class Instance {
 public:
  Instance() = default;
  Instance(std::vector<int> capacities, std::vector<Edge> edges,
           std::vector<Rational> weights, std::string name = {});

  int n() const { return static_cast<int>(capacity_.size()); }
  int m() const { return static_cast<int>(edges_.size()); }
  const std::string& name() const { return name_; }

  int capacity(VertexId v) const { return capacity_[v]; }
  std::span<const int> capacities() const { return capacity_; }
  const Edge& edge(EdgeId e) const { return edges_[e]; }
  std::span<const Edge> edges() const { return edges_; }
  const Rational& weight(EdgeId e) const { return weights_[e]; }
  std::span<const Rational> weights() const { return weights_; }

  /// Incident edge ids of v in file order.
  std::span<const EdgeId> incident(VertexId v) const { return incident_[v]; }
  int degree(VertexId v) const { return static_cast<int>(incident_[v].size()); }
  std::optional<EdgeId> find_edge(VertexId u, VertexId v) const;

  Rational total_weight() const;

  friend bool operator==(const Instance& a, const Instance& b) {
    return a.capacity_ == b.capacity_ && a.edges_ == b.edges_ &&
           a.weights_ == b.weights_;
  }

 private:
  std::vector<int> capacity_;
  std::vector<Edge> edges_;
  std::vector<Rational> weights_;
  std::vector<std::vector<EdgeId>> incident_;
  std::string name_;
};

/// Sorted, duplicate-free, nonempty set of players.
class Coalition {
 public:
  Coalition() = default;
  explicit Coalition(std::vector<VertexId> members);
  static Coalition grand(int n);
  static Coalition from_mask(std::uint64_t mask);

  std::span<const VertexId> members() const { return members_; }
  int size() const { return static_cast<int>(members_.size()); }
  bool contains(VertexId v) const;
  std::uint64_t mask() const;
  std::string str() const;

  friend bool operator==(const Coalition&, const Coalition&) = default;
  friend auto operator<=>(const Coalition&, const Coalition&) = default;

 private:
  std::vector<VertexId> members_;
};

/// Payoff vector indexed by VertexId.
class Allocation {
 public:
  Allocation() = default;
  explicit Allocation(std::vector<Rational> values)
      : values_(std::move(values)) {}
  static Allocation zeros(int n) {
    return Allocation(std::vector<Rational>(static_cast<size_t>(n)));
  }

  int size() const { return static_cast<int>(values_.size()); }
  const Rational& operator[](VertexId v) const { return values_[v]; }
  Rational& operator[](VertexId v) { return values_[v]; }
  std::span<const Rational> values() const { return values_; }

  Rational total() const;
  Rational sum(const Coalition& s) const;
  Rational sum(std::span<const VertexId> vertices) const;

  friend bool operator==(const Allocation&, const Allocation&) = default;

 private:
  std::vector<Rational> values_;
};

enum class ViolationKind { TotalValue, Vertex, Edge, Cycle, Path, Coalition };

const char* to_string(ViolationKind kind);

/// Certificate that an allocation lies outside the core: the coalition S,
/// p(S) and the violated right-hand side. For cycles and paths the witness
/// edges (instance edge ids, in traversal order) are included.
struct Violation {
  ViolationKind kind = ViolationKind::TotalValue;
  Coalition coalition;
  Rational allocated;
  Rational bound;
  std::vector<EdgeId> witness_edges;

  /// Re-checks the certificate arithmetic against the instance: p(S)
  /// matches, the strict inequality holds and any witness is a simple
  /// cycle/path spanning exactly S with bound = w(witness).
  bool verify(const Instance& inst, const Allocation& p) const;

  /// "kind=<K> S={ids} p(S)=<r> bound=<r>"
  std::string summary() const;
};

/// Induced subgame on S. `to_parent` maps new vertex ids to old ones and
/// `edge_to_parent` new edge ids to old ones.
struct Subinstance {
  Instance instance;
  std::vector<VertexId> to_parent;
  std::vector<EdgeId> edge_to_parent;
};
Subinstance induced(const Instance& inst, const Coalition& s);

// Text formats.
Instance parse_instance(std::istream& in, std::string name = {});
Instance parse_instance_text(const std::string& text, std::string name = {});
Allocation parse_allocation(std::istream& in, const Instance& inst);
Allocation parse_allocation_text(const std::string& text, const Instance& inst);
void write_instance(const Instance& inst, std::ostream& out);
void write_allocation(const Allocation& p, std::ostream& out);

Instance read_instance_file(const std::string& path);
Allocation read_allocation_file(const std::string& path, const Instance& inst);

/// Deterministic G(n, density) generator. Only the raw mt19937_64 stream
/// is used, so the output is identical across standard libraries.
Instance random_instance(std::uint64_t seed, int n, const Rational& density,
                         int wmax);

}  // namespace twomatch

#endif  // TWOMATCH_MODEL_HPP
