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

#include "twomatch/model.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

namespace twomatch {

Instance::Instance(std::vector<int> capacities, std::vector<Edge> edges,
                   std::vector<Rational> weights, std::string name)
    : capacity_(std::move(capacities)),
      edges_(std::move(edges)),
      weights_(std::move(weights)),
      incident_(capacity_.size()),
      name_(std::move(name)) {
  if (edges_.size() != weights_.size()) {
    throw ModelError("edge and weight counts differ");
  }
  for (int b : capacity_) {
    if (b < 1 || b > 2) throw ModelError("capacity out of range");
  }
  std::set<std::pair<VertexId, VertexId>> seen;
  for (size_t e = 0; e < edges_.size(); ++e) {
    const auto [u, v] = edges_[e];
    if (u < 0 || v < 0 || u >= n() || v >= n()) {
      throw ModelError("edge endpoint out of range");
    }
    if (u == v) throw ModelError("loop at vertex " + std::to_string(u));
    if (!seen.emplace(std::min(u, v), std::max(u, v)).second) {
      throw ModelError("duplicate edge " + std::to_string(u) + " " +
                       std::to_string(v));
    }
    if (weights_[e].sign() < 0) throw ModelError("negative weight");
    incident_[u].push_back(static_cast<EdgeId>(e));
    incident_[v].push_back(static_cast<EdgeId>(e));
  }
}

std::optional<EdgeId> Instance::find_edge(VertexId u, VertexId v) const {
  for (EdgeId e : incident_[u]) {
    if (edges_[e].other(u) == v) return e;
  }
  return std::nullopt;
}

Rational Instance::total_weight() const {
  Rational total;
  for (const auto& w : weights_) total += w;
  return total;
}

Coalition::Coalition(std::vector<VertexId> members)
    : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()),
                 members_.end());
  if (members_.empty()) throw ModelError("empty coalition");
  if (members_.front() < 0) throw ModelError("negative vertex id");
}

Coalition Coalition::grand(int n) {
  std::vector<VertexId> all(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) all[i] = i;
  return Coalition(std::move(all));
}

Coalition Coalition::from_mask(std::uint64_t mask) {
  std::vector<VertexId> members;
  for (int i = 0; mask != 0; ++i, mask >>= 1) {
    if (mask & 1) members.push_back(i);
  }
  return Coalition(std::move(members));
}

bool Coalition::contains(VertexId v) const {
  return std::binary_search(members_.begin(), members_.end(), v);
}

std::uint64_t Coalition::mask() const {
  std::uint64_t mask = 0;
  for (VertexId v : members_) mask |= std::uint64_t{1} << v;
  return mask;
}

std::string Coalition::str() const {
  std::string out = "{";
  for (size_t i = 0; i < members_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(members_[i]);
  }
  return out + "}";
}

Rational Allocation::total() const {
  Rational total;
  for (const auto& x : values_) total += x;
  return total;
}

Rational Allocation::sum(std::span<const VertexId> vertices) const {
  Rational total;
  for (VertexId v : vertices) total += values_[v];
  return total;
}

Rational Allocation::sum(const Coalition& s) const { return sum(s.members()); }

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::TotalValue:
      return "TotalValue";
    case ViolationKind::Vertex:
      return "Vertex";
    case ViolationKind::Edge:
      return "Edge";
    case ViolationKind::Cycle:
      return "Cycle";
    case ViolationKind::Path:
      return "Path";
    case ViolationKind::Coalition:
      return "Coalition";
  }
  return "?";
}

std::string Violation::summary() const {
  return std::string("kind=") + to_string(kind) + " S=" + coalition.str() +
         " p(S)=" + allocated.str() + " bound=" + bound.str();
}

namespace {

// Walks the witness edges in order and checks they form a simple path (or a
// simple cycle when `closed`) covering exactly the coalition.
bool witness_matches(const Instance& inst, const Violation& v, bool closed) {
  const auto& w = v.witness_edges;
  if (w.empty()) return false;
  for (EdgeId e : w) {
    if (e < 0 || e >= inst.m()) return false;
  }
  std::vector<VertexId> order;
  if (w.size() == 1) {
    if (closed) return false;
    order = {inst.edge(w[0]).u, inst.edge(w[0]).v};
  } else {
    // Orient the first edge so that it leads into the second.
    const Edge& first = inst.edge(w[0]);
    const Edge& second = inst.edge(w[1]);
    VertexId start = first.u;
    if (first.u == second.u || first.u == second.v) start = first.v;
    order.push_back(start);
    VertexId cur = start;
    for (EdgeId e : w) {
      const Edge& ed = inst.edge(e);
      if (ed.u != cur && ed.v != cur) return false;
      cur = ed.other(cur);
      order.push_back(cur);
    }
  }
  if (closed) {
    if (order.front() != order.back() || w.size() < 3) return false;
    order.pop_back();
  }
  std::vector<VertexId> sorted = order;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    return false;
  }
  if (!std::equal(sorted.begin(), sorted.end(), v.coalition.members().begin(),
                  v.coalition.members().end())) {
    return false;
  }
  Rational total;
  for (EdgeId e : w) total += inst.weight(e);
  return total == v.bound;
}

}  // namespace

bool Violation::verify(const Instance& inst, const Allocation& p) const {
  if (coalition.members().empty() || coalition.members().back() >= inst.n()) {
    return false;
  }
  if (p.size() != inst.n() || p.sum(coalition) != allocated) return false;
  switch (kind) {
    case ViolationKind::TotalValue:
      return coalition.size() == inst.n() && allocated != bound;
    case ViolationKind::Vertex:
      return coalition.size() == 1 && bound.is_zero() && allocated < bound;
    case ViolationKind::Edge:
      return witness_edges.size() == 1 && witness_matches(inst, *this, false) &&
             allocated < bound;
    case ViolationKind::Path:
      return witness_matches(inst, *this, false) && allocated < bound;
    case ViolationKind::Cycle:
      return witness_matches(inst, *this, true) && allocated < bound;
    case ViolationKind::Coalition:
      return witness_edges.empty() && allocated < bound;
  }
  return false;
}

Subinstance induced(const Instance& inst, const Coalition& s) {
  std::vector<int> local(static_cast<size_t>(inst.n()), -1);
  Subinstance sub;
  std::vector<int> caps;
  for (VertexId v : s.members()) {
    if (v >= inst.n()) throw ModelError("coalition member out of range");
    local[v] = static_cast<int>(sub.to_parent.size());
    sub.to_parent.push_back(v);
    caps.push_back(inst.capacity(v));
  }
  std::vector<Edge> edges;
  std::vector<Rational> weights;
  for (EdgeId e = 0; e < inst.m(); ++e) {
    const Edge& ed = inst.edge(e);
    if (local[ed.u] < 0 || local[ed.v] < 0) continue;
    edges.push_back({local[ed.u], local[ed.v]});
    weights.push_back(inst.weight(e));
    sub.edge_to_parent.push_back(e);
  }
  sub.instance = Instance(std::move(caps), std::move(edges),
                          std::move(weights), inst.name());
  return sub;
}

namespace {

// Splits a line into whitespace-separated tokens after dropping comments.
std::vector<std::string> tokenize(const std::string& line) {
  std::string body = line.substr(0, line.find('#'));
  std::istringstream ss(body);
  std::vector<std::string> tokens;
  std::string tok;
  while (ss >> tok) tokens.push_back(tok);
  return tokens;
}

int parse_int(const std::string& tok, int line, const char* what) {
  size_t used = 0;
  long value = 0;
  try {
    value = std::stol(tok, &used);
  } catch (const std::exception&) {
    throw ParseError(line, std::string("expected integer ") + what);
  }
  if (used != tok.size() || value < INT32_MIN || value > INT32_MAX) {
    throw ParseError(line, std::string("expected integer ") + what);
  }
  return static_cast<int>(value);
}

}  // namespace

Instance parse_instance(std::istream& in, std::string name) {
  std::string line;
  int lineno = 0;
  int n = -1;
  int m = -1;
  std::vector<int> caps;
  std::vector<bool> declared;
  std::vector<Edge> edges;
  std::vector<Rational> weights;
  std::set<std::pair<int, int>> seen;
  int vertices_read = 0;

  while (std::getline(in, line)) {
    ++lineno;
    auto tok = tokenize(line);
    if (tok.empty()) continue;
    if (n < 0) {
      if (tok.size() != 3 || tok[0] != "game") {
        throw ParseError(lineno, "expected 'game <n> <m>'");
      }
      n = parse_int(tok[1], lineno, "vertex count");
      m = parse_int(tok[2], lineno, "edge count");
      if (n < 0 || m < 0) throw ParseError(lineno, "negative count");
      caps.assign(static_cast<size_t>(n), 0);
      declared.assign(static_cast<size_t>(n), false);
      continue;
    }
    if (vertices_read < n) {
      if (tok.size() != 3 || tok[0] != "vertex") {
        throw ParseError(lineno, "expected 'vertex <id> <b>'");
      }
      const int id = parse_int(tok[1], lineno, "vertex id");
      const int b = parse_int(tok[2], lineno, "capacity");
      if (id < 0 || id >= n) throw ParseError(lineno, "vertex id out of range");
      if (declared[id]) throw ParseError(lineno, "duplicate vertex");
      if (b < 1 || b > 2) throw ParseError(lineno, "capacity out of range");
      declared[id] = true;
      caps[id] = b;
      ++vertices_read;
      continue;
    }
    if (static_cast<int>(edges.size()) >= m) {
      throw ParseError(lineno, "more edges than declared");
    }
    if (tok.size() != 4 || tok[0] != "edge") {
      throw ParseError(lineno, "expected 'edge <u> <v> <w>'");
    }
    const int u = parse_int(tok[1], lineno, "endpoint");
    const int v = parse_int(tok[2], lineno, "endpoint");
    if (u < 0 || v < 0 || u >= n || v >= n) {
      throw ParseError(lineno, "edge endpoint out of range");
    }
    if (u == v) throw ParseError(lineno, "loop");
    auto w = Rational::try_parse(tok[3]);
    if (!w) throw ParseError(lineno, "malformed weight '" + tok[3] + "'");
    if (w->sign() < 0) throw ParseError(lineno, "negative weight");
    if (!seen.emplace(std::min(u, v), std::max(u, v)).second) {
      throw ParseError(lineno, "duplicate edge");
    }
    edges.push_back({u, v});
    weights.push_back(std::move(*w));
  }
  if (n < 0) throw ParseError(lineno, "missing 'game' header");
  if (vertices_read < n) throw ParseError(lineno, "missing vertex lines");
  if (static_cast<int>(edges.size()) < m) {
    throw ParseError(lineno, "fewer edges than declared");
  }
  return Instance(std::move(caps), std::move(edges), std::move(weights),
                  std::move(name));
}

Instance parse_instance_text(const std::string& text, std::string name) {
  std::istringstream in(text);
  return parse_instance(in, std::move(name));
}

Allocation parse_allocation(std::istream& in, const Instance& inst) {
  std::vector<std::optional<Rational>> values(static_cast<size_t>(inst.n()));
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto tok = tokenize(line);
    if (tok.empty()) continue;
    if (tok.size() != 2) throw ParseError(lineno, "expected '<id> <rational>'");
    const int id = parse_int(tok[0], lineno, "vertex id");
    if (id < 0 || id >= inst.n()) throw ParseError(lineno, "unknown vertex");
    if (values[id]) throw ParseError(lineno, "duplicate vertex");
    auto r = Rational::try_parse(tok[1]);
    if (!r) throw ParseError(lineno, "malformed rational '" + tok[1] + "'");
    values[id] = std::move(*r);
  }
  std::vector<Rational> p;
  p.reserve(values.size());
  for (auto& v : values) {
    if (!v) throw ParseError(lineno, "allocation incomplete");
    p.push_back(std::move(*v));
  }
  return Allocation(std::move(p));
}

Allocation parse_allocation_text(const std::string& text,
                                 const Instance& inst) {
  std::istringstream in(text);
  return parse_allocation(in, inst);
}

void write_instance(const Instance& inst, std::ostream& out) {
  if (!inst.name().empty()) out << "# " << inst.name() << "\n";
  out << "game " << inst.n() << " " << inst.m() << "\n";
  for (VertexId v = 0; v < inst.n(); ++v) {
    out << "vertex " << v << " " << inst.capacity(v) << "\n";
  }
  for (EdgeId e = 0; e < inst.m(); ++e) {
    out << "edge " << inst.edge(e).u << " " << inst.edge(e).v << " "
        << inst.weight(e) << "\n";
  }
}

void write_allocation(const Allocation& p, std::ostream& out) {
  for (VertexId v = 0; v < p.size(); ++v) out << v << " " << p[v] << "\n";
}

namespace {

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open '" + path + "'");
  return in;
}

std::string stem(const std::string& path) {
  auto slash = path.find_last_of('/');
  std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
  return base.substr(0, base.find('.'));
}

}  // namespace

Instance read_instance_file(const std::string& path) {
  auto in = open_or_throw(path);
  return parse_instance(in, stem(path));
}

Allocation read_allocation_file(const std::string& path,
                                const Instance& inst) {
  auto in = open_or_throw(path);
  return parse_allocation(in, inst);
}

namespace {

// Unbiased draw from [0, bound) by rejection on the raw 64-bit stream.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x = rng();
  while (x >= limit) x = rng();
  return x % bound;
}

}  // namespace

Instance random_instance(std::uint64_t seed, int n, const Rational& density,
                         int wmax) {
  if (n <= 0) throw ModelError("random_instance: n must be positive");
  if (density.sign() < 0 || density > Rational(1)) {
    throw ModelError("random_instance: density outside [0,1]");
  }
  if (wmax < 0) throw ModelError("random_instance: negative wmax");
  if (!density.denominator().fits_ulong_p()) {
    throw ModelError("random_instance: density denominator too large");
  }
  const std::uint64_t den = density.denominator().get_ui();
  const std::uint64_t num = density.numerator().get_ui();

  std::mt19937_64 rng(seed);
  std::vector<int> caps(static_cast<size_t>(n));
  for (auto& b : caps) b = 1 + static_cast<int>(uniform_below(rng, 2));
  std::vector<Edge> edges;
  std::vector<Rational> weights;
  for (VertexId u = 0; u < n; ++u) {
    for (VertexId v = u + 1; v < n; ++v) {
      if (uniform_below(rng, den) >= num) continue;
      edges.push_back({u, v});
      weights.emplace_back(static_cast<long>(
          uniform_below(rng, static_cast<std::uint64_t>(wmax) + 1)));
    }
  }
  return Instance(std::move(caps), std::move(edges), std::move(weights),
                  "random-" + std::to_string(seed));
}

}  // namespace twomatch
