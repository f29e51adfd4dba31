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

#include <sstream>

#include "support.hpp"
#include "twomatch/flawed.hpp"
#include "twomatch/model.hpp"
#include "twomatch/rational.hpp"

using namespace twomatch;

namespace {

const char* kCounterexample =
    "# counterexample\n"
    "game 5 4\n"
    "vertex 0 1\nvertex 1 1\nvertex 2 2\nvertex 3 2\nvertex 4 1\n"
    "edge 0 2 1\nedge 1 2 1\nedge 2 3 10\nedge 3 4 1\n";

std::string parse_error_message(const std::string& text) {
  try {
    parse_instance_text(text);
  } catch (const ParseError& e) {
    return e.what();
  } catch (const ModelError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("rational values stay in lowest terms") {
  support::Rng rng(11);
  for (int i = 0; i < 500; ++i) {
    const Rational a(rng.uniform(-50, 50), rng.uniform(1, 30));
    const Rational b(rng.uniform(-50, 50), rng.uniform(1, 30));
    CHECK(a.is_normalized());
    CHECK((a + b).is_normalized());
    CHECK((a - b).is_normalized());
    CHECK((a * b).is_normalized());
    if (!b.is_zero()) {
      CHECK((a / b).is_normalized());
      CHECK((a / b) * b == a);
    }
    CHECK((a + b) - b == a);
    CHECK(a.denominator() > 0);
  }
  CHECK(Rational(6, 4).str() == "3/2");
  CHECK(Rational(-6, -4).str() == "3/2");
  CHECK(Rational(3, -6).str() == "-1/2");
  CHECK(Rational(0, 7).str() == "0");
}

TEST_CASE("rational parsing and decimals") {
  CHECK(Rational::parse("7") == Rational(7));
  CHECK(Rational::parse("-10/4") == Rational(-5, 2));
  CHECK_FALSE(Rational::try_parse("1/0"));
  CHECK_FALSE(Rational::try_parse("1.5"));
  CHECK_FALSE(Rational::try_parse("abc"));
  CHECK_THROWS_AS(Rational::parse("x"), std::invalid_argument);
  CHECK(*Rational::try_parse_decimal("0.25") == Rational(1, 4));
  CHECK(*Rational::try_parse_decimal("-3") == Rational(-3));
  CHECK(Rational(1, 8).decimal() == std::optional<std::string>("0.125"));
  CHECK(Rational(-5, 2).decimal() == std::optional<std::string>("-2.5"));
  CHECK(Rational(12).decimal() == std::optional<std::string>("12"));
  CHECK_FALSE(Rational(1, 3).decimal());
  CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-1, 2).abs() == Rational(1, 2));
}

TEST_CASE("counterexample file parses") {
  const Instance inst = parse_instance_text(kCounterexample);
  CHECK(inst.n() == 5);
  CHECK(inst.m() == 4);
  const std::vector<int> caps(inst.capacities().begin(), inst.capacities().end());
  CHECK(caps == std::vector<int>{1, 1, 2, 2, 1});
  CHECK(inst.weight(2) == Rational(10));
  CHECK(inst == counterexample_instance());
  CHECK(inst.find_edge(3, 2) == std::optional<EdgeId>(2));
  CHECK_FALSE(inst.find_edge(0, 1));
  CHECK(inst.total_weight() == Rational(13));
}

TEST_CASE("instance parse edge cases") {
  const Instance single = parse_instance_text("game 1 0\nvertex 0 2\n");
  CHECK(single.n() == 1);
  CHECK(single.m() == 0);
  CHECK(parse_error_message("game 1 0\nvertex 0 3\n").find(
            "capacity out of range") != std::string::npos);
  CHECK(parse_error_message("game 1 0\nvertex 0 0\n").find(
            "capacity out of range") != std::string::npos);
  CHECK(!parse_error_message(
             "game 2 1\nvertex 0 1\nvertex 1 1\nedge 0 1 -1\n")
             .empty());
  CHECK(!parse_error_message(
             "game 2 2\nvertex 0 1\nvertex 1 1\nedge 0 1 1\nedge 1 0 2\n")
             .empty());
  CHECK(!parse_error_message("game 2 1\nvertex 0 1\nvertex 1 1\nedge 0 0 1\n")
             .empty());
  CHECK(!parse_error_message("game 2 1\nvertex 0 1\nvertex 1 1\nedge 0 5 1\n")
             .empty());
  try {
    parse_instance_text("game 2 0\nvertex 0 1\nbogus\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("allocation parsing") {
  const Instance inst = counterexample_instance();
  const Allocation p = parse_allocation_text("0 0\n1 0\n2 2\n3 10\n4 0\n", inst);
  CHECK(p.total() == Rational(12));
  CHECK(p == counterexample_allocation());
  const Allocation z = parse_allocation_text("0 0\n1 0\n2 0\n3 0\n4 0\n", inst);
  CHECK(z == Allocation::zeros(5));
  const Allocation frac =
      parse_allocation_text("4 1/3\n3 -2/6\n2 0\n1 0\n0 5\n", inst);
  CHECK(frac[4] == Rational(1, 3));
  CHECK(frac[3] == Rational(-1, 3));

  auto message = [&](const std::string& text) -> std::string {
    try {
      parse_allocation_text(text, inst);
    } catch (const ParseError& e) {
      return e.what();
    }
    return "";
  };
  CHECK(message("0 0\n1 0\n2 0\n3 0\n").find("allocation incomplete") !=
        std::string::npos);
  CHECK(message("0 0\n0 1\n").find("duplicate vertex") != std::string::npos);
  CHECK(message("9 0\n").find("unknown vertex") != std::string::npos);
  CHECK(message("0 1.5\n").find("malformed rational") != std::string::npos);
}

TEST_CASE("instance and allocation round-trip through text") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const Instance inst = random_instance(seed, 6, Rational(1, 2), 10);
    std::ostringstream out;
    write_instance(inst, out);
    CHECK(parse_instance_text(out.str()) == inst);
    support::Rng rng(seed);
    std::vector<Rational> values;
    for (int v = 0; v < inst.n(); ++v) {
      values.emplace_back(rng.uniform(-9, 9), rng.uniform(1, 6));
    }
    const Allocation p(values);
    std::ostringstream pout;
    write_allocation(p, pout);
    CHECK(parse_allocation_text(pout.str(), inst) == p);
  }
}

TEST_CASE("random instances are deterministic") {
  const Instance a = random_instance(7, 5, Rational(1, 2), 10);
  const Instance b = random_instance(7, 5, Rational(1, 2), 10);
  std::ostringstream sa;
  std::ostringstream sb;
  write_instance(a, sa);
  write_instance(b, sb);
  CHECK(sa.str() == sb.str());
  CHECK(random_instance(7, 6, Rational(0), 10).m() == 0);
  const Instance k4 = random_instance(3, 4, Rational(1), 10);
  CHECK(k4.m() == 6);
  for (EdgeId e = 0; e < k4.m(); ++e) {
    CHECK(k4.weight(e) >= Rational(0));
    CHECK(k4.weight(e) <= Rational(10));
    CHECK(k4.weight(e).is_integer());
  }
}

TEST_CASE("coalitions and allocation sums") {
  const Coalition s({3, 1, 3, 0});
  CHECK(std::vector<VertexId>(s.members().begin(), s.members().end()) ==
        std::vector<VertexId>{0, 1, 3});
  CHECK(s.str() == "{0,1,3}");
  CHECK(s.mask() == 0b1011u);
  CHECK(Coalition::from_mask(0b1011) == s);
  CHECK(Coalition::grand(3).size() == 3);
  CHECK_THROWS(Coalition(std::vector<VertexId>{}));
  const Allocation p = counterexample_allocation();
  CHECK(p.sum(Coalition({2, 3})) == Rational(12));
}

TEST_CASE("induced subinstances keep parent maps") {
  const Instance inst = counterexample_instance();
  const Subinstance sub = induced(inst, Coalition({2, 3, 4}));
  CHECK(sub.instance.n() == 3);
  CHECK(sub.instance.m() == 2);
  CHECK(sub.to_parent == std::vector<VertexId>{2, 3, 4});
  CHECK(sub.edge_to_parent == std::vector<EdgeId>{2, 3});
}

TEST_CASE("violation certificates verify against the instance") {
  const Instance inst = counterexample_instance();
  const Allocation p({0, 0, 1, 11, 0});
  Violation good{ViolationKind::Path, Coalition({0, 1, 2}), Rational(1),
                 Rational(2), {0, 1}};
  CHECK(good.verify(inst, p));
  Violation wrong_sum = good;
  wrong_sum.allocated = Rational(0);
  CHECK_FALSE(wrong_sum.verify(inst, p));
  Violation not_violated = good;
  not_violated.bound = Rational(1);
  CHECK_FALSE(not_violated.verify(inst, p));
  Violation bad_path = good;
  bad_path.witness_edges = {0, 2};
  CHECK_FALSE(bad_path.verify(inst, p));
  CHECK(good.summary() == "kind=Path S={0,1,2} p(S)=1 bound=2");
}
