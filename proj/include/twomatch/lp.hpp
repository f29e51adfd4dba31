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

#ifndef TWOMATCH_LP_HPP
#define TWOMATCH_LP_HPP

#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "twomatch/rational.hpp"

namespace twomatch {

enum class Relation { LessEqual, Equal, GreaterEqual };

const char* to_string(Relation rel);

struct Term {
  int var = 0;
  Rational coef;
  friend bool operator==(const Term&, const Term&) = default;
};

struct Variable {
  std::string name;
  bool nonnegative = true;  // otherwise free
  friend bool operator==(const Variable&, const Variable&) = default;
};

struct Constraint {
  std::string name;
  std::vector<Term> terms;  // sorted by var, no zero coefficients
  Relation relation = Relation::LessEqual;
  Rational rhs;
  friend bool operator==(const Constraint&, const Constraint&) = default;
};

/// Contiguous run of variables and constraints that belong together (one
/// dual block of the extended formulation, for instance).
struct Block {
  std::string label;
  int first_variable = 0;
  int variable_count = 0;
  int first_constraint = 0;
  int constraint_count = 0;
};

/// Linear system over named rational variables with an optional
/// minimization objective. Append-only.
class ConstraintSystem {
 public:
  int add_variable(std::string name, bool nonnegative = true);
  /// Duplicate variables are merged and zero coefficients dropped.
  int add_constraint(std::string name, std::vector<Term> terms, Relation rel,
                     Rational rhs);
  void set_objective(std::vector<Term> terms);

  void begin_block(std::string label);
  void end_block();

  std::span<const Variable> variables() const { return variables_; }
  std::span<const Constraint> constraints() const { return constraints_; }
  std::span<const Term> objective() const { return objective_; }
  std::span<const Block> blocks() const { return blocks_; }
  int variable_count() const { return static_cast<int>(variables_.size()); }
  int constraint_count() const {
    return static_cast<int>(constraints_.size());
  }
  std::optional<int> find_variable(const std::string& name) const;

  /// Blocks are bookkeeping only and do not take part in equality.
  friend bool operator==(const ConstraintSystem& a,
                         const ConstraintSystem& b) {
    return a.variables_ == b.variables_ && a.constraints_ == b.constraints_ &&
           a.objective_ == b.objective_;
  }

 private:
  std::vector<Variable> variables_;
  std::vector<Constraint> constraints_;
  std::vector<Term> objective_;
  std::vector<Block> blocks_;
  std::map<std::string, int> index_;
  std::optional<Block> open_block_;
};

std::vector<Term> normalize_terms(std::vector<Term> terms);

/// Exact check of every constraint and sign restriction.
bool satisfies(const ConstraintSystem& sys, std::span<const Rational> values);

/// Left-hand side value of one constraint.
Rational evaluate(const Constraint& c, std::span<const Rational> values);

/// The system restricted to the variables of `block`; terms on variables
/// outside the block are evaluated with `fixed` (indexed like sys) and
/// moved to the right-hand side. Constraints outside the block are dropped.
ConstraintSystem restrict_to_block(const ConstraintSystem& sys,
                                   const Block& block,
                                   std::span<const std::optional<Rational>> fixed);

enum class LpStatus { Optimal, Unbounded, Infeasible };

const char* to_string(LpStatus status);

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Rational objective;           // valid when Optimal
  std::vector<Rational> values;  // primal point when Optimal
  long pivots = 0;
};

/// Two-phase dense tableau simplex over exact rationals with Bland's rule.
/// Minimizes the objective (zero if unset).
LpResult solve_lp(const ConstraintSystem& sys);

struct Feasibility {
  bool feasible = false;
  std::vector<Rational> witness;  // re-verified by substitution
};

/// Phase I only.
Feasibility simplex_feasible(const ConstraintSystem& sys);

class LpFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Writes the system in the algebraic LP text format (Minimize / Subject
/// To / Bounds / End). Coefficients are written as exact decimals. A row
/// holding a value without a finite decimal expansion is multiplied by the
/// smallest positive integer that gives it one; a "\ scale" comment records
/// the factor and a "\ exact" comment the original fractions, so the
/// internal reader restores the row exactly. A "\ vars" comment fixes the
/// variable order. Throws std::ios_base::failure on stream errors.
void emit_lp(const ConstraintSystem& sys, std::ostream& out);

/// Reads text produced by emit_lp (and plain LP files using the same
/// subset). Throws LpFormatError.
ConstraintSystem read_lp(std::istream& in);

}  // namespace twomatch

#endif  // TWOMATCH_LP_HPP
