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

#include <algorithm>

#include "twomatch/lp.hpp"

namespace twomatch {

const char* to_string(Relation rel) {
  switch (rel) {
    case Relation::LessEqual:
      return "<=";
    case Relation::Equal:
      return "=";
    case Relation::GreaterEqual:
      return ">=";
  }
  return "?";
}

const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::Optimal:
      return "Optimal";
    case LpStatus::Unbounded:
      return "Unbounded";
    case LpStatus::Infeasible:
      return "Infeasible";
  }
  return "?";
}

std::vector<Term> normalize_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return a.var < b.var; });
  std::vector<Term> out;
  for (auto& t : terms) {
    if (!out.empty() && out.back().var == t.var) {
      out.back().coef += t.coef;
    } else {
      out.push_back(std::move(t));
    }
  }
  std::erase_if(out, [](const Term& t) { return t.coef.is_zero(); });
  return out;
}

int ConstraintSystem::add_variable(std::string name, bool nonnegative) {
  const int id = variable_count();
  if (!index_.emplace(name, id).second) {
    throw std::invalid_argument("duplicate variable '" + name + "'");
  }
  variables_.push_back({std::move(name), nonnegative});
  return id;
}

int ConstraintSystem::add_constraint(std::string name, std::vector<Term> terms,
                                     Relation rel, Rational rhs) {
  for (const auto& t : terms) {
    if (t.var < 0 || t.var >= variable_count()) {
      throw std::invalid_argument("constraint '" + name +
                                  "' references an undeclared variable");
    }
  }
  constraints_.push_back(
      {std::move(name), normalize_terms(std::move(terms)), rel, std::move(rhs)});
  return constraint_count() - 1;
}

void ConstraintSystem::set_objective(std::vector<Term> terms) {
  for (const auto& t : terms) {
    if (t.var < 0 || t.var >= variable_count()) {
      throw std::invalid_argument("objective references an undeclared variable");
    }
  }
  objective_ = normalize_terms(std::move(terms));
}

void ConstraintSystem::begin_block(std::string label) {
  if (open_block_) throw std::logic_error("nested constraint blocks");
  open_block_ = Block{std::move(label), variable_count(), 0,
                      constraint_count(), 0};
}

void ConstraintSystem::end_block() {
  if (!open_block_) throw std::logic_error("no open constraint block");
  open_block_->variable_count = variable_count() - open_block_->first_variable;
  open_block_->constraint_count =
      constraint_count() - open_block_->first_constraint;
  blocks_.push_back(std::move(*open_block_));
  open_block_.reset();
}

std::optional<int> ConstraintSystem::find_variable(
    const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Rational evaluate(const Constraint& c, std::span<const Rational> values) {
  Rational lhs;
  for (const auto& t : c.terms) lhs += t.coef * values[t.var];
  return lhs;
}

bool satisfies(const ConstraintSystem& sys, std::span<const Rational> values) {
  if (static_cast<int>(values.size()) != sys.variable_count()) return false;
  for (int j = 0; j < sys.variable_count(); ++j) {
    if (sys.variables()[j].nonnegative && values[j].sign() < 0) return false;
  }
  for (const auto& c : sys.constraints()) {
    const Rational lhs = evaluate(c, values);
    switch (c.relation) {
      case Relation::LessEqual:
        if (lhs > c.rhs) return false;
        break;
      case Relation::Equal:
        if (lhs != c.rhs) return false;
        break;
      case Relation::GreaterEqual:
        if (lhs < c.rhs) return false;
        break;
    }
  }
  return true;
}

ConstraintSystem restrict_to_block(
    const ConstraintSystem& sys, const Block& block,
    std::span<const std::optional<Rational>> fixed) {
  ConstraintSystem out;
  const int lo = block.first_variable;
  const int hi = lo + block.variable_count;
  for (int j = lo; j < hi; ++j) {
    out.add_variable(sys.variables()[j].name, sys.variables()[j].nonnegative);
  }
  for (int r = block.first_constraint;
       r < block.first_constraint + block.constraint_count; ++r) {
    const Constraint& c = sys.constraints()[r];
    std::vector<Term> terms;
    Rational rhs = c.rhs;
    for (const auto& t : c.terms) {
      if (t.var >= lo && t.var < hi) {
        terms.push_back({t.var - lo, t.coef});
      } else {
        if (!fixed[t.var]) {
          throw std::invalid_argument("restrict_to_block: variable '" +
                                      sys.variables()[t.var].name +
                                      "' outside the block is not fixed");
        }
        rhs -= t.coef * *fixed[t.var];
      }
    }
    out.add_constraint(c.name, std::move(terms), c.relation, std::move(rhs));
  }
  return out;
}

}  // namespace twomatch
