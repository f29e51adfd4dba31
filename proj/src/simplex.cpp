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

#include <gmpxx.h>

#include <stdexcept>
#include <vector>

#include "twomatch/lp.hpp"

namespace twomatch {

namespace {

// Standard form: every row is an equality with nonnegative right-hand side.
// Columns are the split structural variables followed by slack/surplus
// columns. Artificial variables have no stored column; once one leaves the
// basis it can never come back, which is all Phase I needs.
class Tableau {
 public:
  explicit Tableau(const ConstraintSystem& sys) : sys_(sys) {
    const int nvar = sys.variable_count();
    pos_.resize(nvar);
    neg_.assign(nvar, -1);
    int cols = 0;
    for (int j = 0; j < nvar; ++j) {
      pos_[j] = cols++;
      if (!sys.variables()[j].nonnegative) neg_[j] = cols++;
    }
    structural_ = cols;
    for (const auto& c : sys.constraints()) {
      if (c.relation != Relation::Equal) ++cols;
    }
    cols_ = cols;
    rows_ = sys.constraint_count();
    a_.assign(rows_, std::vector<mpq_class>(cols_));
    rhs_.resize(rows_);
    basis_.resize(rows_);
    active_.assign(rows_, 1);

    int slack = structural_;
    for (int r = 0; r < rows_; ++r) {
      const Constraint& c = sys.constraints()[r];
      const bool flip = c.rhs.sign() < 0;
      Relation rel = c.relation;
      if (flip && rel != Relation::Equal) {
        rel = rel == Relation::LessEqual ? Relation::GreaterEqual
                                         : Relation::LessEqual;
      }
      for (const auto& t : c.terms) {
        mpq_class v = t.coef.mpq();
        if (flip) v = -v;
        a_[r][pos_[t.var]] = v;
        if (neg_[t.var] >= 0) a_[r][neg_[t.var]] = -v;
      }
      rhs_[r] = flip ? mpq_class(-c.rhs.mpq()) : c.rhs.mpq();
      if (rel == Relation::LessEqual) {
        a_[r][slack] = 1;
        basis_[r] = slack++;
      } else {
        if (rel == Relation::GreaterEqual) a_[r][slack++] = -1;
        basis_[r] = artificial(r);
      }
    }
  }

  // Returns false when the system is infeasible.
  bool phase_one() {
    d_.assign(cols_, mpq_class(0));
    value_ = 0;
    for (int r = 0; r < rows_; ++r) {
      if (!is_artificial(basis_[r])) continue;
      value_ += rhs_[r];
      for (int j = 0; j < cols_; ++j) {
        if (sgn(a_[r][j]) != 0) d_[j] -= a_[r][j];
      }
    }
    if (!iterate()) throw std::logic_error("simplex: phase one unbounded");
    if (sgn(value_) > 0) return false;
    // Drive remaining (zero-valued) artificials out or drop their rows.
    for (int r = 0; r < rows_; ++r) {
      if (!active_[r] || !is_artificial(basis_[r])) continue;
      int col = -1;
      for (int j = 0; j < cols_ && col < 0; ++j) {
        if (sgn(a_[r][j]) != 0) col = j;
      }
      if (col >= 0) {
        pivot(r, col);
      } else {
        active_[r] = 0;
      }
    }
    return true;
  }

  // Returns false when the objective is unbounded below.
  bool phase_two() {
    std::vector<mpq_class> cost(cols_);
    for (const auto& t : sys_.objective()) {
      cost[pos_[t.var]] = t.coef.mpq();
      if (neg_[t.var] >= 0) cost[neg_[t.var]] = -t.coef.mpq();
    }
    d_ = cost;
    value_ = 0;
    mpq_class tmp;
    for (int r = 0; r < rows_; ++r) {
      if (!active_[r]) continue;
      const mpq_class& cb = cost[basis_[r]];
      if (sgn(cb) == 0) continue;
      value_ += cb * rhs_[r];
      for (int j = 0; j < cols_; ++j) {
        if (sgn(a_[r][j]) == 0) continue;
        mpq_mul(tmp.get_mpq_t(), cb.get_mpq_t(), a_[r][j].get_mpq_t());
        mpq_sub(d_[j].get_mpq_t(), d_[j].get_mpq_t(), tmp.get_mpq_t());
      }
    }
    return iterate();
  }

  std::vector<Rational> point() const {
    std::vector<mpq_class> col(cols_);
    for (int r = 0; r < rows_; ++r) {
      if (active_[r] && !is_artificial(basis_[r])) col[basis_[r]] = rhs_[r];
    }
    std::vector<Rational> x;
    x.reserve(pos_.size());
    for (size_t j = 0; j < pos_.size(); ++j) {
      mpq_class v = col[pos_[j]];
      if (neg_[j] >= 0) v -= col[neg_[j]];
      x.emplace_back(std::move(v));
    }
    return x;
  }

  const mpq_class& value() const { return value_; }
  long pivots() const { return pivots_; }

 private:
  int artificial(int r) const { return cols_ + r; }
  bool is_artificial(int col) const { return col >= cols_; }

  // Bland's rule: smallest improving column enters, smallest basic index
  // leaves among ratio ties.
  bool iterate() {
    for (;;) {
      int enter = -1;
      for (int j = 0; j < cols_; ++j) {
        if (sgn(d_[j]) < 0) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;
      int leave = -1;
      mpq_class best;
      mpq_class ratio;
      for (int r = 0; r < rows_; ++r) {
        if (!active_[r] || sgn(a_[r][enter]) <= 0) continue;
        mpq_div(ratio.get_mpq_t(), rhs_[r].get_mpq_t(),
                a_[r][enter].get_mpq_t());
        if (leave < 0 || ratio < best ||
            (ratio == best && basis_[r] < basis_[leave])) {
          leave = r;
          best = ratio;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  }

  void pivot(int r, int c) {
    ++pivots_;
    std::vector<mpq_class>& row = a_[r];
    const mpq_class piv = row[c];
    std::vector<int> nz;
    for (int j = 0; j < cols_; ++j) {
      if (sgn(row[j]) == 0) continue;
      row[j] /= piv;
      nz.push_back(j);
    }
    rhs_[r] /= piv;
    mpq_class f;
    mpq_class tmp;
    for (int i = 0; i < rows_; ++i) {
      if (i == r || !active_[i] || sgn(a_[i][c]) == 0) continue;
      f = a_[i][c];
      std::vector<mpq_class>& target = a_[i];
      for (int j : nz) {
        mpq_mul(tmp.get_mpq_t(), f.get_mpq_t(), row[j].get_mpq_t());
        mpq_sub(target[j].get_mpq_t(), target[j].get_mpq_t(),
                tmp.get_mpq_t());
      }
      mpq_mul(tmp.get_mpq_t(), f.get_mpq_t(), rhs_[r].get_mpq_t());
      mpq_sub(rhs_[i].get_mpq_t(), rhs_[i].get_mpq_t(), tmp.get_mpq_t());
    }
    if (sgn(d_[c]) != 0) {
      f = d_[c];
      for (int j : nz) {
        mpq_mul(tmp.get_mpq_t(), f.get_mpq_t(), row[j].get_mpq_t());
        mpq_sub(d_[j].get_mpq_t(), d_[j].get_mpq_t(), tmp.get_mpq_t());
      }
      value_ += f * rhs_[r];
    }
    basis_[r] = c;
  }

  const ConstraintSystem& sys_;
  std::vector<int> pos_;
  std::vector<int> neg_;
  int structural_ = 0;
  int cols_ = 0;
  int rows_ = 0;
  std::vector<std::vector<mpq_class>> a_;
  std::vector<mpq_class> rhs_;
  std::vector<int> basis_;
  std::vector<char> active_;
  std::vector<mpq_class> d_;
  mpq_class value_;
  long pivots_ = 0;
};

}  // namespace

LpResult solve_lp(const ConstraintSystem& sys) {
  Tableau tab(sys);
  LpResult result;
  if (!tab.phase_one()) {
    result.status = LpStatus::Infeasible;
    result.pivots = tab.pivots();
    return result;
  }
  if (!tab.phase_two()) {
    result.status = LpStatus::Unbounded;
    result.pivots = tab.pivots();
    return result;
  }
  result.status = LpStatus::Optimal;
  result.objective = Rational(tab.value());
  result.values = tab.point();
  result.pivots = tab.pivots();
  if (!satisfies(sys, result.values)) {
    throw std::logic_error("simplex: optimal point fails substitution");
  }
  return result;
}

Feasibility simplex_feasible(const ConstraintSystem& sys) {
  Tableau tab(sys);
  Feasibility f;
  if (!tab.phase_one()) return f;
  f.feasible = true;
  f.witness = tab.point();
  if (!satisfies(sys, f.witness)) {
    throw std::logic_error("simplex: feasible point fails substitution");
  }
  return f;
}

}  // namespace twomatch
