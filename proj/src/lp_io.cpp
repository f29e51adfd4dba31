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
#include <cctype>
#include <ios>
#include <map>
#include <set>
#include <sstream>

#include "twomatch/lp.hpp"

namespace twomatch {

namespace {

constexpr int kTermsPerLine = 8;

// Smallest positive integer k such that k*v has a finite decimal expansion
// for every v in values.
mpz_class decimal_scale(const std::vector<const Rational*>& values) {
  mpz_class k = 1;
  for (const Rational* v : values) {
    mpz_class d = v->denominator();
    while (mpz_divisible_ui_p(d.get_mpz_t(), 2)) d /= 2;
    while (mpz_divisible_ui_p(d.get_mpz_t(), 5)) d /= 5;
    mpz_lcm(k.get_mpz_t(), k.get_mpz_t(), d.get_mpz_t());
  }
  return k;
}

std::string decimal_or_throw(const Rational& v) {
  auto d = v.decimal();
  if (!d) throw std::logic_error("emit_lp: value has no decimal expansion");
  return *d;
}

// "3 x - y + 0.5 z", wrapped every few terms.
std::string linear_text(const ConstraintSystem& sys,
                        const std::vector<Term>& terms, bool exact) {
  std::string out;
  int count = 0;
  for (const auto& t : terms) {
    const bool neg = t.coef.sign() < 0;
    const Rational mag = t.coef.abs();
    if (count > 0 && count % kTermsPerLine == 0) out += "\n   ";
    if (count == 0) {
      if (neg) out += "- ";
    } else {
      out += neg ? " - " : " + ";
    }
    if (mag != Rational(1)) {
      out += exact ? mag.str() : decimal_or_throw(mag);
      out += " ";
    }
    out += sys.variables()[t.var].name;
    ++count;
  }
  return out;
}

void emit_row(std::ostream& out, const ConstraintSystem& sys,
              const std::string& name, const std::vector<Term>& terms,
              const Rational* rhs, Relation rel) {
  std::vector<const Rational*> values;
  for (const auto& t : terms) values.push_back(&t.coef);
  if (rhs) values.push_back(rhs);
  const mpz_class k = decimal_scale(values);
  std::vector<Term> scaled = terms;
  Rational scaled_rhs = rhs ? *rhs : Rational(0);
  if (k != 1) {
    const Rational factor{mpq_class(k)};
    std::string exact = linear_text(sys, terms, true);
    std::replace(exact.begin(), exact.end(), '\n', ' ');
    out << "\\ exact " << name << ": " << exact;
    if (rhs) out << " " << to_string(rel) << " " << rhs->str();
    out << "\n";
    out << "\\ scale " << name << " " << k.get_str() << "\n";
    for (auto& t : scaled) t.coef *= factor;
    scaled_rhs *= factor;
  }
  out << " " << name << ":";
  if (scaled.empty()) {
    if (sys.variable_count() == 0) {
      if (rhs) throw std::logic_error("emit_lp: constraint without variables");
    } else {
      out << " 0 " << sys.variables()[0].name;
    }
  } else {
    out << " " << linear_text(sys, scaled, false);
  }
  if (rhs) out << " " << to_string(rel) << " " << decimal_or_throw(scaled_rhs);
  out << "\n";
}

// ---- reader ----------------------------------------------------------------

enum class TokKind { Name, Label, Number, Plus, Minus, Rel };

struct Token {
  TokKind kind;
  std::string text;
  int line;
};

bool name_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) ||
         std::string_view("_.[]{}#$%&~'^|@?!\"").find(c) !=
             std::string_view::npos;
}

[[noreturn]] void fail(int line, const std::string& msg) {
  throw LpFormatError("line " + std::to_string(line) + ": " + msg);
}

void lex_line(const std::string& text, int line, std::vector<Token>& out) {
  size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      size_t j = i;
      while (j < text.size() &&
             (std::isdigit(static_cast<unsigned char>(text[j])) ||
              text[j] == '.')) {
        ++j;
      }
      out.push_back({TokKind::Number, text.substr(i, j - i), line});
      i = j;
    } else if (name_start(c)) {
      size_t j = i;
      while (j < text.size() && name_char(text[j])) ++j;
      std::string name = text.substr(i, j - i);
      size_t k = j;
      while (k < text.size() && std::isspace(static_cast<unsigned char>(text[k])))
        ++k;
      if (k < text.size() && text[k] == ':') {
        out.push_back({TokKind::Label, std::move(name), line});
        i = k + 1;
      } else {
        out.push_back({TokKind::Name, std::move(name), line});
        i = j;
      }
    } else if (c == '+') {
      out.push_back({TokKind::Plus, "+", line});
      ++i;
    } else if (c == '-') {
      out.push_back({TokKind::Minus, "-", line});
      ++i;
    } else if (c == '<' || c == '>' || c == '=') {
      size_t j = i;
      while (j < text.size() && j < i + 2 &&
             (text[j] == '<' || text[j] == '>' || text[j] == '=')) {
        ++j;
      }
      out.push_back({TokKind::Rel, text.substr(i, j - i), line});
      i = j;
    } else {
      fail(line, std::string("unexpected character '") + c + "'");
    }
  }
}

Relation parse_relation(const Token& t) {
  if (t.text == "<=" || t.text == "=<" || t.text == "<") {
    return Relation::LessEqual;
  }
  if (t.text == ">=" || t.text == "=>" || t.text == ">") {
    return Relation::GreaterEqual;
  }
  if (t.text == "=") return Relation::Equal;
  fail(t.line, "bad relation '" + t.text + "'");
}

Rational parse_number(const Token& t) {
  auto v = Rational::try_parse_decimal(t.text);
  if (!v) fail(t.line, "malformed number '" + t.text + "'");
  return *v;
}

struct RawTerm {
  std::string var;
  Rational coef;
};

struct RawRow {
  std::string name;
  std::vector<RawTerm> terms;
  Relation rel = Relation::LessEqual;
  Rational rhs;
  int line = 0;
};

class Cursor {
 public:
  explicit Cursor(const std::vector<Token>& toks) : toks_(toks) {}
  bool done() const { return i_ >= toks_.size(); }
  const Token& peek() const { return toks_[i_]; }
  const Token& next() { return toks_[i_++]; }
  int line() const { return done() ? (toks_.empty() ? 0 : toks_.back().line)
                                   : peek().line; }

 private:
  const std::vector<Token>& toks_;
  size_t i_ = 0;
};

// Parses "[+|-] [number] name" terms until a relation, label or the end.
std::vector<RawTerm> parse_terms(Cursor& cur) {
  std::vector<RawTerm> terms;
  while (!cur.done()) {
    const TokKind k = cur.peek().kind;
    if (k == TokKind::Rel || k == TokKind::Label) break;
    Rational sign(1);
    while (!cur.done() && (cur.peek().kind == TokKind::Plus ||
                           cur.peek().kind == TokKind::Minus)) {
      if (cur.next().kind == TokKind::Minus) sign = -sign;
    }
    if (cur.done()) fail(cur.line(), "dangling sign");
    Rational coef(1);
    if (cur.peek().kind == TokKind::Number) coef = parse_number(cur.next());
    if (cur.done() || cur.peek().kind != TokKind::Name) {
      fail(cur.line(), "expected a variable name");
    }
    terms.push_back({cur.next().text, sign * coef});
  }
  return terms;
}

Rational parse_signed_number(Cursor& cur) {
  Rational sign(1);
  while (!cur.done() && (cur.peek().kind == TokKind::Plus ||
                         cur.peek().kind == TokKind::Minus)) {
    if (cur.next().kind == TokKind::Minus) sign = -sign;
  }
  if (cur.done() || cur.peek().kind != TokKind::Number) {
    fail(cur.line(), "expected a number");
  }
  return sign * parse_number(cur.next());
}

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::string trim(const std::string& s) {
  size_t b = 0;
  size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

}  // namespace

void emit_lp(const ConstraintSystem& sys, std::ostream& out) {
  out << "\\ twomatch linear system: " << sys.variable_count()
      << " variables, " << sys.constraint_count() << " constraints\n";
  for (int j = 0; j < sys.variable_count(); j += 8) {
    out << "\\ vars:";
    for (int i = j; i < std::min(j + 8, sys.variable_count()); ++i) {
      out << " " << sys.variables()[i].name;
    }
    out << "\n";
  }
  out << "Minimize\n";
  const std::vector<Term> obj(sys.objective().begin(), sys.objective().end());
  emit_row(out, sys, "obj", obj, nullptr, Relation::Equal);
  out << "Subject To\n";
  for (const auto& c : sys.constraints()) {
    emit_row(out, sys, c.name, c.terms, &c.rhs, c.relation);
  }
  bool any_free = false;
  for (const auto& v : sys.variables()) any_free |= !v.nonnegative;
  if (any_free) {
    out << "Bounds\n";
    for (const auto& v : sys.variables()) {
      if (!v.nonnegative) out << " " << v.name << " free\n";
    }
  }
  out << "End\n";
  if (!out) throw std::ios_base::failure("emit_lp: write failed");
}

ConstraintSystem read_lp(std::istream& in) {
  enum class Section { None, Objective, Constraints, Bounds, End };
  Section section = Section::None;
  std::vector<std::string> declared;
  std::map<std::string, mpz_class> scale;
  std::vector<Token> obj_toks;
  std::vector<Token> con_toks;
  std::vector<Token> bound_toks;
  std::vector<int> bound_line_starts;

  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string t = trim(raw);
    if (t.empty()) continue;
    if (t[0] == '\\') {
      std::istringstream words(t.substr(1));
      std::string tag;
      words >> tag;
      if (tag == "vars:") {
        std::string name;
        while (words >> name) declared.push_back(name);
      } else if (tag == "scale") {
        std::string name;
        std::string k;
        words >> name >> k;
        mpz_class factor;
        if (name.empty() || factor.set_str(k, 10) != 0 || factor <= 0) {
          fail(line, "malformed scale comment");
        }
        scale[name] = factor;
      }
      continue;
    }
    std::string body = raw.substr(0, raw.find('\\'));
    const std::string key = lower(trim(body));
    if (key == "minimize" || key == "minimum" || key == "min") {
      section = Section::Objective;
      continue;
    }
    if (key == "maximize" || key == "maximum" || key == "max") {
      fail(line, "only minimization is supported");
    }
    if (key == "subject to" || key == "such that" || key == "st" ||
        key == "s.t.") {
      section = Section::Constraints;
      continue;
    }
    if (key == "bounds" || key == "bound") {
      section = Section::Bounds;
      continue;
    }
    if (key == "end") {
      section = Section::End;
      continue;
    }
    switch (section) {
      case Section::None:
        fail(line, "text before the objective section");
      case Section::End:
        fail(line, "text after End");
      case Section::Objective:
        lex_line(body, line, obj_toks);
        break;
      case Section::Constraints:
        lex_line(body, line, con_toks);
        break;
      case Section::Bounds:
        bound_line_starts.push_back(static_cast<int>(bound_toks.size()));
        lex_line(body, line, bound_toks);
        break;
    }
  }
  if (section != Section::End) fail(line, "missing End");

  // Objective.
  Cursor oc(obj_toks);
  std::string obj_name = "obj";
  if (!oc.done() && oc.peek().kind == TokKind::Label) obj_name = oc.next().text;
  std::vector<RawTerm> obj = parse_terms(oc);
  if (!oc.done()) fail(oc.line(), "unexpected token in objective");

  // Constraints.
  std::vector<RawRow> rows;
  Cursor cc(con_toks);
  while (!cc.done()) {
    RawRow row;
    row.line = cc.line();
    if (cc.peek().kind == TokKind::Label) {
      row.name = cc.next().text;
    } else {
      row.name = "R" + std::to_string(rows.size() + 1);
    }
    row.terms = parse_terms(cc);
    if (cc.done() || cc.peek().kind != TokKind::Rel) {
      fail(cc.line(), "constraint '" + row.name + "' has no relation");
    }
    row.rel = parse_relation(cc.next());
    row.rhs = parse_signed_number(cc);
    rows.push_back(std::move(row));
  }

  // Bounds: only "x free", "x >= 0" and "-inf <= x" style entries.
  std::set<std::string> free_vars;
  std::vector<std::string> bound_names;
  bound_line_starts.push_back(static_cast<int>(bound_toks.size()));
  for (size_t b = 0; b + 1 < bound_line_starts.size(); ++b) {
    std::vector<Token> toks(bound_toks.begin() + bound_line_starts[b],
                            bound_toks.begin() + bound_line_starts[b + 1]);
    if (toks.empty()) continue;
    const int ln = toks.front().line;
    auto is_neg_inf = [](const std::vector<Token>& v, size_t i) {
      return i + 1 < v.size() && v[i].kind == TokKind::Minus &&
             v[i + 1].kind == TokKind::Name &&
             (lower(v[i + 1].text) == "inf" ||
              lower(v[i + 1].text) == "infinity");
    };
    if (toks.size() == 2 && toks[0].kind == TokKind::Name &&
        toks[1].kind == TokKind::Name && lower(toks[1].text) == "free") {
      free_vars.insert(toks[0].text);
      bound_names.push_back(toks[0].text);
    } else if (toks.size() == 4 && toks[0].kind == TokKind::Name &&
               toks[1].kind == TokKind::Rel && toks[1].text == ">=" &&
               is_neg_inf(toks, 2)) {
      free_vars.insert(toks[0].text);
      bound_names.push_back(toks[0].text);
    } else if (toks.size() == 4 && is_neg_inf(toks, 0) &&
               toks[2].kind == TokKind::Rel && toks[2].text == "<=" &&
               toks[3].kind == TokKind::Name) {
      free_vars.insert(toks[3].text);
      bound_names.push_back(toks[3].text);
    } else if (toks.size() == 3 && toks[0].kind == TokKind::Name &&
               toks[1].kind == TokKind::Rel && toks[1].text == ">=" &&
               toks[2].kind == TokKind::Number &&
               parse_number(toks[2]).is_zero()) {
      bound_names.push_back(toks[0].text);
    } else {
      fail(ln, "unsupported bound");
    }
  }

  // Variables: declared order first, then first appearance.
  ConstraintSystem sys;
  auto ensure = [&](const std::string& name) {
    if (auto id = sys.find_variable(name)) return *id;
    return sys.add_variable(name, free_vars.count(name) == 0);
  };
  for (const auto& name : declared) {
    if (sys.find_variable(name)) {
      throw LpFormatError("variable '" + name + "' declared twice");
    }
    ensure(name);
  }
  for (const auto& t : obj) ensure(t.var);
  for (const auto& r : rows) {
    for (const auto& t : r.terms) ensure(t.var);
  }
  for (const auto& name : bound_names) ensure(name);

  auto unscale = [&](const std::string& name, std::vector<Term>& terms,
                     Rational* rhs) {
    auto it = scale.find(name);
    if (it == scale.end()) return;
    const Rational factor{mpq_class(it->second)};
    for (auto& t : terms) t.coef /= factor;
    if (rhs) *rhs /= factor;
  };

  std::vector<Term> obj_terms;
  for (const auto& t : obj) obj_terms.push_back({*sys.find_variable(t.var), t.coef});
  unscale(obj_name, obj_terms, nullptr);
  sys.set_objective(std::move(obj_terms));

  std::set<std::string> row_names;
  for (auto& r : rows) {
    if (!row_names.insert(r.name).second) {
      fail(r.line, "duplicate constraint name '" + r.name + "'");
    }
    std::vector<Term> terms;
    for (const auto& t : r.terms) {
      terms.push_back({*sys.find_variable(t.var), t.coef});
    }
    unscale(r.name, terms, &r.rhs);
    sys.add_constraint(r.name, std::move(terms), r.rel, std::move(r.rhs));
  }
  return sys;
}

}  // namespace twomatch
