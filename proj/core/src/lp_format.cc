// Copyright 2026 The robust_fluid Authors
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

#include "robust_fluid/lp_format.h"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <sstream>
#include <unordered_map>
#include <vector>

#include "io_util.h"
#include "robust_fluid/errors.h"

namespace robust_fluid {

namespace {

using internal::FormatExact;

bool IsReserved(std::string_view name) {
  return name == "inf" || name == "free" || name == "min" || name == "bounds";
}

bool IsValidName(std::string_view name) {
  if (name.empty() || IsReserved(name)) return false;
  if (!(std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_')) return false;
  for (char ch : name) {
    if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '.')) return false;
  }
  return true;
}

void WriteExpr(std::ostringstream& out, const std::vector<Term>& terms,
               const std::vector<LpColumn>& columns) {
  bool first = true;
  for (const Term& t : terms) {
    if (t.coef == 0.0) continue;
    const bool negative = std::signbit(t.coef);
    if (first) {
      out << (negative ? "-" : "");
    } else {
      out << (negative ? " - " : " + ");
    }
    out << FormatExact(std::abs(t.coef)) << ' ' << columns[t.col].name;
    first = false;
  }
  if (first) out << '0';
}

const char* RelationToken(Relation rel) {
  switch (rel) {
    case Relation::kLessEqual:
      return "<=";
    case Relation::kGreaterEqual:
      return ">=";
    case Relation::kEqual:
      return "=";
  }
  return "=";
}

enum class Tok { kName, kNumber, kColon, kSemicolon, kPlus, kMinus, kLe, kGe, kEq, kEnd };

struct Token {
  Tok kind = Tok::kEnd;
  std::string text;
  double number = 0.0;
  std::optional<std::string> comment;  // comment immediately preceding
  int line = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token Next() {
    Token tok;
    for (;;) {
      while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
        if (text_[pos_] == '\n') ++line_;
        ++pos_;
      }
      if (text_.substr(pos_, 2) == "/*") {
        const std::size_t end = text_.find("*/", pos_ + 2);
        if (end == std::string_view::npos) Fail("unterminated comment");
        std::string body(text_.substr(pos_ + 2, end - pos_ - 2));
        for (char ch : body) line_ += ch == '\n';
        const auto b = body.find_first_not_of(" \t\r\n");
        const auto e = body.find_last_not_of(" \t\r\n");
        tok.comment = b == std::string::npos ? std::string() : body.substr(b, e - b + 1);
        pos_ = end + 2;
        continue;
      }
      break;
    }
    tok.line = line_;
    if (pos_ >= text_.size()) return tok;
    const char ch = text_[pos_];
    auto single = [&](Tok kind) {
      tok.kind = kind;
      tok.text = std::string(1, ch);
      ++pos_;
      return tok;
    };
    switch (ch) {
      case ':':
        return single(Tok::kColon);
      case ';':
        return single(Tok::kSemicolon);
      case '+':
        return single(Tok::kPlus);
      case '-':
        return single(Tok::kMinus);
      case '=':
        return single(Tok::kEq);
      case '<':
      case '>':
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '=') {
          tok.kind = ch == '<' ? Tok::kLe : Tok::kGe;
          tok.text = std::string(text_.substr(pos_, 2));
          pos_ += 2;
          return tok;
        }
        Fail(std::string("expected '") + ch + "='");
      default:
        break;
    }
    if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') {
      const std::string rest(text_.substr(pos_, 64));
      char* end = nullptr;
      tok.number = std::strtod(rest.c_str(), &end);
      const std::size_t len = static_cast<std::size_t>(end - rest.c_str());
      if (len == 0) Fail("malformed number");
      tok.kind = Tok::kNumber;
      tok.text = rest.substr(0, len);
      pos_ += len;
      return tok;
    }
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      std::size_t end = pos_;
      while (end < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_' ||
              text_[end] == '.')) {
        ++end;
      }
      tok.text = std::string(text_.substr(pos_, end - pos_));
      pos_ = end;
      if (tok.text == "inf") {
        tok.kind = Tok::kNumber;
        tok.number = kInf;
      } else {
        tok.kind = Tok::kName;
      }
      return tok;
    }
    Fail(std::string("unexpected character '") + ch + "'");
  }

  [[noreturn]] void Fail(const std::string& what) const {
    throw ValidationError("LP text line " + std::to_string(line_) + ": " + what);
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
};

struct PendingRow {
  std::string name;
  std::vector<std::pair<std::string, double>> terms;
  Relation relation = Relation::kEqual;
  double rhs = 0.0;
  std::string annotation;
  int line = 0;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : lex_(text) { Advance(); }

  LpProblem Parse() {
    ExpectName("min");
    Expect(Tok::kColon, "':'");
    auto objective = ParseExpr();
    Expect(Tok::kSemicolon, "';'");

    std::vector<PendingRow> rows;
    while (!(tok_.kind == Tok::kName && tok_.text == "bounds")) {
      if (tok_.kind != Tok::kName) Fail("expected a row name or 'bounds:'");
      PendingRow row;
      row.annotation = tok_.comment.value_or("");
      row.name = tok_.text;
      row.line = tok_.line;
      Advance();
      Expect(Tok::kColon, "':' after row name");
      row.terms = ParseExpr();
      row.relation = ParseRelation();
      row.rhs = ParseNumber();
      Expect(Tok::kSemicolon, "';'");
      rows.push_back(std::move(row));
    }
    Advance();
    Expect(Tok::kColon, "':' after 'bounds'");

    LpProblem lp;
    std::unordered_map<std::string, int> index;
    while (tok_.kind != Tok::kEnd) {
      double lower = 0.0;
      double upper = kInf;
      std::string name;
      if (tok_.kind == Tok::kName) {
        name = tok_.text;
        Advance();
        if (tok_.kind == Tok::kName && tok_.text == "free") {
          Advance();
          lower = -kInf;
        } else if (tok_.kind == Tok::kEq) {
          Advance();
          lower = upper = ParseNumber();
        } else if (tok_.kind == Tok::kGe) {
          Advance();
          lower = ParseNumber();
        } else {
          Fail("expected 'free', '=' or '>=' after column '" + name + "'");
        }
      } else {
        lower = ParseNumber();
        Expect(Tok::kLe, "'<='");
        if (tok_.kind != Tok::kName) Fail("expected column name");
        name = tok_.text;
        Advance();
        Expect(Tok::kLe, "'<='");
        upper = ParseNumber();
      }
      Expect(Tok::kSemicolon, "';'");
      if (!index.emplace(name, lp.num_columns()).second) {
        Fail("column '" + name + "' listed twice in bounds");
      }
      lp.AddColumn(name, lower, upper);
    }

    auto resolve = [&](const std::string& name, int line) {
      auto it = index.find(name);
      if (it == index.end()) {
        throw ValidationError("LP text line " + std::to_string(line) + ": unknown column '" +
                              name + "'");
      }
      return it->second;
    };
    for (const auto& [name, coef] : objective) {
      const int col = resolve(name, 1);
      lp.SetObjective(col, lp.column(col).objective + coef);
    }
    for (PendingRow& row : rows) {
      std::vector<Term> terms;
      for (const auto& [name, coef] : row.terms) terms.push_back({resolve(name, row.line), coef});
      lp.AddRow(std::move(row.name), std::move(terms), row.relation, row.rhs,
                std::move(row.annotation));
    }
    const auto issues = lp.Validate();
    if (!issues.empty()) throw ValidationError("LP text: " + issues.front());
    return lp;
  }

 private:
  void Advance() { tok_ = lex_.Next(); }
  [[noreturn]] void Fail(const std::string& what) const {
    throw ValidationError("LP text line " + std::to_string(tok_.line) + ": " + what);
  }
  void Expect(Tok kind, const char* what) {
    if (tok_.kind != kind) Fail(std::string("expected ") + what);
    Advance();
  }
  void ExpectName(const char* name) {
    if (tok_.kind != Tok::kName || tok_.text != name) Fail(std::string("expected '") + name + "'");
    Advance();
  }

  double ParseNumber() {
    double sign = 1.0;
    if (tok_.kind == Tok::kMinus || tok_.kind == Tok::kPlus) {
      sign = tok_.kind == Tok::kMinus ? -1.0 : 1.0;
      Advance();
    }
    if (tok_.kind != Tok::kNumber) Fail("expected a number");
    const double v = sign * tok_.number;
    Advance();
    return v;
  }

  Relation ParseRelation() {
    Relation rel;
    switch (tok_.kind) {
      case Tok::kLe:
        rel = Relation::kLessEqual;
        break;
      case Tok::kGe:
        rel = Relation::kGreaterEqual;
        break;
      case Tok::kEq:
        rel = Relation::kEqual;
        break;
      default:
        Fail("expected '<=', '>=' or '='");
    }
    Advance();
    return rel;
  }

  std::vector<std::pair<std::string, double>> ParseExpr() {
    std::vector<std::pair<std::string, double>> terms;
    if (tok_.kind == Tok::kNumber && tok_.number == 0.0) {
      Advance();
      if (tok_.kind != Tok::kName) return terms;
      terms.emplace_back(tok_.text, 0.0);
      Advance();
    }
    bool first = terms.empty();
    for (;;) {
      double sign = 1.0;
      if (tok_.kind == Tok::kPlus || tok_.kind == Tok::kMinus) {
        sign = tok_.kind == Tok::kMinus ? -1.0 : 1.0;
        Advance();
      } else if (!first) {
        return terms;
      }
      if (tok_.kind != Tok::kNumber) Fail("expected a coefficient");
      const double coef = sign * tok_.number;
      Advance();
      if (tok_.kind != Tok::kName) Fail("expected a column name after coefficient");
      terms.emplace_back(tok_.text, coef);
      Advance();
      first = false;
    }
  }

  Lexer lex_;
  Token tok_;
};

}  // namespace

std::string LpToText(const LpProblem& problem) {
  const auto& columns = problem.columns();
  for (const LpColumn& c : columns) {
    if (!IsValidName(c.name)) {
      throw ValidationError("LP export: invalid column name '" + c.name + "'");
    }
  }
  std::ostringstream out;
  out << "min: ";
  std::vector<Term> objective;
  for (int j = 0; j < problem.num_columns(); ++j) {
    if (columns[j].objective != 0.0) objective.push_back({j, columns[j].objective});
  }
  WriteExpr(out, objective, columns);
  out << ";\n";
  for (const LpRow& row : problem.rows()) {
    if (!IsValidName(row.name)) {
      throw ValidationError("LP export: invalid row name '" + row.name + "'");
    }
    if (row.annotation.find("*/") != std::string::npos) {
      throw ValidationError("LP export: annotation of row '" + row.name + "' contains '*/'");
    }
    if (!row.annotation.empty()) out << "/* " << row.annotation << " */\n";
    out << row.name << ": ";
    WriteExpr(out, row.terms, columns);
    out << ' ' << RelationToken(row.relation) << ' ' << FormatExact(row.rhs) << ";\n";
  }
  out << "bounds:\n";
  for (const LpColumn& c : columns) {
    if (c.lower == -kInf && c.upper == kInf) {
      out << c.name << " free;\n";
    } else if (c.lower == c.upper) {
      out << c.name << " = " << FormatExact(c.lower) << ";\n";
    } else if (c.upper == kInf) {
      out << c.name << " >= " << FormatExact(c.lower) << ";\n";
    } else {
      out << FormatExact(c.lower) << " <= " << c.name << " <= " << FormatExact(c.upper) << ";\n";
    }
  }
  return out.str();
}

LpProblem LpFromText(std::string_view text) { return Parser(text).Parse(); }

void ExportLp(const LpProblem& problem, const std::string& path) {
  internal::WriteTextFile(path, LpToText(problem), "LP file");
}

LpProblem ImportLp(const std::string& path) {
  return LpFromText(internal::ReadTextFile(path, "LP file"));
}

}  // namespace robust_fluid
