// Copyright 2026 The ulc Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ulc/surface.h"

#include <fmt/core.h>

#include <cctype>
#include <charconv>
#include <utility>
#include <vector>

#include "ulc/binding.h"

namespace ulc {

namespace {

std::string describe_expected(const std::set<std::string>& expected) {
  std::string out;
  for (const auto& e : expected) {
    if (!out.empty()) out += ", ";
    out += e;
  }
  return out;
}

}  // namespace

ParseError::ParseError(int line, int column, std::set<std::string> expected,
                       std::string found)
    : std::runtime_error(fmt::format("{}:{}: expected {}, found {}", line,
                                     column, describe_expected(expected),
                                     found)),
      line(line),
      column(column),
      expected(std::move(expected)),
      found(std::move(found)) {}

// ---------------------------------------------------------------------------
// Lexer

namespace {

enum class Tok {
  kVar,
  kName,
  kInt,
  kError,
  kIntType,
  kLambda,
  kColon,
  kDot,
  kComma,
  kPlus,
  kBar,
  kLParen,
  kRParen,
  kLBracket,
  kRBracket,
  kLAngle,
  kRAngle,
  kMapsTo,  // =>
  kArrow,   // ->
  kEnd,
};

const char* spelling(Tok t) {
  switch (t) {
    case Tok::kVar: return "variable";
    case Tok::kName: return "name";
    case Tok::kInt: return "integer";
    case Tok::kError: return "'error'";
    case Tok::kIntType: return "'int'";
    case Tok::kLambda: return "'\\'";
    case Tok::kColon: return "':'";
    case Tok::kDot: return "'.'";
    case Tok::kComma: return "','";
    case Tok::kPlus: return "'+'";
    case Tok::kBar: return "'|'";
    case Tok::kLParen: return "'('";
    case Tok::kRParen: return "')'";
    case Tok::kLBracket: return "'['";
    case Tok::kRBracket: return "']'";
    case Tok::kLAngle: return "'<'";
    case Tok::kRAngle: return "'>'";
    case Tok::kMapsTo: return "'=>'";
    case Tok::kArrow: return "'->'";
    case Tok::kEnd: return "end of input";
  }
  return "?";
}

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
         c == '\'' || c == '#';
}

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  auto error = [&](const std::string& found) {
    throw ParseError(line, col, {"token"}, found);
  };
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    const char next = i + 1 < src.size() ? src[i + 1] : '\0';
    if (c == '-' && next == '-') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    const int tl = line;
    const int tc = col;
    auto emit = [&](Tok k, std::size_t len) {
      out.push_back({k, std::string(src.substr(i, len)), tl, tc});
      advance(len);
    };
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '-' && std::isdigit(static_cast<unsigned char>(next)))) {
      std::size_t j = i + 1;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) {
        ++j;
      }
      emit(Tok::kInt, j - i);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i + 1;
      while (j < src.size() && ident_char(src[j])) ++j;
      std::string_view word = src.substr(i, j - i);
      Tok kind = std::isupper(static_cast<unsigned char>(c)) ? Tok::kName
                                                             : Tok::kVar;
      if (word == "error") kind = Tok::kError;
      if (word == "int") kind = Tok::kIntType;
      emit(kind, j - i);
      continue;
    }
    switch (c) {
      case '\\': emit(Tok::kLambda, 1); continue;
      case ':': emit(Tok::kColon, 1); continue;
      case '.': emit(Tok::kDot, 1); continue;
      case ',': emit(Tok::kComma, 1); continue;
      case '+': emit(Tok::kPlus, 1); continue;
      case '|': emit(Tok::kBar, 1); continue;
      case '(': emit(Tok::kLParen, 1); continue;
      case ')': emit(Tok::kRParen, 1); continue;
      case '[': emit(Tok::kLBracket, 1); continue;
      case ']': emit(Tok::kRBracket, 1); continue;
      case '<': emit(Tok::kLAngle, 1); continue;
      case '>': emit(Tok::kRAngle, 1); continue;
      default: break;
    }
    if (c == '=' && next == '>') {
      emit(Tok::kMapsTo, 2);
      continue;
    }
    if (c == '-' && next == '>') {
      emit(Tok::kArrow, 2);
      continue;
    }
    error(fmt::format("'{}'", c));
  }
  out.push_back({Tok::kEnd, "", line, col});
  return out;
}

// ---------------------------------------------------------------------------
// Parser

class Parser {
 public:
  explicit Parser(std::string_view src) : tokens_(lex(src)) {}

  Term whole_term() {
    Term t = term();
    expect(Tok::kEnd);
    return t;
  }

  Type whole_type() {
    Type t = type();
    expect(Tok::kEnd);
    return t;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  bool at(Tok k) const { return peek().kind == k; }

  bool accept(Tok k) {
    if (!at(k)) return false;
    ++pos_;
    return true;
  }

  Token expect(Tok k) {
    if (!at(k)) fail({spelling(k)});
    return tokens_[pos_++];
  }

  [[noreturn]] void fail(std::set<std::string> expected) const {
    const Token& t = peek();
    std::string found =
        t.kind == Tok::kEnd ? "end of input" : "'" + t.text + "'";
    throw ParseError(t.line, t.column, std::move(expected), std::move(found));
  }

  static bool starts_atom(Tok k) {
    return k == Tok::kInt || k == Tok::kVar || k == Tok::kError ||
           k == Tok::kLParen || k == Tok::kLambda || k == Tok::kLAngle;
  }

  Term term() {
    Term left = app();
    while (accept(Tok::kPlus)) left = Term::sum(left, app());
    return left;
  }

  Term app() {
    if (at(Tok::kLambda)) return lambda();
    Term fun = postfix();
    while (starts_atom(peek().kind)) {
      if (at(Tok::kLambda)) return Term::app(fun, lambda());
      fun = Term::app(fun, postfix());
    }
    return fun;
  }

  // t[s] abbreviates (\z[s].z) t.
  Term postfix() {
    Term t = atom();
    while (accept(Tok::kLBracket)) {
      RebindingMap s = rebinds();
      expect(Tok::kRBracket);
      Variable z{"z"};
      const VarSet fv = free_vars(s);
      if (fv.count(z) != 0) {
        FreshSupply supply;
        z = supply.fresh(z, fv);
      }
      t = Term::app(Term::rebind_abs(z, std::nullopt, std::move(s),
                                     Term::var(z)),
                    t);
    }
    return t;
  }

  Term atom() {
    const Token& tok = peek();
    switch (tok.kind) {
      case Tok::kInt: {
        std::int64_t value = 0;
        const char* first = tok.text.data();
        const char* last = first + tok.text.size();
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc() || ptr != last) fail({"64-bit integer literal"});
        ++pos_;
        return Term::num(value);
      }
      case Tok::kVar:
        ++pos_;
        return Term::var(tok.text);
      case Tok::kError:
        ++pos_;
        return Term::error();
      case Tok::kLParen: {
        ++pos_;
        Term t = term();
        expect(Tok::kRParen);
        return t;
      }
      case Tok::kLambda:
        return lambda();
      case Tok::kLAngle:
        return unbound();
      default:
        fail({"integer", "variable", "'error'", "'('", "'\\'", "'<'"});
    }
  }

  Term lambda() {
    expect(Tok::kLambda);
    Variable binder{expect(Tok::kVar).text};
    std::optional<Type> annotation;
    if (accept(Tok::kColon)) annotation = type();
    std::optional<RebindingMap> s;
    if (accept(Tok::kLBracket)) {
      s = at(Tok::kRBracket) ? RebindingMap() : rebinds();
      expect(Tok::kRBracket);
    }
    if (!at(Tok::kDot)) {
      if (s) fail({"'.'"});
      if (annotation) fail({"'['", "'.'", "'->'"});
      fail({"':'", "'['", "'.'"});
    }
    ++pos_;
    Term body = term();
    if (s) {
      return Term::rebind_abs(std::move(binder), std::move(annotation),
                              std::move(*s), std::move(body));
    }
    return Term::abs(std::move(binder), std::move(annotation), std::move(body));
  }

  Term unbound() {
    expect(Tok::kLAngle);
    std::vector<UnbindEntry> entries;
    if (!at(Tok::kBar)) {
      do {
        const Token& vt = peek();
        Variable var{expect(Tok::kVar).text};
        std::optional<Type> ty;
        if (accept(Tok::kColon)) ty = type();
        expect(Tok::kMapsTo);
        Name name{expect(Tok::kName).text};
        for (const auto& e : entries) {
          if (e.var == var) {
            throw ParseError(vt.line, vt.column, {"distinct unbinder"},
                             "repeated '" + var.text + "'");
          }
        }
        entries.push_back({std::move(var), std::move(ty), std::move(name)});
      } while (accept(Tok::kComma));
    }
    expect(Tok::kBar);
    Term body = term();
    expect(Tok::kRAngle);
    return Term::unbind(UnbindingMap(std::move(entries)), std::move(body));
  }

  RebindingMap rebinds() {
    std::vector<RebindEntry> entries;
    do {
      const Token& nt = peek();
      Name name{expect(Tok::kName).text};
      std::optional<Type> ty;
      if (accept(Tok::kColon)) ty = type();
      expect(Tok::kMapsTo);
      Term t = term();
      for (const auto& e : entries) {
        if (e.name == name) {
          throw ParseError(nt.line, nt.column, {"distinct rebound name"},
                           "repeated '" + name.text + "'");
        }
      }
      entries.push_back({std::move(name), std::move(ty), std::move(t)});
    } while (accept(Tok::kComma));
    return RebindingMap(std::move(entries));
  }

  Type type() {
    Type left = type_atom();
    if (accept(Tok::kArrow)) return Type::arrow(left, type());
    return left;
  }

  Type type_atom() {
    if (accept(Tok::kIntType)) return Type::integer();
    if (accept(Tok::kLParen)) {
      Type t = type();
      expect(Tok::kRParen);
      return t;
    }
    if (accept(Tok::kLBracket)) {
      std::vector<NameBinding> ctx;
      if (!at(Tok::kRBracket)) {
        do {
          Name name{expect(Tok::kName).text};
          expect(Tok::kColon);
          ctx.push_back({std::move(name), type()});
        } while (accept(Tok::kComma));
      }
      expect(Tok::kRBracket);
      return Type::unbound(NameContext(std::move(ctx)), type_atom());
    }
    fail({"'int'", "'('", "'['"});
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Printer

enum Prec { kSumLevel = 0, kAppLevel = 1, kAtomLevel = 2 };

class Printer {
 public:
  std::string term(const Term& t, int prec, bool tail) {
    if (const auto* n = t.as<VarRef>()) return n->var.text;
    if (const auto* n = t.as<Num>()) return std::to_string(n->value);
    if (t.as<ErrorTerm>()) return "error";
    if (const auto* n = t.as<Sum>()) {
      std::string s = term(n->left, kSumLevel, false) + "+" +
                      term(n->right, kAppLevel, tail || prec > kSumLevel);
      return prec > kSumLevel ? "(" + s + ")" : s;
    }
    if (const auto* n = t.as<App>()) {
      std::string s = term(n->fun, kAppLevel, false) + " " +
                      term(n->arg, kAtomLevel, tail || prec > kAppLevel);
      return prec > kAppLevel ? "(" + s + ")" : s;
    }
    if (const auto* n = t.as<Unbind>()) {
      std::string s = "<";
      bool first = true;
      for (const auto& e : n->map.entries()) {
        if (!first) s += ", ";
        first = false;
        s += e.var.text;
        if (e.type) s += ":" + print_type(*e.type);
        s += "=>" + e.name.text;
      }
      s += n->map.empty() ? "| " : " | ";
      return s + term(n->body, kSumLevel, true) + ">";
    }
    std::string s;
    if (const auto* n = t.as<Abs>()) {
      s = "\\" + n->binder.text;
      if (n->annotation) s += ":" + print_type(*n->annotation);
      s += "." + term(n->body, kSumLevel, true);
    } else {
      const auto& r = *t.as<RebindAbs>();
      s = "\\" + r.binder.text;
      if (r.annotation) s += ":" + print_type(*r.annotation);
      s += "[";
      bool first = true;
      for (const auto& e : r.map.entries()) {
        if (!first) s += ", ";
        first = false;
        s += e.name.text;
        if (e.type) s += ":" + print_type(*e.type);
        s += "=>" + term(e.term, kSumLevel, true);
      }
      s += "]." + term(r.body, kSumLevel, true);
    }
    return tail ? s : "(" + s + ")";
  }
};

std::string type_atom(const Type& t) {
  if (t.as_arrow()) return "(" + print_type(t) + ")";
  return print_type(t);
}

}  // namespace

Term parse_term(std::string_view text) {
  Parser p(text);
  return p.whole_term();
}

Type parse_type(std::string_view text) {
  Parser p(text);
  return p.whole_type();
}

ParsedProgram parse_program(const SourceProgram& src) {
  Term t = parse_term(src.text);
  Mode mode = src.mode.value_or(has_annotations(t) ? Mode::kTyped
                                                   : Mode::kUntyped);
  check_mode(t, mode);
  return {std::move(t), mode};
}

std::string print(const Term& t) {
  Printer p;
  return p.term(t, kSumLevel, true);
}

std::string print_type(const Type& t) {
  if (const auto* a = t.as_arrow()) {
    return type_atom(a->param) + "->" + print_type(a->result);
  }
  if (const auto* u = t.as_unbound()) {
    return "[" + print_name_ctx(u->ctx) + "]" + type_atom(u->body);
  }
  return "int";
}

std::string print_name_ctx(const NameContext& ctx) {
  std::string out;
  const NameContext canon = ctx.canonical();
  for (const auto& e : canon.entries()) {
    if (!out.empty()) out += ",";
    out += e.name.text + ":" + print_type(e.type);
  }
  return out;
}

}  // namespace ulc
