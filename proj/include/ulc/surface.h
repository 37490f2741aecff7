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

// Concrete syntax.
//
//   term    ::= sum
//   sum     ::= app ('+' app)*                      left-associative
//   app     ::= postfix postfix*                    left-associative
//   postfix ::= atom ('[' rebinds ']')*             t[s] = (\z[s].z) t
//   atom    ::= int | var | 'error' | '(' term ')' | lambda | unbound
//   lambda  ::= '\' var (':' type)? ('[' rebinds? ']')? '.' term
//   unbound ::= '<' unbinds? '|' term '>'
//   unbinds ::= var (':' type)? '=>' Name (',' ...)*
//   rebinds ::= Name (':' type)? '=>' term (',' ...)*
//   type    ::= tatom ('->' type)?                  right-associative
//   tatom   ::= 'int' | '(' type ')' | '[' namectx? ']' tatom
//   namectx ::= Name ':' type (',' ...)*
//
// Variables start with a lowercase letter or '_', names with an uppercase
// letter; both continue with letters, digits, '_', '\'' and '#'. Comments run
// from '--' to the end of the line.

#ifndef ULC_SURFACE_H_
#define ULC_SURFACE_H_

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>

#include "ulc/syntax.h"
#include "ulc/types.h"

namespace ulc {

struct ParseError : std::runtime_error {
  ParseError(int line, int column, std::set<std::string> expected,
             std::string found);

  int line;
  int column;
  std::set<std::string> expected;
  std::string found;
};

struct SourceProgram {
  std::string text;
  std::optional<Mode> mode;
};

struct ParsedProgram {
  Term term;
  Mode mode;
};

/// Parses one term. The mode is the hint if given, otherwise typed iff any
/// annotation occurs; the result is validated with check_mode, whose
/// ModeError propagates.
ParsedProgram parse_program(const SourceProgram& src);

/// Parses one term without mode inference or validation.
Term parse_term(std::string_view text);

Type parse_type(std::string_view text);

/// Minimal parentheses; parse_term(print(t)) is structurally equal to t.
std::string print(const Term& t);

std::string print_type(const Type& t);

/// Canonical order, without brackets: `X:int,Y:int->int`.
std::string print_name_ctx(const NameContext& ctx);

}  // namespace ulc

#endif  // ULC_SURFACE_H_
