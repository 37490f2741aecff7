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

#ifndef ULC_SYNTAX_H_
#define ULC_SYNTAX_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ulc/types.h"

namespace ulc {

enum class Mode { kUntyped, kTyped };

const char* to_string(Mode mode);

struct TermNode;
class UnbindingMap;
class RebindingMap;

/// Immutable, shared handle to a term of either calculus.
///
/// Terms are built through the static constructors; sharing subterms between
/// several parents is safe since nodes are never mutated.
class Term {
 public:
  static Term var(Variable v);
  static Term var(std::string text) { return var(Variable{std::move(text)}); }
  static Term num(std::int64_t n);
  static Term sum(Term left, Term right);
  static Term abs(Variable binder, std::optional<Type> annotation, Term body);
  static Term app(Term fun, Term arg);
  static Term unbind(UnbindingMap map, Term body);
  static Term rebind_abs(Variable binder, std::optional<Type> annotation,
                         RebindingMap map, Term body);
  static Term error();

  const TermNode& node() const { return *node_; }

  template <typename T>
  const T* as() const;

  /// Node count; used by generators and shrinking.
  int size() const;

 private:
  explicit Term(std::shared_ptr<const TermNode> node) : node_(std::move(node)) {}

  std::shared_ptr<const TermNode> node_;
};

struct UnbindEntry {
  Variable var;
  std::optional<Type> type;
  Name name;
};

/// Finite map from variables (unbinders) to names.
class UnbindingMap {
 public:
  UnbindingMap() = default;
  /// Throws std::invalid_argument on a repeated variable.
  explicit UnbindingMap(std::vector<UnbindEntry> entries);

  const std::vector<UnbindEntry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  bool contains(const Variable& v) const;
  const UnbindEntry* find(const Variable& v) const;

 private:
  std::vector<UnbindEntry> entries_;
};

struct RebindEntry {
  Name name;
  std::optional<Type> type;
  Term term;
};

/// Finite map from names to terms.
class RebindingMap {
 public:
  RebindingMap() = default;
  /// Throws std::invalid_argument on a repeated name.
  explicit RebindingMap(std::vector<RebindEntry> entries);

  const std::vector<RebindEntry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  const RebindEntry* find(const Name& n) const;

 private:
  std::vector<RebindEntry> entries_;
};

struct VarRef {
  Variable var;
};

struct Num {
  std::int64_t value;
};

struct Sum {
  Term left;
  Term right;
};

struct Abs {
  Variable binder;
  std::optional<Type> annotation;
  Term body;
};

struct App {
  Term fun;
  Term arg;
};

/// Open code `<r | body>`.
struct Unbind {
  UnbindingMap map;
  Term body;
};

/// Rebinding abstraction `\x[s].body`; distinct from Abs even when s is empty.
struct RebindAbs {
  Variable binder;
  std::optional<Type> annotation;
  RebindingMap map;
  Term body;
};

struct ErrorTerm {};

struct TermNode
    : std::variant<VarRef, Num, Sum, Abs, App, Unbind, RebindAbs, ErrorTerm> {
  using variant::variant;
};

template <typename T>
const T* Term::as() const {
  return std::get_if<T>(node_.get());
}

/// Values: numbers, both kinds of abstraction, and unbound terms whose body
/// has no free variables outside the unbinders. `error` is not a value.
bool is_value(const Term& t);

struct ModeError : std::runtime_error {
  enum class Kind { kMixedAnnotation, kErrorTermInTypedMode };

  ModeError(Kind kind, std::string path, const std::string& what)
      : std::runtime_error(what), kind(kind), path(std::move(path)) {}

  Kind kind;
  std::string path;
};

const char* to_string(ModeError::Kind kind);

/// Returns the first violation of mode coherence, if any: typed terms carry
/// every annotation and decoration and never contain `error`; untyped terms
/// carry none.
std::optional<ModeError> find_mode_error(const Term& t, Mode mode);

/// Throws ModeError when `find_mode_error` reports a violation.
void check_mode(const Term& t, Mode mode);

/// True iff any annotation or decoration occurs in `t`.
bool has_annotations(const Term& t);

/// Exact syntactic equality: binder spellings matter, map entry order does
/// not, types compare canonically.
bool structural_eq(const Term& a, const Term& b);

}  // namespace ulc

#endif  // ULC_SYNTAX_H_
