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

#ifndef ULC_TYPING_H_
#define ULC_TYPING_H_

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ulc/syntax.h"
#include "ulc/types.h"

namespace ulc {

/// Finite map from variables to types.
class TypingContext {
 public:
  TypingContext() = default;

  const std::map<Variable, Type>& entries() const { return entries_; }
  bool contains(const Variable& v) const { return entries_.count(v) != 0; }
  std::optional<Type> lookup(const Variable& v) const;

  /// Adds or replaces the binding for `v`.
  TypingContext with(const Variable& v, const Type& t) const;

 private:
  std::map<Variable, Type> entries_;
};

/// Gamma[Gamma']: bindings of `update` shadow those of `base`.
TypingContext ctx_update(const TypingContext& base, const TypingContext& update);

enum class TypeErrorKind {
  kUnboundVariable,
  kSumNonInt,
  kApplyNonFunction,
  kArgNotSubtype,
  kIllFormedNameContext,
  kRebindAnnotationMismatch,
  kRebindEntryTypeMismatch,
  kUnbindDecorationClash,
};

const char* to_string(TypeErrorKind kind);

struct TypeError : std::runtime_error {
  TypeError(TypeErrorKind kind, std::string path, std::vector<Type> types,
            const std::string& message);

  TypeErrorKind kind;
  /// Slash-separated route from the root, e.g. `/fun/body`.
  std::string path;
  /// The offending types, when the rule compares some (expected first).
  std::vector<Type> types;
};

/// Repeated names carry equal types.
bool wf_name_ctx(const NameContext& ctx);

/// Every name context occurring inside `t` is well-formed.
bool wf_type(const Type& t);

bool subtype(const Type& sub, const Type& super);

/// Width and depth: every name of `super` is in `sub` at a subtype.
bool subtype_ctx(const NameContext& sub, const NameContext& super);

NameContext nenv(const UnbindingMap& r);
NameContext nenv(const RebindingMap& s);

/// Throws TypeError(kUnbindDecorationClash) when two unbinders of the same
/// name are decorated with different types.
TypingContext xenv(const UnbindingMap& r);

/// How a rebinding entry's synthesized type is compared with its
/// declaration.
enum class RebindEntryCheck {
  /// The entry may synthesize a subtype of its declaration.
  kSubtype,
  /// The entry must synthesize exactly its declaration. Not closed under
  /// reduction; kept to reproduce the preservation counterexample.
  kExact,
};

struct TypingOptions {
  RebindEntryCheck rebind_entries = RebindEntryCheck::kSubtype;
};

/// Syntax-directed type synthesis for typed terms. Throws TypeError on
/// rejection and std::invalid_argument if `t` is not a typed-mode term.
Type synthesize(const TypingContext& gamma, const Term& t,
                const TypingOptions& options = {});

/// As synthesize, returning nullopt on any rejection.
std::optional<Type> try_synthesize(const TypingContext& gamma, const Term& t,
                                   const TypingOptions& options = {});

}  // namespace ulc

#endif  // ULC_TYPING_H_
