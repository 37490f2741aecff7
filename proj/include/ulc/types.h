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

#ifndef ULC_TYPES_H_
#define ULC_TYPES_H_

#include <compare>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace ulc {

/// A positional identifier. Variables can be alpha-renamed.
struct Variable {
  std::string text;

  friend auto operator<=>(const Variable&, const Variable&) = default;
};

/// A nominal identifier. Names are never renamed.
struct Name {
  std::string text;

  friend auto operator<=>(const Name&, const Name&) = default;
};

struct TypeNode;
struct ArrowType;
struct UnboundType;
class NameContext;

/// Immutable, shared handle to a type: `int`, `T1->T2` or `[X:T,...]T`.
///
/// Equality is equality of canonical forms: name contexts are compared
/// modulo permutation and repetition of their assignments.
class Type {
 public:
  static Type integer();
  static Type arrow(Type param, Type result);
  static Type unbound(NameContext ctx, Type body);

  const TypeNode& node() const { return *node_; }

  bool is_int() const;
  const ArrowType* as_arrow() const;
  const UnboundType* as_unbound() const;

  /// Number of type constructors plus name-context entries.
  int size() const;

  friend bool operator==(const Type& a, const Type& b);
  friend std::strong_ordering operator<=>(const Type& a, const Type& b);

 private:
  explicit Type(std::shared_ptr<const TypeNode> node) : node_(std::move(node)) {}

  std::shared_ptr<const TypeNode> node_;
};

struct NameBinding {
  Name name;
  Type type;
};

/// A finite type assignment to names, possibly with repetitions.
class NameContext {
 public:
  NameContext() = default;
  explicit NameContext(std::vector<NameBinding> entries)
      : entries_(std::move(entries)) {}

  const std::vector<NameBinding>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

  /// Repeated names carry equal types.
  bool well_formed() const;

  /// Sorted by name (then type), with duplicate assignments removed.
  NameContext canonical() const;

  /// Type of `name` if it is assigned; for ill-formed contexts the first.
  std::optional<Type> lookup(const Name& name) const;

  friend bool operator==(const NameContext& a, const NameContext& b);
  friend std::strong_ordering operator<=>(const NameContext& a,
                                          const NameContext& b);

 private:
  std::vector<NameBinding> entries_;
};

struct IntType {};

struct ArrowType {
  Type param;
  Type result;
};

struct UnboundType {
  NameContext ctx;
  Type body;
};

struct TypeNode : std::variant<IntType, ArrowType, UnboundType> {
  using variant::variant;
};

}  // namespace ulc

#endif  // ULC_TYPES_H_
