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

#include "ulc/types.h"

#include <algorithm>
#include <compare>
#include <utility>

namespace ulc {

namespace {

int rank(const TypeNode& n) { return static_cast<int>(n.index()); }

// Lexicographic over canonical entries; canonicalization recurses into the
// entry types through Type::operator<=>.
std::strong_ordering compare_canonical(const std::vector<NameBinding>& a,
                                       const std::vector<NameBinding>& b) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = a[i].name <=> b[i].name; c != 0) return c;
    if (auto c = a[i].type <=> b[i].type; c != 0) return c;
  }
  return a.size() <=> b.size();
}

}  // namespace

Type Type::integer() {
  static const Type kInt(std::make_shared<const TypeNode>(IntType{}));
  return kInt;
}

Type Type::arrow(Type param, Type result) {
  return Type(std::make_shared<const TypeNode>(
      ArrowType{std::move(param), std::move(result)}));
}

Type Type::unbound(NameContext ctx, Type body) {
  return Type(std::make_shared<const TypeNode>(
      UnboundType{std::move(ctx), std::move(body)}));
}

bool Type::is_int() const {
  return std::holds_alternative<IntType>(*node_);
}

const ArrowType* Type::as_arrow() const {
  return std::get_if<ArrowType>(node_.get());
}

const UnboundType* Type::as_unbound() const {
  return std::get_if<UnboundType>(node_.get());
}

int Type::size() const {
  if (const auto* a = as_arrow()) return 1 + a->param.size() + a->result.size();
  if (const auto* u = as_unbound()) {
    int n = 1 + u->body.size();
    for (const auto& e : u->ctx.entries()) n += 1 + e.type.size();
    return n;
  }
  return 1;
}

std::strong_ordering operator<=>(const Type& a, const Type& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = rank(*a.node_) <=> rank(*b.node_); c != 0) return c;
  if (const auto* x = a.as_arrow()) {
    const auto* y = b.as_arrow();
    if (auto c = x->param <=> y->param; c != 0) return c;
    return x->result <=> y->result;
  }
  if (const auto* x = a.as_unbound()) {
    const auto* y = b.as_unbound();
    if (auto c = x->ctx <=> y->ctx; c != 0) return c;
    return x->body <=> y->body;
  }
  return std::strong_ordering::equal;
}

bool operator==(const Type& a, const Type& b) { return (a <=> b) == 0; }

bool NameContext::well_formed() const {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    for (std::size_t j = i + 1; j < entries_.size(); ++j) {
      if (entries_[i].name == entries_[j].name &&
          !(entries_[i].type == entries_[j].type)) {
        return false;
      }
    }
  }
  return true;
}

NameContext NameContext::canonical() const {
  std::vector<NameBinding> sorted = entries_;
  std::sort(sorted.begin(), sorted.end(),
            [](const NameBinding& x, const NameBinding& y) {
              if (auto c = x.name <=> y.name; c != 0) return c < 0;
              return (x.type <=> y.type) < 0;
            });
  auto last = std::unique(sorted.begin(), sorted.end(),
                          [](const NameBinding& x, const NameBinding& y) {
                            return x.name == y.name && x.type == y.type;
                          });
  sorted.erase(last, sorted.end());
  return NameContext(std::move(sorted));
}

std::optional<Type> NameContext::lookup(const Name& name) const {
  for (const auto& e : entries_) {
    if (e.name == name) return e.type;
  }
  return std::nullopt;
}

std::strong_ordering operator<=>(const NameContext& a, const NameContext& b) {
  return compare_canonical(a.canonical().entries_, b.canonical().entries_);
}

bool operator==(const NameContext& a, const NameContext& b) {
  return (a <=> b) == 0;
}

}  // namespace ulc
