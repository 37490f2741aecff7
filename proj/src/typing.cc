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

#include "ulc/typing.h"

#include <fmt/core.h>

#include <utility>

#include "ulc/surface.h"

namespace ulc {

std::optional<Type> TypingContext::lookup(const Variable& v) const {
  auto it = entries_.find(v);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

TypingContext TypingContext::with(const Variable& v, const Type& t) const {
  TypingContext out = *this;
  out.entries_.insert_or_assign(v, t);
  return out;
}

TypingContext ctx_update(const TypingContext& base,
                         const TypingContext& update) {
  TypingContext out = base;
  for (const auto& [v, t] : update.entries()) out = out.with(v, t);
  return out;
}

const char* to_string(TypeErrorKind kind) {
  switch (kind) {
    case TypeErrorKind::kUnboundVariable:
      return "UnboundVariable";
    case TypeErrorKind::kSumNonInt:
      return "SumNonInt";
    case TypeErrorKind::kApplyNonFunction:
      return "ApplyNonFunction";
    case TypeErrorKind::kArgNotSubtype:
      return "ArgNotSubtype";
    case TypeErrorKind::kIllFormedNameContext:
      return "IllFormedNameContext";
    case TypeErrorKind::kRebindAnnotationMismatch:
      return "RebindAnnotationMismatch";
    case TypeErrorKind::kRebindEntryTypeMismatch:
      return "RebindEntryTypeMismatch";
    case TypeErrorKind::kUnbindDecorationClash:
      return "UnbindDecorationClash";
  }
  return "?";
}

TypeError::TypeError(TypeErrorKind kind, std::string path,
                     std::vector<Type> types, const std::string& message)
    : std::runtime_error(message),
      kind(kind),
      path(std::move(path)),
      types(std::move(types)) {}

bool wf_name_ctx(const NameContext& ctx) { return ctx.well_formed(); }

bool wf_type(const Type& t) {
  if (const auto* a = t.as_arrow()) return wf_type(a->param) && wf_type(a->result);
  if (const auto* u = t.as_unbound()) {
    if (!wf_name_ctx(u->ctx)) return false;
    for (const auto& e : u->ctx.entries()) {
      if (!wf_type(e.type)) return false;
    }
    return wf_type(u->body);
  }
  return true;
}

bool subtype(const Type& sub, const Type& super) {
  if (sub.is_int() && super.is_int()) return true;
  if (const auto* a = sub.as_arrow()) {
    const auto* b = super.as_arrow();
    return b != nullptr && subtype(b->param, a->param) &&
           subtype(a->result, b->result);
  }
  if (const auto* a = sub.as_unbound()) {
    const auto* b = super.as_unbound();
    return b != nullptr && subtype_ctx(b->ctx, a->ctx) &&
           subtype(a->body, b->body);
  }
  return false;
}

bool subtype_ctx(const NameContext& sub, const NameContext& super) {
  for (const auto& e : super.entries()) {
    std::optional<Type> t = sub.lookup(e.name);
    if (!t || !subtype(*t, e.type)) return false;
  }
  return true;
}

NameContext nenv(const UnbindingMap& r) {
  std::vector<NameBinding> out;
  for (const auto& e : r.entries()) {
    if (!e.type) throw std::invalid_argument("undecorated unbinder");
    out.push_back({e.name, *e.type});
  }
  return NameContext(std::move(out)).canonical();
}

NameContext nenv(const RebindingMap& s) {
  std::vector<NameBinding> out;
  for (const auto& e : s.entries()) {
    if (!e.type) throw std::invalid_argument("undecorated rebinding");
    out.push_back({e.name, *e.type});
  }
  return NameContext(std::move(out)).canonical();
}

TypingContext xenv(const UnbindingMap& r) {
  if (!wf_name_ctx(nenv(r))) {
    throw TypeError(TypeErrorKind::kUnbindDecorationClash, "/", {},
                    "unbinders of the same name carry different types");
  }
  TypingContext out;
  for (const auto& e : r.entries()) out = out.with(e.var, *e.type);
  return out;
}

namespace {

class Synthesizer {
 public:
  explicit Synthesizer(const TypingOptions& options) : options_(options) {}

  Type synth(const TypingContext& gamma, const Term& t) {
    if (const auto* n = t.as<VarRef>()) {
      if (auto ty = gamma.lookup(n->var)) return *ty;
      fail(TypeErrorKind::kUnboundVariable, {},
           fmt::format("variable '{}' is not in scope", n->var.text));
    }
    if (t.as<Num>()) return Type::integer();
    if (const auto* n = t.as<Sum>()) {
      expect_int(child(gamma, "left", n->left), "left");
      expect_int(child(gamma, "right", n->right), "right");
      return Type::integer();
    }
    if (const auto* n = t.as<Abs>()) {
      const Type& param = annotation(n->annotation);
      Type body = child(gamma.with(n->binder, param), "body", n->body);
      return Type::arrow(param, body);
    }
    if (const auto* n = t.as<App>()) {
      Type fun = child(gamma, "fun", n->fun);
      Type arg = child(gamma, "arg", n->arg);
      const auto* arrow = fun.as_arrow();
      if (arrow == nullptr) {
        fail(TypeErrorKind::kApplyNonFunction, {fun},
             fmt::format("applied term has type {}, not a function type",
                         print_type(fun)));
      }
      if (!subtype(arg, arrow->param)) {
        fail(TypeErrorKind::kArgNotSubtype, {arrow->param, arg},
             fmt::format("argument type {} is not a subtype of parameter "
                         "type {}",
                         print_type(arg), print_type(arrow->param)));
      }
      return arrow->result;
    }
    if (const auto* n = t.as<Unbind>()) {
      for (const auto& e : n->map.entries()) {
        if (!e.type) throw std::invalid_argument("undecorated unbinder");
        check_wf(*e.type);
      }
      TypingContext bound;
      try {
        bound = xenv(n->map);
      } catch (const TypeError& e) {
        fail(e.kind, {}, e.what());
      }
      Type body = child(ctx_update(gamma, bound), "body", n->body);
      return Type::unbound(nenv(n->map), body);
    }
    if (const auto* n = t.as<RebindAbs>()) {
      const Type& declared = annotation(n->annotation);
      for (const auto& e : n->map.entries()) {
        if (!e.type) throw std::invalid_argument("undecorated rebinding");
        check_wf(*e.type);
      }
      const NameContext provided = nenv(n->map);
      const auto* unbound = declared.as_unbound();
      if (unbound == nullptr || !(unbound->ctx == provided)) {
        Type expected = Type::unbound(
            provided, unbound ? unbound->body : Type::integer());
        fail(TypeErrorKind::kRebindAnnotationMismatch, {expected, declared},
             fmt::format("parameter type {} does not match the rebinding "
                         "map, expected [{}]T",
                         print_type(declared), print_name_ctx(provided)));
      }
      for (const auto& e : n->map.entries()) {
        Type got = child(gamma, "rebind[" + e.name.text + "]", e.term);
        const bool ok = options_.rebind_entries == RebindEntryCheck::kExact
                            ? got == *e.type
                            : subtype(got, *e.type);
        if (!ok) {
          path_.push_back("rebind[" + e.name.text + "]");
          fail(TypeErrorKind::kRebindEntryTypeMismatch, {*e.type, got},
               fmt::format("rebinding of {} has type {}, declared {}",
                           e.name.text, print_type(got), print_type(*e.type)));
        }
      }
      Type body = child(gamma.with(n->binder, unbound->body), "body", n->body);
      return Type::arrow(declared, body);
    }
    throw std::invalid_argument("'error' has no type");
  }

 private:
  Type child(const TypingContext& gamma, const std::string& label,
             const Term& t) {
    path_.push_back(label);
    Type result = synth(gamma, t);
    path_.pop_back();
    return result;
  }

  const Type& annotation(const std::optional<Type>& type) {
    if (!type) throw std::invalid_argument("unannotated abstraction");
    check_wf(*type);
    return *type;
  }

  void check_wf(const Type& type) {
    if (!wf_type(type)) {
      fail(TypeErrorKind::kIllFormedNameContext, {type},
           fmt::format("type {} has a name context that assigns one name "
                       "two types",
                       print_type(type)));
    }
  }

  void expect_int(const Type& type, const char* label) {
    if (!type.is_int()) {
      path_.push_back(label);
      fail(TypeErrorKind::kSumNonInt, {Type::integer(), type},
           fmt::format("operand of '+' has type {}, expected int",
                       print_type(type)));
    }
  }

  [[noreturn]] void fail(TypeErrorKind kind, std::vector<Type> types,
                         const std::string& message) {
    std::string p;
    for (const auto& s : path_) p += "/" + s;
    if (p.empty()) p = "/";
    throw TypeError(kind, p, std::move(types), message);
  }

  const TypingOptions& options_;
  std::vector<std::string> path_;
};

}  // namespace

Type synthesize(const TypingContext& gamma, const Term& t,
                const TypingOptions& options) {
  Synthesizer s(options);
  return s.synth(gamma, t);
}

std::optional<Type> try_synthesize(const TypingContext& gamma, const Term& t,
                                   const TypingOptions& options) {
  try {
    return synthesize(gamma, t, options);
  } catch (const TypeError&) {
    return std::nullopt;
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

}  // namespace ulc
