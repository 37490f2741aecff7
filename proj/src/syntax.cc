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

#include "ulc/syntax.h"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "ulc/binding.h"

namespace ulc {

const char* to_string(Mode mode) {
  return mode == Mode::kTyped ? "typed" : "untyped";
}

const char* to_string(ModeError::Kind kind) {
  switch (kind) {
    case ModeError::Kind::kMixedAnnotation:
      return "MixedAnnotation";
    case ModeError::Kind::kErrorTermInTypedMode:
      return "ErrorTermInTypedMode";
  }
  return "?";
}

Term Term::var(Variable v) {
  return Term(std::make_shared<const TermNode>(VarRef{std::move(v)}));
}

Term Term::num(std::int64_t n) {
  return Term(std::make_shared<const TermNode>(Num{n}));
}

Term Term::sum(Term left, Term right) {
  return Term(std::make_shared<const TermNode>(
      Sum{std::move(left), std::move(right)}));
}

Term Term::abs(Variable binder, std::optional<Type> annotation, Term body) {
  return Term(std::make_shared<const TermNode>(
      Abs{std::move(binder), std::move(annotation), std::move(body)}));
}

Term Term::app(Term fun, Term arg) {
  return Term(std::make_shared<const TermNode>(
      App{std::move(fun), std::move(arg)}));
}

Term Term::unbind(UnbindingMap map, Term body) {
  return Term(std::make_shared<const TermNode>(
      Unbind{std::move(map), std::move(body)}));
}

Term Term::rebind_abs(Variable binder, std::optional<Type> annotation,
                      RebindingMap map, Term body) {
  return Term(std::make_shared<const TermNode>(
      RebindAbs{std::move(binder), std::move(annotation), std::move(map),
                std::move(body)}));
}

Term Term::error() {
  static const Term kError(std::make_shared<const TermNode>(ErrorTerm{}));
  return kError;
}

int Term::size() const {
  if (const auto* n = as<Sum>()) return 1 + n->left.size() + n->right.size();
  if (const auto* n = as<App>()) return 1 + n->fun.size() + n->arg.size();
  if (const auto* n = as<Abs>()) return 1 + n->body.size();
  if (const auto* n = as<Unbind>()) {
    return 1 + static_cast<int>(n->map.entries().size()) + n->body.size();
  }
  if (const auto* n = as<RebindAbs>()) {
    int total = 1 + n->body.size();
    for (const auto& e : n->map.entries()) total += 1 + e.term.size();
    return total;
  }
  return 1;
}

UnbindingMap::UnbindingMap(std::vector<UnbindEntry> entries)
    : entries_(std::move(entries)) {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    for (std::size_t j = i + 1; j < entries_.size(); ++j) {
      if (entries_[i].var == entries_[j].var) {
        throw std::invalid_argument("unbinding map binds variable '" +
                                    entries_[i].var.text + "' twice");
      }
    }
  }
}

bool UnbindingMap::contains(const Variable& v) const {
  return find(v) != nullptr;
}

const UnbindEntry* UnbindingMap::find(const Variable& v) const {
  for (const auto& e : entries_) {
    if (e.var == v) return &e;
  }
  return nullptr;
}

RebindingMap::RebindingMap(std::vector<RebindEntry> entries)
    : entries_(std::move(entries)) {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    for (std::size_t j = i + 1; j < entries_.size(); ++j) {
      if (entries_[i].name == entries_[j].name) {
        throw std::invalid_argument("rebinding map binds name '" +
                                    entries_[i].name.text + "' twice");
      }
    }
  }
}

const RebindEntry* RebindingMap::find(const Name& n) const {
  for (const auto& e : entries_) {
    if (e.name == n) return &e;
  }
  return nullptr;
}

bool is_value(const Term& t) {
  if (t.as<Num>() || t.as<Abs>() || t.as<RebindAbs>()) return true;
  if (const auto* u = t.as<Unbind>()) {
    for (const auto& v : free_vars(u->body)) {
      if (!u->map.contains(v)) return false;
    }
    return true;
  }
  return false;
}

namespace {

class ModeChecker {
 public:
  explicit ModeChecker(Mode mode) : mode_(mode) {}

  std::optional<ModeError> check(const Term& t) {
    if (t.as<ErrorTerm>()) {
      if (mode_ == Mode::kTyped) {
        return fail(ModeError::Kind::kErrorTermInTypedMode,
                    "'error' does not occur in typed terms");
      }
      return std::nullopt;
    }
    if (const auto* n = t.as<Sum>()) {
      if (auto e = child("left", n->left)) return e;
      return child("right", n->right);
    }
    if (const auto* n = t.as<App>()) {
      if (auto e = child("fun", n->fun)) return e;
      return child("arg", n->arg);
    }
    if (const auto* n = t.as<Abs>()) {
      if (auto e = annotation(n->annotation, "abstraction over '" +
                                                  n->binder.text + "'")) {
        return e;
      }
      return child("body", n->body);
    }
    if (const auto* n = t.as<Unbind>()) {
      for (const auto& e : n->map.entries()) {
        if (auto err = annotation(e.type, "unbinder '" + e.var.text + "'")) {
          return err;
        }
      }
      return child("body", n->body);
    }
    if (const auto* n = t.as<RebindAbs>()) {
      if (auto e = annotation(n->annotation, "rebinding abstraction over '" +
                                                  n->binder.text + "'")) {
        return e;
      }
      for (const auto& e : n->map.entries()) {
        if (auto err = annotation(e.type, "rebinding of '" + e.name.text + "'")) {
          return err;
        }
        if (auto err = child("rebind[" + e.name.text + "]", e.term)) {
          return err;
        }
      }
      return child("body", n->body);
    }
    return std::nullopt;
  }

 private:
  std::optional<ModeError> child(const std::string& label, const Term& t) {
    path_.push_back(label);
    auto result = check(t);
    path_.pop_back();
    return result;
  }

  std::optional<ModeError> annotation(const std::optional<Type>& type,
                                      const std::string& what) {
    if (mode_ == Mode::kTyped && !type) {
      return fail(ModeError::Kind::kMixedAnnotation,
                  what + " lacks a type in a typed term");
    }
    if (mode_ == Mode::kUntyped && type) {
      return fail(ModeError::Kind::kMixedAnnotation,
                  what + " carries a type in an untyped term");
    }
    return std::nullopt;
  }

  ModeError fail(ModeError::Kind kind, const std::string& message) const {
    std::string p;
    for (const auto& s : path_) p += "/" + s;
    if (p.empty()) p = "/";
    return ModeError(kind, p, message + " (at " + p + ")");
  }

  Mode mode_;
  std::vector<std::string> path_;
};

}  // namespace

std::optional<ModeError> find_mode_error(const Term& t, Mode mode) {
  ModeChecker checker(mode);
  return checker.check(t);
}

void check_mode(const Term& t, Mode mode) {
  if (auto e = find_mode_error(t, mode)) throw *e;
}

bool has_annotations(const Term& t) {
  if (const auto* n = t.as<Sum>()) {
    return has_annotations(n->left) || has_annotations(n->right);
  }
  if (const auto* n = t.as<App>()) {
    return has_annotations(n->fun) || has_annotations(n->arg);
  }
  if (const auto* n = t.as<Abs>()) {
    return n->annotation.has_value() || has_annotations(n->body);
  }
  if (const auto* n = t.as<Unbind>()) {
    return std::any_of(n->map.entries().begin(), n->map.entries().end(),
                       [](const UnbindEntry& e) { return e.type.has_value(); }) ||
           has_annotations(n->body);
  }
  if (const auto* n = t.as<RebindAbs>()) {
    if (n->annotation) return true;
    for (const auto& e : n->map.entries()) {
      if (e.type || has_annotations(e.term)) return true;
    }
    return has_annotations(n->body);
  }
  return false;
}

bool structural_eq(const Term& a, const Term& b) {
  if (&a.node() == &b.node()) return true;
  if (a.node().index() != b.node().index()) return false;
  if (const auto* x = a.as<VarRef>()) return x->var == b.as<VarRef>()->var;
  if (const auto* x = a.as<Num>()) return x->value == b.as<Num>()->value;
  if (a.as<ErrorTerm>()) return true;
  if (const auto* x = a.as<Sum>()) {
    const auto* y = b.as<Sum>();
    return structural_eq(x->left, y->left) && structural_eq(x->right, y->right);
  }
  if (const auto* x = a.as<App>()) {
    const auto* y = b.as<App>();
    return structural_eq(x->fun, y->fun) && structural_eq(x->arg, y->arg);
  }
  if (const auto* x = a.as<Abs>()) {
    const auto* y = b.as<Abs>();
    return x->binder == y->binder && x->annotation == y->annotation &&
           structural_eq(x->body, y->body);
  }
  if (const auto* x = a.as<Unbind>()) {
    const auto* y = b.as<Unbind>();
    if (x->map.entries().size() != y->map.entries().size()) return false;
    for (const auto& e : x->map.entries()) {
      const UnbindEntry* f = y->map.find(e.var);
      if (f == nullptr || !(f->name == e.name) || f->type != e.type) {
        return false;
      }
    }
    return structural_eq(x->body, y->body);
  }
  const auto* x = a.as<RebindAbs>();
  const auto* y = b.as<RebindAbs>();
  if (!(x->binder == y->binder) || x->annotation != y->annotation ||
      x->map.entries().size() != y->map.entries().size()) {
    return false;
  }
  for (const auto& e : x->map.entries()) {
    const RebindEntry* f = y->map.find(e.name);
    if (f == nullptr || f->type != e.type || !structural_eq(e.term, f->term)) {
      return false;
    }
  }
  return structural_eq(x->body, y->body);
}

}  // namespace ulc
