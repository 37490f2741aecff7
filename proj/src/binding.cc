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

#include "ulc/binding.h"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <utility>

namespace ulc {

namespace testing_hooks {
thread_local bool disable_capture_avoidance = false;
}  // namespace testing_hooks

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

VarSet domain(const UnbindingMap& r) {
  VarSet d;
  for (const auto& e : r.entries()) d.insert(e.var);
  return d;
}

}  // namespace

VarSet free_vars(const Term& t) {
  return std::visit(
      Overloaded{
          [](const VarRef& n) { return VarSet{n.var}; },
          [](const Num&) { return VarSet{}; },
          [](const ErrorTerm&) { return VarSet{}; },
          [](const Sum& n) {
            VarSet s = free_vars(n.left);
            s.merge(free_vars(n.right));
            return s;
          },
          [](const App& n) {
            VarSet s = free_vars(n.fun);
            s.merge(free_vars(n.arg));
            return s;
          },
          [](const Abs& n) {
            VarSet s = free_vars(n.body);
            s.erase(n.binder);
            return s;
          },
          [](const Unbind& n) {
            VarSet s = free_vars(n.body);
            for (const auto& e : n.map.entries()) s.erase(e.var);
            return s;
          },
          [](const RebindAbs& n) {
            VarSet s = free_vars(n.body);
            s.erase(n.binder);
            s.merge(free_vars(n.map));
            return s;
          },
      },
      t.node());
}

VarSet free_vars(const RebindingMap& s) {
  VarSet out;
  for (const auto& e : s.entries()) out.merge(free_vars(e.term));
  return out;
}

VarSet all_vars(const Term& t) {
  return std::visit(
      Overloaded{
          [](const VarRef& n) { return VarSet{n.var}; },
          [](const Num&) { return VarSet{}; },
          [](const ErrorTerm&) { return VarSet{}; },
          [](const Sum& n) {
            VarSet s = all_vars(n.left);
            s.merge(all_vars(n.right));
            return s;
          },
          [](const App& n) {
            VarSet s = all_vars(n.fun);
            s.merge(all_vars(n.arg));
            return s;
          },
          [](const Abs& n) {
            VarSet s = all_vars(n.body);
            s.insert(n.binder);
            return s;
          },
          [](const Unbind& n) {
            VarSet s = all_vars(n.body);
            for (const auto& e : n.map.entries()) s.insert(e.var);
            return s;
          },
          [](const RebindAbs& n) {
            VarSet s = all_vars(n.body);
            s.insert(n.binder);
            for (const auto& e : n.map.entries()) s.merge(all_vars(e.term));
            return s;
          },
      },
      t.node());
}

// ---------------------------------------------------------------------------
// Substitution

Substitution::Substitution(std::vector<Entry> entries)
    : entries_(std::move(entries)) {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    for (std::size_t j = i + 1; j < entries_.size(); ++j) {
      if (entries_[i].var == entries_[j].var) {
        throw std::invalid_argument("substitution binds variable '" +
                                    entries_[i].var.text + "' twice");
      }
    }
  }
}

const Term* Substitution::find(const Variable& v) const {
  for (const auto& e : entries_) {
    if (e.var == v) return &e.term;
  }
  return nullptr;
}

VarSet Substitution::range_free_vars() const {
  VarSet out;
  for (const auto& e : entries_) out.merge(free_vars(e.term));
  return out;
}

Substitution Substitution::without(const VarSet& vars) const {
  Substitution out;
  for (const auto& e : entries_) {
    if (vars.count(e.var) == 0) out.entries_.push_back(e);
  }
  return out;
}

Substitution Substitution::without(const Variable& v) const {
  return without(VarSet{v});
}

Substitution Substitution::restricted_to(const VarSet& vars) const {
  Substitution out;
  for (const auto& e : entries_) {
    if (vars.count(e.var) != 0) out.entries_.push_back(e);
  }
  return out;
}

Variable FreshSupply::fresh(const Variable& base, const VarSet& avoid) {
  std::string stem = base.text.substr(0, base.text.find('#'));
  ++renamings_;
  for (int k = 1;; ++k) {
    Variable candidate{stem + "#" + std::to_string(k)};
    if (avoid.count(candidate) == 0) return candidate;
  }
}

// ---------------------------------------------------------------------------
// Literal substitution

namespace {

struct RawSubst {
  std::optional<SubstClash> clash;

  Term apply(const Term& t, const Substitution& sigma) {
    if (clash) return t;
    return std::visit(
        Overloaded{
            [&](const VarRef& n) -> Term {
              if (const Term* r = sigma.find(n.var)) return *r;
              return t;
            },
            [&](const Num&) -> Term { return t; },
            [&](const ErrorTerm&) -> Term { return t; },
            [&](const Sum& n) -> Term {
              return Term::sum(apply(n.left, sigma), apply(n.right, sigma));
            },
            [&](const App& n) -> Term {
              return Term::app(apply(n.fun, sigma), apply(n.arg, sigma));
            },
            [&](const Abs& n) -> Term {
              if (sigma.range_free_vars().count(n.binder) != 0) {
                clash = SubstClash{t, n.binder};
                return t;
              }
              return Term::abs(n.binder, n.annotation,
                               apply(n.body, sigma.without(n.binder)));
            },
            [&](const Unbind& n) -> Term {
              const VarSet fv = sigma.range_free_vars();
              for (const auto& e : n.map.entries()) {
                if (fv.count(e.var) != 0) {
                  clash = SubstClash{t, e.var};
                  return t;
                }
              }
              return Term::unbind(n.map,
                                  apply(n.body, sigma.without(domain(n.map))));
            },
            [&](const RebindAbs& n) -> Term {
              if (sigma.range_free_vars().count(n.binder) != 0) {
                clash = SubstClash{t, n.binder};
                return t;
              }
              std::vector<RebindEntry> entries;
              for (const auto& e : n.map.entries()) {
                entries.push_back({e.name, e.type, apply(e.term, sigma)});
              }
              return Term::rebind_abs(n.binder, n.annotation,
                                      RebindingMap(std::move(entries)),
                                      apply(n.body, sigma.without(n.binder)));
            },
        },
        t.node());
  }
};

// ---------------------------------------------------------------------------
// Capture-avoiding substitution

struct CaptureAvoiding {
  FreshSupply& supply;

  // Renames `binder` if it would capture a free variable of `sigma`, which
  // must already be restricted to the free variables of `body`. Returns the
  // binder to use and the substitution to push into `body`.
  // `siblings` are other variables bound at the same node.
  std::pair<Variable, Substitution> enter(const Variable& binder,
                                          const Term& body,
                                          const Substitution& sigma,
                                          const VarSet& siblings = {}) {
    if (testing_hooks::disable_capture_avoidance ||
        sigma.range_free_vars().count(binder) == 0) {
      return {binder, sigma};
    }
    VarSet avoid = siblings;
    avoid.merge(sigma.range_free_vars());
    avoid.merge(free_vars(body));
    for (const auto& e : sigma.entries()) avoid.insert(e.var);
    Variable renamed = supply.fresh(binder, avoid);
    std::vector<Substitution::Entry> entries = sigma.entries();
    entries.push_back({binder, Term::var(renamed)});
    return {renamed, Substitution(std::move(entries))};
  }

  Term apply(const Term& t, const Substitution& sigma_in) {
    if (sigma_in.empty()) return t;
    const Substitution sigma = sigma_in.restricted_to(free_vars(t));
    if (sigma.empty()) return t;
    return std::visit(
        Overloaded{
            [&](const VarRef& n) -> Term {
              if (const Term* r = sigma.find(n.var)) return *r;
              return t;
            },
            [&](const Num&) -> Term { return t; },
            [&](const ErrorTerm&) -> Term { return t; },
            [&](const Sum& n) -> Term {
              return Term::sum(apply(n.left, sigma), apply(n.right, sigma));
            },
            [&](const App& n) -> Term {
              return Term::app(apply(n.fun, sigma), apply(n.arg, sigma));
            },
            [&](const Abs& n) -> Term {
              const Substitution inner =
                  sigma.without(n.binder).restricted_to(free_vars(n.body));
              auto [binder, pushed] = enter(n.binder, n.body, inner);
              return Term::abs(binder, n.annotation, apply(n.body, pushed));
            },
            [&](const Unbind& n) -> Term {
              Substitution pushed = sigma.without(domain(n.map))
                                        .restricted_to(free_vars(n.body));
              VarSet bound = domain(n.map);
              std::vector<UnbindEntry> entries;
              for (const auto& e : n.map.entries()) {
                auto [var, next] =
                    enter(e.var, n.body, pushed.without(e.var), bound);
                if (!(var == e.var)) {
                  bound.insert(var);
                  std::vector<Substitution::Entry> merged = pushed.entries();
                  merged.push_back({e.var, Term::var(var)});
                  pushed = Substitution(std::move(merged));
                }
                entries.push_back({var, e.type, e.name});
              }
              return Term::unbind(UnbindingMap(std::move(entries)),
                                  apply(n.body, pushed));
            },
            [&](const RebindAbs& n) -> Term {
              std::vector<RebindEntry> entries;
              for (const auto& e : n.map.entries()) {
                entries.push_back({e.name, e.type, apply(e.term, sigma)});
              }
              const Substitution inner =
                  sigma.without(n.binder).restricted_to(free_vars(n.body));
              auto [binder, pushed] = enter(n.binder, n.body, inner);
              return Term::rebind_abs(binder, n.annotation,
                                      RebindingMap(std::move(entries)),
                                      apply(n.body, pushed));
            },
        },
        t.node());
  }
};

}  // namespace

RawSubstResult subst_raw(const Term& t, const Substitution& sigma) {
  RawSubst raw;
  Term out = raw.apply(t, sigma);
  if (raw.clash) return *raw.clash;
  return out;
}

Term subst(const Term& t, const Substitution& sigma, FreshSupply& supply) {
  CaptureAvoiding ca{supply};
  return ca.apply(t, sigma);
}

// ---------------------------------------------------------------------------
// Alpha-equivalence

namespace {

// Bound variables on each side are mapped to shared binding identifiers;
// free variables compare by spelling.
class AlphaEq {
 public:
  bool eq(const Term& a, const Term& b) {
    if (a.node().index() != b.node().index()) return false;
    return std::visit(
        Overloaded{
            [&](const VarRef& x) {
              const auto& y = std::get<VarRef>(b.node());
              auto ia = lookup(left_, x.var);
              auto ib = lookup(right_, y.var);
              if (ia || ib) return ia == ib;
              return x.var == y.var;
            },
            [&](const Num& x) { return x.value == std::get<Num>(b.node()).value; },
            [&](const ErrorTerm&) { return true; },
            [&](const Sum& x) {
              const auto& y = std::get<Sum>(b.node());
              return eq(x.left, y.left) && eq(x.right, y.right);
            },
            [&](const App& x) {
              const auto& y = std::get<App>(b.node());
              return eq(x.fun, y.fun) && eq(x.arg, y.arg);
            },
            [&](const Abs& x) {
              const auto& y = std::get<Abs>(b.node());
              if (x.annotation != y.annotation) return false;
              return under({{x.binder, y.binder}}, x.body, y.body);
            },
            [&](const RebindAbs& x) {
              const auto& y = std::get<RebindAbs>(b.node());
              if (x.annotation != y.annotation) return false;
              if (!maps_eq(x.map, y.map)) return false;
              return under({{x.binder, y.binder}}, x.body, y.body);
            },
            [&](const Unbind& x) {
              const auto& y = std::get<Unbind>(b.node());
              return unbind_eq(x, y);
            },
        },
        a.node());
  }

 private:
  using Scope = std::vector<std::pair<Variable, int>>;

  static std::optional<int> lookup(const Scope& scope, const Variable& v) {
    for (auto it = scope.rbegin(); it != scope.rend(); ++it) {
      if (it->first == v) return it->second;
    }
    return std::nullopt;
  }

  bool under(const std::vector<std::pair<Variable, Variable>>& pairs,
             const Term& a, const Term& b) {
    for (const auto& [x, y] : pairs) {
      const int id = next_id_++;
      left_.emplace_back(x, id);
      right_.emplace_back(y, id);
    }
    const bool result = eq(a, b);
    left_.resize(left_.size() - pairs.size());
    right_.resize(right_.size() - pairs.size());
    return result;
  }

  bool maps_eq(const RebindingMap& x, const RebindingMap& y) {
    if (x.entries().size() != y.entries().size()) return false;
    for (const auto& e : x.entries()) {
      const RebindEntry* f = y.find(e.name);
      if (f == nullptr || e.type != f->type || !eq(e.term, f->term)) {
        return false;
      }
    }
    return true;
  }

  // Unbinders mapped to the same name may be matched in any order, so try
  // every name- and type-respecting bijection.
  bool unbind_eq(const Unbind& x, const Unbind& y) {
    const auto& xs = x.map.entries();
    const auto& ys = y.map.entries();
    if (xs.size() != ys.size()) return false;
    std::vector<std::pair<Variable, Variable>> pairs;
    std::vector<bool> used(ys.size(), false);
    return match_unbinders(xs, ys, 0, used, pairs, x.body, y.body);
  }

  bool match_unbinders(const std::vector<UnbindEntry>& xs,
                       const std::vector<UnbindEntry>& ys, std::size_t i,
                       std::vector<bool>& used,
                       std::vector<std::pair<Variable, Variable>>& pairs,
                       const Term& bx, const Term& by) {
    if (i == xs.size()) return under(pairs, bx, by);
    for (std::size_t j = 0; j < ys.size(); ++j) {
      if (used[j] || !(xs[i].name == ys[j].name) || xs[i].type != ys[j].type) {
        continue;
      }
      used[j] = true;
      pairs.emplace_back(xs[i].var, ys[j].var);
      const bool ok = match_unbinders(xs, ys, i + 1, used, pairs, bx, by);
      pairs.pop_back();
      used[j] = false;
      if (ok) return true;
    }
    return false;
  }

  Scope left_;
  Scope right_;
  int next_id_ = 0;
};

}  // namespace

bool alpha_equiv(const Term& a, const Term& b) {
  AlphaEq checker;
  return checker.eq(a, b);
}

}  // namespace ulc
