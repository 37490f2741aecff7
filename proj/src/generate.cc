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

#include <algorithm>
#include <deque>
#include <map>
#include <utility>

#include "ulc/eval.h"
#include "ulc/metatheory.h"

namespace ulc {

Generator::Generator(GenConfig cfg) : cfg_(std::move(cfg)), rng_(cfg_.seed) {}

int Generator::pick(int n) {
  return std::uniform_int_distribution<int>(0, n - 1)(rng_);
}

bool Generator::chance(double p) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng_) < p;
}

Variable Generator::pick_var() {
  return Variable{cfg_.variables[pick(static_cast<int>(cfg_.variables.size()))]};
}

Name Generator::pick_name() {
  return Name{cfg_.names[pick(static_cast<int>(cfg_.names.size()))]};
}

Type Generator::type(int depth) {
  if (depth <= 0 || chance(0.45)) return Type::integer();
  if (chance(0.5)) return Type::arrow(type(depth - 1), type(depth - 1));
  std::vector<NameBinding> ctx;
  for (const auto& n : cfg_.names) {
    if (chance(0.5)) ctx.push_back({Name{n}, type(depth - 2)});
  }
  return Type::unbound(NameContext(std::move(ctx)), type(depth - 1));
}

// S <= t: contravariant positions get supertypes, unbound types may drop
// requirements.
Type Generator::subtype_of(const Type& t, int depth) {
  if (depth <= 0 || chance(0.5)) return t;
  if (const auto* a = t.as_arrow()) {
    return Type::arrow(supertype_of(a->param, depth - 1),
                       subtype_of(a->result, depth - 1));
  }
  if (const auto* u = t.as_unbound()) {
    std::vector<NameBinding> ctx;
    const NameContext canon = u->ctx.canonical();
    for (const auto& e : canon.entries()) {
      if (chance(0.7)) ctx.push_back({e.name, supertype_of(e.type, depth - 1)});
    }
    return Type::unbound(NameContext(std::move(ctx)),
                         subtype_of(u->body, depth - 1));
  }
  return t;
}

// t <= S: unbound types may add requirements.
Type Generator::supertype_of(const Type& t, int depth) {
  if (depth <= 0 || chance(0.5)) return t;
  if (const auto* a = t.as_arrow()) {
    return Type::arrow(subtype_of(a->param, depth - 1),
                       supertype_of(a->result, depth - 1));
  }
  if (const auto* u = t.as_unbound()) {
    std::vector<NameBinding> ctx;
    const NameContext canon = u->ctx.canonical();
    for (const auto& e : canon.entries()) {
      ctx.push_back({e.name, subtype_of(e.type, depth - 1)});
    }
    for (const auto& n : cfg_.names) {
      if (!canon.lookup(Name{n}) && chance(0.3)) {
        ctx.push_back({Name{n}, type(depth - 2)});
      }
    }
    return Type::unbound(NameContext(std::move(ctx)),
                         supertype_of(u->body, depth - 1));
  }
  return t;
}

Term Generator::minimal_term(const TypingContext& gamma, const Type& goal) {
  if (goal.is_int()) {
    for (const auto& [v, t] : gamma.entries()) {
      if (t.is_int() && chance(0.3)) return Term::var(v);
    }
    return Term::num(cfg_.min_int +
                     pick(static_cast<int>(cfg_.max_int - cfg_.min_int + 1)));
  }
  if (const auto* a = goal.as_arrow()) {
    Variable x = pick_var();
    return Term::abs(x, a->param,
                     minimal_term(gamma.with(x, a->param), a->result));
  }
  const auto* u = goal.as_unbound();
  return Term::unbind(UnbindingMap(), minimal_term(gamma, u->body));
}

Term Generator::term_of_type(const TypingContext& gamma, const Type& goal,
                             int depth) {
  if (depth <= 0) return minimal_term(gamma, goal);

  std::vector<Variable> usable;
  for (const auto& [v, t] : gamma.entries()) {
    if (subtype(t, goal)) usable.push_back(v);
  }
  if (!usable.empty() && chance(0.25)) {
    return Term::var(usable[pick(static_cast<int>(usable.size()))]);
  }

  // Elimination forms: plain application or rebinding of open code.
  if (chance(0.3)) {
    if (chance(0.5)) {
      Type param = type(2);
      Term fun = term_of_type(gamma, Type::arrow(param, goal), depth - 1);
      Term arg = term_of_type(gamma, param, depth - 1);
      return Term::app(fun, arg);
    }
    std::vector<NameBinding> ctx;
    std::vector<RebindEntry> entries;
    for (const auto& n : cfg_.names) {
      if (!chance(0.6)) continue;
      Type declared = type(1);
      ctx.push_back({Name{n}, declared});
      entries.push_back(
          {Name{n}, declared, term_of_type(gamma, declared, depth - 1)});
    }
    Type param = Type::unbound(NameContext(ctx), goal);
    Variable z = pick_var();
    Term fun = Term::rebind_abs(z, param, RebindingMap(std::move(entries)),
                                Term::var(z));
    return Term::app(fun, term_of_type(gamma, param, depth - 1));
  }

  if (goal.is_int()) {
    if (chance(0.4)) {
      return Term::num(cfg_.min_int +
                       pick(static_cast<int>(cfg_.max_int - cfg_.min_int + 1)));
    }
    return Term::sum(term_of_type(gamma, goal, depth - 1),
                     term_of_type(gamma, goal, depth - 1));
  }

  if (const auto* a = goal.as_arrow()) {
    Variable x = pick_var();
    const auto* code = a->param.as_unbound();
    if (code != nullptr && chance(0.6)) {
      // Provide at least the names the parameter requires, at subtypes.
      std::vector<RebindEntry> entries;
      const NameContext required = code->ctx.canonical();
      for (const auto& e : required.entries()) {
        Type declared = subtype_of(e.type, 1);
        entries.push_back(
            {e.name, declared, term_of_type(gamma, declared, depth - 1)});
      }
      for (const auto& n : cfg_.names) {
        if (!required.lookup(Name{n}) && chance(0.25)) {
          Type declared = type(1);
          entries.push_back(
              {Name{n}, declared, term_of_type(gamma, declared, depth - 1)});
        }
      }
      RebindingMap s(std::move(entries));
      Type inner = supertype_of(code->body, 1);
      Type param = Type::unbound(nenv(s), inner);
      Term body = term_of_type(gamma.with(x, inner), a->result, depth - 1);
      return Term::rebind_abs(x, param, std::move(s), body);
    }
    Type param = supertype_of(a->param, 1);
    return Term::abs(x, param,
                     term_of_type(gamma.with(x, param), a->result, depth - 1));
  }

  const auto* u = goal.as_unbound();
  std::vector<UnbindEntry> entries;
  std::vector<Variable> free = {};
  for (const auto& v : cfg_.variables) free.push_back(Variable{v});
  std::shuffle(free.begin(), free.end(), rng_);
  TypingContext bound;
  const NameContext canon = u->ctx.canonical();
  for (const auto& e : canon.entries()) {
    if (!chance(0.75)) continue;
    Type decoration = supertype_of(e.type, 1);
    const int copies = chance(0.2) ? 2 : 1;
    for (int k = 0; k < copies && !free.empty(); ++k) {
      Variable v = free.back();
      free.pop_back();
      bound = bound.with(v, decoration);
      entries.push_back({v, decoration, e.name});
    }
  }
  Term body = term_of_type(ctx_update(gamma, bound), u->body, depth - 1);
  return Term::unbind(UnbindingMap(std::move(entries)), body);
}

Term Generator::value_of_type(const Type& goal, int depth) {
  for (int attempt = 0; attempt < 8; ++attempt) {
    Term t = term_of_type(TypingContext(), goal, depth);
    if (is_value(t)) return t;
  }
  return minimal_term(TypingContext(), goal);
}

TypingContext Generator::context(int depth) {
  TypingContext gamma;
  for (const auto& v : cfg_.variables) {
    if (chance(0.5)) gamma = gamma.with(Variable{v}, type(depth));
  }
  return gamma;
}

Substitution Generator::substitution(int depth) {
  std::vector<Substitution::Entry> entries;
  for (const auto& v : cfg_.variables) {
    if (chance(0.4)) entries.push_back({Variable{v}, arbitrary_term(depth)});
  }
  return Substitution(std::move(entries));
}

Term Generator::arbitrary_term(int depth) {
  const bool typed = cfg_.mode == Mode::kTyped;
  auto annotation = [&]() -> std::optional<Type> {
    if (!typed) return std::nullopt;
    return type(2);
  };
  if (depth <= 0) {
    if (chance(0.5)) {
      return Term::num(cfg_.min_int +
                       pick(static_cast<int>(cfg_.max_int - cfg_.min_int + 1)));
    }
    return Term::var(pick_var());
  }
  switch (pick(typed ? 8 : 9)) {
    case 0:
      return Term::num(cfg_.min_int +
                       pick(static_cast<int>(cfg_.max_int - cfg_.min_int + 1)));
    case 1:
      return Term::var(pick_var());
    case 2:
      return Term::sum(arbitrary_term(depth - 1), arbitrary_term(depth - 1));
    case 3: {
      Variable x = pick_var();
      return Term::abs(x, annotation(), arbitrary_term(depth - 1));
    }
    case 4:
      return Term::app(arbitrary_term(depth - 1), arbitrary_term(depth - 1));
    case 5:
    case 7: {
      // Half of these build a rebinding redex directly.
      std::vector<UnbindEntry> r;
      for (const auto& v : cfg_.variables) {
        if (chance(0.4)) r.push_back({Variable{v}, annotation(), pick_name()});
      }
      Term code = Term::unbind(UnbindingMap(std::move(r)),
                               arbitrary_term(depth - 1));
      if (pick(2) == 0) return code;
      std::vector<RebindEntry> s;
      for (const auto& n : cfg_.names) {
        if (chance(0.6)) s.push_back({Name{n}, annotation(), arbitrary_term(depth - 2)});
      }
      Variable x = pick_var();
      Term body = chance(0.5) ? Term::var(x) : arbitrary_term(depth - 1);
      return Term::app(
          Term::rebind_abs(x, annotation(), RebindingMap(std::move(s)), body),
          code);
    }
    case 6: {
      std::vector<RebindEntry> s;
      for (const auto& n : cfg_.names) {
        if (chance(0.5)) s.push_back({Name{n}, annotation(), arbitrary_term(depth - 1)});
      }
      Variable x = pick_var();
      return Term::rebind_abs(x, annotation(), RebindingMap(std::move(s)),
                              arbitrary_term(depth - 1));
    }
    default:
      return Term::error();
  }
}

Term Generator::term() {
  if (cfg_.max_depth <= 0) return arbitrary_term(0);
  if (cfg_.mode == Mode::kTyped) {
    if (chance(0.75)) {
      return term_of_type(TypingContext(), type(2), cfg_.max_depth);
    }
    return arbitrary_term(cfg_.max_depth);
  }
  if (chance(0.4)) {
    return erase(term_of_type(TypingContext(), type(2), cfg_.max_depth));
  }
  return arbitrary_term(cfg_.max_depth);
}

// ---------------------------------------------------------------------------

namespace {

class BinderRenamer {
 public:
  explicit BinderRenamer(const Term& t) : taken_(all_vars(t)) {}

  Term rename(const Term& t) {
    if (const auto* n = t.as<VarRef>()) {
      for (auto it = scope_.rbegin(); it != scope_.rend(); ++it) {
        if (it->first == n->var) return Term::var(it->second);
      }
      return t;
    }
    if (const auto* n = t.as<Sum>()) {
      return Term::sum(rename(n->left), rename(n->right));
    }
    if (const auto* n = t.as<App>()) {
      return Term::app(rename(n->fun), rename(n->arg));
    }
    if (const auto* n = t.as<Abs>()) {
      Variable b = fresh();
      scope_.emplace_back(n->binder, b);
      Term body = rename(n->body);
      scope_.pop_back();
      return Term::abs(b, n->annotation, body);
    }
    if (const auto* n = t.as<Unbind>()) {
      std::vector<UnbindEntry> entries;
      for (const auto& e : n->map.entries()) {
        Variable b = fresh();
        entries.push_back({b, e.type, e.name});
      }
      for (std::size_t i = 0; i < entries.size(); ++i) {
        scope_.emplace_back(n->map.entries()[i].var, entries[i].var);
      }
      Term body = rename(n->body);
      scope_.resize(scope_.size() - entries.size());
      return Term::unbind(UnbindingMap(std::move(entries)), body);
    }
    if (const auto* n = t.as<RebindAbs>()) {
      std::vector<RebindEntry> entries;
      for (const auto& e : n->map.entries()) {
        entries.push_back({e.name, e.type, rename(e.term)});
      }
      Variable b = fresh();
      scope_.emplace_back(n->binder, b);
      Term body = rename(n->body);
      scope_.pop_back();
      return Term::rebind_abs(b, n->annotation, RebindingMap(std::move(entries)),
                              body);
    }
    return t;
  }

 private:
  Variable fresh() {
    while (true) {
      Variable v{"b" + std::to_string(++counter_)};
      if (taken_.count(v) == 0) return v;
    }
  }

  VarSet taken_;
  std::vector<std::pair<Variable, Variable>> scope_;
  int counter_ = 0;
};

void proper_subterms(const Term& t, std::vector<Term>& out) {
  auto add = [&](const Term& c) { out.push_back(c); };
  if (const auto* n = t.as<Sum>()) {
    add(n->left);
    add(n->right);
  } else if (const auto* n = t.as<App>()) {
    add(n->fun);
    add(n->arg);
  } else if (const auto* n = t.as<Abs>()) {
    add(n->body);
  } else if (const auto* n = t.as<Unbind>()) {
    add(n->body);
  } else if (const auto* n = t.as<RebindAbs>()) {
    for (const auto& e : n->map.entries()) add(e.term);
    add(n->body);
  }
}

}  // namespace

Term rename_binders(const Term& t) {
  BinderRenamer r(t);
  return r.rename(t);
}

Term shrink(const Term& t, const std::function<bool(const Term&)>& failing) {
  Term current = t;
  bool improved = true;
  while (improved) {
    improved = false;
    // Breadth-first, so larger reductions are tried first.
    std::deque<Term> queue;
    std::vector<Term> children;
    proper_subterms(current, children);
    queue.insert(queue.end(), children.begin(), children.end());
    while (!queue.empty()) {
      Term candidate = queue.front();
      queue.pop_front();
      if (failing(candidate)) {
        current = candidate;
        improved = true;
        break;
      }
      children.clear();
      proper_subterms(candidate, children);
      queue.insert(queue.end(), children.begin(), children.end());
    }
  }
  return current;
}

}  // namespace ulc
