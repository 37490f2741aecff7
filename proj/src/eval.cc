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

#include "ulc/eval.h"

#include <functional>
#include <utility>

namespace ulc {

namespace testing_hooks {
thread_local bool skip_rebind_coverage_check = false;
}  // namespace testing_hooks

const char* to_string(RuleLabel rule) {
  switch (rule) {
    case RuleLabel::kSum: return "Sum";
    case RuleLabel::kApp: return "App";
    case RuleLabel::kAppRebindOK: return "AppRebindOK";
    case RuleLabel::kAppRebindERR: return "AppRebindERR";
    case RuleLabel::kAppRebind: return "AppRebind";
    case RuleLabel::kCont: return "Cont";
    case RuleLabel::kContError: return "ContError";
  }
  return "?";
}

const char* to_string(StuckReason reason) {
  switch (reason) {
    case StuckReason::kApplyNonFunction: return "ApplyNonFunction";
    case StuckReason::kSumNonInt: return "SumNonInt";
    case StuckReason::kRebindAbsAppliedToNonUnbind:
      return "RebindAbsAppliedToNonUnbind";
    case StuckReason::kFreeVariable: return "FreeVariable";
    case StuckReason::kOpenUnbound: return "OpenUnbound";
    case StuckReason::kMissingRebinding: return "MissingRebinding";
    case StuckReason::kIntegerOverflow: return "IntegerOverflow";
  }
  return "?";
}

namespace {

class Stepper {
 public:
  Stepper(Mode mode, FreshSupply& supply) : mode_(mode), supply_(supply) {}

  StepResult step(const Term& t) {
    if (is_value(t)) return AlreadyValue{};
    if (t.as<ErrorTerm>()) return ErrorResult{};
    if (t.as<VarRef>()) return StuckResult{StuckReason::kFreeVariable, t};
    if (t.as<Unbind>()) return StuckResult{StuckReason::kOpenUnbound, t};
    if (const auto* n = t.as<Sum>()) return step_sum(t, *n);
    return step_app(t, *t.as<App>());
  }

 private:
  // Lifts a step of the hole's content through a non-empty context.
  StepResult in_context(StepResult inner,
                        const std::function<Term(Term)>& plug) {
    if (auto* r = std::get_if<Reduced>(&inner)) {
      if (r->next.as<ErrorTerm>()) return inner;
      return Reduced{plug(std::move(r->next)), r->rule};
    }
    if (std::holds_alternative<ErrorResult>(inner)) {
      return Reduced{Term::error(), RuleLabel::kContError};
    }
    return inner;
  }

  StepResult step_sum(const Term& t, const Sum& n) {
    if (!is_value(n.left)) {
      return in_context(step(n.left),
                        [&](Term l) { return Term::sum(std::move(l), n.right); });
    }
    const auto* a = n.left.as<Num>();
    if (a == nullptr) return StuckResult{StuckReason::kSumNonInt, t};
    if (!is_value(n.right)) {
      return in_context(step(n.right),
                        [&](Term r) { return Term::sum(n.left, std::move(r)); });
    }
    const auto* b = n.right.as<Num>();
    if (b == nullptr) return StuckResult{StuckReason::kSumNonInt, t};
    std::int64_t total = 0;
    if (__builtin_add_overflow(a->value, b->value, &total)) {
      return StuckResult{StuckReason::kIntegerOverflow, t};
    }
    return Reduced{Term::num(total), RuleLabel::kSum};
  }

  StepResult step_app(const Term& t, const App& n) {
    if (!is_value(n.fun)) {
      return in_context(step(n.fun),
                        [&](Term f) { return Term::app(std::move(f), n.arg); });
    }
    if (!is_value(n.arg)) {
      return in_context(step(n.arg),
                        [&](Term a) { return Term::app(n.fun, std::move(a)); });
    }
    if (const auto* f = n.fun.as<Abs>()) {
      return Reduced{subst(f->body, Substitution(f->binder, n.arg), supply_),
                     RuleLabel::kApp};
    }
    if (const auto* f = n.fun.as<RebindAbs>()) {
      const auto* u = n.arg.as<Unbind>();
      if (u == nullptr) {
        return StuckResult{StuckReason::kRebindAbsAppliedToNonUnbind, t};
      }
      return rebind(t, *f, *u);
    }
    return StuckResult{StuckReason::kApplyNonFunction, t};
  }

  // (\x[s].body) <r | code>  -->  body[x := code[y := s(r(y)) | y in dom r]]
  StepResult rebind(const Term& t, const RebindAbs& f, const Unbind& u) {
    std::vector<Substitution::Entry> resolved;
    bool covered = true;
    for (const auto& e : u.map.entries()) {
      if (const RebindEntry* def = f.map.find(e.name)) {
        resolved.push_back({e.var, def->term});
      } else {
        covered = false;
      }
    }
    RuleLabel rule = RuleLabel::kAppRebind;
    if (mode_ == Mode::kUntyped) {
      if (!covered && !testing_hooks::skip_rebind_coverage_check) {
        return Reduced{Term::error(), RuleLabel::kAppRebindERR};
      }
      rule = RuleLabel::kAppRebindOK;
    } else if (!covered) {
      return StuckResult{StuckReason::kMissingRebinding, t};
    }
    Term code = subst(u.body, Substitution(std::move(resolved)), supply_);
    return Reduced{subst(f.body, Substitution(f.binder, code), supply_), rule};
  }

  Mode mode_;
  FreshSupply& supply_;
};

}  // namespace

StepResult step_in(Mode mode, const Term& t, FreshSupply& supply) {
  Stepper s(mode, supply);
  return s.step(t);
}

StepResult step(const Term& t, FreshSupply& supply) {
  return step_in(Mode::kUntyped, t, supply);
}

StepResult step_typed(const Term& t, FreshSupply& supply) {
  return step_in(Mode::kTyped, t, supply);
}

Trace evaluate_in(Mode mode, const Term& t, std::size_t fuel,
                  FreshSupply& supply) {
  Trace trace{{}, FuelExhausted{t, 0}};
  Term current = t;
  while (true) {
    StepResult r = step_in(mode, current, supply);
    if (std::holds_alternative<AlreadyValue>(r)) {
      trace.outcome = ValueOutcome{current};
      return trace;
    }
    if (std::holds_alternative<ErrorResult>(r)) {
      trace.outcome = DynamicError{};
      return trace;
    }
    if (auto* s = std::get_if<StuckResult>(&r)) {
      trace.outcome = StuckOutcome{current, s->reason, s->at};
      return trace;
    }
    if (trace.steps.size() >= fuel) {
      trace.outcome = FuelExhausted{current, trace.steps.size()};
      return trace;
    }
    auto& red = std::get<Reduced>(r);
    trace.steps.push_back({current, red.rule, red.next});
    current = red.next;
  }
}

Trace evaluate(const Term& t, std::size_t fuel, FreshSupply& supply) {
  return evaluate_in(Mode::kUntyped, t, fuel, supply);
}

Trace evaluate_typed(const Term& t, std::size_t fuel, FreshSupply& supply) {
  return evaluate_in(Mode::kTyped, t, fuel, supply);
}

Term erase(const Term& t) {
  if (const auto* n = t.as<Sum>()) return Term::sum(erase(n->left), erase(n->right));
  if (const auto* n = t.as<App>()) return Term::app(erase(n->fun), erase(n->arg));
  if (const auto* n = t.as<Abs>()) {
    return Term::abs(n->binder, std::nullopt, erase(n->body));
  }
  if (const auto* n = t.as<Unbind>()) {
    std::vector<UnbindEntry> entries;
    for (const auto& e : n->map.entries()) {
      entries.push_back({e.var, std::nullopt, e.name});
    }
    return Term::unbind(UnbindingMap(std::move(entries)), erase(n->body));
  }
  if (const auto* n = t.as<RebindAbs>()) {
    std::vector<RebindEntry> entries;
    for (const auto& e : n->map.entries()) {
      entries.push_back({e.name, std::nullopt, erase(e.term)});
    }
    return Term::rebind_abs(n->binder, std::nullopt,
                            RebindingMap(std::move(entries)), erase(n->body));
  }
  return t;
}

}  // namespace ulc
