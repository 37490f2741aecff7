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

#ifndef ULC_EVAL_H_
#define ULC_EVAL_H_

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "ulc/binding.h"
#include "ulc/syntax.h"

namespace ulc {

// Call-by-value small-step reduction. Evaluation contexts are
//   E ::= [] | E+t | n+E | E t | v E
// and decomposition is structural recursion along that grammar.

// kCont is never emitted: a step under a context carries the label of the
// rule that fired at the redex.
enum class RuleLabel {
  kSum,
  kApp,
  kAppRebindOK,
  kAppRebindERR,
  kAppRebind,  // typed calculus only
  kCont,
  kContError,
};

const char* to_string(RuleLabel rule);

enum class StuckReason {
  kApplyNonFunction,
  kSumNonInt,
  kRebindAbsAppliedToNonUnbind,
  kFreeVariable,
  kOpenUnbound,        // <r | t> with free variables outside dom(r)
  kMissingRebinding,   // typed rule fired with rng(r) not within dom(s)
  kIntegerOverflow,
};

const char* to_string(StuckReason reason);

struct Reduced {
  Term next;
  RuleLabel rule;
};
struct AlreadyValue {};
struct ErrorResult {};
struct StuckResult {
  StuckReason reason;
  /// The innermost term no rule applies to.
  Term at;
};

using StepResult = std::variant<Reduced, AlreadyValue, ErrorResult, StuckResult>;

/// One step of the untyped calculus (rules Sum, App, AppRebindOK,
/// AppRebindERR, Cont, ContError). A step whose redex produces `error`
/// collapses the whole term to `error`, keeping the redex rule label; an
/// `error` term sitting in the hole of a non-empty context reduces to
/// `error` by ContError.
StepResult step(const Term& t, FreshSupply& supply);

/// One step of the typed calculus: AppRebind fires without checking that the
/// rebinding covers the unbound term's names, and there are no error rules.
StepResult step_typed(const Term& t, FreshSupply& supply);

StepResult step_in(Mode mode, const Term& t, FreshSupply& supply);

struct ValueOutcome {
  Term value;
};
struct DynamicError {};
struct StuckOutcome {
  Term term;
  StuckReason reason;
  Term at;
};
struct FuelExhausted {
  Term term;
  std::size_t steps;
};

using EvalOutcome =
    std::variant<ValueOutcome, DynamicError, StuckOutcome, FuelExhausted>;

struct TraceStep {
  Term from;
  RuleLabel rule;
  Term to;
};

struct Trace {
  std::vector<TraceStep> steps;
  EvalOutcome outcome;
};

inline constexpr std::size_t kDefaultFuel = 10000;

/// Iterates step() until a value, `error`, a stuck term, or `fuel` steps.
Trace evaluate(const Term& t, std::size_t fuel, FreshSupply& supply);

Trace evaluate_typed(const Term& t, std::size_t fuel, FreshSupply& supply);

Trace evaluate_in(Mode mode, const Term& t, std::size_t fuel,
                  FreshSupply& supply);

/// Drops every annotation and decoration.
Term erase(const Term& t);

namespace testing_hooks {
/// When set, AppRebindOK fires even if some name is not rebound. Only used
/// by mutation tests.
extern thread_local bool skip_rebind_coverage_check;
}  // namespace testing_hooks

}  // namespace ulc

#endif  // ULC_EVAL_H_
