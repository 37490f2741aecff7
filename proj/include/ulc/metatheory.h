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

// Random generation of terms and types, and executable checks of the
// soundness properties of the typed calculus plus the binding and
// evaluation invariants of both calculi.

#ifndef ULC_METATHEORY_H_
#define ULC_METATHEORY_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ulc/binding.h"
#include "ulc/syntax.h"
#include "ulc/typing.h"

namespace ulc {

struct GenConfig {
  std::uint64_t seed = 42;
  int max_depth = 5;
  std::vector<std::string> variables = {"x", "y", "z"};
  std::vector<std::string> names = {"X", "Y"};
  std::int64_t min_int = -2;
  std::int64_t max_int = 5;
  Mode mode = Mode::kUntyped;
};

/// Deterministic generator: equal configurations yield equal sequences.
class Generator {
 public:
  explicit Generator(GenConfig cfg);

  const GenConfig& config() const { return cfg_; }

  /// Next term of the configured mode. In typed mode most terms come from
  /// the type-directed branch and are closed and well-typed; the rest are
  /// arbitrary mode-coherent terms.
  Term term();

  /// Arbitrary mode-coherent term over the variable pool (often open and
  /// often ill-typed), using every constructor.
  Term arbitrary_term(int depth);

  Type type(int depth);

  /// A term whose synthesized type under `gamma` is a subtype of `goal`.
  Term term_of_type(const TypingContext& gamma, const Type& goal, int depth);

  /// A closed, well-typed value whose type is a subtype of `goal`.
  Term value_of_type(const Type& goal, int depth);

  /// A typing context over a subset of the variable pool.
  TypingContext context(int depth);

  Substitution substitution(int depth);

  std::mt19937_64& rng() { return rng_; }

 private:
  int pick(int n);
  bool chance(double p);
  Variable pick_var();
  Name pick_name();
  Type subtype_of(const Type& t, int depth);
  Type supertype_of(const Type& t, int depth);
  Term minimal_term(const TypingContext& gamma, const Type& goal);

  GenConfig cfg_;
  std::mt19937_64 rng_;
};

/// Renames every bound variable to a fresh spelling (`b1`, `b2`, ...) that
/// does not occur in `t`. The result is alpha-equivalent to `t`.
Term rename_binders(const Term& t);

/// Greedy shrinking: repeatedly replaces the term with its first proper
/// subterm that still satisfies `failing`.
Term shrink(const Term& t, const std::function<bool(const Term&)>& failing);

/// Outcome of one property check on one case.
struct CheckResult {
  enum class Status { kPassed, kFailed, kSkipped, kFuelExhausted };

  static CheckResult passed() { return {Status::kPassed, {}}; }
  static CheckResult failed(std::string detail) {
    return {Status::kFailed, std::move(detail)};
  }
  static CheckResult skipped(std::string why = {}) {
    return {Status::kSkipped, std::move(why)};
  }

  Status status;
  std::string detail;
  /// Informational counters, merged into the report.
  std::map<std::string, std::size_t> stats = {};
};

inline constexpr std::size_t kMetatheoryFuel = 500;

/// Subject reduction, checked as T' <= T at each step of the typed trace.
/// Steps whose reduct has exactly the same type are counted under
/// "equal-type-steps".
CheckResult check_preservation(const Term& t, std::size_t fuel = kMetatheoryFuel);

/// Every non-value along the typed trace of a closed well-typed term steps.
CheckResult check_progress(const Term& t, std::size_t fuel = kMetatheoryFuel);

/// int => number, unbound type => unbound term, arrow => abstraction.
CheckResult check_canonical_forms(const Term& v);

/// Typed trace of t and untyped trace of erase(t) agree step for step, and
/// the untyped run neither errors nor gets stuck.
CheckResult check_erasure_simulation(const Term& t,
                                     std::size_t fuel = kMetatheoryFuel);

/// FV(t) is within dom(gamma) whenever t is typable under gamma.
CheckResult check_free_vars_lemma(const TypingContext& gamma, const Term& t);

/// Repeated steps agree, values do not step, and the left operand of a sum
/// or application is evaluated first.
CheckResult check_step_determinism(const Term& t, Mode mode);

/// Alpha-equivalent terms have step-wise alpha-equivalent traces.
CheckResult check_alpha_invariance(const Term& t, Mode mode,
                                   std::size_t fuel = kMetatheoryFuel);

/// subst agrees with subst_raw where the latter is defined, and with
/// subst_raw on a binder-renamed copy otherwise; free variables behave.
CheckResult check_subst(const Term& t, const Substitution& sigma);

/// print then parse yields a structurally equal term in the same mode.
CheckResult check_round_trip(const Term& t, Mode mode);

struct Counterexample {
  std::string term_src;
  std::string detail;
};

struct PropertyReport {
  std::string property;
  std::size_t cases = 0;
  std::size_t skipped = 0;
  std::size_t fuel_exhausted = 0;
  std::map<std::string, std::size_t> stats;
  std::vector<Counterexample> failures;

  bool passed() const { return failures.empty(); }
};

struct VerifyConfig {
  std::uint64_t seed = 42;
  std::size_t cases = 1000;
  int max_depth = 5;
  std::size_t fuel = kMetatheoryFuel;
};

/// Runs every property over `cases` generated inputs each.
std::vector<PropertyReport> run_verify(const VerifyConfig& cfg);

}  // namespace ulc

#endif  // ULC_METATHEORY_H_
