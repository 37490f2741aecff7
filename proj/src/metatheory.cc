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

#include "ulc/metatheory.h"

#include <algorithm>
#include <exception>
#include <utility>

#include <fmt/core.h>

#include "ulc/eval.h"
#include "ulc/surface.h"

namespace ulc {

namespace {

CheckResult fuel_exhausted(std::map<std::string, std::size_t> stats = {}) {
  CheckResult r{CheckResult::Status::kFuelExhausted, {}};
  r.stats = std::move(stats);
  return r;
}

bool subset(const VarSet& a, const VarSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

std::string show_vars(const VarSet& vs) {
  std::string out = "{";
  for (const auto& v : vs) {
    if (out.size() > 1) out += ",";
    out += v.text;
  }
  return out + "}";
}

const char* outcome_kind(const EvalOutcome& o) {
  if (std::holds_alternative<ValueOutcome>(o)) return "value";
  if (std::holds_alternative<DynamicError>(o)) return "error";
  if (std::holds_alternative<StuckOutcome>(o)) return "stuck";
  return "fuel-exhausted";
}

const char* step_kind(const StepResult& r) {
  if (std::holds_alternative<Reduced>(r)) return "reduced";
  if (std::holds_alternative<AlreadyValue>(r)) return "value";
  if (std::holds_alternative<ErrorResult>(r)) return "error";
  return "stuck";
}

}  // namespace

CheckResult check_preservation(const Term& t, std::size_t fuel) {
  auto ty = try_synthesize(TypingContext(), t);
  if (!ty) return CheckResult::skipped("ill-typed");
  FreshSupply supply;
  Trace trace = evaluate_typed(t, fuel, supply);
  std::map<std::string, std::size_t> stats{{"equal-type-steps", 0},
                                           {"steps", 0}};
  Type current = *ty;
  for (const auto& s : trace.steps) {
    auto next = try_synthesize(TypingContext(), s.to);
    if (!next) {
      return CheckResult::failed(fmt::format(
          "reduct {} of {} (by {}) is ill-typed", print(s.to), print(s.from),
          to_string(s.rule)));
    }
    if (!subtype(*next, current)) {
      return CheckResult::failed(fmt::format(
          "reduct {} has type {}, not a subtype of {}", print(s.to),
          print_type(*next), print_type(current)));
    }
    ++stats["steps"];
    if (*next == current) ++stats["equal-type-steps"];
    current = *next;
  }
  if (std::holds_alternative<FuelExhausted>(trace.outcome)) {
    return fuel_exhausted(std::move(stats));
  }
  CheckResult r = CheckResult::passed();
  r.stats = std::move(stats);
  return r;
}

CheckResult check_progress(const Term& t, std::size_t fuel) {
  if (!try_synthesize(TypingContext(), t)) return CheckResult::skipped("ill-typed");
  FreshSupply supply;
  Trace trace = evaluate_typed(t, fuel, supply);
  if (const auto* s = std::get_if<StuckOutcome>(&trace.outcome)) {
    return CheckResult::failed(fmt::format("well-typed term stuck at {} ({})",
                                           print(s->at), to_string(s->reason)));
  }
  if (std::holds_alternative<DynamicError>(trace.outcome)) {
    return CheckResult::failed("well-typed term raised error");
  }
  if (std::holds_alternative<FuelExhausted>(trace.outcome)) return fuel_exhausted();
  return CheckResult::passed();
}

CheckResult check_canonical_forms(const Term& v) {
  if (!is_value(v)) return CheckResult::skipped("not a value");
  auto ty = try_synthesize(TypingContext(), v);
  if (!ty) return CheckResult::skipped("ill-typed");
  bool ok = false;
  if (ty->is_int()) {
    ok = v.as<Num>() != nullptr;
  } else if (ty->as_arrow() != nullptr) {
    ok = v.as<Abs>() != nullptr || v.as<RebindAbs>() != nullptr;
  } else {
    ok = v.as<Unbind>() != nullptr;
  }
  if (ok) return CheckResult::passed();
  return CheckResult::failed(
      fmt::format("value {} has type {}", print(v), print_type(*ty)));
}

CheckResult check_erasure_simulation(const Term& t, std::size_t fuel) {
  auto ty = try_synthesize(TypingContext(), t);
  if (!ty) return CheckResult::skipped("ill-typed");
  FreshSupply s1;
  FreshSupply s2;
  Trace typed = evaluate_typed(t, fuel, s1);
  Trace untyped = evaluate(erase(t), fuel, s2);
  const std::size_t n = std::min(typed.steps.size(), untyped.steps.size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = typed.steps[i];
    const auto& b = untyped.steps[i];
    RuleLabel expected =
        a.rule == RuleLabel::kAppRebind ? RuleLabel::kAppRebindOK : a.rule;
    if (expected != b.rule) {
      return CheckResult::failed(fmt::format("step {}: typed {} but untyped {}",
                                             i, to_string(a.rule),
                                             to_string(b.rule)));
    }
    if (!structural_eq(erase(a.to), b.to)) {
      return CheckResult::failed(fmt::format(
          "step {}: erase({}) differs from {}", i, print(a.to), print(b.to)));
    }
  }
  const bool typed_out = std::holds_alternative<FuelExhausted>(typed.outcome);
  const bool untyped_out = std::holds_alternative<FuelExhausted>(untyped.outcome);
  if (typed_out || untyped_out) {
    if (typed_out && untyped_out) return fuel_exhausted();
    return CheckResult::failed("only one side exhausted its fuel");
  }
  if (typed.steps.size() != untyped.steps.size()) {
    return CheckResult::failed(fmt::format("typed run took {} steps, untyped {}",
                                           typed.steps.size(),
                                           untyped.steps.size()));
  }
  const auto* tv = std::get_if<ValueOutcome>(&typed.outcome);
  const auto* uv = std::get_if<ValueOutcome>(&untyped.outcome);
  if (uv == nullptr) {
    return CheckResult::failed(fmt::format("erased run ended in {}",
                                           outcome_kind(untyped.outcome)));
  }
  if (tv == nullptr || !structural_eq(erase(tv->value), uv->value)) {
    return CheckResult::failed("final values differ");
  }
  return CheckResult::passed();
}

CheckResult check_free_vars_lemma(const TypingContext& gamma, const Term& t) {
  if (!try_synthesize(gamma, t)) return CheckResult::skipped("ill-typed");
  VarSet dom;
  for (const auto& [v, ty] : gamma.entries()) dom.insert(v);
  VarSet fv = free_vars(t);
  if (subset(fv, dom)) return CheckResult::passed();
  return CheckResult::failed(fmt::format("FV {} not within {}", show_vars(fv),
                                         show_vars(dom)));
}

CheckResult check_step_determinism(const Term& t, Mode mode) {
  FreshSupply s1;
  FreshSupply s2;
  StepResult a = step_in(mode, t, s1);
  StepResult b = step_in(mode, t, s2);
  if (a.index() != b.index()) {
    return CheckResult::failed(
        fmt::format("steps disagree: {} vs {}", step_kind(a), step_kind(b)));
  }
  if (is_value(t) != std::holds_alternative<AlreadyValue>(a)) {
    return CheckResult::failed(fmt::format("value/step mismatch: {}", step_kind(a)));
  }
  const auto* ra = std::get_if<Reduced>(&a);
  if (ra == nullptr) return CheckResult::passed();
  const auto* rb = std::get_if<Reduced>(&b);
  if (ra->rule != rb->rule || !structural_eq(ra->next, rb->next)) {
    return CheckResult::failed("repeated steps disagree");
  }
  if (ra->next.as<ErrorTerm>()) return CheckResult::passed();
  // Left-to-right: while the left operand is not a value the right one is
  // untouched.
  if (const auto* s = t.as<Sum>(); s != nullptr && !is_value(s->left)) {
    const auto* n = ra->next.as<Sum>();
    if (n == nullptr || !structural_eq(n->right, s->right)) {
      return CheckResult::failed("sum stepped its right operand first");
    }
  }
  if (const auto* s = t.as<App>(); s != nullptr && !is_value(s->fun)) {
    const auto* n = ra->next.as<App>();
    if (n == nullptr || !structural_eq(n->arg, s->arg)) {
      return CheckResult::failed("application stepped its argument first");
    }
  }
  return CheckResult::passed();
}

CheckResult check_alpha_invariance(const Term& t, Mode mode, std::size_t fuel) {
  Term u = rename_binders(t);
  if (!alpha_equiv(t, u)) {
    return CheckResult::failed(
        fmt::format("renamed copy {} not alpha-equivalent", print(u)));
  }
  FreshSupply s1;
  FreshSupply s2;
  Trace a = evaluate_in(mode, t, fuel, s1);
  Trace b = evaluate_in(mode, u, fuel, s2);
  const std::size_t n = std::min(a.steps.size(), b.steps.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a.steps[i].rule != b.steps[i].rule) {
      return CheckResult::failed(fmt::format("step {}: rule {} vs {}", i,
                                             to_string(a.steps[i].rule),
                                             to_string(b.steps[i].rule)));
    }
    if (!alpha_equiv(a.steps[i].to, b.steps[i].to)) {
      return CheckResult::failed(fmt::format("step {}: {} vs {}", i,
                                             print(a.steps[i].to),
                                             print(b.steps[i].to)));
    }
  }
  if (a.steps.size() != b.steps.size() || a.outcome.index() != b.outcome.index()) {
    return CheckResult::failed(fmt::format("outcomes differ: {} vs {}",
                                           outcome_kind(a.outcome),
                                           outcome_kind(b.outcome)));
  }
  if (const auto* sa = std::get_if<StuckOutcome>(&a.outcome)) {
    if (sa->reason != std::get<StuckOutcome>(b.outcome).reason) {
      return CheckResult::failed("stuck reasons differ");
    }
  }
  if (std::holds_alternative<FuelExhausted>(a.outcome)) return fuel_exhausted();
  return CheckResult::passed();
}

CheckResult check_subst(const Term& t, const Substitution& sigma) {
  FreshSupply supply;
  Term s = subst(t, sigma, supply);
  RawSubstResult raw = subst_raw(t, sigma);
  if (const auto* r = std::get_if<Term>(&raw)) {
    if (!structural_eq(*r, s)) {
      return CheckResult::failed(
          fmt::format("subst {} but subst_raw {}", print(s), print(*r)));
    }
  } else {
    RawSubstResult renamed = subst_raw(rename_binders(t), sigma);
    if (const auto* r = std::get_if<Term>(&renamed)) {
      if (!alpha_equiv(*r, s)) {
        return CheckResult::failed(fmt::format(
            "subst {} not alpha-equivalent to {}", print(s), print(*r)));
      }
    }
  }

  VarSet expected;
  for (const auto& v : free_vars(t)) {
    if (const Term* image = sigma.find(v)) {
      VarSet fv = free_vars(*image);
      expected.insert(fv.begin(), fv.end());
    } else {
      expected.insert(v);
    }
  }
  VarSet actual = free_vars(s);
  if (actual != expected) {
    return CheckResult::failed(fmt::format("FV {} expected {}", show_vars(actual),
                                           show_vars(expected)));
  }

  if (!structural_eq(subst(t, Substitution(), supply), t)) {
    return CheckResult::failed("empty substitution is not the identity");
  }
  return CheckResult::passed();
}

CheckResult check_round_trip(const Term& t, Mode mode) {
  const std::string src = print(t);
  try {
    ParsedProgram p = parse_program({src, mode});
    if (p.mode != mode) {
      return CheckResult::failed(fmt::format("{} parsed in the wrong mode", src));
    }
    if (!structural_eq(p.term, t)) {
      return CheckResult::failed(
          fmt::format("{} reparsed as {}", src, print(p.term)));
    }
    if (has_annotations(t)) {
      ParsedProgram q = parse_program({src, std::nullopt});
      if (q.mode != Mode::kTyped) {
        return CheckResult::failed(fmt::format("{} not inferred typed", src));
      }
    }
  } catch (const std::exception& e) {
    return CheckResult::failed(fmt::format("{} failed to parse: {}", src, e.what()));
  }
  return CheckResult::passed();
}

// ---------------------------------------------------------------------------

namespace {

constexpr std::size_t kMaxReportedFailures = 5;

using Check = std::function<CheckResult(const Term&)>;

class PropertyRunner {
 public:
  explicit PropertyRunner(std::string name) : report_{std::move(name)} {}

  void record(const Term& input, const CheckResult& r, const Check& check) {
    ++report_.cases;
    for (const auto& [k, v] : r.stats) report_.stats[k] += v;
    switch (r.status) {
      case CheckResult::Status::kPassed:
        break;
      case CheckResult::Status::kSkipped:
        ++report_.skipped;
        break;
      case CheckResult::Status::kFuelExhausted:
        ++report_.fuel_exhausted;
        break;
      case CheckResult::Status::kFailed: {
        ++report_.stats["failed"];
        if (report_.failures.size() >= kMaxReportedFailures) break;
        Term small = shrink(input, [&](const Term& c) {
          return check(c).status == CheckResult::Status::kFailed;
        });
        report_.failures.push_back({print(small), check(small).detail});
        break;
      }
    }
  }

  PropertyReport take() { return std::move(report_); }

 private:
  PropertyReport report_;
};

GenConfig gen_config(const VerifyConfig& cfg, Mode mode) {
  GenConfig g;
  g.seed = cfg.seed;
  g.max_depth = cfg.max_depth;
  g.mode = mode;
  return g;
}

PropertyReport run_term_property(const VerifyConfig& cfg, const std::string& name,
                                 Mode mode, const Check& check) {
  Generator gen(gen_config(cfg, mode));
  PropertyRunner runner(name);
  for (std::size_t i = 0; i < cfg.cases; ++i) {
    Term t = gen.term();
    runner.record(t, check(t), check);
  }
  return runner.take();
}

}  // namespace

std::vector<PropertyReport> run_verify(const VerifyConfig& cfg) {
  const std::size_t fuel = cfg.fuel;
  std::vector<PropertyReport> out;

  out.push_back(run_term_property(cfg, "preservation", Mode::kTyped,
                                  [&](const Term& t) {
                                    return check_preservation(t, fuel);
                                  }));
  out.push_back(run_term_property(cfg, "progress", Mode::kTyped,
                                  [&](const Term& t) {
                                    return check_progress(t, fuel);
                                  }));
  out.push_back(run_term_property(cfg, "erasure-simulation", Mode::kTyped,
                                  [&](const Term& t) {
                                    return check_erasure_simulation(t, fuel);
                                  }));

  {
    Generator gen(gen_config(cfg, Mode::kTyped));
    PropertyRunner runner("canonical-forms");
    Check check = [](const Term& v) { return check_canonical_forms(v); };
    for (std::size_t i = 0; i < cfg.cases; ++i) {
      Term v = gen.value_of_type(gen.type(2), cfg.max_depth);
      runner.record(v, check(v), check);
    }
    out.push_back(runner.take());
  }

  {
    Generator gen(gen_config(cfg, Mode::kTyped));
    PropertyRunner runner("free-variables");
    for (std::size_t i = 0; i < cfg.cases; ++i) {
      TypingContext gamma = gen.context(2);
      Term t = (i % 2 == 0)
                   ? gen.term_of_type(gamma, gen.type(2), cfg.max_depth)
                   : gen.arbitrary_term(cfg.max_depth);
      Check check = [gamma](const Term& c) {
        return check_free_vars_lemma(gamma, c);
      };
      runner.record(t, check(t), check);
    }
    out.push_back(runner.take());
  }

  for (Mode mode : {Mode::kUntyped, Mode::kTyped}) {
    const std::string suffix = std::string("-") + to_string(mode);
    out.push_back(run_term_property(
        cfg, "step-determinism" + suffix, mode, [mode](const Term& t) {
          return check_step_determinism(t, mode);
        }));
    out.push_back(run_term_property(
        cfg, "alpha-invariance" + suffix, mode, [mode, fuel](const Term& t) {
          return check_alpha_invariance(t, mode, fuel);
        }));
    out.push_back(run_term_property(cfg, "round-trip" + suffix, mode,
                                    [mode](const Term& t) {
                                      return check_round_trip(t, mode);
                                    }));
  }

  {
    Generator gen(gen_config(cfg, Mode::kUntyped));
    PropertyRunner runner("substitution");
    for (std::size_t i = 0; i < cfg.cases; ++i) {
      Term t = gen.term();
      Substitution sigma = gen.substitution(2);
      Check check = [sigma](const Term& c) { return check_subst(c, sigma); };
      runner.record(t, check(t), check);
    }
    out.push_back(runner.take());
  }

  return out;
}

}  // namespace ulc
