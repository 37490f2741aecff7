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

#include "cli.h"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/core.h>
#include <json.hpp>

#include "ulc/metatheory.h"
#include "ulc/surface.h"
#include "ulc/typing.h"

namespace ulc::cli {

namespace {

using json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::string read_input(const std::string& path, std::istream& in) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(in), {});
  }
  std::ifstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot read " + path);
  return std::string(std::istreambuf_iterator<char>(f), {});
}

std::size_t default_fuel() {
  const char* env = std::getenv("ULC_FUEL");
  if (env == nullptr || *env == '\0') return kDefaultFuel;
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(env, &used);
    if (used != std::string(env).size()) throw std::invalid_argument(env);
    return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    throw UsageError(fmt::format("ULC_FUEL is not a number: {}", env));
  }
}

// Shared flags of the commands that run a program.
struct ProgramFlags {
  std::string file = "-";
  bool typed = false;
  bool untyped = false;
  std::optional<std::size_t> fuel;

  void add_to(CLI::App* cmd) {
    cmd->add_option("file", file, "source file, or - for stdin");
    auto* t = cmd->add_flag("--typed", typed, "force typed mode");
    auto* u = cmd->add_flag("--untyped", untyped,
                            "force untyped mode (annotations are erased)");
    t->excludes(u);
    cmd->add_option("--fuel", fuel, "maximum number of steps");
  }

  std::size_t fuel_or_default() const { return fuel ? *fuel : default_fuel(); }
};

ParsedProgram load(const ProgramFlags& flags, std::istream& in) {
  const std::string text = read_input(flags.file, in);
  if (flags.untyped) {
    Term t = erase(parse_term(text));
    check_mode(t, Mode::kUntyped);
    return {t, Mode::kUntyped};
  }
  std::optional<Mode> hint;
  if (flags.typed) hint = Mode::kTyped;
  return parse_program({text, hint});
}

std::string format_type_error(const TypeError& e) {
  return fmt::format("type error: {} at {}: {}", to_string(e.kind), e.path,
                     e.what());
}

json outcome_json(const EvalOutcome& o) {
  json j;
  if (const auto* v = std::get_if<ValueOutcome>(&o)) {
    j["kind"] = "value";
    j["term"] = print(v->value);
  } else if (std::holds_alternative<DynamicError>(o)) {
    j["kind"] = "error";
  } else if (const auto* s = std::get_if<StuckOutcome>(&o)) {
    j["kind"] = "stuck";
    j["term"] = print(s->term);
    j["detail"] = fmt::format("{} at {}", to_string(s->reason), print(s->at));
  } else {
    const auto& f = std::get<FuelExhausted>(o);
    j["kind"] = "fuel-exhausted";
    j["term"] = print(f.term);
  }
  return j;
}

int cmd_eval(const ProgramFlags& flags, bool show_trace, const std::string& format,
             std::istream& in, std::ostream& out) {
  ParsedProgram p = load(flags, in);
  FreshSupply supply;
  Trace trace = evaluate_in(p.mode, p.term, flags.fuel_or_default(), supply);
  if (show_trace && format == "json") {
    json steps = json::array();
    for (const auto& s : trace.steps) {
      steps.push_back(
          {{"from", print(s.from)}, {"rule", to_string(s.rule)}, {"to", print(s.to)}});
    }
    json doc{{"steps", steps}, {"outcome", outcome_json(trace.outcome)}};
    out << doc.dump(2) << "\n";
    return exit_code(trace.outcome);
  }
  if (show_trace) {
    for (const auto& s : trace.steps) {
      out << print(s.from) << "  --" << to_string(s.rule) << "-->  "
          << print(s.to) << "\n";
    }
  }
  out << format_outcome(trace.outcome) << "\n";
  return exit_code(trace.outcome);
}

int cmd_typecheck(const std::string& file, std::istream& in, std::ostream& out) {
  ParsedProgram p = parse_program({read_input(file, in), Mode::kTyped});
  try {
    out << print_type(synthesize(TypingContext(), p.term)) << "\n";
    return kOk;
  } catch (const TypeError& e) {
    out << format_type_error(e) << "\n";
    return kTypeError;
  }
}

int cmd_verify(const VerifyConfig& cfg, const std::string& format,
               std::ostream& out) {
  std::vector<PropertyReport> reports = run_verify(cfg);
  bool ok = true;
  json doc = json::array();
  for (const auto& r : reports) {
    ok = ok && r.passed();
    json failures = json::array();
    for (const auto& f : r.failures) {
      failures.push_back({{"term-src", f.term_src}, {"detail", f.detail}});
    }
    doc.push_back({{"property", r.property},
                   {"cases", r.cases},
                   {"skipped", r.skipped},
                   {"fuel-exhausted", r.fuel_exhausted},
                   {"failures", failures}});
    if (format == "json") continue;
    out << fmt::format("{} {:<28} cases={} skipped={} fuel-exhausted={}",
                       r.passed() ? "PASS" : "FAIL", r.property, r.cases,
                       r.skipped, r.fuel_exhausted);
    for (const auto& [k, v] : r.stats) out << " " << k << "=" << v;
    out << "\n";
    for (const auto& f : r.failures) {
      out << "    " << f.term_src << "\n      " << f.detail << "\n";
    }
  }
  if (format == "json") out << doc.dump(2) << "\n";
  return ok ? kOk : kDynamicError;
}

int cmd_corpus(const std::string& dir, std::ostream& out) {
  std::vector<CorpusCheck> checks = run_corpus(dir);
  std::size_t failed = 0;
  for (const auto& c : checks) {
    if (!c.passed) ++failed;
    out << fmt::format("{}  {:<26} {}", c.passed ? "PASS" : "FAIL", c.file,
                       c.expectation);
    if (!c.passed) out << "  (got " << c.actual << ")";
    out << "\n";
  }
  out << fmt::format("{} checks, {} failed\n", checks.size(), failed);
  return failed == 0 && !checks.empty() ? kOk : kDynamicError;
}

// ---------------------------------------------------------------------------
// Corpus

struct Expectation {
  std::string directive;
  std::string argument;
  std::string text;
};

std::string join_rules(const Trace& t) {
  std::string s;
  for (const auto& step : t.steps) {
    if (!s.empty()) s += ", ";
    s += to_string(step.rule);
  }
  return s;
}

std::string normalise_rules(const std::string& list) {
  std::string s;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!s.empty()) s += ", ";
    s += trim(item);
  }
  return s;
}

}  // namespace

std::string format_outcome(const EvalOutcome& o) {
  if (const auto* v = std::get_if<ValueOutcome>(&o)) return "value: " + print(v->value);
  if (std::holds_alternative<DynamicError>(o)) return "error";
  if (const auto* s = std::get_if<StuckOutcome>(&o)) {
    return fmt::format("stuck: {} at {} in {}", to_string(s->reason),
                       print(s->at), print(s->term));
  }
  const auto& f = std::get<FuelExhausted>(o);
  return fmt::format("fuel exhausted after {} steps: {}", f.steps, print(f.term));
}

ExitCode exit_code(const EvalOutcome& o) {
  if (std::holds_alternative<ValueOutcome>(o)) return kOk;
  if (std::holds_alternative<DynamicError>(o)) return kDynamicError;
  if (std::holds_alternative<StuckOutcome>(o)) return kStuck;
  return kFuelExhausted;
}

std::vector<CorpusCheck> run_corpus_file(const std::filesystem::path& file) {
  std::ifstream f(file, std::ios::binary);
  const std::string text(std::istreambuf_iterator<char>(f), {});
  const std::string name = file.filename().string();

  std::vector<Expectation> expectations;
  std::optional<std::string> run_mode;
  std::stringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    line = trim(line);
    if (line.rfind("-- expect:", 0) == 0) {
      std::string rest = trim(line.substr(10));
      const auto sp = rest.find(' ');
      expectations.push_back({rest.substr(0, sp),
                              sp == std::string::npos ? "" : trim(rest.substr(sp)),
                              rest});
    } else if (line.rfind("-- run:", 0) == 0) {
      run_mode = trim(line.substr(7));
    }
  }

  std::vector<CorpusCheck> out;
  std::optional<ParsedProgram> program;
  std::string load_failure;
  try {
    program = parse_program({text, std::nullopt});
  } catch (const std::exception& e) {
    load_failure = e.what();
  }
  if (!program) {
    for (const auto& e : expectations) out.push_back({name, e.text, false, load_failure});
    return out;
  }

  Mode mode = program->mode;
  Term term = program->term;
  if (run_mode == "untyped") {
    mode = Mode::kUntyped;
    term = erase(term);
  } else if (run_mode == "typed") {
    mode = Mode::kTyped;
  } else if (run_mode == "erased-typed") {
    mode = Mode::kTyped;
    term = erase(term);
  }
  FreshSupply supply;
  const Trace trace = evaluate_in(mode, term, kDefaultFuel, supply);
  const std::string outcome = format_outcome(trace.outcome);

  for (const auto& e : expectations) {
    CorpusCheck c{name, e.text, false, outcome};
    try {
      if (e.directive == "value") {
        const auto* v = std::get_if<ValueOutcome>(&trace.outcome);
        c.passed = v != nullptr && structural_eq(v->value, parse_term(e.argument));
      } else if (e.directive == "error") {
        c.passed = std::holds_alternative<DynamicError>(trace.outcome);
      } else if (e.directive == "stuck") {
        const auto* s = std::get_if<StuckOutcome>(&trace.outcome);
        const auto sp = e.argument.find(' ');
        const std::string reason = e.argument.substr(0, sp);
        c.passed = s != nullptr && reason == to_string(s->reason);
        if (c.passed && sp != std::string::npos) {
          c.passed = structural_eq(s->term, parse_term(e.argument.substr(sp)));
        }
      } else if (e.directive == "rules") {
        c.actual = join_rules(trace);
        c.passed = c.actual == normalise_rules(e.argument);
      } else if (e.directive == "type") {
        Type ty = synthesize(TypingContext(), program->term);
        c.actual = print_type(ty);
        c.passed = ty == parse_type(e.argument);
      } else if (e.directive == "type-error") {
        auto ty = try_synthesize(TypingContext(), program->term);
        c.actual = ty ? print_type(*ty) : "";
        try {
          synthesize(TypingContext(), program->term);
        } catch (const TypeError& err) {
          c.actual = format_type_error(err);
          c.passed = e.argument == to_string(err.kind);
        }
      } else {
        c.actual = "unknown directive";
      }
    } catch (const std::exception& err) {
      c.actual = err.what();
      c.passed = false;
    }
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<CorpusCheck> run_corpus(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.path().extension() == ".ulc") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<CorpusCheck> out;
  for (const auto& f : files) {
    auto checks = run_corpus_file(f);
    out.insert(out.end(), checks.begin(), checks.end());
  }
  return out;
}

std::filesystem::path default_corpus_dir() { return ULC_CORPUS_DIR; }

int run(const std::vector<std::string>& args, std::istream& in,
        std::ostream& out, std::ostream& err) {
  CLI::App app{"Interpreter and checker for the lambda calculus with unbind and rebind"};
  app.name("ulc");
  app.require_subcommand(1);

  ProgramFlags eval_flags;
  auto* eval = app.add_subcommand("eval", "evaluate a program");
  eval_flags.add_to(eval);

  ProgramFlags trace_flags;
  std::string trace_format = "text";
  auto* trace = app.add_subcommand("trace", "print every reduction step");
  trace_flags.add_to(trace);
  trace->add_option("--format", trace_format)->check(CLI::IsMember({"text", "json"}));

  std::string typecheck_file = "-";
  auto* typecheck = app.add_subcommand("typecheck", "synthesize the type of a program");
  typecheck->add_option("file", typecheck_file, "source file, or - for stdin");

  VerifyConfig verify_cfg;
  std::string verify_format = "text";
  auto* verify = app.add_subcommand("verify", "run the property checks");
  verify->add_option("--seed", verify_cfg.seed);
  verify->add_option("--cases", verify_cfg.cases);
  verify->add_option("--depth", verify_cfg.max_depth)->check(CLI::Range(0, 12));
  verify->add_option("--fuel", verify_cfg.fuel);
  verify->add_option("--format", verify_format)->check(CLI::IsMember({"text", "json"}));

  std::string corpus_dir = default_corpus_dir().string();
  auto* corpus = app.add_subcommand("corpus", "check the bundled examples");
  corpus->add_option("--dir", corpus_dir, "directory of .ulc files");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return kUsage;
  }

  try {
    if (*eval) return cmd_eval(eval_flags, false, "text", in, out);
    if (*trace) return cmd_eval(trace_flags, true, trace_format, in, out);
    if (*typecheck) return cmd_typecheck(typecheck_file, in, out);
    if (*verify) return cmd_verify(verify_cfg, verify_format, out);
    return cmd_corpus(corpus_dir, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kParseError;
  } catch (const ModeError& e) {
    err << "mode error: " << e.what() << " at " << e.path << "\n";
    return kParseError;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace ulc::cli
