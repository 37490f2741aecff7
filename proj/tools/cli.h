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

#ifndef ULC_TOOLS_CLI_H_
#define ULC_TOOLS_CLI_H_

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "ulc/eval.h"

namespace ulc::cli {

enum ExitCode {
  kOk = 0,
  kDynamicError = 1,
  kStuck = 2,
  kTypeError = 3,
  kParseError = 4,
  kFuelExhausted = 5,
  kUsage = 64,
};

/// `value: 3`, `error`, `stuck: ApplyNonFunction at 3 2`, ...
std::string format_outcome(const EvalOutcome& outcome);

ExitCode exit_code(const EvalOutcome& outcome);

/// One expectation of one corpus file.
struct CorpusCheck {
  std::string file;
  std::string expectation;
  bool passed = false;
  std::string actual;
};

/// Runs the `-- expect:` lines of one `.ulc` file. Recognised forms:
///   value <term> | error | stuck <Reason> [<term>] | rules <R>, <R>, ...
///   type <type>  | type-error <Kind>
/// An optional `-- run: typed|untyped|erased-typed` line picks the
/// semantics; the default follows the file's mode.
std::vector<CorpusCheck> run_corpus_file(const std::filesystem::path& file);

/// Every `.ulc` file in `dir`, in file-name order.
std::vector<CorpusCheck> run_corpus(const std::filesystem::path& dir);

std::filesystem::path default_corpus_dir();

/// Entry point. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::istream& in,
        std::ostream& out, std::ostream& err);

}  // namespace ulc::cli

#endif  // ULC_TOOLS_CLI_H_
