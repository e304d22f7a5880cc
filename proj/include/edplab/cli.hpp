// Copyright 2026 The edplab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef EDPLAB_CLI_HPP
#define EDPLAB_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace edplab::cli {

/// Process exit codes.
inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitIo = 2;
inline constexpr int kExitUsage = 3;

enum class Command { Lemmas, Bounds, Protocol, Sweep };
enum class Format { Json, Csv };

/// Everything a subcommand needs. Grid fields hold the raw range text
/// ("2", "1..3", "0,0.5,1", "0..1:0.1"); empty means the command default.
struct ExperimentConfig {
  Command command = Command::Lemmas;
  std::string model = "measure_r";
  std::string n;
  std::string r;
  std::string p;
  std::string epsilon;
  std::string s;
  std::string ancillas;
  std::uint64_t seed = 20260101;
  int restarts = 32;
  int instances = 1000;
  std::optional<double> tolerance;
  Format format = Format::Json;
  std::string out;
  std::string spec;
  std::string model_file;
  int samples = 0;
  int threads = 0;  // 0: hardware concurrency
  bool counting = false;
};

/// "3" | "1..3" | "1,2,5". Throws std::invalid_argument on bad text.
std::vector<int> parse_int_range(const std::string& text);
/// "0.4" | "0.1,0.25" | "0..1:0.1" (inclusive, step after the colon).
std::vector<double> parse_real_range(const std::string& text);

/// Flat "key = value" lines; '#' starts a comment. Keys are long flag
/// names without dashes. Throws std::runtime_error on malformed lines.
std::map<std::string, std::string> parse_config_text(const std::string& text);

/// Runs a parsed configuration and returns the exit code. Results go to
/// `config.out` or to `out`; diagnostics go to `err`.
int execute(const ExperimentConfig& config, std::ostream& out, std::ostream& err);

/// Full entry point: argument parsing, config file merge, execution.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace edplab::cli

#endif  // EDPLAB_CLI_HPP
