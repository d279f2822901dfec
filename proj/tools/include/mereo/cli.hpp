#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace mereo {

enum class Command { Check, Eval, Laws, Show };
enum class Format { Text, Json };

/// Exit codes of the mereo tool.
enum ExitCode : int {
  kOk = 0,
  kFailed = 1,       ///< a falsified assertion or a failed law
  kInputError = 2,   ///< parse or elaboration error
  kUsageError = 3,
};

struct CliConfig {
  Command command = Command::Check;
  std::optional<std::string> input;
  std::optional<std::string> query;  ///< eval only
  Format format = Format::Text;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> max_size;
  std::optional<std::size_t> num_systems;
  bool color = false;
};

/// Runs one command, writing results to `out` and diagnostics to `err`.
int run(const CliConfig& config, std::ostream& out, std::ostream& err);

/// Parses arguments (argv[0] is the program name) and runs. Usage errors
/// return kUsageError; --help returns kOk.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, bool color = false);

}  // namespace mereo
