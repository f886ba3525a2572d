#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

#include "hcr/envelope_builders.hpp"

namespace hcr::cli {

enum class Command { Envelope, Shoot, Limit0, Blayer, Verify, Report };
enum class Kind { Global, Partial, Both };
enum class Format { Csv, Json };

const char* to_string(Command c);
const char* to_string(Kind k);

struct RunConfig {
  Command command = Command::Envelope;
  double b = 0.0;
  double t = 0.0;
  Kind kind = Kind::Global;
  std::size_t steps = 0;  ///< 0 selects the per-command default (HCR_DEFAULT_STEPS applies)
  std::size_t grid_points = 2001;
  Format output_format = Format::Csv;
  std::string output_path;  ///< directory for artifacts; empty writes to the output stream only
  IterationRule iteration_rule = IterationRule::Listing;

  /// Throws ConfigError on values the command cannot use.
  void validate() const;
};

/// Raised by parse_args for --help; carries the rendered usage text.
struct HelpRequested {
  std::string text;
};

/// Parses `hcr <command> [options]` (args excludes the program name). Throws ConfigError or HelpRequested.
RunConfig parse_args(const std::vector<std::string>& args);

/// Executes a validated config. Exit status: 0 success, 1 refused certificate or failed ordering,
/// 2 invalid configuration. Errors are written to `err` as one JSON record.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_args + run with the same exit-status convention.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hcr::cli
