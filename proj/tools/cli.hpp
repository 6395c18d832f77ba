#pragma once

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace planks::cli {

enum class Command {
  kTrigVerify,
  kSphereMax,
  kSphereVerify,
  kComplexVerify,
  kWeightedVerify,
  kBallPair,
  kBallMultiplier,
  kRefuteSphere,
  kRefuteBall,
  kChebTable,
  kLiftedDiag,
  kConvergence,
};

enum class Format { kJson, kCsv };

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolated = 2;
inline constexpr int kExitUsage = 3;

struct RunConfig {
  Command command = Command::kTrigVerify;
  std::string input;                  // path, or "-" for stdin
  std::optional<std::string> output;  // stdout when empty
  std::uint64_t seed = 0;
  double tol = 1e-6;
  int starts = 64;
  Format format = Format::kJson;
};

std::optional<Command> parse_command(const std::string& name);
std::string command_name(Command c);

/// Result of one command: the report plus whether its check passed.
struct Outcome {
  nlohmann::json report;
  bool passed = true;
};

/// Runs a command on an already-parsed input document. Throws InputError
/// on schema violations (with the offending field path in the message).
Outcome execute(const RunConfig& config, const nlohmann::json& input);

/// Flat CSV suitable for plotting: theta vs T for trigonometric runs, x vs
/// G_n for multiplier runs, latitudes for lifted diagnostics, the table
/// itself for Chebyshev tables, and path,value rows for everything else.
std::string emit_plot_data(const nlohmann::json& report);

/// Reads the input, executes, writes the report and maps the outcome to an
/// exit code: 0 passed, 2 check failed, 3 input or usage error. The report
/// goes to `out` unless the config names an output file.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Full command line entry point (flags parsed with CLI11).
int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace planks::cli
