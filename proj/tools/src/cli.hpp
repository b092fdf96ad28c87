#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace vcell::cli {

enum class Command { kCells, kVerify, kDecompose, kMinimize, kTheorem, kCounterexample };

struct RunConfig {
    Command command = Command::kCells;
    std::optional<std::string> input_path;
    std::size_t site = 0;
    double bound = 64.0;
    double epsilon = 1e-9;
    std::uint64_t seed = 0;
    /// Defaults to 16 for minimize/theorem and 64 for counterexample.
    std::optional<std::size_t> restarts;
    std::size_t n = 6;      ///< vertex count for minimize
    std::size_t max_n = 8;  ///< largest vertex count for theorem
    double threshold = 2.3;
    double budget = 0.42;
    std::optional<std::string> csv_path;
    std::optional<std::string> svg_path;
    /// Points file written by counterexample.
    std::optional<std::string> output_path;
};

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitNotFound = 2;

/// Runs one command. Reports go to `out`, diagnostics to `err`; files are
/// written only after the command has finished.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv (including argv[0]) and runs the selected command.
int run_command_line(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace vcell::cli
