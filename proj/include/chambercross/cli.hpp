#pragma once

// The `chambercross` command line: config ingestion, solve / chambers /
// eval / count / verify, JSON and text output.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "chambercross/chambers.hpp"

namespace chambercross {

enum ExitCode : int {
    kExitOk = 0,
    kExitValidation = 1,
    kExitVerification = 2,
    kExitInternal = 3,
};

enum class OutputFormat { json, text };

struct RunConfig {
    std::string command;
    std::optional<std::string> preset;
    std::optional<std::string> input;
    /// "RxN": a seeded random configuration.
    std::optional<std::string> random;
    std::vector<IntVec> points;
    OutputFormat format = OutputFormat::json;
    std::optional<std::size_t> budget;
    std::uint64_t seed = 1;
    bool debug_truncation = false;
    bool check_all_jumps = false;
    bool shift_form = false;
};

/// {"name": str, "vectors": [[int]]}; anything but integer entries is rejected.
VectorConfig parse_config_json(std::string_view text, const std::string& fallback_name = "input");
VectorConfig load_config_file(const std::string& path);
/// "a1,a2,..." with integer entries.
IntVec parse_point(std::string_view text);

/// Resolves the single input source of `run`.
VectorConfig load_config(const RunConfig& run);

/// Executes one parsed command, writing the result to `out`.
int execute(const RunConfig& run, std::ostream& out, std::ostream& err);

/// Parses argv and executes; never throws.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace chambercross
