#pragma once

// Run orchestration behind the command-line tool: a JSON config in, meshes
// and a versioned JSON report out.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "splitaffine/errors.hpp"

namespace splitaffine::workbench {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

enum ExitCode { kOk = 0, kConfigError = 2, kNumericFailure = 3 };

class ConfigError : public Error {
public:
    using Error::Error;
};

struct RunOptions {
    std::string out_dir = ".";
    std::optional<std::string> format;
    std::optional<std::pair<int, int>> grid;
    std::optional<double> tol;
    std::optional<std::uint64_t> seed;
    int threads = 1;
    /// Directory against which relative paths inside the config resolve.
    std::string config_dir = ".";
    /// Skip writing files; the report is still returned.
    bool dry_run = false;
};

struct Gate {
    std::string name;
    double value = 0.0;
    double threshold = 0.0;
    bool passed = false;
};

struct RunResult {
    json report;
    std::vector<Gate> gates;
    std::vector<std::string> files;
    std::vector<std::string> summary;
    bool passed = true;
};

const std::vector<std::string>& task_names();

/// Parses "NSxNT".  Throws ConfigError.
std::pair<int, int> parse_grid(const std::string& text);

/// Runs one task.  Throws ConfigError (or a library error) on bad input and
/// library errors on numeric failure; gate failures are reported through
/// RunResult::passed.
RunResult run(const std::string& task, const json& config, const RunOptions& options);

/// Loads the config, runs, prints the summary and maps failures to exit
/// codes.  An empty path means an empty config.
int run_main(const std::string& task, const std::string& config_path, RunOptions options, std::ostream& out,
             std::ostream& err);

}  // namespace splitaffine::workbench
