#pragma once

// The experiment runner behind the command-line tool. Each command turns a
// validated RunConfig into an OutputRecord plus its CSV and text renderings.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "shiftsum/record.hpp"
#include "shiftsum/summatory.hpp"

namespace shiftsum {

/// Bad flags or values; maps to exit code 2.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class OutputFormat { json, csv, text };

enum ExitCode : int { kExitOk = 0, kExitVerifyFailed = 1, kExitUsage = 2 };

inline constexpr const char* kDefaultGrid = "1000:100000000:10^0.25";

struct RunConfig {
    std::optional<long double> x;
    std::optional<std::uint64_t> max;
    std::string method = "block";
    std::vector<std::uint64_t> cutoffs;
    std::string grid = kDefaultGrid;
    double theta = 0.75;
    double c1 = 0.0;
    double c2 = 0.0;
    bool fit_constants = false;
    OutputFormat format = OutputFormat::json;
    std::optional<std::string> out_path;
    std::uint64_t seed = 20240611;
    unsigned threads = 1;
    std::uint64_t segment_size = std::uint64_t{1} << 20;
    std::uint64_t direct_cap = 1'000'000'000;

    SummatoryConfig summatory() const;
};

struct CommandOutput {
    int exit_code = kExitOk;
    OutputRecord record;
    CsvTable csv;
    std::vector<std::string> text;
};

/// Parse "lo:hi:ratio"; ratio is a number or "base^exponent". Points are
/// round(lo * ratio^i) up to hi, duplicates dropped.
std::vector<std::uint64_t> parse_grid(const std::string& spec);

/// Integer flag value: digits, or scientific form with an integral value ("1e12").
std::uint64_t parse_count(const std::string& text);

/// Real argument for --x: integer, scientific or decimal (floored later).
long double parse_real_argument(const std::string& text);

std::vector<std::uint64_t> parse_cutoff_list(const std::string& text);

CommandOutput cmd_sum(const RunConfig& config);
CommandOutput cmd_constants(const RunConfig& config);
CommandOutput cmd_verify(const RunConfig& config);
CommandOutput cmd_table(const RunConfig& config);
CommandOutput cmd_fit(const RunConfig& config);

/// Final text for the chosen format.
std::string render(const CommandOutput& output, OutputFormat format);

}  // namespace shiftsum
