// shiftsum: exact sums of D(n + s(n)) and asymptotic diagnostics.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "shiftsum/commands.hpp"

namespace {

using namespace shiftsum;

struct RawFlags {
    std::string x;
    std::string max;
    std::string cutoff;
    std::string cutoffs;
    std::string format = "json";
    std::string out;
    std::string seed;
    std::string segment_size;
};

void add_common(CLI::App* cmd, RawFlags& raw, RunConfig& cfg) {
    cmd->add_option("--format", raw.format, "Output format: json, csv or text")
        ->check(CLI::IsMember({"json", "csv", "text"}))
        ->capture_default_str();
    cmd->add_option("--out", raw.out, "Write results to this file instead of standard output");
    cmd->add_option("--seed", raw.seed, "Seed for randomized suites (default 20240611)");
    cmd->add_option("--threads", cfg.threads, "Worker threads; results do not depend on it")
        ->check(CLI::Range(1u, 1024u))
        ->capture_default_str();
    cmd->add_option("--segment-size", raw.segment_size, "Sieve segment length (default 1048576)");
}

RunConfig finalize(const RawFlags& raw, RunConfig cfg) {
    if (!raw.x.empty()) cfg.x = parse_real_argument(raw.x);
    if (!raw.max.empty()) cfg.max = parse_count(raw.max);
    if (!raw.cutoffs.empty()) {
        cfg.cutoffs = parse_cutoff_list(raw.cutoffs);
    } else if (!raw.cutoff.empty()) {
        cfg.cutoffs = {parse_count(raw.cutoff)};
    }
    if (!raw.seed.empty()) cfg.seed = parse_count(raw.seed);
    if (!raw.segment_size.empty()) {
        cfg.segment_size = parse_count(raw.segment_size);
        if (cfg.segment_size < 1) throw UsageError("--segment-size must be >= 1");
    }
    if (raw.format == "csv") {
        cfg.format = OutputFormat::csv;
    } else if (raw.format == "text") {
        cfg.format = OutputFormat::text;
    }
    if (!raw.out.empty()) cfg.out_path = raw.out;
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact sums of D(n + s(n)) = tau/2^omega at square-completed integers, "
                 "Euler-product constants and asymptotic fits"};
    app.require_subcommand(1);

    RawFlags raw;
    RunConfig cfg;

    auto* sum = app.add_subcommand("sum", "Compute S(x) exactly");
    sum->add_option("--x", raw.x, "Evaluation point (integer, 1e12 form, or real; floored)")->required();
    sum->add_option("--method", cfg.method, "direct, block, both or paper-literal")
        ->check(CLI::IsMember({"direct", "block", "both", "paper-literal"}))
        ->capture_default_str();
    add_common(sum, raw, cfg);

    auto* constants = app.add_subcommand("constants", "Partial Euler products C1, C2 at prime cutoffs");
    constants->add_option("--cutoff", raw.cutoff, "Single prime cutoff (>= 2)");
    constants->add_option("--cutoffs", raw.cutoffs, "Comma-separated cutoffs, e.g. 10,100,1000");
    add_common(constants, raw, cfg);

    auto* verify = app.add_subcommand(
        "verify", "Oracle and identity suites: every x <= min(max, 1e5), 50 seeded x above that");
    verify->add_option("--max", raw.max, "Largest x checked against the direct oracle")->required();
    add_common(verify, raw, cfg);

    auto* table = app.add_subcommand("table", "Residual table of S(x) against the main-term model");
    table->add_option("--grid", cfg.grid, "lo:hi:ratio, ratio may be base^exp")->capture_default_str();
    table->add_option("--theta", cfg.theta, "Residual scaling exponent")->capture_default_str();
    table->add_option("--c1", cfg.c1, "Model constant C1")->capture_default_str();
    table->add_option("--c2", cfg.c2, "Model constant C2")->capture_default_str();
    table->add_flag("--fit-constants", cfg.fit_constants, "Fit C1, C2 from the data first");
    add_common(table, raw, cfg);

    auto* fit = app.add_subcommand("fit", "Growth-law fits of S(x) and T(N) over a grid");
    fit->add_option("--grid", cfg.grid, "lo:hi:ratio, ratio may be base^exp")->capture_default_str();
    add_common(fit, raw, cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        const RunConfig run = finalize(raw, cfg);
        CommandOutput output;
        if (sum->parsed()) {
            output = cmd_sum(run);
        } else if (constants->parsed()) {
            output = cmd_constants(run);
        } else if (verify->parsed()) {
            output = cmd_verify(run);
        } else if (table->parsed()) {
            output = cmd_table(run);
        } else {
            output = cmd_fit(run);
        }

        const std::string text = render(output, run.format);
        if (run.out_path) {
            std::ofstream file(*run.out_path, std::ios::binary);
            if (!file) {
                std::cerr << "error: cannot open " << *run.out_path << "\n";
                return kExitUsage;
            }
            file << text;
        } else {
            std::cout << text;
        }
        // Text output already carries the warnings inline.
        if (run.format != OutputFormat::text || run.out_path) {
            for (const auto& w : output.record.warnings) std::cerr << "warning: " << w << "\n";
        }
        return output.exit_code;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
