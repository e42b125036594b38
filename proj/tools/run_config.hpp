#pragma once

#include <CLI11.hpp>
#include <cstdint>
#include <string>
#include <vector>

#include "xycorr/measures.hpp"

namespace xycorr::cli {

/// Parameters shared by the sweep / cp / longrange / verify subcommands.
/// Every flag can also come from a key=value config file (--config; flags win)
/// or from an XYCORR_-prefixed environment variable.
struct RunConfig {
    std::vector<double> gammas{1.0};
    std::vector<double> kts{0.1};
    double lambda_min = 0.0;
    double lambda_max = 2.0;
    double lambda_step = 1e-3;
    int r = 1;
    int rmax = 10;
    std::vector<std::string> measure_names{"all"};
    int deriv_order = 1;
    std::vector<double> window{0.5, 1.5};
    std::string out = "-";  // CSV destination, "-" = stdout
    std::string svg;        // SVG path prefix (sweep only; empty = none)
    int workers = 1;
    std::uint64_t seed = 12345;

    // verify knobs
    std::string only;        // substring filter on check names
    double tol_scale = 1.0;  // multiplies every tolerance (0 = fault injection)
    int ring_size = 12;
    int n_dirs = 2000;
    int n_states = 500;

    std::string config_file;

    std::vector<MeasureKind> measures() const;
};

/// Thrown for semantically invalid configurations (exit code 2).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

CLI::App* add_sweep_command(CLI::App& app, RunConfig& cfg);
CLI::App* add_cp_command(CLI::App& app, RunConfig& cfg);
CLI::App* add_longrange_command(CLI::App& app, RunConfig& cfg);
CLI::App* add_verify_command(CLI::App& app, RunConfig& cfg);

/// Resolves --config <file>: each "key=value" line becomes "--key value..."
/// appended to the argument list unless the flag was given explicitly, so
/// explicit flags always win. '#' starts a comment.
std::vector<std::string> expand_config_args(std::vector<std::string> args);

/// Builds a synthetic argv (program name prepended) and parses.
void parse_argv(CLI::App& app, const std::vector<std::string>& args);

}  // namespace xycorr::cli
