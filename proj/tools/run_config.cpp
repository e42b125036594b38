#include "run_config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace xycorr::cli {

std::vector<MeasureKind> RunConfig::measures() const {
    std::vector<MeasureKind> kinds;
    for (const std::string& name : measure_names) {
        if (name == "all" || name == "ALL") {
            kinds.assign(std::begin(kAllMeasures), std::end(kAllMeasures));
            continue;
        }
        try {
            kinds.push_back(parse_measure(name));
        } catch (const DomainError& e) {
            throw ConfigError(e.what());
        }
    }
    // Deduplicate, keeping the canonical enum order.
    std::vector<MeasureKind> out;
    for (MeasureKind k : kAllMeasures)
        if (std::find(kinds.begin(), kinds.end(), k) != kinds.end()) out.push_back(k);
    if (out.empty()) throw ConfigError("no measures selected");
    return out;
}

namespace {

void add_output_flags(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--out", cfg.out, "output CSV path ('-' for stdout)")
        ->envname("XYCORR_OUT");
    cmd->add_option("--workers", cfg.workers, "parallel workers over grid points")
        ->check(CLI::PositiveNumber)
        ->envname("XYCORR_WORKERS");
    cmd->add_option("--seed", cfg.seed, "RNG seed recorded in output headers")
        ->envname("XYCORR_SEED");
    cmd->add_option("--config", cfg.config_file,
                    "key=value config file; explicit flags win");
}

void add_model_flags(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--gamma", cfg.gammas, "anisotropy values")->envname("XYCORR_GAMMA");
    cmd->add_option("--kt", cfg.kts, "temperature values")->envname("XYCORR_KT");
    cmd->add_option("--measures", cfg.measure_names,
                    "measure names (MIN WYSIM GMQD OMQC CONCURRENCE) or 'all'")
        ->envname("XYCORR_MEASURES");
}

void add_lambda_grid_flags(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--lambda-min", cfg.lambda_min, "lambda grid start")
        ->envname("XYCORR_LAMBDA_MIN");
    cmd->add_option("--lambda-max", cfg.lambda_max, "lambda grid end")
        ->envname("XYCORR_LAMBDA_MAX");
    cmd->add_option("--lambda-step", cfg.lambda_step, "lambda grid step")
        ->check(CLI::PositiveNumber)
        ->envname("XYCORR_LAMBDA_STEP");
}

}  // namespace

CLI::App* add_sweep_command(CLI::App& app, RunConfig& cfg) {
    CLI::App* cmd = app.add_subcommand(
        "sweep", "measure curves over a lambda grid, with derivative columns");
    add_model_flags(cmd, cfg);
    add_lambda_grid_flags(cmd, cfg);
    cmd->add_option("--r", cfg.r, "spin distance")->check(CLI::PositiveNumber)
        ->envname("XYCORR_R");
    cmd->add_option("--svg", cfg.svg, "SVG path prefix, one file per (gamma, kT) panel")
        ->envname("XYCORR_SVG");
    add_output_flags(cmd, cfg);
    return cmd;
}

CLI::App* add_cp_command(CLI::App& app, RunConfig& cfg) {
    CLI::App* cmd =
        app.add_subcommand("cp", "critical-point estimates from derivative extrema");
    add_model_flags(cmd, cfg);
    cmd->add_option("--r", cfg.r, "spin distance")->check(CLI::PositiveNumber)
        ->envname("XYCORR_R");
    cmd->add_option("--window", cfg.window, "scan window (two values)")
        ->expected(2)
        ->envname("XYCORR_WINDOW");
    cmd->add_option("--lambda-step", cfg.lambda_step, "scan step")
        ->check(CLI::PositiveNumber)
        ->envname("XYCORR_LAMBDA_STEP");
    cmd->add_option("--deriv-order", cfg.deriv_order, "derivative order (1 or 2)")
        ->check(CLI::Range(1, 2))
        ->envname("XYCORR_DERIV_ORDER");
    add_output_flags(cmd, cfg);
    return cmd;
}

CLI::App* add_longrange_command(CLI::App& app, RunConfig& cfg) {
    CLI::App* cmd = app.add_subcommand("longrange", "measures versus spin distance");
    add_model_flags(cmd, cfg);
    add_lambda_grid_flags(cmd, cfg);
    cmd->add_option("--rmax", cfg.rmax, "largest spin distance")
        ->check(CLI::Range(2, 1000))
        ->envname("XYCORR_RMAX");
    add_output_flags(cmd, cfg);
    return cmd;
}

CLI::App* add_verify_command(CLI::App& app, RunConfig& cfg) {
    CLI::App* cmd = app.add_subcommand("verify", "oracle cross-check suites");
    cmd->add_option("--only", cfg.only, "run only checks whose name contains this")
        ->envname("XYCORR_ONLY");
    cmd->add_option("--tol-scale", cfg.tol_scale,
                    "scale factor on all tolerances (0 injects guaranteed failure)")
        ->envname("XYCORR_TOL_SCALE");
    cmd->add_option("--ring-size", cfg.ring_size, "ED ring size")
        ->check(CLI::Range(2, 14))
        ->envname("XYCORR_RING_SIZE");
    cmd->add_option("--n-dirs", cfg.n_dirs, "brute-force measurement axes")
        ->check(CLI::Range(100, 1000000))
        ->envname("XYCORR_N_DIRS");
    cmd->add_option("--n-states", cfg.n_states, "random states per suite")
        ->check(CLI::PositiveNumber)
        ->envname("XYCORR_N_STATES");
    cmd->add_option("--seed", cfg.seed, "RNG seed")->envname("XYCORR_SEED");
    cmd->add_option("--config", cfg.config_file,
                    "key=value config file; explicit flags win");
    return cmd;
}

std::vector<std::string> expand_config_args(std::vector<std::string> args) {
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
        else if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
    }
    if (path.empty()) return args;

    std::ifstream file(path);
    if (!file) throw ConfigError("cannot read config file " + path);

    std::set<std::string> given;
    for (const std::string& a : args)
        if (a.rfind("--", 0) == 0) given.insert(a.substr(2, a.find('=') - 2));

    std::string line;
    while (std::getline(file, line)) {
        if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || given.count(key)) continue;
        args.push_back("--" + key);
        std::istringstream parts(value);
        std::string token;
        while (parts >> token) args.push_back(token);
    }
    return args;
}

void parse_argv(CLI::App& app, const std::vector<std::string>& args) {
    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("xycorr");
    for (const std::string& a : args) argv.push_back(a.c_str());
    app.parse(static_cast<int>(argv.size()), argv.data());
}

}  // namespace xycorr::cli
