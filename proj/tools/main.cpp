#include <CLI11.hpp>
#include <iostream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "run_config.hpp"
#include "xycorr/version.hpp"

int main(int argc, char** argv) {
    using namespace xycorr::cli;

    CLI::App app{"Thermal quantum and total correlations of the anisotropic XY chain "
                 "in a transverse field"};
    app.set_version_flag("--version", xycorr::kVersion);
    app.require_subcommand(1);

    RunConfig cfg;
    CLI::App* sweep = add_sweep_command(app, cfg);
    CLI::App* cp = add_cp_command(app, cfg);
    CLI::App* longrange = add_longrange_command(app, cfg);
    CLI::App* verify = add_verify_command(app, cfg);

    try {
        std::vector<std::string> args(argv + 1, argv + argc);
        parse_argv(app, expand_config_args(std::move(args)));
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (sweep->parsed()) return cmd_sweep(cfg);
    if (cp->parsed()) return cmd_cp(cfg);
    if (longrange->parsed()) return cmd_longrange(cfg);
    if (verify->parsed()) return cmd_verify(cfg);
    std::cerr << "no subcommand given\n";
    return 2;
}
