#include "deltavar/commands.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

int main(int argc, char** argv) {
    CLI::App app{"deltavar: variational problems on finite time scales"};
    app.require_subcommand(1);

    std::string config_path, csv_out, traj_csv;
    std::optional<std::uint64_t> seed;
    auto add_seed = [&seed](CLI::App* cmd) {
        cmd->add_option_function<std::uint64_t>(
            "--seed", [&seed](std::uint64_t v) { seed = v; }, "override the run seed");
    };

    CLI::App* solve = app.add_subcommand("solve", "minimize the configured problem and check "
                                                  "the necessary condition on the result");
    solve->add_option("config", config_path, "problem configuration file")->required();
    solve->add_option("--csv", csv_out, "write the trajectory as CSV (t,y)");
    add_seed(solve);

    CLI::App* check = app.add_subcommand("check", "evaluate the necessary condition on a "
                                                  "supplied trajectory");
    check->add_option("config", config_path, "problem configuration file")->required();
    check->add_option("trajectory", traj_csv, "trajectory CSV with header t,y")->required();

    CLI::App* identity = app.add_subcommand("identity", "check the lattice integral-derivative "
                                                        "identity on a random polynomial");
    identity->set_help_flag("--help", "print help"); // frees -h/--h for the lattice gap
    double h = 1.0, a = 0.0, b = 10.0;
    int degree = 2, ii = 0, jj = 1;
    identity->add_option("--h", h, "lattice gap")->required();
    identity->add_option("--a", a, "window start")->required();
    identity->add_option("--b", b, "window end")->required();
    identity->add_option("--deg", degree, "polynomial degree")->required();
    identity->add_option("--i", ii, "inner derivative order")->required();
    identity->add_option("--j", jj, "outer derivative order")->required();
    add_seed(identity);

    CLI::App* oracle = app.add_subcommand("oracle", "compare gradient and residual verdicts on "
                                                    "randomized trajectories");
    oracle->add_option("config", config_path, "problem configuration file")->required();
    int trials = 10;
    oracle->add_option("--trials", trials, "number of perturbed trajectories");
    add_seed(oracle);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return deltavar::exit_config_error;
    }

    const deltavar::CommandIO io{std::cout, std::cerr};
    try {
        if (solve->parsed())
            return deltavar::cmd_solve(config_path,
                                       csv_out.empty() ? std::nullopt
                                                       : std::optional<std::string>(csv_out),
                                       seed, io);
        if (check->parsed()) return deltavar::cmd_check(config_path, traj_csv, io);
        if (identity->parsed())
            return deltavar::cmd_identity(h, a, b, degree, ii, jj, seed, io);
        if (oracle->parsed()) return deltavar::cmd_oracle(config_path, trials, seed, io);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return deltavar::exit_config_error;
    }
    return deltavar::exit_config_error;
}
