// oscbath — non-Markovian master equations for a damped quantum oscillator.
//
// Subcommands: coeffs, evolve, compare, oracle, sweep. Each takes --config
// (JSON), --out, --plot, --jobs; a few config keys can be overridden on the
// command line. Exit code 0 iff all requested outputs were written.
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "oscbath/cli.hpp"
#include "oscbath/errors.hpp"

namespace {

struct CommonArgs {
    std::string config_path;
    oscbath::OutputOptions out;
    oscbath::ConfigOverrides overrides;
    std::vector<std::string> model_names;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "JSON configuration file");
    cmd->add_option("--out", args.out.out_dir, "output directory")
        ->default_val(".");
    cmd->add_flag("--plot", args.out.plot, "emit SVG plots");
    cmd->add_option("--jobs", args.out.jobs,
                    "worker count (default: logical cores)");
    cmd->add_option("--alpha", [&args](const std::vector<std::string>& v) {
        args.overrides.alpha = std::stod(v.at(0));
        return true;
    }, "override coupling alpha");
    cmd->add_option("--theta", [&args](const std::vector<std::string>& v) {
        args.overrides.theta = std::stod(v.at(0));
        return true;
    }, "override temperature theta");
    cmd->add_option("--t-max", [&args](const std::vector<std::string>& v) {
        args.overrides.t_max = std::stod(v.at(0));
        return true;
    }, "override grid.t_max");
    cmd->add_option("--n-points", [&args](const std::vector<std::string>& v) {
        args.overrides.n_points = std::stoi(v.at(0));
        return true;
    }, "override grid.n_points");
    cmd->add_option("--fock-dim", [&args](const std::vector<std::string>& v) {
        args.overrides.fock_dim = std::stoi(v.at(0));
        return true;
    }, "override fock_dim");
}

oscbath::RunConfig load_config(const CommonArgs& args) {
    oscbath::RunConfig cfg;
    if (!args.config_path.empty()) {
        cfg = oscbath::RunConfig::from_file(args.config_path);
    }
    oscbath::apply_overrides(cfg, args.overrides);
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"non-Markovian FV / RW master equations for a damped oscillator"};
    app.require_subcommand(1);

    CommonArgs coeffs_args, evolve_args, compare_args, oracle_args, sweep_args;

    CLI::App* coeffs = app.add_subcommand("coeffs", "tabulate ME coefficients");
    add_common(coeffs, coeffs_args);

    CLI::App* evolve = app.add_subcommand("evolve", "integrate one model");
    add_common(evolve, evolve_args);
    std::string evolve_model = "fv";
    bool evolve_moments = false;
    evolve->add_option("--model", evolve_model, "fv | fv_rwa | rw")
        ->default_val("fv");
    evolve->add_flag("--moments", evolve_moments,
                     "closed second-moment path instead of full Fock evolution");

    CLI::App* compare = app.add_subcommand("compare", "FV vs RW heating report");
    add_common(compare, compare_args);
    bool with_fv_rwa = false, with_oracle = false;
    compare->add_flag("--with-fv-rwa", with_fv_rwa, "also run the FV+RWA model");
    compare->add_flag("--with-oracle", with_oracle,
                      "also run both exact discrete-bath references");

    CLI::App* oracle = app.add_subcommand("oracle", "exact discrete-bath runs");
    add_common(oracle, oracle_args);

    CLI::App* sweep = app.add_subcommand("sweep", "parameter sweep of evolve");
    add_common(sweep, sweep_args);
    std::string sweep_param = "alpha";
    std::vector<double> sweep_values;
    std::string sweep_model = "rw";
    bool sweep_moments = false;
    sweep->add_option("--param", sweep_param, "alpha | theta | omega_c")
        ->required();
    sweep->add_option("--values", sweep_values, "parameter values")
        ->required()
        ->delimiter(',');
    sweep->add_option("--model", sweep_model, "fv | fv_rwa | rw")->default_val("rw");
    sweep->add_flag("--moments", sweep_moments, "use the moment path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (coeffs->parsed()) {
            oscbath::cmd_coeffs(load_config(coeffs_args), coeffs_args.out);
        } else if (evolve->parsed()) {
            oscbath::cmd_evolve(load_config(evolve_args),
                                oscbath::parse_model(evolve_model),
                                evolve_moments, evolve_args.out);
        } else if (compare->parsed()) {
            oscbath::cmd_compare(load_config(compare_args), with_fv_rwa,
                                 with_oracle, compare_args.out);
        } else if (oracle->parsed()) {
            oscbath::cmd_oracle(load_config(oracle_args), oracle_args.out);
        } else if (sweep->parsed()) {
            oscbath::cmd_sweep(load_config(sweep_args), sweep_param, sweep_values,
                               oscbath::parse_model(sweep_model), sweep_moments,
                               sweep_args.out);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
