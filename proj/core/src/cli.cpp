#include "oscbath/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "oscbath/csvio.hpp"
#include "oscbath/errors.hpp"
#include "oscbath/oracle.hpp"
#include "oscbath/svgplot.hpp"

namespace oscbath {

namespace fs = std::filesystem;

namespace {

fs::path prepare_out_dir(const OutputOptions& out) {
    fs::path dir(out.out_dir);
    fs::create_directories(dir);
    return dir;
}

void echo_config(const RunConfig& cfg, const fs::path& dir) {
    std::ofstream os(dir / "config.json", std::ios::binary);
    if (!os) throw std::runtime_error("cannot write config echo");
    os << cfg.to_json().dump(2) << '\n';
}

CoefficientTable table_for_run(const RunConfig& cfg, double t_max,
                               unsigned jobs) {
    return tabulate(cfg.bath(), cfg.omega0, cfg.coefficient_grid(t_max),
                    cfg.quadrature, jobs);
}

Trajectory run_model(const RunConfig& cfg, const CoefficientTable& table,
                     ModelKind model, bool moments,
                     const std::vector<double>& grid) {
    EvolveSettings es;
    es.rk_tol = cfg.rk_tol;
    es.tail_tol = cfg.tail_tol;
    if (moments) {
        return evolve_moments(model, table, MomentState{}, grid, es);
    }
    return evolve_density(model, table, vacuum_state(cfg.resolved_fock_dim()),
                          grid, es);
}

std::string trajectory_filename(ModelKind model, bool moments) {
    std::string name = "trajectory_";
    name += model_name(model);
    if (moments) name += "_moments";
    return name + ".csv";
}

void plot_trajectories(const fs::path& path, const std::string& title,
                       const std::vector<std::pair<std::string, const Trajectory*>>& runs) {
    SvgPlot plot(title, "t [1/omega0]", "n_mean");
    for (const auto& [label, traj] : runs) plot.add_series(label, traj->times, traj->n_mean);
    plot.write(path.string());
}

}  // namespace

void cmd_coeffs(const RunConfig& cfg, const OutputOptions& out) {
    const fs::path dir = prepare_out_dir(out);
    const CoefficientTable table =
        tabulate(cfg.bath(), cfg.omega0, cfg.make_grid(), cfg.quadrature, out.jobs);
    write_coefficients_csv(table, (dir / "coefficients.csv").string());
    echo_config(cfg, dir);
    if (out.plot) {
        SvgPlot top("diffusion coefficients", "t [1/omega0]", "delta");
        top.add_series("delta_fv", table.grid(), table.delta_fv());
        top.add_series("delta_rwa", table.grid(), table.delta_rwa());
        SvgPlot bottom("dissipation coefficients", "t [1/omega0]", "gamma");
        bottom.add_series("gamma_fv", table.grid(), table.gamma_fv());
        bottom.add_series("gamma_rwa", table.grid(), table.gamma_rwa());
        write_svg_stack((dir / "coefficients.svg").string(), {&top, &bottom});
    }
}

void cmd_evolve(const RunConfig& cfg, ModelKind model, bool moments,
                const OutputOptions& out) {
    const fs::path dir = prepare_out_dir(out);
    const std::vector<double> grid = cfg.make_grid();
    const CoefficientTable table = table_for_run(cfg, grid.back(), out.jobs);
    const Trajectory traj = run_model(cfg, table, model, moments, grid);
    write_trajectory_csv(traj, (dir / trajectory_filename(model, moments)).string());
    echo_config(cfg, dir);
    if (out.plot) {
        plot_trajectories(dir / "trajectory.svg", "heating function",
                          {{model_name(model), &traj}});
    }
}

void cmd_compare(const RunConfig& cfg, bool with_fv_rwa, bool with_oracle,
                 const OutputOptions& out) {
    const fs::path dir = prepare_out_dir(out);
    RunConfig run = cfg;
    run.grid.kind = "compare";
    const std::vector<double> grid = run.make_grid();
    const CoefficientTable table = table_for_run(run, grid.back(), out.jobs);

    const Trajectory fv = run_model(run, table, ModelKind::FV, true, grid);
    const Trajectory rw = run_model(run, table, ModelKind::RW, true, grid);
    write_trajectory_csv(fv, (dir / "trajectory_fv.csv").string());
    write_trajectory_csv(rw, (dir / "trajectory_rw.csv").string());

    const ComparisonReport rep = heating_report(fv, rw, run.spectral.omega_c);

    std::vector<std::pair<std::string, const Trajectory*>> plotted = {
        {"fv", &fv}, {"rw", &rw}};
    Trajectory fr;
    if (with_fv_rwa) {
        fr = run_model(run, table, ModelKind::FV_RWA, true, grid);
        write_trajectory_csv(fr, (dir / "trajectory_fv_rwa.csv").string());
        plotted.push_back({"fv_rwa", &fr});
    }

    Trajectory ofv, orw;
    OracleDiagnostics diag_fv, diag_rw;
    bool have_oracle = false;
    if (with_oracle) {
        const OracleBath bath =
            discretize(run.bath(), run.oracle.n_modes, run.oracle.omega_max);
        const double t_top = std::min(grid.back(), 0.45 * bath.recurrence_time);
        std::vector<double> ogrid;
        const int n = 201;
        for (int i = 0; i < n; ++i) ogrid.push_back(t_top * i / double(n - 1));
        ofv = exact_evolution(ModelKind::FV, bath, run.alpha, run.omega0, ogrid, &diag_fv);
        orw = exact_evolution(ModelKind::RW, bath, run.alpha, run.omega0, ogrid, &diag_rw);
        write_trajectory_csv(ofv, (dir / "oracle_fv.csv").string());
        write_trajectory_csv(orw, (dir / "oracle_rw.csv").string());
        plotted.push_back({"oracle_fv", &ofv});
        plotted.push_back({"oracle_rw", &orw});
        have_oracle = true;
    }

    // gamma exponents over the short-time window, from a dedicated log table
    const double wc = run.spectral.omega_c;
    RunConfig short_cfg = run;
    std::vector<double> short_grid{0.0};
    for (int i = 0; i < 49; ++i) {
        short_grid.push_back(5e-4 / wc * std::pow(0.05 / 5e-4, i / 48.0));
    }
    const CoefficientTable short_table =
        tabulate(short_cfg.bath(), short_cfg.omega0, short_grid, short_cfg.quadrature, out.jobs);
    const double slope_fv = fit_loglog_slope(short_table.grid(), short_table.gamma_fv(),
                                             1e-3 / wc, 1e-2 / wc);
    const double slope_rwa = fit_loglog_slope(short_table.grid(), short_table.gamma_rwa(),
                                              1e-3 / wc, 1e-2 / wc);

    {
        std::ofstream os(dir / "report.txt", std::ios::binary);
        if (!os) throw std::runtime_error("cannot write report.txt");
        write_report(rep, os);
        os << "gamma_exponent_fv=" << double_to_string(slope_fv) << '\n';
        os << "gamma_exponent_rwa=" << double_to_string(slope_rwa) << '\n';
        const double g2_res = spectral_density(run.spectral, run.omega0);
        const double rate_theory =
            M_PI * run.alpha * run.alpha * run.omega0 * g2_res;
        os << "rate_golden_rule=" << double_to_string(rate_theory) << '\n';
        if (run.theta > 0.0) {
            os << "n_thermal_resonant="
               << double_to_string(thermal_occupation(run.theta, run.omega0)) << '\n';
        }
        if (have_oracle) {
            os << "oracle_symplectic_error_fv=" << double_to_string(diag_fv.symplectic_error) << '\n';
            os << "oracle_energy_drift_fv=" << double_to_string(diag_fv.energy_rel_drift) << '\n';
            os << "oracle_symplectic_error_rw=" << double_to_string(diag_rw.symplectic_error) << '\n';
            os << "oracle_energy_drift_rw=" << double_to_string(diag_rw.energy_rel_drift) << '\n';
        }
    }
    echo_config(run, dir);
    if (out.plot) {
        plot_trajectories(dir / "compare.svg", "heating comparison", plotted);
    }
}

void cmd_oracle(const RunConfig& cfg, const OutputOptions& out) {
    const fs::path dir = prepare_out_dir(out);
    if (cfg.grid.kind != "uniform") {
        throw ConfigError("oracle: requires \"grid.kind\" = uniform");
    }
    const OracleBath bath =
        discretize(cfg.bath(), cfg.oracle.n_modes, cfg.oracle.omega_max);
    const std::vector<double> grid = cfg.make_grid();

    bool ran_any = false;
    std::ofstream info(dir / "oracle_info.txt", std::ios::binary);
    if (!info) throw std::runtime_error("cannot write oracle_info.txt");
    info << "n_modes=" << bath.modes.size() << '\n';
    info << "recurrence_time=" << double_to_string(bath.recurrence_time) << '\n';

    std::vector<std::pair<std::string, const Trajectory*>> plotted;
    std::vector<Trajectory> keep;
    std::vector<std::string> labels;
    keep.reserve(2);
    for (ModelKind m : cfg.models) {
        if (m == ModelKind::FV_RWA) continue;  // no microscopic Hamiltonian
        OracleDiagnostics diag;
        keep.push_back(exact_evolution(m, bath, cfg.alpha, cfg.omega0, grid, &diag));
        const std::string name = std::string("oracle_") + model_name(m);
        labels.push_back(name);
        write_trajectory_csv(keep.back(), (dir / (name + ".csv")).string());
        info << name << "_symplectic_error=" << double_to_string(diag.symplectic_error) << '\n';
        info << name << "_energy_drift=" << double_to_string(diag.energy_rel_drift) << '\n';
        ran_any = true;
    }
    for (std::size_t i = 0; i < keep.size(); ++i) {
        plotted.push_back({labels[i], &keep[i]});
    }
    if (!ran_any) {
        throw ConfigError("oracle: \"models\" must include fv or rw");
    }
    echo_config(cfg, dir);
    if (out.plot) {
        plot_trajectories(dir / "oracle.svg", "exact discrete-bath heating", plotted);
    }
}

void cmd_sweep(const RunConfig& cfg, const std::string& param,
               const std::vector<double>& values, ModelKind model, bool moments,
               const OutputOptions& out) {
    if (param != "alpha" && param != "theta" && param != "omega_c") {
        throw ConfigError("sweep: param must be one of alpha, theta, omega_c");
    }
    if (values.empty()) throw ConfigError("sweep: values must be nonempty");
    for (double v : values) {
        if (!std::isfinite(v)) throw ConfigError("sweep: values must be finite");
    }
    const fs::path dir = prepare_out_dir(out);

    struct Entry {
        double value;
        std::string path;
        std::string status;
    };
    std::vector<Entry> entries(values.size());

    unsigned workers = out.jobs ? out.jobs : std::thread::hardware_concurrency();
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(values.size())));

    auto run_one = [&](std::size_t i) {
        const double v = values[i];
        const std::string sub = param + "_" + double_to_string(v);
        entries[i].value = v;
        entries[i].path = sub;
        try {
            RunConfig c = cfg;
            if (param == "alpha") c.alpha = v;
            else if (param == "theta") c.theta = v;
            else c.spectral.omega_c = v;
            c.validate();
            OutputOptions sub_out;
            sub_out.out_dir = (dir / sub).string();
            sub_out.plot = out.plot;
            sub_out.jobs = 1;  // sweep-level parallelism owns the cores
            cmd_evolve(c, model, moments, sub_out);
            entries[i].status = "ok";
        } catch (const std::exception& e) {
            std::string msg = e.what();
            std::replace(msg.begin(), msg.end(), ',', ';');
            std::replace(msg.begin(), msg.end(), '\n', ' ');
            entries[i].status = "error: " + msg;
        }
    };

    if (workers == 1) {
        for (std::size_t i = 0; i < values.size(); ++i) run_one(i);
    } else {
        std::vector<std::thread> pool;
        for (unsigned th = 0; th < workers; ++th) {
            pool.emplace_back([&, th]() {
                for (std::size_t i = th; i < values.size(); i += workers) run_one(i);
            });
        }
        for (auto& t : pool) t.join();
    }

    {
        std::ofstream os(dir / "index.csv", std::ios::binary);
        if (!os) throw std::runtime_error("cannot write sweep index");
        os << "value,path,status\n";
        for (const Entry& e : entries) {
            os << double_to_string(e.value) << ',' << e.path << ',' << e.status << '\n';
        }
    }
    echo_config(cfg, dir);

    for (const Entry& e : entries) {
        if (e.status != "ok") {
            throw std::runtime_error("sweep: at least one run failed (see index.csv)");
        }
    }
}

}  // namespace oscbath
