// Copyright (c) 2026 hsesim developers
// SPDX-License-Identifier: Apache-2.0
//
// hsesim command line: drive a single qubit with kicked protocols, stream
// ensemble-moment trace distances to CSV, run the averaging-channel oracle
// and the tomography pipeline, and render log-log SVG plots.
#include <algorithm>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "cli_util.hpp"
#include "hsesim.h"

namespace {

using namespace hsecli;

struct DeltaRow {
    std::uint64_t t;
    int k;
    double delta;
};

// rows sorted by (k, T)
std::vector<DeltaRow> collect_rows(const std::vector<std::uint64_t>& times, int kmax,
                                   const std::vector<double>& deltas) {
    std::vector<DeltaRow> rows;
    rows.reserve(times.size() * static_cast<std::size_t>(kmax));
    for (int k = 1; k <= kmax; ++k) {
        for (std::size_t i = 0; i < times.size(); ++i) {
            rows.push_back(DeltaRow{times[i], k,
                                    deltas[i * static_cast<std::size_t>(kmax) +
                                           static_cast<std::size_t>(k - 1)]});
        }
    }
    return rows;
}

void append_rows(std::ostringstream& os, const std::vector<DeltaRow>& rows) {
    for (const DeltaRow& row : rows) {
        os << row.t << ',' << row.k << ',' << fmt17(row.delta) << "\n";
    }
}

std::vector<std::string> header_keys_for(const Resolved& r,
                                         std::vector<std::string> base) {
    std::vector<std::string> keys;
    keys.push_back("drive");
    if (r.drive == "floquet") {
        keys.push_back("theta_x");
        keys.push_back("theta_y");
    } else if (r.drive == "fibonacci") {
        keys.push_back("theta_x");
        keys.push_back("theta_z");
    } else if (r.drive == "custom") {
        keys.push_back("omega2");
        keys.push_back("arcs");
    }
    keys.insert(keys.end(), base.begin(), base.end());
    return keys;
}

std::vector<double> run_delta_series(const hse_protocol* protocol,
                                     const hse_spinor& initial, int kmax,
                                     const std::vector<std::uint64_t>& times) {
    std::vector<double> deltas(times.size() * static_cast<std::size_t>(kmax));
    check(hse_delta_series(protocol, &initial, kmax, times.data(), times.size(),
                           deltas.data()),
          "delta series");
    return deltas;
}

int cmd_simulate(const RunConfig& cfg) {
    const Resolved r = resolve(cfg);
    const std::vector<double> deltas =
        run_delta_series(r.protocol, r.initial, r.kmax, r.sample_times);
    std::ostringstream os;
    os << config_header("simulate", r,
                        header_keys_for(r, {"init", "steps", "kmax", "samples",
                                            "seed", "out"}));
    os << "T,k,delta\n";
    append_rows(os, collect_rows(r.sample_times, r.kmax, deltas));
    write_output_file(r.out, os.str());
    return 0;
}

int cmd_sweep(const RunConfig& cfg) {
    const Resolved r = resolve(cfg);
    if (r.grid.empty()) {
        throw CliError(2, "sweep requires a nonempty grid (--grid a:b,a:b,...)");
    }
    const std::size_t blocks =
        r.grid.size() * static_cast<std::size_t>(r.trials);
    std::vector<std::string> rendered(blocks);
    std::vector<std::string> errors(blocks);

    // blocks are independent; worker w handles blocks w, w+jobs, w+2*jobs, ...
    auto worker = [&](std::size_t offset, std::size_t stride) {
        for (std::size_t b = offset; b < blocks; b += stride) {
            const std::size_t g = b / static_cast<std::size_t>(r.trials);
            const std::size_t trial = b % static_cast<std::size_t>(r.trials);
            try {
                hse_protocol* protocol =
                    r.make_protocol(r.grid[g].first, r.grid[g].second);
                hse_spinor initial = r.initial;
                if (r.init_text == "haar-random") {
                    check(hse_spinor_haar(r.seed, trial, &initial), "init");
                }
                std::vector<double> deltas;
                try {
                    deltas = run_delta_series(protocol, initial, r.kmax,
                                              r.sample_times);
                } catch (...) {
                    hse_protocol_free(protocol);
                    throw;
                }
                hse_protocol_free(protocol);
                std::ostringstream os;
                os << "## block = " << b << "\n";
                os << "## angles = " << fmt17(r.grid[g].first) << ":"
                   << fmt17(r.grid[g].second) << "\n";
                os << "## trial = " << trial << "\n";
                append_rows(os, collect_rows(r.sample_times, r.kmax, deltas));
                rendered[b] = os.str();
            } catch (const std::exception& e) {
                errors[b] = e.what();
            }
        }
    };

    const std::size_t jobs =
        std::min<std::size_t>(static_cast<std::size_t>(r.jobs), blocks);
    if (jobs <= 1) {
        worker(0, 1);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(jobs);
        for (std::size_t w = 0; w < jobs; ++w) {
            pool.emplace_back(worker, w, jobs);
        }
        for (std::thread& th : pool) {
            th.join();
        }
    }
    for (const std::string& err : errors) {
        if (!err.empty()) {
            throw CliError(4, err);
        }
    }

    std::ostringstream os;
    os << config_header("sweep", r,
                        header_keys_for(r, {"init", "steps", "kmax", "samples",
                                            "seed", "grid", "trials", "jobs",
                                            "out"}));
    os << "T,k,delta\n";
    for (const std::string& blockText : rendered) {
        os << blockText;
    }
    write_output_file(r.out, os.str());
    return 0;
}

int cmd_twirl_check(const RunConfig& cfg) {
    const Resolved r = resolve(cfg);
    if (r.tlist.empty()) {
        throw CliError(2, "twirl-check requires a nonempty tlist");
    }
    const hse_density mixed{0.5, 0.0, 0.0};
    std::vector<double> mean_residual(r.tlist.size(), 0.0);
    std::ostringstream rows;
    for (std::size_t ti = 0; ti < r.tlist.size(); ++ti) {
        for (int trial = 0; trial < r.trials; ++trial) {
            hse_spinor psi{};
            check(hse_spinor_haar(r.seed, static_cast<std::uint64_t>(trial), &psi),
                  "twirl input");
            hse_density rho{};
            check(hse_density_from_spinor(&psi, &rho), "twirl input");
            hse_density averaged{};
            check(hse_time_average(r.protocol, &rho, r.tlist[ti], &averaged),
                  "time average");
            double residual = 0.0;
            check(hse_density_trace_distance(&averaged, &mixed, &residual),
                  "residual");
            mean_residual[ti] += residual / r.trials;
            rows << r.tlist[ti] << ',' << trial << ',' << fmt17(residual) << "\n";
        }
    }

    std::ostringstream os;
    os << config_header("twirl-check", r,
                        header_keys_for(r, {"tlist", "trials", "seed", "out"}));
    // power-law trend of the mean residual (reported, not asserted)
    std::vector<double> ts(r.tlist.begin(), r.tlist.end());
    double amplitude = 0.0;
    double exponent = 0.0;
    if (hse_power_law_fit(ts.data(), mean_residual.data(), ts.size(), &amplitude,
                          &exponent) == HSE_OK) {
        os << "## fit: mean residual ~ " << fmt17(amplitude) << " * T^-"
           << fmt17(exponent) << "\n";
    }
    os << "T,trial,residual\n";
    os << rows.str();
    write_output_file(r.out, os.str());
    return 0;
}

int cmd_tomo_demo(const RunConfig& cfg, const std::string& records_path) {
    const Resolved r = resolve(cfg);
    if (r.out.empty()) {
        throw CliError(2, "missing output prefix (--out)");
    }

    std::vector<hse_tomo_step> steps;
    hse_tomo_calibration cal = r.cal;
    std::uint64_t seed = r.seed;
    if (records_path.empty()) {
        // forward simulation: evolve, depolarize by pe, measure, optional noise
        std::vector<hse_spinor> states(r.steps);
        check(hse_evolve(r.protocol, &r.initial, r.steps, states.data()), "evolve");
        steps.resize(r.steps);
        for (std::uint64_t t = 0; t < r.steps; ++t) {
            hse_density pure{};
            check(hse_density_from_spinor(&states[t], &pure), "tomography");
            hse_density prepared{};
            check(hse_tomo_depolarize(&pure, cal.pe, &prepared), "tomography");
            hse_tomo_record rec{};
            check(hse_tomo_expectations(&prepared, &cal, &rec), "tomography");
            if (r.shots > 0) {
                check(hse_tomo_sample(&rec, r.shots, seed, t, &rec), "shot noise");
            }
            steps[t] = hse_tomo_step{t, rec};
        }
        check(hse_tomo_write_records((r.out + ".records").c_str(), &cal, seed,
                                     steps.data(), steps.size()),
              "record file");
    } else {
        size_t count = 0;
        hse_status st = hse_tomo_read_records(records_path.c_str(), &cal, &seed,
                                              nullptr, 0, &count);
        if (st != HSE_ERR_BUFFER_TOO_SMALL) {
            check(st, "record file");
        }
        steps.resize(count);
        check(hse_tomo_read_records(records_path.c_str(), &cal, &seed, steps.data(),
                                    steps.size(), &count),
              "record file");
        steps.resize(count);
        if (steps.empty()) {
            throw CliError(2, records_path + ": no records");
        }
    }

    // reconstruct -> polarization-correct -> purify
    std::vector<hse_spinor> purified(steps.size());
    std::ostringstream traj;
    for (std::size_t i = 0; i < steps.size(); ++i) {
        hse_density raw{};
        check(hse_tomo_reconstruct(&steps[i].record, &cal, &raw), "reconstruct");
        hse_density corrected{};
        check(hse_tomo_correct(&raw, cal.pe, &corrected), "polarization correction");
        double norm = 0.0;
        check(hse_tomo_purify(&corrected, &purified[i], &norm), "purify");
        hse_bloch b{};
        check(hse_spinor_to_bloch(&purified[i], &b), "purify");
        traj << steps[i].t << ',' << fmt17(raw.p0) << ',' << fmt17(raw.alpha) << ','
             << fmt17(raw.beta) << ',' << fmt17(norm) << ',' << fmt17(b.x) << ','
             << fmt17(b.y) << ',' << fmt17(b.z) << "\n";
    }

    const std::vector<std::string> keys = header_keys_for(
        r, {"init", "steps", "kmax", "samples", "seed", "shots", "l0", "l1", "pe",
            "out"});
    {
        std::ostringstream os;
        os << config_header("tomo-demo trajectory", r, keys);
        os << "t,p0,alpha,beta,bloch_norm,rx,ry,rz\n";
        os << traj.str();
        write_output_file(r.out + ".traj.csv", os.str());
    }
    {
        std::vector<std::uint64_t> times = r.sample_times;
        times.erase(std::remove_if(times.begin(), times.end(),
                                   [&](std::uint64_t t) {
                                       return t > purified.size();
                                   }),
                    times.end());
        if (times.empty()) {
            times.push_back(purified.size());
        }
        std::vector<double> deltas(times.size() * static_cast<std::size_t>(r.kmax));
        check(hse_delta_series_states(purified.data(), purified.size(), r.kmax,
                                      times.data(), times.size(), deltas.data()),
              "delta series");
        std::ostringstream os;
        os << config_header("tomo-demo deltas", r, keys);
        os << "T,k,delta\n";
        append_rows(os, collect_rows(times, r.kmax, deltas));
        write_output_file(r.out + ".delta.csv", os.str());
    }
    return 0;
}

int cmd_plot(const std::string& csv_path, const std::string& out_path) {
    const std::vector<PlotSeries> series = parse_delta_csv(csv_path);
    write_output_file(out_path, render_svg(series));
    return 0;
}

void add_common_options(CLI::App* cmd, RunConfig& cfg, std::string& config_path) {
    cmd->add_option("--config", config_path, "config file (key = value lines)");
    cmd->add_option("--drive", cfg.drive, "floquet|smoothqp|fibonacci|custom");
    cmd->add_option("--theta-x", cfg.theta_x, "x kick angle (radians or e.g. 0.38pi)");
    cmd->add_option("--theta-y", cfg.theta_y, "y kick angle (floquet)");
    cmd->add_option("--theta-z", cfg.theta_z, "z kick angle (fibonacci)");
    cmd->add_option("--omega2", cfg.omega2, "second frequency (custom drive only)");
    cmd->add_option("--arcs", cfg.arcs,
                    "custom drive arcs begin:end:gx:gy:gz;... on [0,2pi)");
    cmd->add_option("--init", cfg.init,
                    "initial state: theta,phi | haar-random | floquet-eigenstate[:0|:1]");
    cmd->add_option("--steps", cfg.steps, "total evolution steps T_max");
    cmd->add_option("--kmax", cfg.kmax, "largest moment order (1..8)");
    cmd->add_option("--samples", cfg.samples, "sample times: geom:N | list:t1,t2,... | all");
    cmd->add_option("--seed", cfg.seed, "random seed (recorded in outputs)");
    cmd->add_option("--shots", cfg.shots, "readout shots per record (0 = ideal)");
    cmd->add_option("--l0", cfg.l0, "PL rate of |0> (counts per shot)");
    cmd->add_option("--l1", cfg.l1, "PL rate of |1> (counts per shot)");
    cmd->add_option("--pe", cfg.pe, "polarization efficiency in (0,1]");
    cmd->add_option("--out", cfg.out, "output path (prefix for tomo-demo)");
    cmd->add_option("--jobs", cfg.jobs, "max parallel workers (sweep)");
    cmd->add_option("--grid", cfg.grid, "sweep grid a:b,a:b,... of the drive's two angles");
    cmd->add_option("--trials", cfg.trials, "trials per grid point / twirl inputs");
    cmd->add_option("--tlist", cfg.tlist, "twirl-check averaging times t1,t2,...");
}

// config-file values fill in options the command line did not set
void apply_config(CLI::App* cmd, RunConfig& cfg, const std::string& config_path) {
    if (config_path.empty()) {
        return;
    }
    const std::map<std::string, std::string> values = read_config_file(config_path);
    for (auto& [key, ptr] : cfg.fields()) {
        const auto it = values.find(key);
        if (it == values.end()) {
            continue;
        }
        std::string flag = "--" + key;
        std::replace(flag.begin(), flag.end(), '_', '-');
        const CLI::Option* opt = cmd->get_option_no_throw(flag);
        if (opt != nullptr && opt->count() > 0) {
            continue; // explicit flag wins
        }
        *ptr = it->second;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"hsesim: Hilbert-space ergodicity of a kicked qubit"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string config_path;
    std::string records_path;
    std::string plot_csv;
    std::string plot_out;

    CLI::App* simulate = app.add_subcommand(
        "simulate", "stream Delta^(k)(T) trace distances for one run to CSV");
    add_common_options(simulate, cfg, config_path);

    CLI::App* sweep = app.add_subcommand(
        "sweep", "Delta series over a grid of drive angles (and trials)");
    add_common_options(sweep, cfg, config_path);

    CLI::App* twirl = app.add_subcommand(
        "twirl-check", "time-averaging channel residuals against I/2");
    add_common_options(twirl, cfg, config_path);

    CLI::App* tomo = app.add_subcommand(
        "tomo-demo",
        "simulate tomography records, reconstruct the trajectory and its deltas");
    add_common_options(tomo, cfg, config_path);
    tomo->add_option("--records", records_path,
                     "reconstruct from an existing record file instead of simulating");

    CLI::App* plot = app.add_subcommand("plot", "render a delta CSV as a log-log SVG");
    plot->add_option("csv", plot_csv, "input CSV from simulate/sweep")->required();
    plot->add_option("--out", plot_out, "output SVG path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (simulate->parsed()) {
            apply_config(simulate, cfg, config_path);
            return cmd_simulate(cfg);
        }
        if (sweep->parsed()) {
            apply_config(sweep, cfg, config_path);
            return cmd_sweep(cfg);
        }
        if (twirl->parsed()) {
            apply_config(twirl, cfg, config_path);
            return cmd_twirl_check(cfg);
        }
        if (tomo->parsed()) {
            apply_config(tomo, cfg, config_path);
            return cmd_tomo_demo(cfg, records_path);
        }
        if (plot->parsed()) {
            return cmd_plot(plot_csv, plot_out);
        }
    } catch (const CliError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.exit_code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
    return 2;
}
