//==============================================================================
// sqg_front — command-line driver for the SQG front solver library.
//
// Subcommands: simulate, decay-study, symbol-check, coeffs, oracle-check,
// energy-report, resonance-map, scatter-phase.  Time series are CSV with a
// header row; scalar reports are JSON; snapshots use the binary SQGF format.
// Exit codes: 0 success, 1 validation error, 2 numerical abort.
//==============================================================================
#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "sqgfront/sqgfront.hpp"

namespace fs = std::filesystem;
using namespace sqg;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitNumerical = 2;

std::string csv_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

//------------------------------------------------------------------------------
// simulate
//------------------------------------------------------------------------------
int cmd_simulate(const std::string& config_path, const std::string& output_dir_flag) {
    SimConfig cfg = parse_config(config_path);
    if (!output_dir_flag.empty()) cfg.output_dir = output_dir_flag;
    const fs::path dir(cfg.output_dir);
    fs::create_directories(dir);

    RunManifest manifest = RunManifest::begin(cfg);

    SimState initial;
    const SimState* initial_ptr = nullptr;
    if (cfg.initial_type == "snapshot") {
        initial = read_snapshot(cfg.snapshot_path);
        initial.config = cfg;
        initial_ptr = &initial;
    }

    std::ostringstream csv;
    csv << "t,step,h0_norm,h2_norm,h4_norm,z7_norm,linf,mean_mode,tblog_norm,e_tilde\n";
    const RunResult res = run(cfg, [&](const SimState&, const DiagnosticsRecord& r) {
        csv << csv_double(r.t) << ',' << r.step << ',' << csv_double(r.l2) << ','
            << csv_double(r.h2) << ',' << csv_double(r.h4) << ',' << csv_double(r.z7) << ','
            << csv_double(r.linf) << ',' << csv_double(r.mean_mode) << ','
            << csv_double(r.tblog_norm) << ',' << csv_double(r.e_tilde) << '\n';
    }, initial_ptr);

    const fs::path csv_path = dir / "diagnostics.csv";
    atomic_write(csv_path, csv.str());
    manifest.emitted_files.push_back(csv_path.string());

    const fs::path snap_path = dir / "final_state.sqgf";
    write_snapshot(res.final_state, snap_path);
    manifest.emitted_files.push_back(snap_path.string());

    manifest.abort_reason = res.abort_reason;
    manifest.finished_at = wall_time_iso8601();
    const fs::path man_path = dir / "manifest.json";
    manifest.emitted_files.push_back(man_path.string());
    manifest.write(man_path);

    if (res.aborted) {
        std::cerr << "simulate: aborted at t = " << res.last_good_time << ": "
                  << res.abort_reason << "\n";
        return kExitNumerical;
    }
    std::cout << "simulate: completed t = " << res.final_state.t << " ("
              << res.final_state.step_count << " steps), outputs in " << dir.string() << "\n";
    return kExitOk;
}

//------------------------------------------------------------------------------
// decay-study: linear evolution of a packet, L-infinity decay series + fit.
//------------------------------------------------------------------------------
int cmd_decay_study(std::size_t n, double length, double amplitude, double width,
                    double carrier, double t_end, double dt_out, const std::string& out_path) {
    SimConfig cfg;
    cfg.n = n;
    cfg.length = length;
    cfg.initial_type = "packet";
    cfg.amplitude = amplitude;
    cfg.width = width;
    cfg.carrier = carrier;
    const SpectralField phat0 = forward_transform(make_initial_field(cfg));

    std::vector<std::pair<double, double>> series;
    std::ostringstream csv;
    csv << "t,linf\n";
    for (double t = 0.0; t <= t_end + 1e-12; t += dt_out) {
        const RealField phi = inverse_transform(linear_propagate(phat0, t));
        const double v = linf_norm(phi);
        series.emplace_back(t, v);
        csv << csv_double(t) << ',' << csv_double(v) << '\n';
    }
    const double t_lo = std::max(20.0, 0.1 * t_end);
    const double expo = decay_fit(series, t_lo, t_end);
    csv << "# fitted exponent over [" << t_lo << ", " << t_end << "]: " << csv_double(expo)
        << "\n";
    atomic_write(out_path, csv.str());
    std::cout << "decay-study: fitted exponent " << expo << " (series in " << out_path
              << ")\n";
    return kExitOk;
}

//------------------------------------------------------------------------------
// symbol-check: closed form vs quadrature on random tuples.
//------------------------------------------------------------------------------
int cmd_symbol_check(int n, int trials, double tol, std::uint64_t seed,
                     const std::string& out_path) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> mag(0.3, 3.0);
    std::bernoulli_distribution sign(0.5);

    std::ostringstream csv;
    csv << "trial,closed,quadrature,rel_gap,status\n";
    int failures = 0;
    for (int trial = 0; trial < trials; ++trial) {
        SymbolQuery q;
        q.n = n;
        q.tol = 1e-10;
        for (int j = 0; j < 2 * n + 1; ++j)
            q.etas.push_back((sign(rng) ? 1.0 : -1.0) * mag(rng));
        const double closed = t_symbol_closed(q);
        const double quad = t_symbol_quadrature(q);
        const double gap = std::abs(closed - quad) / std::max(std::abs(closed), 1e-300);
        const bool ok = gap <= tol;
        if (!ok) ++failures;
        csv << trial << ',' << csv_double(closed) << ',' << csv_double(quad) << ','
            << csv_double(gap) << ',' << (ok ? "PASS" : "FAIL") << '\n';
    }
    if (!out_path.empty()) atomic_write(out_path, csv.str());
    else std::cout << csv.str();
    std::cout << "symbol-check: " << (trials - failures) << "/" << trials << " PASS\n";
    return failures == 0 ? kExitOk : kExitValidation;
}

//------------------------------------------------------------------------------
// coeffs: table of c_n and d_{n,l}.
//------------------------------------------------------------------------------
int cmd_coeffs(int n_max, const std::string& out_path) {
    std::ostringstream csv;
    csv << "n,c_n,l,d_n_l\n";
    for (int n = 1; n <= n_max; ++n) {
        for (int l = 1; l <= 2 * n + 1; ++l)
            csv << n << ',' << csv_double(coeff_c(n)) << ',' << l << ','
                << csv_double(coeff_d(n, l)) << '\n';
    }
    if (!out_path.empty()) atomic_write(out_path, csv.str());
    else std::cout << csv.str();
    return kExitOk;
}

//------------------------------------------------------------------------------
// oracle-check: amplitude-scaling table of the zeta-integral vs series gap.
//------------------------------------------------------------------------------
int cmd_oracle_check(double amplitude, int halvings, std::size_t n, double length,
                     double width, const std::string& out_path) {
    NonlinearityConfig nl;
    nl.n_max = 2;
    nl.dealias_factor = 3.0;

    const FourierGrid g(n, length);
    std::ostringstream csv;
    csv << "amplitude,oracle,series,gap,ratio_to_previous\n";
    double prev_gap = 0.0;
    for (int h = 0; h <= halvings; ++h) {
        const double a = amplitude / std::pow(2.0, h);
        RealField phi(g);
        for (std::size_t i = 0; i < n; ++i) {
            const double u = g.x(i) / width;
            phi.samples[i] = a * std::exp(-u * u);
        }
        // Probe off-center where the cubic term is largest for a bump.
        const std::size_t xi = n / 2 + n / 16;
        const double oracle = zeta_integral_oracle(phi, xi, nl);
        const double series = full_nonlinearity(phi, nl).samples[xi];
        const double gap = std::abs(oracle - series);
        csv << csv_double(a) << ',' << csv_double(oracle) << ',' << csv_double(series) << ','
            << csv_double(gap) << ',' << (h == 0 ? "" : csv_double(prev_gap / gap)) << '\n';
        prev_gap = gap;
    }
    if (!out_path.empty()) atomic_write(out_path, csv.str());
    else std::cout << csv.str();
    return kExitOk;
}

//------------------------------------------------------------------------------
// energy-report: JSON of Sobolev norms, E^(j), Etilde, ||T_Blog||.
//------------------------------------------------------------------------------
int cmd_energy_report(const std::string& snapshot_path, int s, int n_max,
                      const std::string& out_path) {
    const SimState state = read_snapshot(snapshot_path);
    const SpectralField phat = detail::apply_linear_phase(state.profile, state.t);
    const RealField phi = inverse_transform(phat);
    const EnergyReport rep = weighted_energy_report(phi, s, n_max);

    nlohmann::json j;
    j["t"] = state.t;
    j["tblog_norm"] = rep.tblog_norm;
    j["e_tilde"] = rep.e_tilde;
    for (int k = 0; k <= s; ++k) {
        j["h_norms"]["h" + std::to_string(k)] = sobolev_norm(phat, k);
        j["energies"]["e" + std::to_string(k)] = rep.e[static_cast<std::size_t>(k)];
    }
    const std::string text = j.dump(2) + "\n";
    if (!out_path.empty()) atomic_write(out_path, text);
    else std::cout << text;
    return kExitOk;
}

//------------------------------------------------------------------------------
// resonance-map: Phi and A_i membership on an (eta1, eta2) grid.
//------------------------------------------------------------------------------
int cmd_resonance_map(double xi, double t, double range, int steps,
                      const std::string& out_path) {
    const ResonanceSets sets = resonance_sets(xi, t);
    std::ostringstream csv;
    csv << "eta1,eta2,phi,set\n";
    for (int i = 0; i <= steps; ++i) {
        for (int j = 0; j <= steps; ++j) {
            const double e1 = -range + 2.0 * range * i / steps;
            const double e2 = -range + 2.0 * range * j / steps;
            csv << csv_double(e1) << ',' << csv_double(e2) << ','
                << csv_double(phase_phi(xi, e1, e2)) << ','
                << resonance_tag_name(membership(sets, e1, e2)) << '\n';
        }
    }
    if (!out_path.empty()) atomic_write(out_path, csv.str());
    else std::cout << csv.str();
    return kExitOk;
}

//------------------------------------------------------------------------------
// scatter-phase: run a simulation tracking arg hhat and arg vhat at one mode.
//------------------------------------------------------------------------------
int cmd_scatter_phase(const std::string& config_path, long long mode,
                      const std::string& out_path) {
    const SimConfig cfg = parse_config(config_path);
    const FourierGrid g(cfg.n, cfg.length);
    const std::size_t slot = g.slot_of_k(mode);

    ScatteringPhase acc(g);
    std::ostringstream csv;
    csv << "t,xi,arg_hhat,arg_vhat\n";
    const RunResult res = run(cfg, [&](const SimState& st, const DiagnosticsRecord&) {
        const SpectralField phat = profile_to_solution(st);
        acc = scattering_phase_update(std::move(acc), phat, st.t);
        const SpectralField vhat = corrected_profile(phat, acc);
        csv << csv_double(st.t) << ',' << csv_double(g.wavenumber(mode)) << ','
            << csv_double(std::arg(st.profile.coefficients[slot])) << ','
            << csv_double(std::arg(vhat.coefficients[slot])) << '\n';
    });
    atomic_write(out_path, csv.str());
    if (res.aborted) {
        std::cerr << "scatter-phase: run aborted: " << res.abort_reason << "\n";
        return kExitNumerical;
    }
    std::cout << "scatter-phase: series in " << out_path << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pseudospectral solver and analysis toolkit for the SQG front equation"};
    app.require_subcommand(1);

    // simulate
    std::string sim_config, sim_outdir;
    auto* sim = app.add_subcommand("simulate", "Integrate the front equation from a config file");
    sim->add_option("--config", sim_config, "Path to INI config file")->required();
    sim->add_option("--output-dir", sim_outdir, "Override the config's output directory");

    // decay-study
    std::size_t ds_n = 16384;
    double ds_len = 4000, ds_amp = 1e-3, ds_width = 3, ds_carrier = 2, ds_tend = 200, ds_dt = 2;
    std::string ds_out = "decay.csv";
    auto* ds = app.add_subcommand("decay-study", "L-infinity decay of a linearly evolved packet");
    ds->add_option("--n", ds_n, "Grid points");
    ds->add_option("--length", ds_len, "Domain length");
    ds->add_option("--amplitude", ds_amp, "Packet amplitude");
    ds->add_option("--width", ds_width, "Envelope width");
    ds->add_option("--carrier", ds_carrier, "Carrier frequency");
    ds->add_option("--t-end", ds_tend, "Final time");
    ds->add_option("--dt-out", ds_dt, "Output sampling interval");
    ds->add_option("--output", ds_out, "CSV output path");

    // symbol-check
    int sc_n = 1, sc_trials = 100;
    double sc_tol = 1e-8;
    std::uint64_t sc_seed = 12345;
    std::string sc_out;
    auto* sc = app.add_subcommand("symbol-check", "Closed-form vs quadrature symbol comparison");
    sc->add_option("--n", sc_n, "Degree index (1..6)");
    sc->add_option("--trials", sc_trials, "Number of random tuples");
    sc->add_option("--tol", sc_tol, "Relative tolerance");
    sc->add_option("--seed", sc_seed, "Random seed");
    sc->add_option("--output", sc_out, "CSV output path (default: stdout)");

    // coeffs
    int co_n = 5;
    std::string co_out;
    auto* co = app.add_subcommand("coeffs", "Expansion coefficient table c_n, d_{n,l}");
    co->add_option("--n", co_n, "Largest degree index");
    co->add_option("--output", co_out, "CSV output path (default: stdout)");

    // oracle-check
    double oc_amp = 1e-2;
    int oc_halvings = 2;
    std::size_t oc_n = 128;
    double oc_len = 100, oc_width = 5;
    std::string oc_out;
    auto* oc = app.add_subcommand("oracle-check", "zeta-integral vs truncated series scaling table");
    oc->add_option("--amplitude", oc_amp, "Largest amplitude");
    oc->add_option("--halvings", oc_halvings, "Number of amplitude halvings");
    oc->add_option("--grid-n", oc_n, "Grid points");
    oc->add_option("--length", oc_len, "Domain length");
    oc->add_option("--width", oc_width, "Bump width");
    oc->add_option("--output", oc_out, "CSV output path (default: stdout)");

    // energy-report
    std::string er_snap, er_out;
    int er_s = 3, er_nmax = 1;
    auto* er = app.add_subcommand("energy-report", "Weighted-energy report for a snapshot");
    er->add_option("--snapshot", er_snap, "Snapshot path")->required();
    er->add_option("--s", er_s, "Largest Sobolev index");
    er->add_option("--n-max", er_nmax, "B^log truncation");
    er->add_option("--output", er_out, "JSON output path (default: stdout)");

    // resonance-map
    double rm_xi = 1.0, rm_t = 0.0, rm_range = 2.0;
    int rm_steps = 40;
    std::string rm_out;
    auto* rm = app.add_subcommand("resonance-map", "Phase Phi and resonance-set membership grid");
    rm->add_option("--xi", rm_xi, "Output frequency xi");
    rm->add_option("--t", rm_t, "Time (sets the parallelogram size)");
    rm->add_option("--range", rm_range, "Half-width of the eta grid");
    rm->add_option("--steps", rm_steps, "Grid steps per axis");
    rm->add_option("--output", rm_out, "CSV output path (default: stdout)");

    // scatter-phase
    std::string sp_config, sp_out = "scatter.csv";
    long long sp_mode = 1;
    auto* sp = app.add_subcommand("scatter-phase", "Modified-scattering phase diagnostic series");
    sp->add_option("--config", sp_config, "Path to INI config file")->required();
    sp->add_option("--mode", sp_mode, "Tracked integer mode index");
    sp->add_option("--output", sp_out, "CSV output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitValidation;
    }

    try {
        if (sim->parsed()) return cmd_simulate(sim_config, sim_outdir);
        if (ds->parsed())
            return cmd_decay_study(ds_n, ds_len, ds_amp, ds_width, ds_carrier, ds_tend, ds_dt, ds_out);
        if (sc->parsed()) return cmd_symbol_check(sc_n, sc_trials, sc_tol, sc_seed, sc_out);
        if (co->parsed()) return cmd_coeffs(co_n, co_out);
        if (oc->parsed())
            return cmd_oracle_check(oc_amp, oc_halvings, oc_n, oc_len, oc_width, oc_out);
        if (er->parsed()) return cmd_energy_report(er_snap, er_s, er_nmax, er_out);
        if (rm->parsed()) return cmd_resonance_map(rm_xi, rm_t, rm_range, rm_steps, rm_out);
        if (sp->parsed()) return cmd_scatter_phase(sp_config, sp_mode, sp_out);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitValidation;
}
