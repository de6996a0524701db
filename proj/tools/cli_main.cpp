#include "cli_main.hpp"

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qmetro/config.hpp"
#include "qmetro/errors.hpp"
#include "qmetro/fisher.hpp"
#include "qmetro/protocols.hpp"

namespace qmetro {

namespace {

struct CommonArgs {
    std::string config;
    std::string out;
    std::uint64_t seed = 12345;
    int workers = 1;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config, "model/sweep configuration file");
    cmd->add_option("--out", args.out, "output CSV path")->required();
    cmd->add_option("--seed", args.seed, "root RNG seed");
    cmd->add_option("--workers", args.workers, "worker threads for sweeps");
}

std::vector<double> time_grid(double t_max, int points) {
    std::vector<double> g;
    for (int i = 0; i <= points; ++i) g.push_back(t_max * i / points);
    return g;
}

int run_evolve(const CommonArgs& args, double t_max, int points) {
    SweepSpec spec = parse_config_file(args.config);
    auto grid = time_grid(t_max, points);
    auto states = evolve_state(spec.model, spec.omega0, DensityMatrix::pure(ket_xplus()), grid);
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < grid.size(); ++i)
        rows.push_back(
            {grid[i], states[i].bloch_x(), states[i].bloch_y(), states[i].bloch_z()});
    write_csv(args.out, {"t", "bloch_x", "bloch_y", "bloch_z"}, rows);
    return 0;
}

int run_qfi(const CommonArgs& args, double t_max, int points) {
    SweepSpec spec = parse_config_file(args.config);
    const double eps = 1e-4 * std::max(std::abs(spec.omega0), 1.0);
    DensityMatrix rho0 = DensityMatrix::pure(ket_xplus());
    std::vector<std::vector<double>> rows;
    ChannelCache cache(spec.model, spec.omega0);
    ChannelCache cache_m(spec.model, spec.omega0 - eps);
    ChannelCache cache_p(spec.model, spec.omega0 + eps);
    for (int i = 1; i <= points; ++i) {
        const double t = t_max * i / points;
        const auto& chan = cache.at(t);
        DensityMatrix rho = apply_channel(chan.map, rho0);
        Mat drho = hermitize(apply_superop(chan.dmap, rho0.matrix()));
        QfiResult q = qfi(rho, drho);
        const double q_bures =
            qfi_bures_oracle(apply_channel(cache_m.at(t).map, rho0), rho,
                             apply_channel(cache_p.at(t).map, rho0), eps);
        rows.push_back({t, q.value, q_bures});
    }
    write_csv(args.out, {"t", "qfi", "qfi_bures"}, rows);
    return 0;
}

int run_bound(const CommonArgs& args, int n_probes, double t_max, int points) {
    SweepSpec spec = parse_config_file(args.config);
    BoundOptions opts;
    opts.seed = args.seed;
    ChannelCache cache(spec.model, spec.omega0);
    std::vector<std::vector<double>> rows;
    for (int i = 1; i <= points; ++i) {
        const double t = t_max * i / points;
        KrausSet k = kraus_at(cache.at(t));
        BoundResult b = cqfi_upper(k, n_probes, opts);
        opts.warm_start = b.h_opt;
        rows.push_back({t, b.value, b.beta_norm, b.converged ? 1.0 : 0.0});
    }
    write_csv(args.out, {"t", "f_bound", "beta_norm", "converged"}, rows);
    return 0;
}

int run_scaling(const CommonArgs& args, const std::string& engine, int n_max, bool fit,
                double tail_fraction) {
    SweepSpec spec = parse_config_file(args.config);
    if (!engine.empty()) spec.engine = engine_from_string(engine);
    if (n_max > 0) {
        const int points = std::max<int>(8, spec.n_grid.size());
        spec.n_grid = geometric_n_grid(1, n_max, points);
    }
    spec.seed = args.seed;
    spec.workers = args.workers;
    auto rows = sweep(spec);
    write_csv(args.out, {"N", "t_opt", "bound_times_T", "boundary_flag"}, rows_from_sweep(rows));
    if (fit) {
        FitResult f = fit_exponent(rows, tail_fraction);
        std::printf("kappa=%.17g residual=%.17g window=%d..%d\n", f.exponent, f.residual,
                    f.window_min, f.window_max);
    }
    return 0;
}

int run_protocol(const CommonArgs& args, int n_probes, double t_max, int points) {
    SweepSpec spec = parse_config_file(args.config);
    std::vector<std::vector<double>> rows;
    const bool pc = spec.model.rate_kind == RateKind::TclOhmic &&
                    std::abs(spec.model.theta - M_PI / 2) < 1e-9;
    for (int i = 1; i <= points; ++i) {
        const double t = t_max * i / points;
        double p, mse_t;
        if (pc) {
            p = pc_ghz_survival(n_probes, t, spec.model, spec.omega0);
            const double expo = 2.0 * n_probes * decoherence_integral(t, spec.model);
            mse_t = std::exp(expo) / (double(n_probes) * n_probes * t);
        } else {
            const double gamma = rate_ohmic(t, spec.model);
            p = dephasing_probs(spec.omega0, t, gamma, n_probes, /*entangled=*/true);
            mse_t = std::exp(2.0 * n_probes * gamma * t) / (double(n_probes) * n_probes * t);
        }
        rows.push_back({t, p, mse_t});
    }
    write_csv(args.out, {"t", "p_survival", "mse_times_T"}, rows);
    return 0;
}

int run_toy(const CommonArgs& args, double theta, double sigma, int samples, double omega0,
            double t) {
    if (t <= 0.0) t = M_PI / (2.0 * omega0);  // omega0 t = pi/2 default
    auto vals = toy_model_sample(theta, sigma, omega0, t, samples, args.seed);
    std::vector<std::vector<double>> rows;
    for (double v : vals) rows.push_back({v});
    write_csv(args.out, {"sigma_z"}, rows);
    return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
    CLI::App app{"qmetro: precision limits for noisy qubit frequency estimation"};
    app.require_subcommand(1);

    CommonArgs evolve_args, qfi_args, bound_args, scaling_args, protocol_args, toy_args;
    double evolve_tmax = 5.0, qfi_tmax = 5.0, bound_tmax = 5.0, protocol_tmax = 5.0;
    int evolve_points = 200, qfi_points = 100, bound_points = 50, protocol_points = 200;
    int bound_n = 1, protocol_n = 1;
    std::string scaling_engine;
    int scaling_nmax = 0;
    bool scaling_fit = false;
    double tail_fraction = 0.5;
    double toy_theta = 0.0, toy_sigma = 0.1, toy_omega0 = 1.0, toy_t = 0.0;
    int toy_samples = 10000;

    auto* evolve = app.add_subcommand("evolve", "Bloch trajectory of |x+> under the model");
    add_common(evolve, evolve_args);
    evolve->add_option("--t-max", evolve_tmax, "end of the time grid");
    evolve->add_option("--points", evolve_points, "grid points");

    auto* qfi_cmd = app.add_subcommand("qfi", "QFI of the evolved probe vs time");
    add_common(qfi_cmd, qfi_args);
    qfi_cmd->add_option("--t-max", qfi_tmax, "end of the time grid");
    qfi_cmd->add_option("--points", qfi_points, "grid points");

    auto* bound = app.add_subcommand("bound", "channel-extension QFI bound vs time");
    add_common(bound, bound_args);
    bound->add_option("--N", bound_n, "probe count");
    bound->add_option("--t-max", bound_tmax, "end of the time grid");
    bound->add_option("--points", bound_points, "grid points");

    auto* scaling = app.add_subcommand("scaling", "N-sweep of the time-optimized bound");
    add_common(scaling, scaling_args);
    scaling->add_option("--engine", scaling_engine, "override the configured engine");
    scaling->add_option("--n-max", scaling_nmax, "override the N grid maximum");
    scaling->add_flag("--fit", scaling_fit, "print the exponent fit summary");
    scaling->add_option("--tail-fraction", tail_fraction, "log-range fraction used in the fit");

    auto* protocol = app.add_subcommand("protocol", "closed-form survival/CRB curves");
    add_common(protocol, protocol_args);
    protocol->add_option("--N", protocol_n, "probe count");
    protocol->add_option("--t-max", protocol_tmax, "end of the time grid");
    protocol->add_option("--points", protocol_points, "grid points");

    auto* toy = app.add_subcommand("toy", "noise-angle toy model samples");
    add_common(toy, toy_args);
    toy->add_option("--theta", toy_theta, "coupling angle");
    toy->add_option("--sigma", toy_sigma, "noise amplitude std deviation");
    toy->add_option("--samples", toy_samples, "sample count");
    toy->add_option("--omega0", toy_omega0, "qubit frequency");
    toy->add_option("--t", toy_t, "evolution time (default pi/(2 omega0))");

    try {
        app.parse(argc, argv);
        if (evolve->parsed()) return run_evolve(evolve_args, evolve_tmax, evolve_points);
        if (qfi_cmd->parsed()) return run_qfi(qfi_args, qfi_tmax, qfi_points);
        if (bound->parsed()) return run_bound(bound_args, bound_n, bound_tmax, bound_points);
        if (scaling->parsed())
            return run_scaling(scaling_args, scaling_engine, scaling_nmax, scaling_fit,
                               tail_fraction);
        if (protocol->parsed())
            return run_protocol(protocol_args, protocol_n, protocol_tmax, protocol_points);
        if (toy->parsed())
            return run_toy(toy_args, toy_theta, toy_sigma, toy_samples, toy_omega0, toy_t);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const Error& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 3;
    }
    return 2;
}

}  // namespace qmetro
