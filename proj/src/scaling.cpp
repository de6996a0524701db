#include "qmetro/scaling.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

#include "qmetro/errors.hpp"
#include "qmetro/optim.hpp"
#include "qmetro/protocols.hpp"
#include "qmetro/rng.hpp"

namespace qmetro {

void SweepSpec::validate() const {
    model.validate();
    if (n_grid.empty()) throw InvalidModel("sweep: empty N grid");
    for (std::size_t i = 0; i + 1 < n_grid.size(); ++i)
        if (n_grid[i + 1] <= n_grid[i])
            throw InvalidModel("sweep: N grid must be strictly increasing");
    if (n_grid.front() < 1) throw InvalidModel("sweep: N must be >= 1");
    if (total_time <= 0.0) throw InvalidModel("sweep: total_time must be positive");
    if (t_lo != 0.0 || t_hi != 0.0) {
        if (!(t_lo > 0.0) || !(t_hi > t_lo)) throw InvalidModel("sweep: bad time window");
    }
}

std::vector<int> geometric_n_grid(int n_min, int n_max, int points) {
    std::vector<int> out;
    const double l0 = std::log(double(n_min)), l1 = std::log(double(n_max));
    for (int i = 0; i < points; ++i) {
        const int n = static_cast<int>(std::lround(std::exp(l0 + (l1 - l0) * i / (points - 1))));
        if (out.empty() || n > out.back()) out.push_back(n);
    }
    return out;
}

namespace {

// Coherence decay rate scale of the model, used to seed time windows.
double rate_scale(const NoiseModel& model) {
    switch (model.rate_kind) {
        case RateKind::TclOhmic:
        case RateKind::Semigroup:
            return model.lambda * M_PI / (2.0 * model.beta);
        case RateKind::Custom: {
            double m = 0.0;
            for (double v : model.rate_values) m = std::max(m, v);
            return std::max(m, 1e-6);
        }
    }
    return 1.0;
}

bool model_is_constant_rate(const NoiseModel& model) {
    if (model.rate_kind == RateKind::Semigroup) return true;
    if (model.rate_kind == RateKind::Custom) {
        for (double v : model.rate_values)
            if (std::abs(v - model.rate_values.front()) > 1e-12) return false;
        return true;
    }
    return false;
}

// Minimize a smooth positive objective over a geometric t-grid plus
// golden refinement; mirrors the qcrb_over_time scheme.
struct ScanResult {
    double t_opt = 0.0;
    double value = 0.0;
    bool boundary = false;
};

ScanResult scan_minimum(const std::function<double(double)>& f, double t_lo, double t_hi) {
    const int grid_n = 60;
    const double lr = std::log(t_hi / t_lo);
    double best_v = std::numeric_limits<double>::infinity(), best_t = t_lo;
    int best_i = 0;
    std::vector<double> ts(grid_n);
    for (int i = 0; i < grid_n; ++i) {
        ts[i] = t_lo * std::exp(lr * i / (grid_n - 1));
        const double v = f(ts[i]);
        if (v < best_v) {
            best_v = v;
            best_t = ts[i];
            best_i = i;
        }
    }
    ScanResult out;
    if (!std::isfinite(best_v)) throw FlatObjective("sweep: objective not finite on window");
    if (best_i == 0 || best_i == grid_n - 1) {
        out.boundary = true;
        out.t_opt = best_t;
        out.value = best_v;
        return out;
    }
    auto [tm, vm] = golden_section(f, ts[best_i - 1], ts[best_i + 1], 1e-4);
    out.t_opt = vm <= best_v ? tm : best_t;
    out.value = std::min(vm, best_v);
    return out;
}

SweepRow analytic_dephasing_row(const SweepSpec& spec, int n) {
    if (!model_is_constant_rate(spec.model))
        throw EngineModelMismatch("analytic-dephasing engine needs a constant-rate model");
    const double gamma = rate_scale(spec.model);
    TimeOptimum opt = dephasing_optimum(gamma, n, spec.total_time, /*entangled=*/true);
    SweepRow row;
    row.n_probes = n;
    row.t_opt = opt.t_opt;
    row.bound_times_t = opt.bound * spec.total_time;
    return row;
}

SweepRow analytic_pc_row(const SweepSpec& spec, int n) {
    if (std::abs(spec.model.theta - M_PI / 2) > 1e-9)
        throw EngineModelMismatch("analytic-pc engine requires theta = pi/2");
    if (spec.model.rate_kind == RateKind::Custom)
        throw EngineModelMismatch("analytic-pc engine requires tcl-ohmic or semigroup rate");
    TimeOptimum opt = pc_zeno_optimum(n, spec.model, spec.total_time);
    SweepRow row;
    row.n_probes = n;
    row.t_opt = opt.t_opt;
    row.bound_times_t = opt.bound * spec.total_time;
    return row;
}

struct NumericRowContext {
    const SweepSpec& spec;
    ChannelCache& cache;
    double window_lo, window_hi;
};

SweepRow numeric_row(NumericRowContext ctx, int n) {
    const SweepSpec& spec = ctx.spec;
    double lo = ctx.window_lo, hi = ctx.window_hi;
    SweepRow row;
    row.n_probes = n;
    for (int attempt = 0;; ++attempt) {
        ScanResult scan;
        if (spec.engine == SweepEngine::ChannelExtension) {
            BoundOptions opts;
            opts.restarts = spec.bound_restarts;
            opts.seed = Rng::derive_seed(spec.seed, static_cast<std::uint64_t>(n));
            QcrbResult q = qcrb_over_time(spec.model, spec.omega0, n, lo, hi, spec.total_time,
                                          opts, &ctx.cache);
            scan.t_opt = q.t_opt;
            scan.value = q.value;
            scan.boundary = q.boundary;
        } else {  // ParityGhz
            auto f = [&](double t) {
                return parity_precision_opt(ctx.cache.at(t), n, spec.total_time);
            };
            scan = scan_minimum(f, lo, hi);
        }
        row.t_opt = scan.t_opt;
        row.bound_times_t = scan.value * spec.total_time;
        row.boundary = scan.boundary;
        if (!scan.boundary || attempt >= 3) break;
        // Widen on the flagged side and retry.
        if (scan.t_opt <= lo * (1.0 + 1e-9)) {
            lo /= 4.0;
        } else {
            hi *= 4.0;
        }
    }
    return row;
}

}  // namespace

std::vector<SweepRow> sweep(const SweepSpec& spec) {
    spec.validate();
    const std::size_t n_rows = spec.n_grid.size();
    std::vector<SweepRow> rows(n_rows);

    if (spec.engine == SweepEngine::AnalyticDephasing || spec.engine == SweepEngine::AnalyticPc) {
        for (std::size_t i = 0; i < n_rows; ++i) {
            rows[i] = spec.engine == SweepEngine::AnalyticDephasing
                          ? analytic_dephasing_row(spec, spec.n_grid[i])
                          : analytic_pc_row(spec, spec.n_grid[i]);
        }
        return rows;
    }

    const double gscale = rate_scale(spec.model);
    const double t_star = 1.0 / (2.0 * gscale);  // dephasing optimum as a scale
    const std::pair<double, double> base_window =
        spec.t_lo > 0.0 ? std::pair{spec.t_lo, spec.t_hi}
                        : std::pair{1e-3 * t_star, 30.0 * t_star};

    const int workers = std::max(1, spec.workers);
    if (workers == 1) {
        // Sequential path shares one channel cache and warm-starts each
        // window from the previous row's optimum.
        ChannelCache cache(spec.model, spec.omega0);
        double prev = 0.0;
        for (std::size_t i = 0; i < n_rows; ++i) {
            auto [lo, hi] = base_window;
            if (spec.t_lo == 0.0 && prev > 0.0) {
                lo = prev / 16.0;
                hi = prev * 8.0;
            }
            rows[i] = numeric_row({spec, cache, lo, hi}, spec.n_grid[i]);
            prev = rows[i].valid ? rows[i].t_opt : prev;
        }
    } else {
        std::atomic<std::size_t> next{0};
        auto run = [&]() {
            ChannelCache cache(spec.model, spec.omega0);  // per-thread cache
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n_rows) break;
                rows[i] =
                    numeric_row({spec, cache, base_window.first, base_window.second},
                                spec.n_grid[i]);
            }
        };
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(run);
        for (auto& th : pool) th.join();
    }

    bool any_valid = false;
    for (const auto& r : rows) any_valid = any_valid || (r.valid && std::isfinite(r.bound_times_t));
    if (!any_valid) throw AllRowsInvalid("sweep: no valid rows");
    return rows;
}

namespace {

FitResult fit_loglog(const std::vector<double>& xs, const std::vector<double>& ys,
                     const std::vector<int>& ns) {
    FitResult out;
    const std::size_t m = xs.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < m; ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double denom = m * sxx - sx * sx;
    out.exponent = (m * sxy - sx * sy) / denom;
    out.intercept = (sy - out.exponent * sx) / m;
    double rss = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double r = ys[i] - (out.intercept + out.exponent * xs[i]);
        rss += r * r;
    }
    out.residual = std::sqrt(rss / m);
    out.window_min = ns.front();
    out.window_max = ns.back();
    return out;
}

FitResult fit_tail(const std::vector<SweepRow>& table, double tail_fraction,
                   bool fit_topt) {
    std::vector<const SweepRow*> valid;
    for (const auto& r : table)
        if (r.valid && std::isfinite(r.bound_times_t) && r.bound_times_t > 0.0 &&
            (!fit_topt || r.t_opt > 0.0))
            valid.push_back(&r);
    if (valid.size() < 4) throw InsufficientRows("fit_exponent: fewer than 4 valid rows");

    const double lmax = std::log(double(valid.back()->n_probes));
    const double lmin = std::log(double(valid.front()->n_probes));
    const double cut = lmax - tail_fraction * (lmax - lmin);

    std::vector<double> xs, ys;
    std::vector<int> ns;
    for (const auto* r : valid) {
        const double ln = std::log(double(r->n_probes));
        if (ln + 1e-12 < cut) continue;
        xs.push_back(ln);
        ys.push_back(std::log(fit_topt ? r->t_opt : r->bound_times_t));
        ns.push_back(r->n_probes);
    }
    if (xs.size() < 4) throw InsufficientRows("fit_exponent: fewer than 4 rows in the tail");
    return fit_loglog(xs, ys, ns);
}

}  // namespace

FitResult fit_exponent(const std::vector<SweepRow>& table, double tail_fraction) {
    return fit_tail(table, tail_fraction, false);
}

FitResult fit_topt_exponent(const std::vector<SweepRow>& table, double tail_fraction) {
    return fit_tail(table, tail_fraction, true);
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
    std::ofstream out(path, std::ios::binary);  // binary keeps LF endings everywhere
    if (!out) throw ConfigError("cannot open output file: " + path);
    for (std::size_t i = 0; i < header.size(); ++i)
        out << (i ? "," : "") << header[i];
    out << "\n";
    char buf[64];
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%.17g", row[i]);
            out << (i ? "," : "") << buf;
        }
        out << "\n";
    }
}

CsvData read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open input file: " + path);
    CsvData data;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        if (first) {
            while (std::getline(ss, cell, ',')) data.header.push_back(cell);
            first = false;
            continue;
        }
        std::vector<double> row;
        while (std::getline(ss, cell, ',')) row.push_back(std::strtod(cell.c_str(), nullptr));
        data.rows.push_back(std::move(row));
    }
    return data;
}

std::vector<std::vector<double>> rows_from_sweep(const std::vector<SweepRow>& rows) {
    std::vector<std::vector<double>> out;
    for (const auto& r : rows)
        out.push_back({double(r.n_probes), r.t_opt, r.bound_times_t, r.boundary ? 1.0 : 0.0});
    return out;
}

std::vector<SweepRow> sweep_from_rows(const std::vector<std::vector<double>>& rows) {
    std::vector<SweepRow> out;
    for (const auto& r : rows) {
        SweepRow s;
        s.n_probes = static_cast<int>(r.at(0));
        s.t_opt = r.at(1);
        s.bound_times_t = r.at(2);
        s.boundary = r.at(3) != 0.0;
        out.push_back(s);
    }
    return out;
}

}  // namespace qmetro
