#include "qmetro/protocols.hpp"

#include <cmath>

#include "qmetro/errors.hpp"
#include "qmetro/optim.hpp"
#include "qmetro/rng.hpp"

namespace qmetro {

double ramsey_survival(double omega0, double t) {
    if (t < 0.0) throw NegativeTime("ramsey_survival: t must be nonnegative");
    const double c = std::cos(0.5 * omega0 * t);
    return c * c;
}

double dephasing_probs(double omega0, double t, double gamma, int n, bool entangled) {
    if (gamma < 0.0) throw InvalidModel("dephasing_probs: gamma must be nonnegative");
    if (entangled)
        return 0.5 * (1.0 + std::exp(-n * gamma * t) * std::cos(n * omega0 * t));
    return 0.5 * (1.0 + std::exp(-gamma * t) * std::cos(omega0 * t));
}

double dephasing_crb(double omega0, double t, double gamma, int n, double total_time,
                     bool entangled) {
    const double m = entangled ? n : 1;
    const double e2 = std::exp(-2.0 * m * gamma * t);
    const double c = std::cos(m * omega0 * t), s = std::sin(m * omega0 * t);
    const double num = 1.0 - e2 * c * c;
    const double den = (entangled ? double(n) * n : double(n)) * total_time * t * e2 * s * s;
    if (den == 0.0) throw ZeroSlope("dephasing_crb: vanishing sensitivity");
    return num / den;
}

TimeOptimum dephasing_optimum(double gamma, int n, double total_time, bool entangled) {
    if (gamma <= 0.0) throw InvalidModel("dephasing_optimum: gamma must be positive");
    TimeOptimum out;
    out.t_opt = entangled ? 1.0 / (2.0 * n * gamma) : 1.0 / (2.0 * gamma);
    out.bound = 2.0 * gamma * std::exp(1.0) / (n * total_time);
    return out;
}

double decoherence_integral(double t, const NoiseModel& model) {
    if (t < 0.0) throw NegativeTime("decoherence_integral: t must be nonnegative");
    switch (model.rate_kind) {
        case RateKind::TclOhmic: {
            const double x = model.omega_c * t;
            return model.lambda / model.beta *
                   (t * std::atan(x) - std::log1p(x * x) / (2.0 * model.omega_c));
        }
        case RateKind::Semigroup:
            return model.lambda * M_PI / (2.0 * model.beta) * t;
        case RateKind::Custom: {
            // Trapezoid on the piecewise-linear table.
            double acc = 0.0, prev_t = 0.0, prev_v = rate_ohmic(0.0, model);
            for (std::size_t i = 0; i < model.rate_grid.size() && model.rate_grid[i] < t; ++i) {
                if (model.rate_grid[i] <= prev_t) continue;
                acc += 0.5 * (prev_v + model.rate_values[i]) * (model.rate_grid[i] - prev_t);
                prev_t = model.rate_grid[i];
                prev_v = model.rate_values[i];
            }
            acc += 0.5 * (prev_v + rate_ohmic(t, model)) * (t - prev_t);
            return acc;
        }
    }
    throw InvalidModel("unknown rate kind");
}

double pc_ghz_survival(int n, double t, const NoiseModel& model, double omega0) {
    if (std::abs(model.theta - M_PI / 2) > 1e-9)
        throw WrongAngle("pc_ghz_survival: requires theta = pi/2");
    if (model.rate_kind != RateKind::TclOhmic)
        throw WrongAngle("pc_ghz_survival: requires the tcl-ohmic rate");
    if (t < 0.0) throw NegativeTime("pc_ghz_survival: t must be nonnegative");
    const double expo = n * decoherence_integral(t, model);
    return 0.5 * (1.0 + std::exp(-expo) * std::cos(n * t * omega0));
}

TimeOptimum pc_zeno_optimum(int n, const NoiseModel& model, double total_time) {
    model.validate();
    TimeOptimum out;
    if (model.rate_kind == RateKind::Semigroup) {
        out.t_opt = model.beta / (M_PI * model.lambda * n);
        out.bound = M_PI * std::exp(1.0) * model.lambda / (model.beta * n * total_time);
        return out;
    }
    if (model.rate_kind != RateKind::TclOhmic)
        throw WrongAngle("pc_zeno_optimum: requires tcl-ohmic or semigroup rate");

    // Optimality condition beta = 2 N lambda t arctan(omega_c t); the
    // left side is constant and the right side increases from 0.
    auto g = [&](double t) {
        return 2.0 * n * model.lambda * t * std::atan(model.omega_c * t) - model.beta;
    };
    double hi = std::sqrt(model.beta / (2.0 * model.lambda * model.omega_c * n));
    int guard = 0;
    while (g(hi) < 0.0) {
        hi *= 2.0;
        if (++guard > 200) throw BracketFailed("pc_zeno_optimum: no bracket for the optimum");
    }
    double lo = 0.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (g(mid) < 0.0 ? lo : hi) = mid;
    }
    out.t_opt = 0.5 * (lo + hi);
    const double expo = 2.0 * n * decoherence_integral(out.t_opt, model);
    out.bound = std::exp(expo) / (double(n) * n * out.t_opt * total_time);
    return out;
}

namespace {

// Transfer amplitudes m_ab = tr[O Lambda(|a><b|)] for a,b in {0,1}.
struct Transfer {
    cplx m[2][2];
};

Transfer transfer_amplitudes(const Superoperator& s, const Mat& obs) {
    Transfer out;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            Mat e = Mat::Zero(2, 2);
            e(a, b) = 1.0;
            out.m[a][b] = (obs * apply_superop(s, e)).trace();
        }
    return out;
}

// Integer power by squaring; std::pow on complex zero yields NaN.
cplx ipow(cplx z, int n) {
    cplx acc = 1.0;
    while (n > 0) {
        if (n & 1) acc *= z;
        z *= z;
        n >>= 1;
    }
    return acc;
}

}  // namespace

ParityExpectation parity_expectation_ghz(const ChannelWithDerivative& channel, int n) {
    if (channel.map.dim != 2)
        throw NotSingleQubit("parity_expectation_ghz: channel must be single-qubit");
    if (n < 1) throw NotSingleQubit("parity_expectation_ghz: N must be >= 1");
    const Mat sx = pauli_x();
    Transfer m = transfer_amplitudes(channel.map, sx);
    Transfer dm = transfer_amplitudes(channel.dmap, sx);

    cplx mean = 0.0, dmean = 0.0;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            mean += 0.5 * ipow(m.m[a][b], n);
            dmean += 0.5 * double(n) * ipow(m.m[a][b], n - 1) * dm.m[a][b];
        }
    if (std::abs(mean.imag()) > 1e-10 || std::abs(dmean.imag()) > 1e-10)
        throw NotSingleQubit("parity_expectation_ghz: non-real expectation");
    return {mean.real(), dmean.real()};
}

double parity_precision(const ChannelWithDerivative& channel, int n, double total_time) {
    ParityExpectation p = parity_expectation_ghz(channel, n);
    if (p.dmean == 0.0) throw ZeroSlope("parity_precision: parity has zero slope");
    return channel.t * (1.0 - p.mean * p.mean) / (total_time * p.dmean * p.dmean);
}

double parity_precision_opt(const ChannelWithDerivative& channel, int n, double total_time) {
    if (channel.map.dim != 2)
        throw NotSingleQubit("parity_precision_opt: channel must be single-qubit");
    // Coherence transfer amplitudes along sigma_x and sigma_y.
    Transfer mx = transfer_amplitudes(channel.map, pauli_x());
    Transfer my = transfer_amplitudes(channel.map, pauli_y());
    Transfer dx = transfer_amplitudes(channel.dmap, pauli_x());
    Transfer dy = transfer_amplitudes(channel.dmap, pauli_y());

    const cplx u = mx.m[0][1], v = my.m[0][1];
    const cplx du = dx.m[0][1], dv = dy.m[0][1];

    // Rotated parity amplitude A(d) = u cos d + v sin d; at the phase-
    // optimal point the slope magnitude is N |A|^{N-1} |dA|. Work in log
    // space so |A|^{N-1} cannot underflow at large N.
    auto obj_log = [&](double d) -> double {
        const cplx a = u * std::cos(d) + v * std::sin(d);
        const cplx da = du * std::cos(d) + dv * std::sin(d);
        const double am = std::abs(a), dam = std::abs(da);
        if (am <= 0.0 || dam <= 0.0) return std::numeric_limits<double>::infinity();
        const double log_slope = std::log(double(n)) + (n - 1) * std::log(am) + std::log(dam);
        return std::log(channel.t) - std::log(total_time) - 2.0 * log_slope;
    };

    double best = std::numeric_limits<double>::infinity(), best_d = 0.0;
    const int coarse = 64;
    for (int i = 0; i < coarse; ++i) {
        const double d = M_PI * i / coarse;
        const double f = obj_log(d);
        if (f < best) {
            best = f;
            best_d = d;
        }
    }
    if (!std::isfinite(best)) throw ZeroSlope("parity_precision_opt: parity has zero slope");
    auto [dref, fref] =
        golden_section(obj_log, best_d - M_PI / coarse, best_d + M_PI / coarse, 1e-6);
    (void)dref;
    return std::exp(std::min(best, fref));
}

std::vector<double> toy_model_sample(double theta, double sigma_eta, double omega0, double t,
                                     int samples, std::uint64_t seed) {
    if (samples < 1) throw InvalidModel("toy_model_sample: samples must be >= 1");
    Rng rng(seed);
    std::vector<double> out;
    out.reserve(samples);
    // pi/2 rotation about x mapping the nominal evolved state to +z.
    Mat rot = std::cos(M_PI / 4) * identity2() - I_UNIT * std::sin(M_PI / 4) * pauli_x();
    const Mat sz = pauli_z();
    for (int i = 0; i < samples; ++i) {
        const double eta = sigma_eta * rng.gaussian();
        const double ax = eta * std::cos(theta);
        const double az = 0.5 * omega0 + eta * std::sin(theta);
        const double w = std::sqrt(ax * ax + az * az);
        // exp(-i t (ax sx + az sz)) in closed form.
        Mat u = std::cos(w * t) * identity2();
        if (w > 0.0)
            u -= I_UNIT * std::sin(w * t) / w * (ax * pauli_x() + az * pauli_z());
        Vec psi = rot * u * ket_xplus();
        out.push_back((psi.adjoint() * sz * psi)(0, 0).real());
    }
    return out;
}

double nep(double signal_slope, double noise_std, double conversion) {
    if (signal_slope == 0.0) throw ZeroSlope("nep: signal slope is zero");
    return conversion * noise_std / std::abs(signal_slope);
}

McResult mle_monte_carlo(const std::function<double(double)>& p_of_omega, double omega0,
                         double bracket_halfwidth, const McConfig& cfg) {
    if (cfg.repetitions < 10) throw InvalidModel("mle_monte_carlo: need nu >= 10");
    const double p_true = p_of_omega(omega0);
    if (p_true <= 0.0 || p_true >= 1.0)
        throw LikelihoodDegenerate("mle_monte_carlo: model probability is 0 or 1");

    const double lo = omega0 - bracket_halfwidth, hi = omega0 + bracket_halfwidth;
    auto neg_loglik = [&](double w, long k, long nu) -> double {
        double p = std::clamp(p_of_omega(w), 1e-12, 1.0 - 1e-12);
        return -(k * std::log(p) + (nu - k) * std::log1p(-p));
    };

    double sum = 0.0, sum2 = 0.0;
    for (int rep = 0; rep < cfg.replications; ++rep) {
        Rng rng(Rng::derive_seed(cfg.seed, rep));
        long k = 0;
        for (long i = 0; i < cfg.repetitions; ++i)
            if (rng.uniform() < p_true) ++k;

        auto f = [&](double w) { return neg_loglik(w, k, cfg.repetitions); };
        const int coarse = 128;
        double best_w = lo, best_f = f(lo);
        for (int i = 1; i <= coarse; ++i) {
            const double w = lo + (hi - lo) * i / coarse;
            const double fw = f(w);
            if (fw < best_f) {
                best_f = fw;
                best_w = w;
            }
        }
        const double step = (hi - lo) / coarse;
        auto [w_hat, f_hat] = golden_section(f, std::max(lo, best_w - step),
                                             std::min(hi, best_w + step), 1e-10);
        (void)f_hat;
        const double err = w_hat - omega0;
        sum += err;
        sum2 += err * err;
    }
    McResult out;
    out.bias = sum / cfg.replications;
    out.mse = sum2 / cfg.replications;
    return out;
}

ChannelWithDerivative make_dephasing_channel(double gamma, double omega0, double t) {
    if (t < 0.0) throw NegativeTime("make_dephasing_channel: t must be nonnegative");
    const double eta = std::exp(-gamma * t);
    const cplx ph = std::exp(-I_UNIT * omega0 * t);
    Mat s = Mat::Zero(4, 4);
    // Column-stacked index order (00), (10), (01), (11).
    s(0, 0) = 1.0;
    s(1, 1) = eta * std::conj(ph);
    s(2, 2) = eta * ph;
    s(3, 3) = 1.0;
    Mat ds = Mat::Zero(4, 4);
    ds(1, 1) = I_UNIT * t * eta * std::conj(ph);
    ds(2, 2) = -I_UNIT * t * eta * ph;

    ChannelWithDerivative out;
    out.map = Superoperator(2, std::move(s));
    out.dmap = Superoperator(2, std::move(ds));
    out.omega0 = omega0;
    out.t = t;
    return out;
}

}  // namespace qmetro
