#include "qmetro/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "qmetro/errors.hpp"

namespace qmetro {

void NoiseModel::validate() const {
    if (theta < -1e-12 || theta > M_PI / 2 + 1e-12)
        throw InvalidModel("theta must lie in [0, pi/2]");
    if (rate_kind == RateKind::Custom) {
        if (rate_grid.size() != rate_values.size() || rate_grid.size() < 2)
            throw InvalidModel("custom rate table needs matching grid and values");
        for (std::size_t i = 0; i + 1 < rate_grid.size(); ++i)
            if (rate_grid[i + 1] <= rate_grid[i])
                throw InvalidModel("custom rate grid must be strictly increasing");
        for (double v : rate_values)
            if (v < 0.0) throw InvalidModel("custom rates must be nonnegative");
    } else {
        // lambda = 0 is the noiseless edge case used throughout.
        if (lambda < 0.0 || beta <= 0.0 || omega_c <= 0.0)
            throw InvalidModel("lambda must be nonnegative; beta, omega_c positive");
    }
}

NoiseModel NoiseModel::custom_constant(double gamma, double theta) {
    NoiseModel m;
    m.theta = theta;
    m.rate_kind = RateKind::Custom;
    m.rate_grid = {0.0, 1e9};
    m.rate_values = {gamma, gamma};
    return m;
}

double rate_ohmic(double t, const NoiseModel& model) {
    if (t < 0.0) throw NegativeTime("rate_ohmic: t must be nonnegative");
    switch (model.rate_kind) {
        case RateKind::TclOhmic:
            return model.lambda / model.beta * std::atan(model.omega_c * t);
        case RateKind::Semigroup:
            return model.lambda * M_PI / (2.0 * model.beta);
        case RateKind::Custom: {
            const auto& g = model.rate_grid;
            const auto& v = model.rate_values;
            if (t < g.front() - 1e-12 || t > g.back() + 1e-12)
                throw RateTableOutOfRange("rate table does not cover requested time");
            auto it = std::upper_bound(g.begin(), g.end(), t);
            if (it == g.begin()) return v.front();
            if (it == g.end()) return v.back();
            const std::size_t i = static_cast<std::size_t>(it - g.begin());
            const double w = (t - g[i - 1]) / (g[i] - g[i - 1]);
            return (1.0 - w) * v[i - 1] + w * v[i];
        }
    }
    throw InvalidModel("unknown rate kind");
}

namespace {

// -i [H, .] as a superoperator (column stacking).
Mat commutator_superop(const Mat& h) {
    const Eigen::Index d = h.rows();
    Mat id = Mat::Identity(d, d);
    return -I_UNIT * (kron(id, h) - kron(h.transpose(), id));
}

// Lindblad dissipator V rho V^dag - {V^dag V, rho}/2 as a superoperator.
Mat dissipator_superop(const Mat& v) {
    const Eigen::Index d = v.rows();
    Mat id = Mat::Identity(d, d);
    Mat vdv = v.adjoint() * v;
    return kron(v.conjugate(), v) - 0.5 * (kron(id, vdv) + kron(vdv.transpose(), id));
}

// Model dissipator structure without the rate prefactor.
Mat dissipator_structure(const NoiseModel& model) {
    if (model.secular) {
        const double c2 = std::cos(model.theta) * std::cos(model.theta);
        const double s2 = std::sin(model.theta) * std::sin(model.theta);
        return c2 * dissipator_superop(sigma_plus()) + c2 * dissipator_superop(sigma_minus()) +
               s2 * dissipator_superop(pauli_z());
    }
    Mat sbar = std::cos(model.theta) * pauli_x() + std::sin(model.theta) * pauli_z();
    return dissipator_superop(sbar);  // sbar^2 = 1, so D[sbar] = sbar . sbar - id
}

}  // namespace

Superoperator generator(const NoiseModel& model, double omega0, double t) {
    model.validate();
    if (t < 0.0) throw NegativeTime("generator: t must be nonnegative");
    Mat h = 0.5 * omega0 * pauli_z();
    Mat g = commutator_superop(h) + 0.5 * rate_ohmic(t, model) * dissipator_structure(model);
    return Superoperator(2, std::move(g));
}

Superoperator generator_omega_derivative() {
    return Superoperator(2, commutator_superop(0.5 * pauli_z()));
}

double ChannelWithDerivative::choi_min_eigenvalue() const {
    return hermitian_eig(choi_of(map).m).eigenvalues.minCoeff();
}

int default_steps(const NoiseModel& model, double dt) {
    double scale;
    switch (model.rate_kind) {
        case RateKind::TclOhmic:
            scale = model.omega_c;
            break;
        case RateKind::Semigroup:
            scale = 1.0;
            break;
        case RateKind::Custom: {
            double min_dt = 1e300;
            for (std::size_t i = 0; i + 1 < model.rate_grid.size(); ++i)
                min_dt = std::min(min_dt, model.rate_grid[i + 1] - model.rate_grid[i]);
            scale = std::max(1.0, 1.0 / min_dt);
            break;
        }
        default:
            scale = 1.0;
    }
    const double n = std::ceil(2000.0 * scale * dt);
    return static_cast<int>(std::clamp(n, 64.0, 4.0e6));
}

namespace {

struct PropagatorPair {
    Mat lam;   // Lambda(t <- t0)
    Mat dlam;  // d Lambda / d omega0 over the same interval
};

// RK4 on the joint system over [t0, t1] starting from (lam0, dlam0).
PropagatorPair integrate_segment(const NoiseModel& model, double omega0, double t0, double t1,
                                 int steps, Mat lam, Mat dlam) {
    const Mat gw = generator_omega_derivative().m;
    const double h = (t1 - t0) / steps;
    const double w = omega0;
    Mat hloc = 0.5 * w * pauli_z();
    Mat hpart = commutator_superop(hloc);
    Mat dstruct = dissipator_structure(model);

    auto gen_at = [&](double s) -> Mat {
        return hpart + 0.5 * rate_ohmic(s, model) * dstruct;
    };

    for (int i = 0; i < steps; ++i) {
        const double s = t0 + i * h;
        Mat g1 = gen_at(s);
        Mat g2 = gen_at(s + 0.5 * h);
        Mat g4 = gen_at(s + h);

        Mat k1 = g1 * lam;
        Mat d1 = g1 * dlam + gw * lam;

        Mat l2 = lam + 0.5 * h * k1;
        Mat dl2 = dlam + 0.5 * h * d1;
        Mat k2 = g2 * l2;
        Mat d2 = g2 * dl2 + gw * l2;

        Mat l3 = lam + 0.5 * h * k2;
        Mat dl3 = dlam + 0.5 * h * d2;
        Mat k3 = g2 * l3;
        Mat d3 = g2 * dl3 + gw * l3;

        Mat l4 = lam + h * k3;
        Mat dl4 = dlam + h * d3;
        Mat k4 = g4 * l4;
        Mat d4 = g4 * dl4 + gw * l4;

        lam += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        dlam += (h / 6.0) * (d1 + 2.0 * d2 + 2.0 * d3 + d4);
    }
    if (!lam.allFinite() || !dlam.allFinite())
        throw IntegrationDiverged("propagate_channel: non-finite entries");
    return {std::move(lam), std::move(dlam)};
}

ChannelWithDerivative finalize_channel(Mat lam, Mat dlam, double omega0, double t) {
    ChannelWithDerivative out;
    out.map = Superoperator(2, std::move(lam));
    out.dmap = Superoperator(2, std::move(dlam));
    out.omega0 = omega0;
    out.t = t;
    if (out.choi_min_eigenvalue() < -1e-6)
        throw NotCPTP("propagate_channel: Choi matrix eigenvalue below -1e-6");
    return out;
}

}  // namespace

ChannelWithDerivative propagate_channel(const NoiseModel& model, double omega0, double t,
                                        int steps) {
    model.validate();
    if (t < 0.0) throw NegativeTime("propagate_channel: t must be nonnegative");
    Mat lam = Mat::Identity(4, 4);
    Mat dlam = Mat::Zero(4, 4);
    if (t == 0.0) return finalize_channel(std::move(lam), std::move(dlam), omega0, t);
    if (steps <= 0) steps = default_steps(model, t);
    auto pair =
        integrate_segment(model, omega0, 0.0, t, steps, std::move(lam), std::move(dlam));
    return finalize_channel(std::move(pair.lam), std::move(pair.dlam), omega0, t);
}

ChannelWithDerivative propagate_channel_from(const ChannelWithDerivative& start,
                                             const NoiseModel& model, double t, int steps) {
    if (t < start.t) throw NegativeTime("propagate_channel_from: cannot integrate backwards");
    if (t == start.t) return start;
    if (steps <= 0) steps = default_steps(model, t - start.t);
    // Segment propagator from identity, then compose:
    //   Lambda(t<-0) = Lambda(t<-t0) Lambda(t0<-0)
    //   dLambda(t<-0) = dLambda(t<-t0) Lambda(t0<-0) + Lambda(t<-t0) dLambda(t0<-0)
    auto seg = integrate_segment(model, start.omega0, start.t, t, steps, Mat::Identity(4, 4),
                                 Mat::Zero(4, 4));
    Mat lam = seg.lam * start.map.m;
    Mat dlam = seg.dlam * start.map.m + seg.lam * start.dmap.m;
    return finalize_channel(std::move(lam), std::move(dlam), start.omega0, t);
}

std::vector<DensityMatrix> evolve_state(const NoiseModel& model, double omega0,
                                        const DensityMatrix& rho0,
                                        const std::vector<double>& t_grid) {
    if (t_grid.empty() || t_grid.front() != 0.0)
        throw NegativeTime("evolve_state: time grid must start at 0");
    for (std::size_t i = 0; i + 1 < t_grid.size(); ++i)
        if (t_grid[i + 1] <= t_grid[i])
            throw NegativeTime("evolve_state: time grid must be increasing");

    std::vector<DensityMatrix> out;
    out.reserve(t_grid.size());
    out.push_back(rho0);
    ChannelWithDerivative chan = propagate_channel(model, omega0, 0.0);
    for (std::size_t i = 1; i < t_grid.size(); ++i) {
        chan = propagate_channel_from(chan, model, t_grid[i]);
        out.push_back(apply_channel(chan.map, rho0));
    }
    return out;
}

ChannelCache::ChannelCache(NoiseModel model, double omega0)
    : model_(std::move(model)), omega0_(omega0) {
    model_.validate();
    cache_.push_back(propagate_channel(model_, omega0_, 0.0));
}

const ChannelWithDerivative& ChannelCache::at(double t) {
    auto cmp = [](const ChannelWithDerivative& c, double tt) { return c.t < tt; };
    auto it = std::lower_bound(cache_.begin(), cache_.end(), t, cmp);
    if (it != cache_.end() && std::abs(it->t - t) < 1e-15 * std::max(1.0, t)) return *it;
    // Integrate forward from the nearest cached point below t.
    auto base = it == cache_.begin() ? cache_.begin() : std::prev(it);
    ChannelWithDerivative next = propagate_channel_from(*base, model_, t);
    auto pos = cache_.insert(it, std::move(next));
    return *pos;
}

}  // namespace qmetro
