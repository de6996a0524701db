#include "qmetro/bounds.hpp"

#include <cmath>

#include "qmetro/errors.hpp"
#include "qmetro/optim.hpp"
#include "qmetro/rng.hpp"

namespace qmetro {

Mat HermitianParam::to_matrix() const {
    Mat h = Mat::Zero(rank, rank);
    int p = 0;
    for (int i = 0; i < rank; ++i) h(i, i) = params(p++);
    for (int i = 0; i < rank; ++i)
        for (int j = i + 1; j < rank; ++j) {
            const double re = params(p++);
            const double im = params(p++);
            h(i, j) = cplx(re, im);
            h(j, i) = cplx(re, -im);
        }
    return h;
}

HermitianParam HermitianParam::from_matrix(const Mat& h) {
    HermitianParam out(static_cast<int>(h.rows()));
    int p = 0;
    for (int i = 0; i < out.rank; ++i) out.params(p++) = h(i, i).real();
    for (int i = 0; i < out.rank; ++i)
        for (int j = i + 1; j < out.rank; ++j) {
            out.params(p++) = h(i, j).real();
            out.params(p++) = h(i, j).imag();
        }
    return out;
}

std::vector<Mat> tilde_kraus(const KrausSet& k, const HermitianParam& h) {
    if (h.rank != k.rank()) throw RankMismatch("tilde_kraus: h rank must equal Kraus rank");
    Mat hm = h.to_matrix();
    std::vector<Mat> out(k.ops.size());
    for (int i = 0; i < k.rank(); ++i) {
        Mat d = k.dops[i];
        for (int j = 0; j < k.rank(); ++j) d -= I_UNIT * hm(i, j) * k.ops[j];
        out[i] = std::move(d);
    }
    return out;
}

std::pair<Mat, Mat> alpha_beta(const KrausSet& k, const HermitianParam& h) {
    std::vector<Mat> td = tilde_kraus(k, h);
    const int d = k.dim();
    Mat alpha = Mat::Zero(d, d);
    Mat beta = Mat::Zero(d, d);
    for (int i = 0; i < k.rank(); ++i) {
        alpha += td[i].adjoint() * td[i];
        beta += I_UNIT * td[i].adjoint() * k.ops[i];
    }
    return {hermitize(alpha), hermitize(beta)};
}

namespace {

// Largest |eigenvalue| of a Hermitian matrix; closed form for 2x2.
double herm_norm(const Mat& m) {
    if (m.rows() == 2) {
        const double a = m(0, 0).real(), d = m(1, 1).real();
        const double mean = 0.5 * (a + d);
        const double r = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(m(0, 1)));
        return std::abs(mean) + r;
    }
    return operator_norm(m);
}

struct Objective {
    const KrausSet* k;
    int n_probes;
    int rank;
    mutable long evals = 0;

    double operator()(const Eigen::VectorXd& params) const {
        ++evals;
        HermitianParam h;
        h.rank = rank;
        h.params = params;
        auto [alpha, beta] = alpha_beta(*k, h);
        double v = herm_norm(alpha);
        if (n_probes > 1) {
            const double bn = herm_norm(beta);
            v += (n_probes - 1) * bn * bn;
        }
        return v;
    }
};

double derivative_scale(const KrausSet& k) {
    double s = 0.0;
    for (const Mat& d : k.dops) s = std::max(s, operator_norm(d));
    return std::max(s, 1e-6);
}

BoundResult minimize_bound(const KrausSet& k, int n_probes, const BoundOptions& opts) {
    if (k.dops.size() != k.ops.size())
        throw RankMismatch("bound minimization needs Kraus derivatives");
    const int rank = k.rank();
    const int dim = rank * rank;
    Objective obj{&k, n_probes, rank};
    const double scale = derivative_scale(k);

    Eigen::VectorXd best_x = Eigen::VectorXd::Zero(dim);
    if (opts.warm_start) {
        if (opts.warm_start->rank != rank)
            throw RankMismatch("warm start rank mismatch");
        best_x = opts.warm_start->params;
    }

    double best = std::numeric_limits<double>::infinity();
    bool converged = false;
    Rng rng(opts.seed);
    long evals = 0;
    for (int r = 0; r < opts.restarts; ++r) {
        Eigen::VectorXd x0(dim);
        if (r == 0) {
            x0 = best_x;  // zero or the caller's warm start
        } else {
            for (int i = 0; i < dim; ++i) x0(i) = scale * rng.gaussian();
        }
        auto fn = [&obj](const Eigen::VectorXd& p) { return obj(p); };
        NelderMeadResult nm =
            nelder_mead(fn, x0, 0.25 * scale + 1e-9, opts.rel_tol, opts.max_evals_per_restart);
        if (nm.value < best) {
            best = nm.value;
            best_x = nm.x;
            converged = nm.converged;
        }
    }
    evals = obj.evals;
    if (!std::isfinite(best)) throw OptimizerFailed("bound minimization failed to converge");

    BoundResult out;
    out.n_probes = n_probes;
    out.h_opt = HermitianParam(rank);
    out.h_opt.params = best_x;
    out.value = 4.0 * n_probes * best;
    out.objective_evals = evals;
    out.converged = converged;
    auto [alpha, beta] = alpha_beta(k, out.h_opt);
    (void)alpha;
    out.beta_norm = herm_norm(beta);
    return out;
}

}  // namespace

BoundResult cqfi_n1(const KrausSet& k, const BoundOptions& opts) {
    return minimize_bound(k, 1, opts);
}

BoundResult cqfi_upper(const KrausSet& k, int n_probes, const BoundOptions& opts) {
    if (n_probes < 1) throw RankMismatch("cqfi_upper: N must be >= 1");
    return minimize_bound(k, n_probes, opts);
}

KrausSet kraus_at(const ChannelWithDerivative& chan) {
    return kraus_with_derivative(chan.map, chan.dmap, 4);
}

QcrbResult qcrb_over_time(const NoiseModel& model, double omega0, int n_probes, double t_lo,
                          double t_hi, double total_time, const BoundOptions& opts,
                          ChannelCache* cache) {
    if (!(t_lo > 0.0) || !(t_hi > t_lo))
        throw FlatObjective("qcrb_over_time: need 0 < t_lo < t_hi");
    ChannelCache local_cache(model, omega0);
    ChannelCache& cc = cache ? *cache : local_cache;

    BoundOptions point_opts = opts;
    BoundResult last_bound;
    auto objective = [&](double t) -> double {
        KrausSet k = kraus_at(cc.at(t));
        last_bound = cqfi_upper(k, n_probes, point_opts);
        point_opts.warm_start = last_bound.h_opt;  // neighbors make good seeds
        if (last_bound.value <= 0.0) return std::numeric_limits<double>::infinity();
        return t / (total_time * last_bound.value);
    };

    const int grid_n = 60;
    const double lr = std::log(t_hi / t_lo);
    double best_t = t_lo, best_v = std::numeric_limits<double>::infinity();
    int best_i = 0;
    std::vector<double> ts(grid_n), vs(grid_n);
    for (int i = 0; i < grid_n; ++i) {
        ts[i] = t_lo * std::exp(lr * i / (grid_n - 1));
        vs[i] = objective(ts[i]);
        if (vs[i] < best_v) {
            best_v = vs[i];
            best_t = ts[i];
            best_i = i;
        }
    }
    if (!std::isfinite(best_v))
        throw FlatObjective("qcrb_over_time: bound vanishes on the whole window");

    QcrbResult out;
    if (best_i == 0 || best_i == grid_n - 1) {
        out.boundary = true;
        out.t_opt = best_t;
    } else {
        auto [tm, vm] = golden_section(objective, ts[best_i - 1], ts[best_i + 1], 1e-4);
        out.t_opt = vm <= best_v ? tm : best_t;
    }
    out.value = objective(out.t_opt);
    out.bound_at_opt = last_bound;
    return out;
}

}  // namespace qmetro
