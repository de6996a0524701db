#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qmetro/dynamics.hpp"
#include "qmetro/errors.hpp"
#include "qmetro/protocols.hpp"
#include "test_support.hpp"

using namespace qmetro;
using namespace qmetro::testing;

namespace {

NoiseModel ohmic(double theta, double lambda = 0.1, double beta = 1.0, double omega_c = 100.0,
                 bool secular = false) {
    NoiseModel m;
    m.theta = theta;
    m.lambda = lambda;
    m.beta = beta;
    m.omega_c = omega_c;
    m.rate_kind = RateKind::TclOhmic;
    m.secular = secular;
    return m;
}

Superoperator rotation_z(double phi) {
    Mat u = std::cos(phi) * identity2() - I_UNIT * std::sin(phi) * pauli_z();
    return Superoperator::conjugation(u);
}

}  // namespace

TEST_CASE("rate_ohmic values and limits") {
    NoiseModel m = ohmic(M_PI / 2, 1.0, 2.0, 1.0);
    CHECK(rate_ohmic(0.0, m) == doctest::Approx(0.0));
    CHECK(rate_ohmic(1.0, m) == doctest::Approx(M_PI / 8).epsilon(1e-12));
    CHECK(rate_ohmic(1e9, m) == doctest::Approx(M_PI / 4).epsilon(1e-6));

    NoiseModel sg = m;
    sg.rate_kind = RateKind::Semigroup;
    CHECK(rate_ohmic(0.3, sg) == doctest::Approx(1.0 * M_PI / (2.0 * 2.0)));

    // Monotone nondecreasing in t.
    double prev = 0.0;
    for (double t = 0.0; t < 3.0; t += 0.1) {
        const double g = rate_ohmic(t, m);
        CHECK(g >= prev - 1e-15);
        prev = g;
    }
    CHECK_THROWS_AS(rate_ohmic(-1.0, m), NegativeTime);
}

TEST_CASE("custom rate tables interpolate and reject out-of-range times") {
    NoiseModel m;
    m.rate_kind = RateKind::Custom;
    m.rate_grid = {0.0, 1.0, 2.0};
    m.rate_values = {0.0, 0.2, 0.2};
    CHECK(rate_ohmic(0.5, m) == doctest::Approx(0.1));
    CHECK(rate_ohmic(1.5, m) == doctest::Approx(0.2));
    CHECK_THROWS_AS(rate_ohmic(3.0, m), RateTableOutOfRange);

    NoiseModel bad = m;
    bad.rate_values = {0.0, -0.1, 0.2};
    CHECK_THROWS_AS(bad.validate(), InvalidModel);
    bad = m;
    bad.rate_grid = {0.0, 1.0, 1.0};
    bad.rate_values = {0.0, 0.1, 0.1};
    CHECK_THROWS_AS(bad.validate(), InvalidModel);
}

TEST_CASE("generator structure: pure dephasing keeps populations invariant") {
    for (bool secular : {false, true}) {
        NoiseModel m = ohmic(M_PI / 2);
        m.secular = secular;
        Superoperator g = generator(m, 1.0, 0.7);
        // Populations live on vec indices 0 and 3; the generator must not
        // move anything into them.
        for (int col = 0; col < 4; ++col) {
            CHECK(std::abs(g.m(0, col)) < 1e-12);
            CHECK(std::abs(g.m(3, col)) < 1e-12);
        }
        // Generator annihilates the trace.
        Vec id = vec_col(identity2());
        CHECK((g.m.adjoint() * id).norm() < 1e-12);
    }
}

TEST_CASE("generator at lambda = 0 is the bare commutator") {
    NoiseModel m = ohmic(0.3, 0.0);
    Superoperator g = generator(m, 2.0, 1.0);
    Mat h = 1.0 * pauli_z();  // omega0/2 sigma_z with omega0 = 2
    Mat expected = -I_UNIT * (kron(identity2(), h) - kron(h.transpose(), identity2()));
    CHECK(operator_norm(g.m - expected) < 1e-14);
}

TEST_CASE("secular generator at theta = 0 has only the transversal channels") {
    NoiseModel m = ohmic(0.0, 0.2, 1.0, 50.0, /*secular=*/true);
    const double t = 0.4;
    Superoperator g = generator(m, 1.3, t);
    // d_z = 0, d_+ = d_- = 1: subtracting the Hamiltonian part leaves
    // gamma/2 (D[sigma+] + D[sigma-]).
    Superoperator g0 = generator(ohmic(0.0, 0.0, 1.0, 50.0, true), 1.3, t);
    const double gamma = rate_ohmic(t, m);
    auto dsp = [](const Mat& v) {
        Mat vdv = v.adjoint() * v;
        return Mat(kron(v.conjugate(), v) -
                   0.5 * (kron(identity2(), vdv) + kron(vdv.transpose(), identity2())));
    };
    Mat expected = 0.5 * gamma * (dsp(sigma_plus()) + dsp(sigma_minus()));
    CHECK(operator_norm((g.m - g0.m) - expected) < 1e-12);
}

TEST_CASE("noiseless propagation is the exact unitary conjugation") {
    const double omega0 = 1.7, t = 2.3;
    NoiseModel m = ohmic(0.9, 0.0);
    ChannelWithDerivative c = propagate_channel(m, omega0, t);
    Superoperator exact = rotation_z(0.5 * omega0 * t);
    CHECK(operator_norm(c.map.m - exact.m) < 1e-9);
    CHECK(c.map.is_trace_preserving());
}

TEST_CASE("tcl-ohmic dephasing envelope matches the closed form") {
    NoiseModel m = ohmic(M_PI / 2);
    const double omega0 = 1.0;
    for (double t : {0.05, 0.3, 1.0, 2.5}) {
        ChannelWithDerivative c = propagate_channel(m, omega0, t);
        // Coherence transfer element in the column-stacked basis.
        const double envelope = std::abs(c.map.m(2, 2));
        const double x = m.omega_c * t;
        const double expected = std::exp(
            -(m.lambda / m.beta) * (t * std::atan(x) - std::log1p(x * x) / (2.0 * m.omega_c)));
        CHECK(envelope == doctest::Approx(expected).epsilon(1e-7));
    }
}

TEST_CASE("semigroup dephasing: off-diagonal decay e^{-2 gamma~ t}") {
    NoiseModel m = ohmic(M_PI / 2, 0.4, 1.3);
    m.rate_kind = RateKind::Semigroup;
    const double gamma_inf = rate_ohmic(0.0, m);  // lambda pi / (2 beta)
    const double gamma_tilde = 0.5 * gamma_inf;   // dissipator prefactor
    for (double t : {0.2, 1.0, 3.0}) {
        ChannelWithDerivative c = propagate_channel(m, 0.8, t);
        CHECK(std::abs(c.map.m(2, 2)) ==
              doctest::Approx(std::exp(-2.0 * gamma_tilde * t)).epsilon(1e-9));
    }
    // A constant custom table gamma reproduces the phenomenological
    // survival probability (1 + e^{-gamma t} cos omega0 t)/2.
    const double gamma = 0.35, omega0 = 1.2, t = 0.9;
    NoiseModel pheno = NoiseModel::custom_constant(gamma);
    ChannelWithDerivative c = propagate_channel(pheno, omega0, t);
    DensityMatrix out = apply_channel(c.map, DensityMatrix::pure(ket_xplus()));
    const double survival = 0.5 * (1.0 + out.bloch_x());
    CHECK(survival ==
          doctest::Approx(dephasing_probs(omega0, t, gamma, 1, false)).epsilon(1e-9));
}

TEST_CASE("propagation is CPTP and converged under step refinement") {
    for (double theta : {0.0, M_PI / 4, M_PI / 2}) {
        NoiseModel m = ohmic(theta, 0.2, 1.0, 20.0);
        ChannelWithDerivative c = propagate_channel(m, 1.0, 0.8);
        CHECK(c.choi_min_eigenvalue() > -1e-8);
        CHECK(c.map.is_trace_preserving());
        CHECK(c.dmap.trace_annihilation_defect() < 1e-7);

        const int steps = default_steps(m, 0.8);
        ChannelWithDerivative fine = propagate_channel(m, 1.0, 0.8, 2 * steps);
        CHECK(operator_norm(c.map.m - fine.map.m) < 1e-9);
    }
}

TEST_CASE("dmap agrees with a central finite difference") {
    for (bool secular : {false, true}) {
        NoiseModel m = ohmic(0.3, 0.15, 1.0, 30.0, secular);
        const double omega0 = 1.0, t = 0.9;
        const double eps = 1e-5 * std::max(omega0, 1.0);
        ChannelWithDerivative c = propagate_channel(m, omega0, t);
        Mat fd = (propagate_channel(m, omega0 + eps, t).map.m -
                  propagate_channel(m, omega0 - eps, t).map.m) /
                 (2.0 * eps);
        CHECK(operator_norm(c.dmap.m - fd) / operator_norm(fd) < 1e-6);
    }
}

TEST_CASE("segment composition matches direct propagation") {
    NoiseModel m = ohmic(0.2, 0.3, 1.0, 25.0);
    ChannelWithDerivative first = propagate_channel(m, 1.1, 0.4);
    ChannelWithDerivative composed = propagate_channel_from(first, m, 1.0);
    ChannelWithDerivative direct = propagate_channel(m, 1.1, 1.0);
    CHECK(operator_norm(composed.map.m - direct.map.m) < 1e-9);
    CHECK(operator_norm(composed.dmap.m - direct.dmap.m) < 1e-8);
}

TEST_CASE("evolve_state fixed point, precession, and envelope") {
    NoiseModel deph = ohmic(M_PI / 2);
    std::vector<double> grid = {0.0, 0.2, 0.5, 1.0};

    auto states = evolve_state(deph, 1.0, DensityMatrix::maximally_mixed(2), grid);
    for (const auto& s : states) CHECK(operator_norm(s.matrix() - 0.5 * identity2()) < 1e-10);

    NoiseModel free = ohmic(M_PI / 2, 0.0);
    const double omega0 = 1.4;
    auto prec = evolve_state(free, omega0, DensityMatrix::pure(ket_xplus()), grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(prec[i].bloch_x() == doctest::Approx(std::cos(omega0 * grid[i])).epsilon(1e-9));
        // Precession sense fixed by -i[omega0 sigma_z/2, .] in the
        // standard basis (|0> the +1 eigenvector of sigma_z).
        CHECK(prec[i].bloch_y() == doctest::Approx(std::sin(omega0 * grid[i])).epsilon(1e-9));
        CHECK(std::abs(prec[i].bloch_z()) < 1e-10);
    }

    auto damped = evolve_state(deph, omega0, DensityMatrix::pure(ket_xplus()), grid);
    CHECK(operator_norm(damped[0].matrix() - prec[0].matrix()) == 0.0);  // output[0] = rho0
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double r = std::hypot(damped[i].bloch_x(), damped[i].bloch_y());
        const double x = deph.omega_c * grid[i];
        const double expected =
            std::exp(-(deph.lambda / deph.beta) *
                     (grid[i] * std::atan(x) - std::log1p(x * x) / (2.0 * deph.omega_c)));
        CHECK(r == doctest::Approx(expected).epsilon(1e-7));
    }

    CHECK_THROWS_AS(evolve_state(deph, 1.0, DensityMatrix::maximally_mixed(2), {0.5, 1.0}),
                    NegativeTime);
}

TEST_CASE("phase covariance holds for secular models and fails off-angle") {
    Rng rng(41);
    NoiseModel pc = ohmic(0.4, 0.2, 1.0, 20.0, /*secular=*/true);
    ChannelWithDerivative c = propagate_channel(pc, 1.0, 0.7);
    for (int i = 0; i < 20; ++i) {
        const double phi = rng.uniform(0.0, 2.0 * M_PI);
        Superoperator rz = rotation_z(phi);
        CHECK(operator_norm(c.map.m * rz.m - rz.m * c.map.m) < 1e-7);
    }

    // Pure dephasing is phase covariant even without the secular form.
    NoiseModel deph = ohmic(M_PI / 2, 0.2, 1.0, 20.0, /*secular=*/false);
    ChannelWithDerivative cd = propagate_channel(deph, 1.0, 0.7);
    Superoperator rz = rotation_z(0.9);
    CHECK(operator_norm(cd.map.m * rz.m - rz.m * cd.map.m) < 1e-7);

    for (double theta : {0.0, M_PI / 4}) {
        NoiseModel npc = ohmic(theta, 0.2, 1.0, 20.0, /*secular=*/false);
        ChannelWithDerivative cn = propagate_channel(npc, 1.0, 0.7);
        double worst = 0.0;
        for (int i = 0; i < 20; ++i) {
            Superoperator r = rotation_z(rng.uniform(0.0, 2.0 * M_PI));
            worst = std::max(worst, operator_norm(cn.map.m * r.m - r.m * cn.map.m));
        }
        CHECK(worst > 1e-3);
    }
}

TEST_CASE("semigroup composition law holds only for constant rates") {
    NoiseModel sg = ohmic(0.3, 0.4, 1.0);
    sg.rate_kind = RateKind::Semigroup;
    const double t1 = 0.37, t2 = 0.61;
    Mat lhs = propagate_channel(sg, 1.0, t1 + t2).map.m;
    Mat rhs = propagate_channel(sg, 1.0, t2).map.m * propagate_channel(sg, 1.0, t1).map.m;
    CHECK(operator_norm(lhs - rhs) < 1e-7);

    NoiseModel tcl = ohmic(M_PI / 2, 0.1, 1.0, 100.0);
    const double s1 = 0.005, s2 = 0.005;  // both below 1/omega_c
    Mat l2 = propagate_channel(tcl, 1.0, s1 + s2).map.m;
    Mat r2 = propagate_channel(tcl, 1.0, s2).map.m * propagate_channel(tcl, 1.0, s1).map.m;
    CHECK(operator_norm(l2 - r2) > 1e-4);
}

TEST_CASE("short-time survival decays quadratically with a stable coefficient") {
    NoiseModel m = ohmic(M_PI / 2, 0.1, 1.0, 100.0);
    const double omega0 = 1.0;
    DensityMatrix xp = DensityMatrix::pure(ket_xplus());

    auto alpha_at = [&](double t, int steps) {
        ChannelWithDerivative c = propagate_channel(m, omega0, t, steps);
        DensityMatrix out = apply_channel(c.map, xp);
        const double p = 0.5 * (1.0 + out.bloch_x());
        return (1.0 - p) / (t * t);
    };
    const double a1 = alpha_at(1e-3, 2000);
    const double a2 = alpha_at(5e-4, 2000);
    const double a1_fine = alpha_at(1e-3, 4000);
    CHECK(a1 == doctest::Approx(a1_fine).epsilon(1e-8));  // grid refinement stable
    CHECK(a1 == doctest::Approx(a2).epsilon(0.05));       // t^2 law
    const double analytic = (omega0 * omega0 + m.lambda * m.omega_c / m.beta) / 4.0;
    CHECK(a1 == doctest::Approx(analytic).epsilon(0.05));
}

TEST_CASE("channel cache reproduces direct propagation") {
    NoiseModel m = ohmic(0.1, 0.2, 1.0, 15.0);
    ChannelCache cache(m, 1.0);
    Mat c1 = cache.at(0.5).map.m;
    Mat c2 = cache.at(0.25).map.m;  // behind the first request
    CHECK(operator_norm(c1 - propagate_channel(m, 1.0, 0.5).map.m) < 1e-9);
    CHECK(operator_norm(c2 - propagate_channel(m, 1.0, 0.25).map.m) < 1e-9);
    CHECK(operator_norm(cache.at(0.5).map.m - c1) == 0.0);
}
