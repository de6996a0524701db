#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qmetro/channel.hpp"
#include "qmetro/errors.hpp"
#include "qmetro/states.hpp"
#include "test_support.hpp"

using namespace qmetro;
using namespace qmetro::testing;

namespace {

// Phase-damping channel: diagonal preserved, off-diagonals scaled by eta.
Superoperator phase_damping(double eta) {
    Mat s = Mat::Zero(4, 4);
    s(0, 0) = 1.0;
    s(1, 1) = eta;
    s(2, 2) = eta;
    s(3, 3) = 1.0;
    return Superoperator(2, std::move(s));
}

}  // namespace

TEST_CASE("hermitian_eig on Pauli spectra") {
    EigResult ez = hermitian_eig(pauli_z());
    CHECK(ez.eigenvalues(0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(ez.eigenvalues(1) == doctest::Approx(-1.0).epsilon(1e-12));

    EigResult ei = hermitian_eig(identity2());
    CHECK(ei.eigenvalues(0) == doctest::Approx(1.0));
    CHECK(ei.eigenvalues(1) == doctest::Approx(1.0));

    EigResult ex = hermitian_eig(pauli_x());
    CHECK(ex.eigenvalues(0) == doctest::Approx(1.0));
    CHECK(ex.eigenvalues(1) == doctest::Approx(-1.0));
}

TEST_CASE("hermitian_eig reconstruction and error path") {
    Rng rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        Mat h = random_hermitian(rng, 4);
        EigResult e = hermitian_eig(h);
        Mat rebuilt = e.eigenvectors * e.eigenvalues.asDiagonal().toDenseMatrix().cast<cplx>() *
                      e.eigenvectors.adjoint();
        CHECK(operator_norm(h - rebuilt) < 1e-9);
        for (int i = 0; i + 1 < 4; ++i) CHECK(e.eigenvalues(i) >= e.eigenvalues(i + 1));
    }
    Mat bad = random_complex(rng, 3, 3);
    bad(0, 1) += 10.0;
    CHECK_THROWS_AS(hermitian_eig(bad), NonHermitianInput);
}

TEST_CASE("operator_norm basics and power-iteration oracle") {
    CHECK(operator_norm(pauli_z()) == doctest::Approx(1.0));
    CHECK(operator_norm(2.0 * identity2()) == doctest::Approx(2.0));

    Rng rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        Mat h = random_hermitian(rng, 4);
        const double oracle = power_iteration_norm(h, rng);
        CHECK(operator_norm(h) == doctest::Approx(oracle).epsilon(1e-9));
    }
}

TEST_CASE("operator_norm is submultiplicative and unitarily invariant") {
    Rng rng(13);
    for (int trial = 0; trial < 50; ++trial) {
        Mat a = random_complex(rng, 3, 3), b = random_complex(rng, 3, 3);
        CHECK(operator_norm(a * b) <= operator_norm(a) * operator_norm(b) + 1e-9);
        Mat u = random_unitary(rng, 3), v = random_unitary(rng, 3);
        CHECK(operator_norm(u * a * v) == doctest::Approx(operator_norm(a)).epsilon(1e-9));
    }
}

TEST_CASE("trace distance") {
    Rng rng(3);
    DensityMatrix rho = random_density(rng, 2);
    CHECK(trace_distance(rho, rho) == doctest::Approx(0.0));

    DensityMatrix p0 = DensityMatrix::pure(ket0());
    DensityMatrix p1 = DensityMatrix::pure(ket1());
    CHECK(trace_distance(p0, p1) == doctest::Approx(1.0));
    CHECK(trace_distance(p0, DensityMatrix::maximally_mixed(2)) == doctest::Approx(0.5));

    CHECK_THROWS_AS(trace_distance(p0, DensityMatrix::maximally_mixed(4)), DimensionMismatch);
}

TEST_CASE("fidelity and Bures distance") {
    Rng rng(5);
    DensityMatrix rho = random_density(rng, 2);
    CHECK(fidelity(rho, rho) == doctest::Approx(1.0));
    CHECK(bures_distance(rho, rho) == doctest::Approx(0.0));

    DensityMatrix p0 = DensityMatrix::pure(ket0());
    DensityMatrix p1 = DensityMatrix::pure(ket1());
    CHECK(fidelity(p0, p1) == doctest::Approx(0.0));
    CHECK(bures_distance(p0, p1) == doctest::Approx(M_PI / 2));

    DensityMatrix px = DensityMatrix::pure(ket_xplus());
    CHECK(fidelity(p0, px) == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(bures_distance(p0, px) == doctest::Approx(M_PI / 4));

    // Symmetry
    for (int trial = 0; trial < 10; ++trial) {
        DensityMatrix a = random_density(rng, 2), b = random_density(rng, 2);
        CHECK(bures_distance(a, b) == doctest::Approx(bures_distance(b, a)).epsilon(1e-10));
        CHECK(bures_distance(a, b) == doctest::Approx(std::acos(fidelity(a, b))));
    }
}

TEST_CASE("statistical distance") {
    CHECK(statistical_distance({0.3, 0.7}, {0.3, 0.7}) == doctest::Approx(0.0));
    CHECK(statistical_distance({1.0, 0.0}, {0.0, 1.0}) == doctest::Approx(M_PI / 2));
    CHECK(statistical_distance({0.5, 0.5}, {1.0, 0.0}) == doctest::Approx(M_PI / 4));
    CHECK_THROWS_AS(statistical_distance({0.5, 0.6}, {1.0, 0.0}), NotNormalized);
    CHECK_THROWS_AS(statistical_distance({0.5, 0.5}, {1.0}), LengthMismatch);
}

TEST_CASE("Choi of the identity map and depolarizing-to-mixed map") {
    Superoperator id = Superoperator::identity(2);
    ChoiMatrix c = choi_of(id);
    EigResult e = hermitian_eig(c.m);
    CHECK(e.eigenvalues(0) == doctest::Approx(2.0));
    CHECK(e.eigenvalues(1) == doctest::Approx(0.0));
    CHECK(e.eigenvalues(3) == doctest::Approx(0.0));

    KrausSet k = kraus_from_choi(c);
    REQUIRE(k.rank() == 1);
    CHECK(operator_norm(k.ops[0] * k.ops[0].adjoint() - identity2()) < 1e-10);

    // rho -> tr(rho) 1/2
    Mat s = 0.5 * vec_col(identity2()) * vec_col(identity2()).adjoint();
    // vec(I)^dag vec(rho) = tr(rho); map sends rho to I/2 * tr(rho).
    Superoperator to_mixed(2, s);
    ChoiMatrix cm = choi_of(to_mixed);
    CHECK(operator_norm(cm.m - 0.5 * Mat::Identity(4, 4)) < 1e-12);
    KrausSet km = kraus_from_choi(cm);
    CHECK(km.rank() == 4);
    CHECK(km.completeness_defect() < 1e-9);
    for (const Mat& op : km.ops) {
        Eigen::JacobiSVD<Mat> svd(op);
        CHECK(svd.singularValues()(1) < 1e-10);  // rank one
    }
}

TEST_CASE("phase damping Choi spectrum and round trip") {
    const double eta = std::exp(-0.3);
    Superoperator pd = phase_damping(eta);
    ChoiMatrix c = choi_of(pd);
    EigResult e = hermitian_eig(c.m);
    CHECK(e.eigenvalues(0) == doctest::Approx(1.0 + eta).epsilon(1e-12));
    CHECK(e.eigenvalues(1) == doctest::Approx(1.0 - eta).epsilon(1e-12));
    CHECK(std::abs(e.eigenvalues(2)) < 1e-12);
    CHECK(std::abs(e.eigenvalues(3)) < 1e-12);

    KrausSet k = kraus_from_choi(c);
    Superoperator rebuilt = superop_from_kraus(k.ops);
    CHECK(operator_norm(rebuilt.m - pd.m) < 1e-9);
}

TEST_CASE("kraus_from_choi rejects non-CP maps and honors fixed_rank") {
    // The transpose map is positive but not completely positive.
    Mat s = Mat::Zero(4, 4);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) s(i + 2 * j, j + 2 * i) = 1.0;
    Superoperator transpose_map(2, std::move(s));
    CHECK_THROWS_AS(kraus_from_choi(choi_of(transpose_map)), NotCompletelyPositive);

    KrausSet padded = kraus_from_choi(choi_of(phase_damping(0.5)), 4);
    CHECK(padded.rank() == 4);
    CHECK(operator_norm(padded.ops[2]) == doctest::Approx(0.0));
    CHECK(operator_norm(padded.ops[3]) == doctest::Approx(0.0));
    CHECK(padded.completeness_defect() < 1e-8);

    CHECK_THROWS_AS(kraus_from_choi(choi_of(Superoperator::identity(2)), 0), RankMismatch);
}

TEST_CASE("CPTP round trip on random channels") {
    Rng rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        Superoperator s = random_channel(rng, 2, 1 + trial % 4);
        KrausSet k = kraus_from_choi(choi_of(s));
        Superoperator rebuilt = superop_from_kraus(k.ops);
        CHECK(operator_norm(rebuilt.m - s.m) < 1e-8);
        CHECK(k.completeness_defect() < 1e-8);
        CHECK(s.is_trace_preserving());
    }
}

TEST_CASE("apply_channel basics") {
    Rng rng(23);
    DensityMatrix rho = random_density(rng, 2);
    DensityMatrix out = apply_channel(Superoperator::identity(2), rho);
    CHECK(operator_norm(out.matrix() - rho.matrix()) < 1e-14);

    DensityMatrix xp = DensityMatrix::pure(ket_xplus());
    DensityMatrix mixed = apply_channel(phase_damping(0.0), xp);
    CHECK(operator_norm(mixed.matrix() - 0.5 * identity2()) < 1e-12);

    CHECK_THROWS_AS(apply_channel(Superoperator::identity(4), rho), DimensionMismatch);
}

TEST_CASE("trace preservation of channel outputs") {
    Rng rng(29);
    for (int trial = 0; trial < 50; ++trial) {
        Superoperator s = random_channel(rng, 2, 1 + trial % 4);
        DensityMatrix rho = random_density(rng, 2);
        DensityMatrix out = apply_channel(s, rho);
        CHECK(std::abs(out.matrix().trace().real() - 1.0) < 1e-9);
    }
}

TEST_CASE("contractivity of the trace distance under CPTP maps") {
    Rng rng(31);
    for (int trial = 0; trial < 100; ++trial) {
        Superoperator s = random_channel(rng, 2, 1 + trial % 4);
        DensityMatrix a = random_density(rng, 2), b = random_density(rng, 2);
        const double before = trace_distance(a, b);
        const double after = trace_distance(apply_channel(s, a), apply_channel(s, b));
        CHECK(after <= before + 1e-9);
    }
}

TEST_CASE("two-probe product unitary on GHZ(2) accumulates the doubled phase") {
    const double omega0 = 1.3, t = 0.7;
    Mat u = (std::cos(0.5 * omega0 * t) * identity2() -
             I_UNIT * std::sin(0.5 * omega0 * t) * pauli_z());
    Superoperator su = Superoperator::conjugation(u);
    DensityMatrix ghz = DensityMatrix::pure(ghz_state(2));
    DensityMatrix out = tensor_apply({su, su}, ghz);
    const cplx offdiag = out.matrix()(0, 3);
    const cplx expected = 0.5 * std::exp(-2.0 * I_UNIT * omega0 * t);
    CHECK(std::abs(offdiag - expected) < 1e-12);
}

TEST_CASE("tensor_apply agrees with the kron superoperator on 2 qubits") {
    Rng rng(37);
    for (int trial = 0; trial < 10; ++trial) {
        Superoperator s1 = random_channel(rng, 2, 2);
        Superoperator s2 = random_channel(rng, 2, 3);
        DensityMatrix rho = random_density(rng, 4);
        DensityMatrix via_qubits = tensor_apply({s1, s2}, rho);

        // Oracle: act with Kraus products on the full 4x4 state.
        KrausSet k1 = kraus_from_choi(choi_of(s1));
        KrausSet k2 = kraus_from_choi(choi_of(s2));
        Mat acc = Mat::Zero(4, 4);
        for (const Mat& a : k1.ops)
            for (const Mat& b : k2.ops) {
                Mat kk = kron(a, b);
                acc += kk * rho.matrix() * kk.adjoint();
            }
        CHECK(operator_norm(via_qubits.matrix() - acc) < 1e-9);
    }
}

TEST_CASE("tensor_apply rejects more than four probes") {
    std::vector<Superoperator> maps(5, Superoperator::identity(2));
    CHECK_THROWS_AS(tensor_apply(maps, DensityMatrix::maximally_mixed(32)), DimensionMismatch);
}
