#pragma once

#include "qmetro/channel.hpp"
#include "qmetro/rng.hpp"

namespace qmetro::testing {

inline Mat random_complex(Rng& rng, int rows, int cols) {
    Mat m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = cplx(rng.gaussian(), rng.gaussian());
    return m;
}

inline Mat random_hermitian(Rng& rng, int d) { return hermitize(random_complex(rng, d, d)); }

inline Mat random_unitary(Rng& rng, int d) {
    Eigen::HouseholderQR<Mat> qr(random_complex(rng, d, d));
    Mat q = qr.householderQ();
    return q;
}

// Haar-ish pure state.
inline Vec random_state(Rng& rng, int d) {
    Vec v(d);
    for (int i = 0; i < d; ++i) v(i) = cplx(rng.gaussian(), rng.gaussian());
    return v / v.norm();
}

// Full-rank random density matrix (Wishart normalized).
inline DensityMatrix random_density(Rng& rng, int d) {
    Mat g = random_complex(rng, d, d);
    Mat w = g * g.adjoint();
    w /= w.trace().real();
    return DensityMatrix(hermitize(w));
}

// Random CPTP channel via normalized random Kraus operators.
inline Superoperator random_channel(Rng& rng, int d, int rank) {
    std::vector<Mat> ks;
    Mat s = Mat::Zero(d, d);
    for (int r = 0; r < rank; ++r) {
        ks.push_back(random_complex(rng, d, d));
        s += ks.back().adjoint() * ks.back();
    }
    // Normalize so sum K^dag K = 1.
    Eigen::SelfAdjointEigenSolver<Mat> es(s);
    Mat inv_sqrt = es.operatorInverseSqrt();
    for (Mat& k : ks) k = k * inv_sqrt;
    return superop_from_kraus(ks);
}

// Largest |eigenvalue| of a Hermitian matrix by power iteration on the
// shifted matrix; independent of the library eigensolver.
inline double power_iteration_norm(const Mat& h, Rng& rng, int iters = 2000) {
    // Iterate on h^2 (PSD) to avoid sign cancellation.
    Mat h2 = h * h;
    Vec v = random_state(rng, static_cast<int>(h.rows()));
    double lam = 0.0;
    for (int i = 0; i < iters; ++i) {
        Vec w = h2 * v;
        lam = w.norm();
        if (lam == 0.0) return 0.0;
        v = w / lam;
    }
    return std::sqrt(lam);
}

}  // namespace qmetro::testing
