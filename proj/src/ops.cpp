#include "qmetro/ops.hpp"

namespace qmetro {

Mat pauli_x() {
    Mat m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

Mat pauli_y() {
    Mat m(2, 2);
    m << 0, cplx(0, -1), cplx(0, 1), 0;
    return m;
}

Mat pauli_z() {
    Mat m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

Mat identity2() { return Mat::Identity(2, 2); }

Mat sigma_plus() {
    Mat m = Mat::Zero(2, 2);
    m(0, 1) = 1;
    return m;
}

Mat sigma_minus() {
    Mat m = Mat::Zero(2, 2);
    m(1, 0) = 1;
    return m;
}

Mat kron(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Mat kron_all(std::initializer_list<Mat> ms) {
    Mat out = Mat::Identity(1, 1);
    for (const Mat& m : ms) out = kron(out, m);
    return out;
}

Vec vec_col(const Mat& m) {
    // Eigen matrices are column-major, so the raw layout is already
    // the column-stacked vector.
    return Eigen::Map<const Vec>(m.data(), m.size());
}

Mat unvec_col(const Vec& v, int d) {
    return Eigen::Map<const Mat>(v.data(), d, d);
}

double hermiticity_defect(const Mat& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

Mat hermitize(const Mat& m) { return 0.5 * (m + m.adjoint()); }

double frobenius_norm(const Mat& m) { return m.norm(); }

}  // namespace qmetro
