#include "qmetro/states.hpp"

#include <algorithm>
#include <cmath>

#include "qmetro/errors.hpp"

namespace qmetro {

EigResult hermitian_eig(const Mat& m) {
    if (m.rows() != m.cols()) throw DimensionMismatch("hermitian_eig: matrix not square");
    if (hermiticity_defect(m) > 1e-10)
        throw NonHermitianInput("hermitian_eig: input is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Mat> solver(hermitize(m));
    const Eigen::Index n = m.rows();
    EigResult out;
    out.eigenvalues.resize(n);
    out.eigenvectors.resize(n, n);
    // Eigen sorts ascending; flip to descending.
    for (Eigen::Index i = 0; i < n; ++i) {
        out.eigenvalues(i) = solver.eigenvalues()(n - 1 - i);
        out.eigenvectors.col(i) = solver.eigenvectors().col(n - 1 - i);
    }
    return out;
}

double operator_norm(const Mat& m) {
    if (m.rows() == 0) return 0.0;
    Eigen::JacobiSVD<Mat> svd(m);
    return svd.singularValues()(0);
}

DensityMatrix::DensityMatrix(Mat m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols()) throw InvalidState("density matrix must be square");
    if (hermiticity_defect(m_) > 1e-12)
        throw InvalidState("density matrix must be Hermitian");
    if (std::abs(m_.trace().real() - 1.0) > 1e-12 || std::abs(m_.trace().imag()) > 1e-12)
        throw InvalidState("density matrix must have unit trace");
    Eigen::SelfAdjointEigenSolver<Mat> solver(hermitize(m_), Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < -1e-10)
        throw InvalidState("density matrix must be positive semidefinite");
}

DensityMatrix DensityMatrix::pure(const Vec& psi) {
    const double n = psi.norm();
    Vec v = psi / n;
    return DensityMatrix(v * v.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
    return DensityMatrix(Mat::Identity(dim, dim) / static_cast<double>(dim));
}

double DensityMatrix::bloch_x() const { return (m_ * pauli_x()).trace().real(); }
double DensityMatrix::bloch_y() const { return (m_ * pauli_y()).trace().real(); }
double DensityMatrix::bloch_z() const { return (m_ * pauli_z()).trace().real(); }

Vec ket0() {
    Vec v(2);
    v << 1, 0;
    return v;
}

Vec ket1() {
    Vec v(2);
    v << 0, 1;
    return v;
}

Vec ket_xplus() {
    Vec v(2);
    v << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    return v;
}

Vec ghz_state(int n) {
    const Eigen::Index dim = Eigen::Index(1) << n;
    Vec v = Vec::Zero(dim);
    v(0) = 1.0 / std::sqrt(2.0);
    v(dim - 1) = 1.0 / std::sqrt(2.0);
    return v;
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.dim() != sigma.dim())
        throw DimensionMismatch("trace_distance: dimension mismatch");
    EigResult e = hermitian_eig(rho.matrix() - sigma.matrix());
    return 0.5 * e.eigenvalues.cwiseAbs().sum();
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.dim() != sigma.dim()) throw DimensionMismatch("fidelity: dimension mismatch");
    if (rho.dim() == 2) {
        // Closed form for qubits, F = sqrt(tr(rho sigma) + 2 sqrt(det rho det sigma));
        // stable where the eigenvalue route loses digits near F = 1.
        const double overlap = (rho.matrix() * sigma.matrix()).trace().real();
        const double dets = std::max(rho.matrix().determinant().real(), 0.0) *
                            std::max(sigma.matrix().determinant().real(), 0.0);
        return std::clamp(std::sqrt(std::max(overlap, 0.0) + 2.0 * std::sqrt(dets)), 0.0, 1.0);
    }
    EigResult er = hermitian_eig(rho.matrix());
    Mat sqrt_rho = Mat::Zero(rho.dim(), rho.dim());
    for (int i = 0; i < rho.dim(); ++i) {
        const double lam = std::max(er.eigenvalues(i), 0.0);
        sqrt_rho += std::sqrt(lam) * er.eigenvectors.col(i) * er.eigenvectors.col(i).adjoint();
    }
    EigResult em = hermitian_eig(hermitize(sqrt_rho * sigma.matrix() * sqrt_rho));
    double f = 0.0;
    // Eigenvalues at round-off scale would inject sqrt(eps)-sized noise.
    const double cutoff = 1e-14 * std::max(em.eigenvalues(0), 0.0);
    for (int i = 0; i < rho.dim(); ++i)
        if (em.eigenvalues(i) > cutoff) f += std::sqrt(em.eigenvalues(i));
    return std::clamp(f, 0.0, 1.0);
}

double bures_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
    return std::acos(fidelity(rho, sigma));
}

double statistical_distance(const std::vector<double>& p, const std::vector<double>& q) {
    if (p.size() != q.size()) throw LengthMismatch("statistical_distance: length mismatch");
    double sp = 0.0, sq = 0.0, overlap = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] < 0.0 || q[i] < 0.0)
            throw NotNormalized("statistical_distance: negative probability");
        sp += p[i];
        sq += q[i];
        overlap += std::sqrt(p[i] * q[i]);
    }
    if (std::abs(sp - 1.0) > 1e-9 || std::abs(sq - 1.0) > 1e-9)
        throw NotNormalized("statistical_distance: probabilities must sum to 1");
    return std::acos(std::clamp(overlap, 0.0, 1.0));
}

}  // namespace qmetro
