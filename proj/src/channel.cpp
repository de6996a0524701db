#include "qmetro/channel.hpp"

#include <cmath>

#include "qmetro/errors.hpp"

namespace qmetro {

Superoperator::Superoperator(int d, Mat mat) : dim(d), m(std::move(mat)) {
    if (m.rows() != Eigen::Index(d) * d || m.cols() != Eigen::Index(d) * d)
        throw DimensionMismatch("superoperator matrix must be d^2 x d^2");
}

Superoperator Superoperator::identity(int d) {
    return Superoperator(d, Mat::Identity(Eigen::Index(d) * d, Eigen::Index(d) * d));
}

Superoperator Superoperator::sandwich(const Mat& a, const Mat& b) {
    return Superoperator(static_cast<int>(a.rows()), kron(b.transpose(), a));
}

Superoperator Superoperator::conjugation(const Mat& u) {
    return sandwich(u, u.adjoint());
}

bool Superoperator::is_trace_preserving(double tol) const { return trace_defect() < tol; }

double Superoperator::trace_defect() const {
    Vec id = vec_col(Mat::Identity(dim, dim));
    return (m.adjoint() * id - id).norm();
}

double Superoperator::trace_annihilation_defect() const {
    return (m.adjoint() * vec_col(Mat::Identity(dim, dim))).norm();
}

double KrausSet::completeness_defect() const {
    if (ops.empty()) return 0.0;
    Mat s = Mat::Zero(dim(), dim());
    for (const Mat& k : ops) s += k.adjoint() * k;
    return operator_norm(s - Mat::Identity(dim(), dim()));
}

ChoiMatrix choi_of(const Superoperator& s) {
    const int d = s.dim;
    Mat c(Eigen::Index(d) * d, Eigen::Index(d) * d);
    // C_{(i d + k),(j d + l)} = S_{(k + d l),(i + d j)}
    for (int i = 0; i < d; ++i)
        for (int k = 0; k < d; ++k)
            for (int j = 0; j < d; ++j)
                for (int l = 0; l < d; ++l)
                    c(i * d + k, j * d + l) = s.m(k + d * l, i + d * j);
    return ChoiMatrix{d, std::move(c)};
}

Superoperator superop_from_choi(const ChoiMatrix& c) {
    const int d = c.dim;
    Mat s(Eigen::Index(d) * d, Eigen::Index(d) * d);
    for (int i = 0; i < d; ++i)
        for (int k = 0; k < d; ++k)
            for (int j = 0; j < d; ++j)
                for (int l = 0; l < d; ++l)
                    s(k + d * l, i + d * j) = c.m(i * d + k, j * d + l);
    return Superoperator(d, std::move(s));
}

Superoperator superop_from_kraus(const std::vector<Mat>& kraus) {
    const int d = static_cast<int>(kraus.at(0).rows());
    Mat s = Mat::Zero(Eigen::Index(d) * d, Eigen::Index(d) * d);
    for (const Mat& k : kraus) s += kron(k.conjugate(), k);
    return Superoperator(d, std::move(s));
}

KrausSet kraus_from_choi(const ChoiMatrix& c, std::optional<int> fixed_rank) {
    const int d = c.dim;
    EigResult e = hermitian_eig(c.m);
    if (e.eigenvalues.minCoeff() < -1e-10)
        throw NotCompletelyPositive("kraus_from_choi: Choi matrix has a negative eigenvalue");

    KrausSet out;
    for (int i = 0; i < d * d; ++i) {
        if (e.eigenvalues(i) <= 1e-12) break;  // eigenvalues are descending
        out.ops.push_back(std::sqrt(e.eigenvalues(i)) * unvec_col(e.eigenvectors.col(i), d));
    }
    if (fixed_rank) {
        if (*fixed_rank < out.rank())
            throw RankMismatch("kraus_from_choi: fixed_rank below actual rank");
        while (out.rank() < *fixed_rank) out.ops.push_back(Mat::Zero(d, d));
    }
    return out;
}

KrausSet kraus_with_derivative(const Superoperator& map, const Superoperator& dmap,
                               int fixed_rank) {
    const int d = map.dim;
    const int d2 = d * d;
    ChoiMatrix c = choi_of(map);
    ChoiMatrix dc = choi_of(dmap);  // the reshuffle is linear

    EigResult e = hermitian_eig(c.m);
    if (e.eigenvalues.minCoeff() < -1e-10)
        throw NotCompletelyPositive("kraus_with_derivative: map is not CP");

    int rank = 0;
    while (rank < d2 && e.eigenvalues(rank) > 1e-12) ++rank;
    if (fixed_rank < rank)
        throw RankMismatch("kraus_with_derivative: fixed_rank below actual rank");

    // dChoi in the Choi eigenbasis.
    Mat dct = e.eigenvectors.adjoint() * dc.m * e.eigenvectors;

    // Solve dChoi = sum_i (dv_i v_i^dag + v_i dv_i^dag) with v_i the
    // scaled eigenvectors. Coefficients c(a,b) of dv_b in eigenbasis:
    //   a,b on support:  c(a,b) = dct(a,b) sqrt(l_b) / (l_a + l_b)
    //   a on kernel:     c(a,b) = dct(a,b) / sqrt(l_b)
    // The kernel-kernel block of dct vanishes to first order for a
    // positive-semidefinite family and is discarded.
    Mat coeff = Mat::Zero(d2, rank);
    for (int b = 0; b < rank; ++b) {
        const double lb = e.eigenvalues(b);
        for (int a = 0; a < d2; ++a) {
            if (a < rank) {
                coeff(a, b) = dct(a, b) * std::sqrt(lb) / (e.eigenvalues(a) + lb);
            } else {
                coeff(a, b) = dct(a, b) / std::sqrt(lb);
            }
        }
    }

    KrausSet out;
    for (int i = 0; i < rank; ++i) {
        out.ops.push_back(std::sqrt(e.eigenvalues(i)) * unvec_col(e.eigenvectors.col(i), d));
        out.dops.push_back(unvec_col(Vec(e.eigenvectors * coeff.col(i)), d));
    }
    while (out.rank() < fixed_rank) {
        out.ops.push_back(Mat::Zero(d, d));
        out.dops.push_back(Mat::Zero(d, d));
    }
    return out;
}

Mat apply_superop(const Superoperator& map, const Mat& rho) {
    return unvec_col(Vec(map.m * vec_col(rho)), map.dim);
}

DensityMatrix apply_channel(const Superoperator& map, const DensityMatrix& rho) {
    if (map.dim != rho.dim()) throw DimensionMismatch("apply_channel: dimension mismatch");
    // The exact map preserves Hermiticity; symmetrizing removes float noise.
    return DensityMatrix(hermitize(apply_superop(map, rho.matrix())));
}

Mat apply_superop_to_qubit(const Superoperator& map, const Mat& rho, int qubit, int n_qubits) {
    if (map.dim != 2) throw DimensionMismatch("apply_superop_to_qubit: map must be single-qubit");
    const Eigen::Index dim = Eigen::Index(1) << n_qubits;
    // Stride of the target qubit index (qubit 0 is the leftmost tensor factor).
    const Eigen::Index stride = Eigen::Index(1) << (n_qubits - 1 - qubit);
    Mat out = rho;
    for (Eigen::Index r = 0; r < dim; ++r) {
        if (r & stride) continue;
        for (Eigen::Index col = 0; col < dim; ++col) {
            if (col & stride) continue;
            Vec block(4);
            // Column-stacked 2x2 block on the target qubit's index pair.
            block << rho(r, col), rho(r | stride, col), rho(r, col | stride),
                rho(r | stride, col | stride);
            Vec mapped = map.m * block;
            out(r, col) = mapped(0);
            out(r | stride, col) = mapped(1);
            out(r, col | stride) = mapped(2);
            out(r | stride, col | stride) = mapped(3);
        }
    }
    return out;
}

DensityMatrix tensor_apply(const std::vector<Superoperator>& maps, const DensityMatrix& rho) {
    const int n = static_cast<int>(maps.size());
    if (n > 4) throw DimensionMismatch("tensor_apply: restricted to n <= 4 probes");
    if (rho.dim() != (1 << n)) throw DimensionMismatch("tensor_apply: state dimension mismatch");
    Mat m = rho.matrix();
    for (int q = 0; q < n; ++q) m = apply_superop_to_qubit(maps[q], m, q, n);
    return DensityMatrix(hermitize(m));
}

}  // namespace qmetro
