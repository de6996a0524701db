#pragma once

#include <utility>
#include <vector>

#include "qmetro/ops.hpp"

namespace qmetro {

// Hermitian eigendecomposition with eigenvalues sorted descending.
// Throws NonHermitianInput if the defect exceeds 1e-10.
struct EigResult {
    Eigen::VectorXd eigenvalues;  // descending
    Mat eigenvectors;             // columns match eigenvalues
};
EigResult hermitian_eig(const Mat& m);

// Largest singular value. For Hermitian input this is max |eigenvalue|.
double operator_norm(const Mat& m);

// Unit-trace, Hermitian, positive matrix. Construction validates the
// invariants (Hermitian to 1e-12, trace 1 to 1e-12, min eigenvalue
// >= -1e-10) and throws InvalidState on violation.
class DensityMatrix {
public:
    explicit DensityMatrix(Mat m);

    static DensityMatrix pure(const Vec& psi);
    static DensityMatrix maximally_mixed(int dim);

    const Mat& matrix() const { return m_; }
    int dim() const { return static_cast<int>(m_.rows()); }

    // Bloch components; only valid for dim == 2.
    double bloch_x() const;
    double bloch_y() const;
    double bloch_z() const;

private:
    Mat m_;
};

// Common single-qubit states.
Vec ket0();
Vec ket1();
Vec ket_xplus();

// (|0...0> + |1...1>)/sqrt(2) on n qubits.
Vec ghz_state(int n);

// 1/2 || rho - sigma ||_1, in [0, 1].
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

// Uhlmann fidelity tr sqrt(sqrt(rho) sigma sqrt(rho)), in [0, 1].
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

// arccos of the fidelity.
double bures_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

// arccos(sum_n sqrt(p_n q_n)) for normalized probability vectors.
double statistical_distance(const std::vector<double>& p, const std::vector<double>& q);

}  // namespace qmetro
