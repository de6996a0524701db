#pragma once

#include <complex>
#include <initializer_list>

#include <Eigen/Dense>

namespace qmetro {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline constexpr cplx I_UNIT{0.0, 1.0};

// Pauli matrices and the 2x2 identity.
Mat pauli_x();
Mat pauli_y();
Mat pauli_z();
Mat identity2();

// sigma_+ = |0><1|, sigma_- = |1><0| in the sigma_z eigenbasis
// with |0> the +1 eigenvector.
Mat sigma_plus();
Mat sigma_minus();

// Kronecker product.
Mat kron(const Mat& a, const Mat& b);
Mat kron_all(std::initializer_list<Mat> ms);

// Column-stacking vectorization and its inverse (d x d <-> d^2).
Vec vec_col(const Mat& m);
Mat unvec_col(const Vec& v, int d);

// Largest absolute entry of m - m^dagger; zero for Hermitian input.
double hermiticity_defect(const Mat& m);

// (m + m^dagger)/2
Mat hermitize(const Mat& m);

double frobenius_norm(const Mat& m);

}  // namespace qmetro
