#pragma once

#include <optional>
#include <vector>

#include "qmetro/ops.hpp"
#include "qmetro/states.hpp"

namespace qmetro {

// Linear map on d x d matrices, stored as a d^2 x d^2 matrix acting on
// column-stacked vectorizations: vec(A rho B) = (B^T (x) A) vec(rho).
struct Superoperator {
    int dim = 0;
    Mat m;

    Superoperator() = default;
    Superoperator(int d, Mat mat);

    static Superoperator identity(int d);
    // rho -> A rho B
    static Superoperator sandwich(const Mat& a, const Mat& b);
    // rho -> U rho U^dagger
    static Superoperator conjugation(const Mat& u);

    bool is_trace_preserving(double tol = 1e-9) const;
    // || adjoint applied to identity - identity ||, zero for channels.
    double trace_defect() const;
    // || adjoint applied to identity ||, zero for trace-annihilating maps.
    double trace_annihilation_defect() const;
};

// Choi matrix C = sum_ij E_ij (x) Lambda(E_ij); positivity certifies CP.
struct ChoiMatrix {
    int dim = 0;
    Mat m;
};

// Kraus operators with matched frequency derivatives. The derivative
// list is empty when the set was built without derivative information.
struct KrausSet {
    std::vector<Mat> ops;
    std::vector<Mat> dops;

    int rank() const { return static_cast<int>(ops.size()); }
    int dim() const { return ops.empty() ? 0 : static_cast<int>(ops[0].rows()); }

    // || sum K_i^dagger K_i - 1 ||
    double completeness_defect() const;
};

ChoiMatrix choi_of(const Superoperator& s);
Superoperator superop_from_choi(const ChoiMatrix& c);
Superoperator superop_from_kraus(const std::vector<Mat>& kraus);

// Eigendecomposition of the Choi matrix; eigenvalues below 1e-12 are
// dropped unless fixed_rank requests zero-padding to exactly that many
// operators. Throws NotCompletelyPositive if the Choi matrix has an
// eigenvalue below -1e-10.
KrausSet kraus_from_choi(const ChoiMatrix& c, std::optional<int> fixed_rank = std::nullopt);

// Kraus set of the map plus derivatives consistent with dmap, built by
// first-order perturbation of the Choi eigendecomposition. The returned
// derivatives satisfy  dChoi = sum_i [vec(dK_i) vec(K_i)^dag + h.c.]
// up to the (second-order) kernel-block residual of dChoi.
KrausSet kraus_with_derivative(const Superoperator& map, const Superoperator& dmap,
                               int fixed_rank = 4);

DensityMatrix apply_channel(const Superoperator& map, const DensityMatrix& rho);

// Raw application without density-matrix validation (for derivative maps).
Mat apply_superop(const Superoperator& map, const Mat& rho);

// Apply per-qubit maps to an n-qubit state, maps[q] acting on qubit q.
// Oracle helper, restricted to n <= 4.
DensityMatrix tensor_apply(const std::vector<Superoperator>& maps, const DensityMatrix& rho);

// Apply a single-qubit superoperator to qubit q of an n-qubit matrix.
Mat apply_superop_to_qubit(const Superoperator& map, const Mat& rho, int qubit, int n_qubits);

}  // namespace qmetro
