#include "qmetro/fisher.hpp"

#include <cmath>

#include "qmetro/errors.hpp"

namespace qmetro {

void ParamProbability::validate() const {
    if (probs.size() != dprobs.size() || (!outcomes.empty() && outcomes.size() != probs.size()))
        throw LengthMismatch("ParamProbability: field lengths disagree");
    double s = 0.0, ds = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        if (probs[i] < -1e-15) throw NotNormalized("ParamProbability: negative probability");
        s += probs[i];
        ds += dprobs[i];
    }
    if (std::abs(s - 1.0) > 1e-9) throw NotNormalized("ParamProbability: sum != 1");
    if (std::abs(ds) > 1e-9) throw NotNormalized("ParamProbability: derivative sum != 0");
}

ParamProbability ParamProbability::two_outcome(double p, double dp) {
    ParamProbability out;
    out.outcomes = {"0", "1"};
    out.probs = {p, 1.0 - p};
    out.dprobs = {dp, -dp};
    return out;
}

double classical_fi(const ParamProbability& p) {
    p.validate();
    double fi = 0.0;
    for (std::size_t i = 0; i < p.probs.size(); ++i) {
        if (p.probs[i] > 1e-15) {
            fi += p.dprobs[i] * p.dprobs[i] / p.probs[i];
        } else if (std::abs(p.dprobs[i]) > 1e-12) {
            throw SingularOutcome("classical_fi: zero-probability outcome with nonzero slope");
        }
    }
    return fi;
}

double crb(double fi, double nu) {
    if (fi <= 0.0) throw ZeroInformation("crb: Fisher information must be positive");
    return 1.0 / (nu * fi);
}

Mat sld(const DensityMatrix& rho, const Mat& drho) {
    if (drho.rows() != rho.dim() || drho.cols() != rho.dim())
        throw DimensionMismatch("sld: derivative dimension mismatch");
    if (hermiticity_defect(drho) > 1e-9 || std::abs(drho.trace()) > 1e-9)
        throw NonHermitianDerivative("sld: drho must be Hermitian and traceless");

    EigResult e = hermitian_eig(rho.matrix());
    Mat d_in_basis = e.eigenvectors.adjoint() * drho * e.eigenvectors;
    const int n = rho.dim();
    Mat l = Mat::Zero(n, n);
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
            const double denom = std::max(e.eigenvalues(j), 0.0) + std::max(e.eigenvalues(k), 0.0);
            if (denom > 1e-12) l(j, k) = 2.0 / denom * d_in_basis(j, k);
        }
    }
    return e.eigenvectors * l * e.eigenvectors.adjoint();
}

QfiResult qfi(const DensityMatrix& rho, const Mat& drho) {
    QfiResult out;
    out.sld = sld(rho, drho);
    out.value = (rho.matrix() * out.sld * out.sld).trace().real();
    return out;
}

double qfi_pure(const Vec& psi, const Vec& dpsi) {
    if (std::abs(psi.norm() - 1.0) > 1e-9) throw NotNormalized("qfi_pure: psi must be unit norm");
    const double dd = dpsi.squaredNorm();
    const cplx overlap = psi.adjoint() * dpsi;
    return 4.0 * (dd - std::norm(overlap));
}

double error_prop_observable(double mean_o, double mean_o2, double dmean_o) {
    if (dmean_o == 0.0) throw ZeroSlope("error_prop_observable: observable has zero slope");
    return (mean_o2 - mean_o * mean_o) / (dmean_o * dmean_o);
}

double qfi_bures_oracle(const DensityMatrix& rho_minus, const DensityMatrix& rho_0,
                        const DensityMatrix& rho_plus, double eps) {
    const double central = bures_distance(rho_minus, rho_plus) / (2.0 * eps);
    const double left = bures_distance(rho_minus, rho_0) / eps;
    const double right = bures_distance(rho_0, rho_plus) / eps;
    const double scale = std::max({left, right, 1e-300});
    if (std::abs(left - right) > 0.01 * scale)
        throw StepTooLarge("qfi_bures_oracle: one-sided estimates disagree by more than 1%");
    return 4.0 * central * central;
}

}  // namespace qmetro
