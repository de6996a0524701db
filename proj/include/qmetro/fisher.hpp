#pragma once

#include <string>
#include <vector>

#include "qmetro/states.hpp"

namespace qmetro {

// Outcome distribution of a parameterized measurement together with its
// frequency derivative.
struct ParamProbability {
    std::vector<std::string> outcomes;
    std::vector<double> probs;   // nonnegative, sums to 1 (1e-9)
    std::vector<double> dprobs;  // sums to 0 (1e-9)

    void validate() const;

    static ParamProbability two_outcome(double p, double dp);
};

// sum over outcomes with p > 1e-15 of (dp)^2 / p.
// Throws SingularOutcome when p = 0 carries dp != 0.
double classical_fi(const ParamProbability& p);

// Cramer-Rao bound 1/(nu * fi); throws ZeroInformation.
double crb(double fi, double nu);

// Additivity helper for independent events.
inline double combine(double fi1, double fi2) { return fi1 + fi2; }

// Symmetric logarithmic derivative: Hermitian L with
// drho = (L rho + rho L)/2, built in the eigenbasis of rho with
// support cutoff 1e-12 on the eigenvalue-pair sums.
Mat sld(const DensityMatrix& rho, const Mat& drho);

struct QfiResult {
    double value = 0.0;
    Mat sld;
};

// Quantum Fisher information tr(rho L^2) with the SLD that produced it.
QfiResult qfi(const DensityMatrix& rho, const Mat& drho);

// Pure-state QFI 4(<dpsi|dpsi> - |<psi|dpsi>|^2).
double qfi_pure(const Vec& psi, const Vec& dpsi);

// Error propagation for an observable: (<O^2> - <O>^2) / (d<O>/domega)^2.
double error_prop_observable(double mean_o, double mean_o2, double dmean_o);

// Second-order QFI estimate 4 (d_B(rho(-eps), rho(+eps)) / 2 eps)^2.
// Throws StepTooLarge if the one-sided estimates disagree by more than 1%.
double qfi_bures_oracle(const DensityMatrix& rho_minus, const DensityMatrix& rho_0,
                        const DensityMatrix& rho_plus, double eps);

}  // namespace qmetro
