#pragma once

#include <optional>
#include <vector>

#include "qmetro/channel.hpp"
#include "qmetro/dynamics.hpp"

namespace qmetro {

// R^2 real parameters encoding an R x R Hermitian matrix: first the R
// diagonal entries, then (re, im) pairs for the upper triangle rowwise.
struct HermitianParam {
    int rank = 0;
    Eigen::VectorXd params;

    HermitianParam() = default;
    explicit HermitianParam(int r) : rank(r), params(Eigen::VectorXd::Zero(r * r)) {}

    Mat to_matrix() const;
    static HermitianParam from_matrix(const Mat& h);
};

// Derivative-rotated Kraus derivatives:
//   Kdot~_i = Kdot_i - i sum_j h_ij K_j.
std::vector<Mat> tilde_kraus(const KrausSet& k, const HermitianParam& h);

// alpha = sum_i Kdot~_i^dag Kdot~_i (PSD Hermitian),
// beta  = i sum_i Kdot~_i^dag K_i  (Hermitian for complete sets).
std::pair<Mat, Mat> alpha_beta(const KrausSet& k, const HermitianParam& h);

struct BoundResult {
    int n_probes = 1;
    double t = 0.0;
    double value = 0.0;      // bound on the channel QFI (or its N-probe variant)
    HermitianParam h_opt;
    long objective_evals = 0;
    bool converged = false;
    double beta_norm = 0.0;  // ||beta|| at the optimum
};

struct BoundOptions {
    int restarts = 20;
    double rel_tol = 1e-8;
    int max_evals_per_restart = 10000;
    std::uint64_t seed = 12345;
    std::optional<HermitianParam> warm_start;
};

// N = 1 channel QFI:  4 min_h || alpha(h) ||.
BoundResult cqfi_n1(const KrausSet& k, const BoundOptions& opts = {});

// Finite-N channel-extension upper bound:
//   4 N min_h [ ||alpha(h)|| + (N-1) ||beta(h)||^2 ].
BoundResult cqfi_upper(const KrausSet& k, int n_probes, const BoundOptions& opts = {});

struct QcrbResult {
    double t_opt = 0.0;
    double value = 0.0;  // min_t t / (T * F(t)), i.e. the MSE bound
    bool boundary = false;
    BoundResult bound_at_opt;
};

// Time-optimized QCRB over a window: scans a 60-point geometric grid of
// t / (T F(t)) with F the channel-extension bound, then refines by
// golden section to 1e-4 relative in t. boundary is set when the
// optimum sits on a window edge.
QcrbResult qcrb_over_time(const NoiseModel& model, double omega0, int n_probes, double t_lo,
                          double t_hi, double total_time, const BoundOptions& opts = {},
                          ChannelCache* cache = nullptr);

// Kraus set (rank padded to 4) of a propagated channel.
KrausSet kraus_at(const ChannelWithDerivative& chan);

}  // namespace qmetro
