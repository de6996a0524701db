#pragma once

#include <vector>

#include "qmetro/channel.hpp"

namespace qmetro {

enum class RateKind { TclOhmic, Semigroup, Custom };

// Microscopic / phenomenological noise specification for a single qubit
// coupled at angle theta to an Ohmic bath (theta = pi/2 is pure dephasing,
// theta = 0 purely transversal). The time-local master equation is
//
//   d rho/dt = -i [omega0 sigma_z / 2, rho] + (gamma(t)/2) D[rho]
//
// where gamma(t) = (lambda/beta) arctan(omega_c t) for TclOhmic,
// the constant lambda pi / (2 beta) for Semigroup, or an interpolated
// user table for Custom. With this normalization the qubit coherence at
// theta = pi/2 decays as exp(-int_0^t gamma), so a constant table value
// gamma reproduces the phenomenological dephasing survival probability
// (1 + e^{-gamma t} cos omega0 t)/2 directly.
//
// The dissipator D is either the non-secular form
//   sigma_bar rho sigma_bar - rho,  sigma_bar = cos(theta) sigma_x + sin(theta) sigma_z
// or, with secular = true, the phase-covariant form
//   sum_{j=+,-,z} d_j (sigma_j rho sigma_j^dag - {sigma_j^dag sigma_j, rho}/2)
// with d_+ = d_- = cos^2(theta), d_z = sin^2(theta).
struct NoiseModel {
    double theta = M_PI / 2;   // coupling angle in [0, pi/2]
    double lambda = 0.1;       // overall coupling strength
    double beta = 1.0;         // inverse bath temperature
    double omega_c = 100.0;    // Ohmic cutoff frequency
    RateKind rate_kind = RateKind::TclOhmic;
    bool secular = false;
    std::vector<double> rate_grid;    // custom kind only; strictly increasing
    std::vector<double> rate_values;  // nonnegative, matched to rate_grid

    void validate() const;  // throws InvalidModel

    static NoiseModel custom_constant(double gamma, double theta = M_PI / 2);
};

// gamma(t) for the model; (lambda/beta) arctan(omega_c t) in the Ohmic
// case, with the semigroup constant lambda pi/(2 beta) as its t -> inf
// limit. Throws NegativeTime / RateTableOutOfRange.
double rate_ohmic(double t, const NoiseModel& model);

// Generator G(t) of the master equation as a superoperator (annihilates
// trace; not itself a channel).
Superoperator generator(const NoiseModel& model, double omega0, double t);

// d G / d omega0 = -(i/2) [sigma_z, .], independent of the model.
Superoperator generator_omega_derivative();

// Dynamical map at (omega0, t) together with its frequency derivative.
struct ChannelWithDerivative {
    Superoperator map;   // CPTP
    Superoperator dmap;  // trace-annihilating
    double omega0 = 0.0;
    double t = 0.0;

    double choi_min_eigenvalue() const;
};

// Number of RK4 steps used by default for an interval of length dt.
int default_steps(const NoiseModel& model, double dt);

// Integrate dLambda/ds = G(s) Lambda jointly with the derivative pair
// d(dLambda)/ds = G(s) dLambda + dG Lambda from identity at s = 0.
// steps <= 0 selects default_steps. Throws NegativeTime,
// IntegrationDiverged, NotCPTP (Choi eigenvalue < -1e-6).
ChannelWithDerivative propagate_channel(const NoiseModel& model, double omega0, double t,
                                        int steps = 0);

// Continue an existing channel from channel.t to t (segment composition).
ChannelWithDerivative propagate_channel_from(const ChannelWithDerivative& start,
                                             const NoiseModel& model, double t, int steps = 0);

// States along a time grid that starts at 0; output[0] = rho0.
std::vector<DensityMatrix> evolve_state(const NoiseModel& model, double omega0,
                                        const DensityMatrix& rho0,
                                        const std::vector<double>& t_grid);

// Grid-backed channel provider: propagates incrementally and caches, so
// sweeping many times over one model costs one pass over [0, t_max].
class ChannelCache {
public:
    ChannelCache(NoiseModel model, double omega0);
    const ChannelWithDerivative& at(double t);

private:
    NoiseModel model_;
    double omega0_;
    std::vector<ChannelWithDerivative> cache_;  // sorted by t
};

}  // namespace qmetro
