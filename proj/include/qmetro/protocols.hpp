#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "qmetro/dynamics.hpp"
#include "qmetro/fisher.hpp"

namespace qmetro {

enum class InputKind { SeparableXPlus, Ghz };
enum class MeasurementKind { Survival, Parity, CustomPovm };

struct ProtocolSpec {
    int n_probes = 1;
    double total_time = 1.0;
    InputKind input_kind = InputKind::SeparableXPlus;
    MeasurementKind measurement = MeasurementKind::Survival;
};

struct McConfig {
    std::uint64_t seed = 1;
    long repetitions = 1000;  // nu, Bernoulli draws per replication
    int replications = 200;
};

// cos^2(omega0 t / 2).
double ramsey_survival(double omega0, double t);

// Survival probability under constant-rate dephasing with coherence
// decay e^{-gamma t}: (1 + e^{-gamma t} cos omega0 t)/2, or the
// entangled variant with N-fold frequency and decay.
double dephasing_probs(double omega0, double t, double gamma, int n, bool entangled);

// CRB on the MSE for the dephasing Ramsey/GHZ protocols at total time T.
double dephasing_crb(double omega0, double t, double gamma, int n, double total_time,
                     bool entangled);

// Time optimum of the dephasing CRB: t_opt = 1/(2 gamma) (separable) or
// 1/(2 N gamma) (entangled); the bound 2 gamma e / (N T) is identical
// for both strategies.
struct TimeOptimum {
    double t_opt = 0.0;
    double bound = 0.0;
};
TimeOptimum dephasing_optimum(double gamma, int n, double total_time, bool entangled);

// GHZ survival probability for the Ohmic pure-dephasing model:
//   (1 + exp[-(N lambda/beta)(t arctan(omega_c t) - ln(1+t^2 omega_c^2)/(2 omega_c))]
//        cos(N t omega0)) / 2.
// Requires theta = pi/2 and the tcl-ohmic rate kind.
double pc_ghz_survival(int n, double t, const NoiseModel& model, double omega0);

// Decoherence exponent int_0^t gamma(s) ds for the model.
double decoherence_integral(double t, const NoiseModel& model);

// Joint (t, CRB) optimum of the PC survival protocol. For tcl-ohmic the
// transcendental condition beta = 2 N lambda t arctan(omega_c t) is
// solved by bisection; the semigroup replacement has the closed form
// t_opt = beta/(pi lambda N), bound = pi e lambda/(beta N T).
TimeOptimum pc_zeno_optimum(int n, const NoiseModel& model, double total_time);

// GHZ parity expectation and its frequency derivative under N copies of
// a single-qubit channel, via the transfer amplitudes
// m_ab = tr[sigma_x Lambda(|a><b|)]:  <P_x> = (1/2) sum_ab m_ab^N.
struct ParityExpectation {
    double mean = 0.0;
    double dmean = 0.0;
};
ParityExpectation parity_expectation_ghz(const ChannelWithDerivative& channel, int n);

// Error-propagation MSE bound t (1 - mean^2) / (T dmean^2).
double parity_precision(const ChannelWithDerivative& channel, int n, double total_time);

// Parity precision with the measurement phase optimized (parity taken in
// a rotated equatorial basis at the steepest-slope point); smooth in t
// and used by the sweep engine where the commensurability condition is
// treated as satisfiable.
double parity_precision_opt(const ChannelWithDerivative& channel, int n, double total_time);

// Toy single-run model: evolve |x+> under
//   H = omega0 sigma_z/2 + eta (sigma_x cos theta + sigma_z sin theta)
// with eta ~ Normal(0, sigma_eta^2) per sample, rotate by pi/2 about x,
// return <sigma_z>. Deterministic for a fixed seed.
std::vector<double> toy_model_sample(double theta, double sigma_eta, double omega0, double t,
                                     int samples, std::uint64_t seed);

// Noise-equivalent-power style sensitivity: conversion * noise_std / |slope|.
double nep(double signal_slope, double noise_std, double conversion);

// Maximum-likelihood Monte Carlo on a two-outcome model p(omega).
// Each replication draws `repetitions` Bernoulli outcomes at p(omega0)
// and maximizes the log-likelihood on [omega0 - bracket, omega0 + bracket].
struct McResult {
    double mse = 0.0;
    double bias = 0.0;
};
McResult mle_monte_carlo(const std::function<double(double)>& p_of_omega, double omega0,
                         double bracket_halfwidth, const McConfig& cfg);

// Analytic dephasing channel with coherence factor e^{-gamma t} and
// phase e^{-i omega0 t}, plus its exact frequency derivative.
ChannelWithDerivative make_dephasing_channel(double gamma, double omega0, double t);

}  // namespace qmetro
