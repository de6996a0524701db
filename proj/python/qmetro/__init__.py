"""Precision limits for noisy single-qubit frequency estimation.

The heavy lifting lives in the compiled extension ``qmetro._core``; this
package re-exports its public surface.
"""

from ._core import (  # noqa: F401
    BoundResult,
    FitResult,
    McResult,
    NoiseModel,
    QcrbResult,
    SweepRow,
    TimeOptimum,
    __version__,
    bures_distance,
    classical_fi,
    cqfi_n1,
    cqfi_upper,
    crb,
    decoherence_integral,
    dephasing_crb,
    dephasing_optimum,
    dephasing_probs,
    evolve_state,
    fidelity,
    fit_exponent,
    fit_topt_exponent,
    geometric_n_grid,
    make_dephasing_channel_superop,
    mle_monte_carlo,
    nep,
    parity_expectation_ghz,
    parity_precision,
    pc_ghz_survival,
    pc_zeno_optimum,
    propagate_channel,
    qcrb_over_time,
    qfi,
    qfi_pure,
    ramsey_survival,
    rate_ohmic,
    sld,
    statistical_distance,
    sweep,
    toy_model_sample,
    trace_distance,
)
