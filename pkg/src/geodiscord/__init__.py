"""Geometric measures of bipartite quantum correlations.

Computes, compares, and cross-validates the geometric discord, the
measurement-induced geometric discord, and the discord of response under the
trace, Hilbert-Schmidt, Bures, and Hellinger distances, with closed forms for
a qubit on side A, an executable inequality ledger, maximally-discordant
state families at fixed purity, and a reshuffling-based screen for
quantumness-breaking channels.
"""

__version__ = "0.1.0"

from .linalg import (
    ConvergenceFailure,
    DimensionMismatch,
    NotHermitian,
    NotPSD,
)
from .states import (
    DensityMatrix,
    FanoSqrtDecomposition,
    HarmonicSpectrum,
    SchmidtDecomposition,
    bell_state,
    classical_quantum_state,
    fano_sqrt_decomposition,
    from_pure,
    harmonic_spectrum,
    max_hellinger_discord_state,
    max_trace_discord_state,
    max_trace_response_curve,
    random_fixed_purity_state,
    random_haar_state,
    random_haar_unitary,
    random_pure_vector,
    schmidt,
    state_from_json,
    state_to_json,
    werner_state,
)
from .measures import (
    BasisCandidate,
    Distance,
    DiscriminationEnsemble,
    MeasureResult,
    OptimizerConfig,
    OptimizerNotConverged,
    UnsupportedDimension,
    all_measures,
    bures_geo_discord_bounds,
    closest_cq_state,
    disc_response,
    distance,
    ensemble_from_basis,
    fidelity,
    geo_discord,
    hellinger_geo_discord_closed,
    hellinger_response_closed,
    meas_induced_discord,
    modified_meas_discord_hellinger,
    optimize_over_basis,
    post_measurement_state,
    pure_state_measure_table,
    skew_information,
)
from .bounds import BoundReport, DomainError, audit, g, g_inv, h, pure_state_saturation_check
from .channels import (
    ChannelVerdict,
    QuantumChannel,
    channel_from_json,
    channel_to_json,
    depolarizing_channel,
    hs_discord_lower_bound,
    hs_discord_mm_marginals,
    identity_channel,
    jamiolkowski_state,
    measure_z_channel,
    quantumness_breaking_verdict,
    random_channel,
    superoperator,
    unitary_channel,
)
