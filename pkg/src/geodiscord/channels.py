"""Quantum channels as Kraus sets and the reshuffling route to discord.

Covers the superoperator and Jamiolkowski representations, the lower bound
on the Hilbert-Schmidt geometric discord from the reshuffled state, the
covariance-matrix closed form for qubit-qudit states, and the screen for
quantumness-breaking channels.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from . import linalg
from .linalg import DimensionMismatch
from .measures import (
    DEFAULT_CONFIG,
    Distance,
    MeasureConsistencyError,
    OptimizerConfig,
    OptimizerNotConverged,
    geo_discord,
    hellinger_geo_discord_closed,
)
from .states import DensityMatrix, WrongDimension

TP_TOL = 1e-9
MM_TOL = 1e-9
RANK_RELATIVE_THRESHOLD = 1e-10
CQ_DISCORD_TOL = 1e-6

QUANTUMNESS_BREAKING = "QuantumnessBreaking"
NOT_QUANTUMNESS_BREAKING = "NotQuantumnessBreaking"
INCONCLUSIVE = "Inconclusive"


class NotTracePreserving(ValueError):
    """Kraus operators do not satisfy the completeness relation."""


class MarginalsNotMaximallyMixed(ValueError):
    """State marginals are not proportional to the identity."""


@dataclass(frozen=True)
class QuantumChannel:
    n_in: int
    n_out: int
    kraus: tuple

    def __post_init__(self):
        ops = tuple(linalg.as_complex_matrix(k) for k in self.kraus)
        if not ops:
            raise ValueError("a channel needs at least one Kraus operator")
        for k in ops:
            if k.shape != (self.n_out, self.n_in):
                raise DimensionMismatch(
                    f"Kraus operator shape {k.shape} != ({self.n_out}, {self.n_in})"
                )
        total = sum(k.conj().T @ k for k in ops)
        if float(np.max(np.abs(total - np.eye(self.n_in)))) > TP_TOL:
            raise NotTracePreserving("sum K^dag K differs from the identity")
        object.__setattr__(self, "kraus", ops)

    def apply(self, mat: np.ndarray) -> np.ndarray:
        mat = linalg.as_complex_matrix(mat)
        if mat.shape != (self.n_in, self.n_in):
            raise DimensionMismatch("input matrix does not match channel input")
        out = np.zeros((self.n_out, self.n_out), dtype=complex)
        for k in self.kraus:
            out += k @ mat @ k.conj().T
        return out


@dataclass(frozen=True)
class CovarianceMatrixM:
    """Real coefficient matrix of a qubit-qudit state in an orthonormal
    (identity + traceless Hermitian) product basis."""

    matrix: np.ndarray

    @property
    def m_tilde(self) -> np.ndarray:
        return self.matrix[1:, :]

    def singular_values(self) -> np.ndarray:
        return linalg.svd_values(self.matrix)


def superoperator(phi: QuantumChannel) -> np.ndarray:
    """Matrix acting on row-major vectorized operators: sum_K K (x) conj(K)."""
    out = np.zeros((phi.n_out**2, phi.n_in**2), dtype=complex)
    for k in phi.kraus:
        out += np.kron(k, k.conj())
    return out


def jamiolkowski_state(phi: QuantumChannel) -> DensityMatrix:
    """(Phi (x) id) applied to the maximally entangled projector."""
    if phi.n_in != phi.n_out:
        raise DimensionMismatch("Jamiolkowski state needs n_in = n_out")
    n = phi.n_in
    psi = np.zeros(n * n, dtype=complex)
    for i in range(n):
        psi[i * n + i] = 1.0 / math.sqrt(n)
    proj = np.outer(psi, psi.conj())
    eye = np.eye(n, dtype=complex)
    mat = np.zeros_like(proj)
    for k in phi.kraus:
        big = np.kron(k, eye)
        mat += big @ proj @ big.conj().T
    mat = (mat + mat.conj().T) / 2.0
    return DensityMatrix(n_a=n, n_b=n, mat=mat)


def hs_discord_lower_bound(rho: DensityMatrix) -> float:
    """Sum of the squared singular values of the reshuffled state beyond the
    n_a largest; never exceeds the HS geometric discord."""
    resh = linalg.reshuffle(rho.mat, rho.n_a, rho.n_b)
    mu = linalg.svd_values(resh) ** 2
    return float(np.sum(mu[rho.n_a:]))


def covariance_matrix_m(rho: DensityMatrix) -> CovarianceMatrixM:
    if rho.n_a != 2:
        raise WrongDimension("covariance matrix is defined for n_a = 2")
    sig_hat = [np.eye(2, dtype=complex) / math.sqrt(2.0)] + [
        p / math.sqrt(2.0) for p in linalg.gell_mann(2)
    ]
    gam_hat = [np.eye(rho.n_b, dtype=complex) / math.sqrt(rho.n_b)] + [
        g / math.sqrt(2.0) for g in linalg.gell_mann(rho.n_b)
    ]
    m = np.empty((4, rho.n_b**2))
    for i, s in enumerate(sig_hat):
        for j, gma in enumerate(gam_hat):
            m[i, j] = float(np.real(np.trace(rho.mat @ np.kron(s, gma))))
    return CovarianceMatrixM(matrix=m)


def hs_discord_covariance(rho: DensityMatrix) -> float:
    """Closed qubit-qudit HS geometric discord: sum of the two smallest
    squared singular values of the coefficient matrix with its identity
    row removed."""
    m_tilde = covariance_matrix_m(rho).m_tilde
    sv2 = np.sort(np.linalg.svd(m_tilde, compute_uv=False) ** 2)[::-1]
    return float(sv2[1] + sv2[2])


def hs_discord_mm_marginals(rho: DensityMatrix) -> float:
    """For a qubit-qudit state with maximally mixed marginals: the HS
    geometric discord as the two smallest squared singular values of the
    reshuffled state, cross-checked against the covariance-matrix form."""
    if rho.n_a != 2:
        raise WrongDimension("maximally-mixed-marginal formula needs n_a = 2")
    if linalg.hs_norm(rho.marginal("A") - np.eye(2) / 2.0) > MM_TOL:
        raise MarginalsNotMaximallyMixed("marginal on A is not 1/2")
    if linalg.hs_norm(rho.marginal("B") - np.eye(rho.n_b) / rho.n_b) > MM_TOL:
        raise MarginalsNotMaximallyMixed("marginal on B is not 1/n_B")
    primary = hs_discord_lower_bound(rho)
    cross = hs_discord_covariance(rho)
    if abs(primary - cross) > 1e-8:
        raise MeasureConsistencyError(
            f"reshuffle route {primary} disagrees with covariance route {cross}"
        )
    return primary


def reshuffled_max_singular_value(rho: DensityMatrix) -> float:
    resh = linalg.reshuffle(rho.mat, rho.n_a, rho.n_b)
    return float(linalg.svd_values(resh)[0])


@dataclass(frozen=True)
class ChannelVerdict:
    status: str
    superoperator_rank: int
    jamiolkowski_discord: float | None
    residual_lower_bound: float


def quantumness_breaking_verdict(
    phi: QuantumChannel,
    config: OptimizerConfig | None = None,
) -> ChannelVerdict:
    """Necessary-condition screen: a channel whose superoperator rank exceeds
    n_A cannot be quantumness breaking; otherwise decide by testing whether
    the Jamiolkowski state is classical-quantum."""
    if phi.n_in != phi.n_out:
        raise DimensionMismatch("verdict needs n_in = n_out")
    n = phi.n_in
    sv = linalg.svd_values(superoperator(phi))
    rank = int(np.sum(sv > RANK_RELATIVE_THRESHOLD * sv[0]))
    jam = jamiolkowski_state(phi)
    residual = hs_discord_lower_bound(jam)

    discord: float | None
    if n == 2:
        discord = hellinger_geo_discord_closed(jam)
    else:
        cfg = config or DEFAULT_CONFIG
        strict_cfg = OptimizerConfig(
            restarts=cfg.restarts,
            seed=cfg.seed,
            max_evals=cfg.max_evals,
            simplex_tol=cfg.simplex_tol,
            strict=True,
            seed_bases=cfg.seed_bases,
        )
        try:
            discord = geo_discord(jam, Distance.Hellinger, strict_cfg).value
        except OptimizerNotConverged:
            discord = None

    if rank > n:
        return ChannelVerdict(NOT_QUANTUMNESS_BREAKING, rank, discord, residual)
    if discord is None:
        return ChannelVerdict(INCONCLUSIVE, rank, None, residual)
    if discord < CQ_DISCORD_TOL:
        return ChannelVerdict(QUANTUMNESS_BREAKING, rank, discord, residual)
    return ChannelVerdict(NOT_QUANTUMNESS_BREAKING, rank, discord, residual)


# ---------------------------------------------------------------------------
# Constructors and serialization.
# ---------------------------------------------------------------------------


def identity_channel(n: int) -> QuantumChannel:
    return QuantumChannel(n_in=n, n_out=n, kraus=(np.eye(n, dtype=complex),))


def depolarizing_channel(n: int) -> QuantumChannel:
    ops = []
    for i in range(n):
        for j in range(n):
            k = np.zeros((n, n), dtype=complex)
            k[i, j] = 1.0 / math.sqrt(n)
            ops.append(k)
    return QuantumChannel(n_in=n, n_out=n, kraus=tuple(ops))


def measure_z_channel() -> QuantumChannel:
    p0 = np.diag([1.0, 0.0]).astype(complex)
    p1 = np.diag([0.0, 1.0]).astype(complex)
    return QuantumChannel(n_in=2, n_out=2, kraus=(p0, p1))


def unitary_channel(u) -> QuantumChannel:
    u = linalg.as_complex_matrix(u)
    n = u.shape[0]
    if float(np.max(np.abs(u.conj().T @ u - np.eye(n)))) > 1e-10:
        raise ValueError("matrix is not unitary within 1e-10")
    return QuantumChannel(n_in=n, n_out=n, kraus=(u,))


def random_channel(n: int, kraus_count: int = 2, seed=0) -> QuantumChannel:
    """Haar-flavored channel from a random Stinespring isometry."""
    rng = np.random.default_rng(seed)
    g = rng.normal(size=(n * kraus_count, n)) + 1j * rng.normal(size=(n * kraus_count, n))
    q, r = np.linalg.qr(g)
    q = q * (np.diagonal(r) / np.abs(np.diagonal(r)))
    ops = tuple(q[i * n:(i + 1) * n, :] for i in range(kraus_count))
    return QuantumChannel(n_in=n, n_out=n, kraus=ops)


def channel_to_json(phi: QuantumChannel) -> str:
    payload = {
        "n_in": phi.n_in,
        "n_out": phi.n_out,
        "kraus": [
            {"re": np.real(k).tolist(), "im": np.imag(k).tolist()}
            for k in phi.kraus
        ],
    }
    return json.dumps(payload, indent=2)


def channel_from_json(text: str) -> QuantumChannel:
    payload = json.loads(text)
    for key in ("n_in", "n_out", "kraus"):
        if key not in payload:
            raise ValueError(f"channel JSON missing field '{key}'")
    ops = tuple(
        np.asarray(entry["re"], dtype=float) + 1j * np.asarray(entry["im"], dtype=float)
        for entry in payload["kraus"]
    )
    return QuantumChannel(n_in=int(payload["n_in"]), n_out=int(payload["n_out"]), kraus=ops)
