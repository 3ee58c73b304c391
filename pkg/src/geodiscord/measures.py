"""Distances and the twelve (measure x distance) correlation quantifiers.

Closed forms are used wherever available for a qubit on side A; everything
else goes through a deterministic multi-start basis optimization. Optimized
results carry an honest optimizer report (restarts, convergence, argopt)
rather than a global-optimality claim.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
from scipy.linalg import expm, logm
from scipy.optimize import minimize

from . import linalg
from .linalg import DimensionMismatch, NotHermitian
from .states import (
    DensityMatrix,
    NotNormalized,
    WrongDimension,
    fano_sqrt_decomposition,
    harmonic_spectrum,
    random_haar_unitary,
    schmidt,
)

MEASURE_CLIP = 1e-9
ZERO_WEIGHT = 1e-12

_PAULIS = tuple(linalg.gell_mann(2))


class UnsupportedDimension(ValueError):
    """Requested measure has no implemented evaluation at this dimension."""


class OptimizerNotConverged(RuntimeError):
    """Strict mode: restarts did not corroborate the best value."""


class MeasureConsistencyError(RuntimeError):
    """A measure evaluated below the -1e-9 clipping threshold."""


class Distance(Enum):
    Trace = "trace"
    HilbertSchmidt = "hs"
    Bures = "bures"
    Hellinger = "hellinger"

    @property
    def response_normalization(self) -> float:
        return 4.0 if self is Distance.Trace else 2.0


@dataclass(frozen=True)
class OptimizerConfig:
    """Knobs of the multi-start Nelder-Mead basis search."""

    restarts: int = 16
    seed: int = 7
    max_evals: int = 2000
    simplex_tol: float = 1e-9
    strict: bool = False
    seed_bases: tuple = ()


DEFAULT_CONFIG = OptimizerConfig()


@dataclass(frozen=True)
class BasisCandidate:
    """Orthonormal measurement basis on A, stored as unitary columns."""

    unitary: np.ndarray

    def __post_init__(self):
        u = linalg.as_complex_matrix(self.unitary)
        object.__setattr__(self, "unitary", u)
        n = u.shape[0]
        if u.shape != (n, n) or float(np.max(np.abs(u.conj().T @ u - np.eye(n)))) > 1e-10:
            raise ValueError("basis columns are not orthonormal within 1e-10")


@dataclass(frozen=True)
class MeasureResult:
    value: float
    optimizer_report: dict


@dataclass(frozen=True)
class DiscriminationEnsemble:
    """Weights eta_i and conditional states of the basis-discrimination task;
    zero-weight branches store None."""

    etas: np.ndarray
    rhos: tuple

    def reconstruct(self) -> np.ndarray:
        out = None
        for eta, rho in zip(self.etas, self.rhos):
            if rho is None:
                continue
            term = eta * rho.mat
            out = term if out is None else out + term
        return out


def _clip_measure(value: float) -> float:
    if value < -MEASURE_CLIP:
        raise MeasureConsistencyError(f"measure evaluated to {value} < -1e-9")
    return max(float(value), 0.0)


def _closed_result(value: float, objective: float, argopt=None, route="closed-form") -> MeasureResult:
    return MeasureResult(
        value=_clip_measure(value),
        optimizer_report={
            "method": route,
            "restarts": 0,
            "converged": True,
            "best_objective": float(objective),
            "argopt": argopt,
        },
    )


# ---------------------------------------------------------------------------
# Distances.
# ---------------------------------------------------------------------------


def _check_same_dims(rho: DensityMatrix, sigma: DensityMatrix):
    if (rho.n_a, rho.n_b) != (sigma.n_a, sigma.n_b):
        raise DimensionMismatch("states live on different bipartitions")


def fidelity(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    _check_same_dims(rho, sigma)
    sq = linalg.psd_sqrt(rho.mat)
    inner = sq @ sigma.mat @ sq
    w = np.linalg.eigvalsh((inner + inner.conj().T) / 2.0)
    f = float(np.sum(np.sqrt(np.clip(w, 0.0, None))) ** 2)
    return min(max(f, 0.0), 1.0)


def distance(rho: DensityMatrix, sigma: DensityMatrix, d: Distance) -> float:
    _check_same_dims(rho, sigma)
    if d is Distance.Trace:
        return float(np.sum(np.abs(np.linalg.eigvalsh(rho.mat - sigma.mat))))
    if d is Distance.HilbertSchmidt:
        return linalg.hs_norm(rho.mat - sigma.mat)
    if d is Distance.Bures:
        return math.sqrt(max(2.0 - 2.0 * math.sqrt(fidelity(rho, sigma)), 0.0))
    aff = float(
        np.real(np.trace(linalg.psd_sqrt(rho.mat) @ linalg.psd_sqrt(sigma.mat)))
    )
    return math.sqrt(max(2.0 - 2.0 * min(aff, 1.0), 0.0))


# ---------------------------------------------------------------------------
# Measurement plumbing.
# ---------------------------------------------------------------------------


def _basis_matrix(basis) -> np.ndarray:
    if isinstance(basis, BasisCandidate):
        return basis.unitary
    return BasisCandidate(unitary=basis).unitary


def _block(x4: np.ndarray, ai: np.ndarray, aj: np.ndarray) -> np.ndarray:
    return np.einsum("a,aibj,b->ij", ai.conj(), x4, aj)


def post_measurement_state(rho: DensityMatrix, basis) -> DensityMatrix:
    b = _basis_matrix(basis)
    x4 = rho.mat.reshape(rho.n_a, rho.n_b, rho.n_a, rho.n_b)
    mat = np.zeros_like(rho.mat)
    for i in range(rho.n_a):
        blk = _block(x4, b[:, i], b[:, i])
        mat += np.kron(np.outer(b[:, i], b[:, i].conj()), blk)
    mat = (mat + mat.conj().T) / 2.0
    return DensityMatrix(n_a=rho.n_a, n_b=rho.n_b, mat=mat)


def ensemble_from_basis(rho: DensityMatrix, basis) -> DiscriminationEnsemble:
    b = _basis_matrix(basis)
    rho_a = rho.marginal("A")
    sq = linalg.psd_sqrt(rho.mat)
    etas = np.array(
        [float(np.real(b[:, i].conj() @ rho_a @ b[:, i])) for i in range(rho.n_a)]
    )
    rhos = []
    eye_b = np.eye(rho.n_b)
    for i in range(rho.n_a):
        if etas[i] < ZERO_WEIGHT:
            rhos.append(None)
            continue
        proj = np.kron(np.outer(b[:, i], b[:, i].conj()), eye_b)
        q = sq @ proj @ sq
        q = (q + q.conj().T) / 2.0 / etas[i]
        rhos.append(DensityMatrix(n_a=rho.n_a, n_b=rho.n_b, mat=q))
    return DiscriminationEnsemble(etas=etas, rhos=tuple(rhos))


# ---------------------------------------------------------------------------
# Basis parametrization and the multi-start optimizer.
# ---------------------------------------------------------------------------


def _qubit_basis(theta: float, phi: float) -> np.ndarray:
    c, s = math.cos(theta / 2.0), math.sin(theta / 2.0)
    e = np.exp(1j * phi)
    return np.array([[c, -s / e], [s * e, c]], dtype=complex)


def _qubit_basis_from_axis(u) -> np.ndarray:
    u = np.asarray(u, dtype=float)
    u = u / max(np.linalg.norm(u), 1e-15)
    theta = math.acos(min(max(u[2], -1.0), 1.0))
    phi = math.atan2(u[1], u[0])
    return _qubit_basis(theta, phi)


def _bloch_axis_of_column(c: np.ndarray) -> np.ndarray:
    z = c[0].conjugate() * c[1]
    return np.array([2.0 * z.real, 2.0 * z.imag, abs(c[0]) ** 2 - abs(c[1]) ** 2])


def _fourier(n: int) -> np.ndarray:
    j = np.arange(n)
    return np.exp(2j * np.pi * np.outer(j, j) / n) / math.sqrt(n)


def _unitary_from_params(x: np.ndarray, n_a: int, gens) -> np.ndarray:
    if n_a == 2:
        return _qubit_basis(float(x[0]), float(x[1]))
    h = np.zeros((n_a, n_a), dtype=complex)
    for coef, g in zip(x, gens):
        h += coef * g
    return expm(1j * h)


def _params_from_unitary(u: np.ndarray, n_a: int, gens) -> np.ndarray:
    if n_a == 2:
        a = u[:, 0]
        if abs(a[0]) < 1e-12:
            return np.array([math.pi, 0.0])
        b = a * (a[0].conjugate() / abs(a[0]))
        theta = 2.0 * math.atan2(abs(b[1]), float(b[0].real))
        phi = float(np.angle(b[1])) if abs(b[1]) > 1e-12 else 0.0
        return np.array([theta, phi])
    h = logm(u) / 1j
    h = (h + h.conj().T) / 2.0
    h -= np.trace(h) / n_a * np.eye(n_a)
    return np.array([float(np.real(np.trace(h @ g))) / 2.0 for g in gens])


def _start_parameters(n_a: int, gens, cfg: OptimizerConfig) -> list[np.ndarray]:
    """Deterministic interleaved start sequence: structured bases (callers'
    seed bases, computational, Fourier, perturbations) alternating with
    random points; prefixes are nested so more restarts never lose starts."""
    nparams = 2 if n_a == 2 else n_a * n_a - 1
    base_units = [np.asarray(b, dtype=complex) for b in cfg.seed_bases]
    base_units += [np.eye(n_a, dtype=complex), _fourier(n_a)]
    base_params = [_params_from_unitary(b, n_a, gens) for b in base_units]

    def structured(m: int) -> np.ndarray:
        if m < len(base_params):
            return base_params[m]
        rng = np.random.default_rng([cfg.seed, 101, m])
        ref = base_params[m % len(base_params)]
        return ref + rng.normal(0.0, 0.25, size=nparams)

    def random_start(k: int) -> np.ndarray:
        rng = np.random.default_rng([cfg.seed, 7, k])
        if n_a == 2:
            theta = math.acos(rng.uniform(-1.0, 1.0))
            phi = rng.uniform(0.0, 2.0 * math.pi)
            return np.array([theta, phi])
        return rng.normal(0.0, 0.7, size=nparams)

    starts = []
    for i in range(max(cfg.restarts, 1)):
        starts.append(structured(i // 2) if i % 2 == 0 else random_start(i // 2))
    return starts


# Golden-angle hemisphere lattice in (theta, phi); a qubit basis is fixed by
# its Bloch axis up to sign, so z >= 0 covers the whole search space.
_QUBIT_LATTICE = tuple(
    np.array([
        math.acos((k + 0.5) / 32.0),
        (k * math.pi * (3.0 - math.sqrt(5.0))) % (2.0 * math.pi),
    ])
    for k in range(32)
)


def optimize_over_basis(objective, n_a: int, sense: str, config: OptimizerConfig | None = None) -> MeasureResult:
    """Multi-start Nelder-Mead extremization of a basis functional."""
    if sense not in ("min", "max"):
        raise ValueError("sense must be 'min' or 'max'")
    cfg = config or DEFAULT_CONFIG
    gens = linalg.gell_mann(n_a) if n_a > 2 else None
    sign = 1.0 if sense == "min" else -1.0

    def f(x):
        return sign * objective(BasisCandidate(unitary=_unitary_from_params(x, n_a, gens)))

    starts = _start_parameters(n_a, gens, cfg)
    if n_a == 2:
        # Rank a fixed coarse lattice by objective and let the best points
        # replace the random starts; small basins that iid draws miss are
        # still hit by the scan.
        order = sorted((float(f(x)), k) for k, x in enumerate(_QUBIT_LATTICE))
        ranked = (_QUBIT_LATTICE[k] for _, k in order)
        starts = [
            x0 if i % 2 == 0 else next(ranked, x0)
            for i, x0 in enumerate(starts)
        ]

    runs = []
    for idx, x0 in enumerate(starts):
        res = minimize(
            f,
            x0,
            method="Nelder-Mead",
            options={
                "xatol": cfg.simplex_tol,
                "fatol": cfg.simplex_tol,
                "maxfev": cfg.max_evals,
            },
        )
        runs.append((float(res.fun), idx, res.x, bool(res.success)))
    best_fun, best_idx, best_x, best_ok = min(runs, key=lambda r: (r[0], r[1]))
    agree = sum(1 for r in runs if r[0] <= best_fun + 1e-7)
    converged = best_ok or agree >= 2
    if cfg.strict and not converged:
        raise OptimizerNotConverged(
            f"best value not corroborated across {len(runs)} restarts"
        )
    return MeasureResult(
        value=sign * best_fun,
        optimizer_report={
            "method": "nelder-mead",
            "restarts": len(runs),
            "converged": converged,
            "best_objective": sign * best_fun,
            "argopt": [float(v) for v in best_x],
            "agreeing_restarts": agree,
            "sense": sense,
        },
    )


def _with_stream(cfg: OptimizerConfig, tag: int, seed_bases) -> OptimizerConfig:
    """Derive a per-driver config: distinct RNG stream, extra seed bases."""
    merged = tuple(seed_bases) + tuple(cfg.seed_bases)
    return OptimizerConfig(
        restarts=cfg.restarts,
        seed=cfg.seed * 1000 + tag,
        max_evals=cfg.max_evals,
        simplex_tol=cfg.simplex_tol,
        strict=cfg.strict,
        seed_bases=merged,
    )


def _marginal_eigenbasis(rho: DensityMatrix) -> np.ndarray:
    return np.linalg.eigh(rho.marginal("A"))[1]


# ---------------------------------------------------------------------------
# Closed forms for a qubit on side A.
# ---------------------------------------------------------------------------


def hellinger_geo_discord_closed(rho: DensityMatrix) -> float:
    """2 - 2 sqrt(t0^2 + |y|^2 + k_max) from the Fano coefficients of sqrt(rho)."""
    if rho.n_a != 2:
        raise WrongDimension("closed Hellinger geometric discord needs n_a = 2")
    dec = fano_sqrt_decomposition(rho)
    kmax = float(np.linalg.eigvalsh(dec.k_matrix())[-1])
    s = min(dec.t0**2 + float(dec.y @ dec.y) + kmax, 1.0)
    return _clip_measure(2.0 - 2.0 * math.sqrt(s))


def hellinger_response_closed(rho: DensityMatrix) -> float:
    """Local-quantum-uncertainty closed form 2 - 2 (t0^2 + |y|^2 + k_max)."""
    if rho.n_a != 2:
        raise WrongDimension("closed Hellinger response needs n_a = 2")
    dec = fano_sqrt_decomposition(rho)
    kmax = float(np.linalg.eigvalsh(dec.k_matrix())[-1])
    s = min(dec.t0**2 + float(dec.y @ dec.y) + kmax, 1.0)
    return _clip_measure(2.0 - 2.0 * s)


def _w_matrix(x: np.ndarray, n_b: int) -> np.ndarray:
    """W_mn = tr(X sigma_m x 1 X sigma_n x 1) for Hermitian X, n_a = 2."""
    eye_b = np.eye(n_b)
    t = [x @ np.kron(p, eye_b) for p in _PAULIS]
    w = np.empty((3, 3))
    for m in range(3):
        for n in range(m, 3):
            w[m, n] = w[n, m] = float(np.real(np.trace(t[m] @ t[n])))
    return w


def _hs_quadratic_max(x: np.ndarray, n_b: int) -> tuple[float, np.ndarray]:
    """max over qubit bases of sum_i tr(<a_i|X|a_i>^2) = (tr X^2 + w_max)/2,
    with the maximizing Bloch axis."""
    w = _w_matrix(x, n_b)
    vals, vecs = np.linalg.eigh(w)
    trx2 = float(np.real(np.trace(x @ x)))
    return (trx2 + float(vals[-1])) / 2.0, vecs[:, -1]


def hs_geo_discord_closed(rho: DensityMatrix) -> float:
    """(tr rho^2 - w_max)/2 via the W-matrix route, n_a = 2."""
    if rho.n_a != 2:
        raise WrongDimension("closed HS geometric discord needs n_a = 2")
    smax, _ = _hs_quadratic_max(rho.mat, rho.n_b)
    return _clip_measure(rho.purity() - smax)


def hs_quadratic_max_operator(x, n_a: int, n_b: int) -> float:
    """max_basis sum_i tr(<a_i|X|a_i>^2) for any Hermitian X with n_a = 2;
    exposed for the sqrt-bridge identities where X is not trace-1."""
    if n_a != 2:
        raise WrongDimension("operator quadratic maximum implemented for n_a = 2")
    x = linalg.as_complex_matrix(x)
    smax, _ = _hs_quadratic_max(x, n_b)
    return smax


# ---------------------------------------------------------------------------
# Objective builders (closures over precomputed block tensors).
# ---------------------------------------------------------------------------


def _quadratic_block_objective(x: np.ndarray, n_a: int, n_b: int):
    x4 = x.reshape(n_a, n_b, n_a, n_b)

    def objective(cand: BasisCandidate) -> float:
        u = cand.unitary
        blocks = np.einsum("ai,axby,bi->ixy", u.conj(), x4, u, optimize=True)
        return float(np.real(np.einsum("ixy,iyx->", blocks, blocks)))

    return objective


def _hellinger_meas_objective(rho: DensityMatrix, sq: np.ndarray):
    n_a, n_b = rho.n_a, rho.n_b
    r4 = rho.mat.reshape(n_a, n_b, n_a, n_b)
    sq4 = sq.reshape(n_a, n_b, n_a, n_b)

    def objective(cand: BasisCandidate) -> float:
        u = cand.unitary
        total = 0.0
        for i in range(n_a):
            s_blk = _block(sq4, u[:, i], u[:, i])
            r_blk = _block(r4, u[:, i], u[:, i])
            w, v = np.linalg.eigh((r_blk + r_blk.conj().T) / 2.0)
            root = (v * np.sqrt(np.clip(w, 0.0, None))) @ v.conj().T
            total += float(np.real(np.trace(s_blk @ root)))
        return total

    return objective


def _column_sandwich(sq3: np.ndarray, w: np.ndarray) -> np.ndarray:
    """C with C C^dag = sqrt(rho) (|w><w| x 1) sqrt(rho)."""
    return np.einsum("xaj,a->xj", sq3, w)


def _bures_meas_objective(rho: DensityMatrix, sq: np.ndarray):
    n_a, n_b = rho.n_a, rho.n_b
    sq3 = sq.reshape(n_a * n_b, n_a, n_b)

    def objective(cand: BasisCandidate) -> float:
        u = cand.unitary
        total = np.zeros((n_a * n_b, n_a * n_b), dtype=complex)
        for i in range(n_a):
            c = _column_sandwich(sq3, u[:, i])
            q = c @ c.conj().T
            total += q @ q
        w = np.linalg.eigvalsh((total + total.conj().T) / 2.0)
        return float(np.sum(np.sqrt(np.clip(w, 0.0, None))))

    return objective


def _bures_response_objective(rho: DensityMatrix, sq: np.ndarray):
    n_a, n_b = rho.n_a, rho.n_b
    sq3 = sq.reshape(n_a * n_b, n_a, n_b)
    phases = harmonic_spectrum(n_a).phases.conj()

    def objective(cand: BasisCandidate) -> float:
        u = cand.unitary
        total = np.zeros((n_a * n_b, n_a * n_b), dtype=complex)
        for i in range(n_a):
            c = _column_sandwich(sq3, u[:, i])
            total += phases[i] * (c @ c.conj().T)
        if n_a == 2:
            return float(np.sum(np.abs(np.linalg.eigvalsh((total + total.conj().T) / 2.0))))
        return float(np.sum(np.linalg.svd(total, compute_uv=False)))

    return objective


def _sin_weighted_block_objective(x: np.ndarray, n_a: int, n_b: int):
    """2 sum_{i<>j} sin^2(pi (i-j)/n_a) ||<a_i|X|a_j>||_HS^2 (minimized)."""
    x4 = x.reshape(n_a, n_b, n_a, n_b)
    if n_a == 2:
        # Single off-diagonal block with unit weight on both orders.
        def objective(cand: BasisCandidate) -> float:
            u = cand.unitary
            blk = _block(x4, u[:, 0], u[:, 1])
            return 4.0 * float(np.sum(np.abs(blk) ** 2))

        return objective

    grid = np.subtract.outer(np.arange(n_a), np.arange(n_a))
    weights = np.sin(np.pi * grid / n_a) ** 2

    def objective(cand: BasisCandidate) -> float:
        u = cand.unitary
        blocks = np.einsum("ai,axby,bj->ijxy", u.conj(), x4, u, optimize=True)
        mags = np.real(blocks * blocks.conj()).sum(axis=(2, 3))
        return 2.0 * float(np.sum(weights * mags))

    return objective


def _offdiag_trace_norm_objective(rho: DensityMatrix):
    """4 ||<a_0| rho |a_1>||_tr^2 for n_a = 2 (minimized)."""
    r4 = rho.mat.reshape(2, rho.n_b, 2, rho.n_b)

    def objective(cand: BasisCandidate) -> float:
        u = cand.unitary
        blk = _block(r4, u[:, 0], u[:, 1])
        tn = float(np.sum(np.linalg.svd(blk, compute_uv=False)))
        return 4.0 * tn * tn

    return objective


def _trace_meas_objective(rho: DensityMatrix):
    """Squared trace distance to the post-measurement state (minimized)."""
    n_a, n_b = rho.n_a, rho.n_b
    x4 = rho.mat.reshape(n_a, n_b, n_a, n_b)

    def objective(cand: BasisCandidate) -> float:
        u = cand.unitary
        pm = np.zeros_like(rho.mat)
        for i in range(n_a):
            blk = _block(x4, u[:, i], u[:, i])
            pm += np.kron(np.outer(u[:, i], u[:, i].conj()), blk)
        dist = float(np.sum(np.abs(np.linalg.eigvalsh(rho.mat - pm))))
        return dist * dist

    return objective


def _trace_response_general_objective(rho: DensityMatrix):
    n_a, n_b = rho.n_a, rho.n_b
    phases = harmonic_spectrum(n_a).phases
    eye_b = np.eye(n_b)

    def objective(cand: BasisCandidate) -> float:
        u_small = (cand.unitary * phases) @ cand.unitary.conj().T
        u_full = np.kron(u_small, eye_b)
        delta = rho.mat - u_full @ rho.mat @ u_full.conj().T
        dist = float(np.sum(np.abs(np.linalg.eigvalsh((delta + delta.conj().T) / 2.0))))
        return dist * dist / 4.0

    return objective


def _helstrom_objective(rho: DensityMatrix, sq: np.ndarray):
    """t(u) = || sqrt(rho) (u.sigma x 1) sqrt(rho) ||_tr over the basis axis."""
    eye_b = np.eye(rho.n_b)
    gs = [sq @ np.kron(p, eye_b) @ sq for p in _PAULIS]

    def objective(cand: BasisCandidate) -> float:
        u = _bloch_axis_of_column(cand.unitary[:, 0])
        a = u[0] * gs[0] + u[1] * gs[1] + u[2] * gs[2]
        return float(np.sum(np.abs(np.linalg.eigvalsh((a + a.conj().T) / 2.0))))

    return objective


# ---------------------------------------------------------------------------
# The twelve measures.
# ---------------------------------------------------------------------------


def _fano_axis_basis(rho: DensityMatrix) -> np.ndarray:
    """Qubit basis along the dominant eigenvector of K = x x^T + T T^T."""
    dec = fano_sqrt_decomposition(rho)
    _, vecs = np.linalg.eigh(dec.k_matrix())
    return _qubit_basis_from_axis(vecs[:, -1])


def _correlation_axis_bases(rho: DensityMatrix) -> list:
    """Qubit bases along the left singular axes of the Pauli correlation
    block of rho; extremal measurement directions sit on these axes for
    Bell-diagonal states and near them for generic states."""
    gens_b = linalg.gell_mann(rho.n_b)
    t = np.array([
        [float(np.real(np.trace(rho.mat @ np.kron(p, g)))) for g in gens_b]
        for p in _PAULIS
    ])
    u, _, _ = np.linalg.svd(t)
    return [_qubit_basis_from_axis(u[:, i]) for i in range(3)]


def _seed_bases_for(rho: DensityMatrix) -> tuple:
    bases = [_marginal_eigenbasis(rho)]
    if rho.n_a == 2:
        bases.append(_fano_axis_basis(rho))
        bases.extend(_correlation_axis_bases(rho))
    return tuple(bases)


def geo_discord(rho: DensityMatrix, d: Distance, config: OptimizerConfig | None = None) -> MeasureResult:
    """Squared-distance geometric discord to the classical-quantum set."""
    cfg = config or DEFAULT_CONFIG
    if d is Distance.Hellinger:
        if rho.n_a == 2:
            value = hellinger_geo_discord_closed(rho)
            return _closed_result(value, objective=(1.0 - value / 2.0) ** 2)
        sq = linalg.psd_sqrt(rho.mat)
        res = optimize_over_basis(
            _quadratic_block_objective(sq, rho.n_a, rho.n_b),
            rho.n_a,
            "max",
            _with_stream(cfg, 11, _seed_bases_for(rho)),
        )
        value = 2.0 - 2.0 * math.sqrt(min(max(res.value, 0.0), 1.0))
        return MeasureResult(_clip_measure(value), res.optimizer_report)
    if d is Distance.HilbertSchmidt:
        if rho.n_a == 2:
            smax, axis = _hs_quadratic_max(rho.mat, rho.n_b)
            return _closed_result(
                rho.purity() - smax, objective=smax, argopt=[float(v) for v in axis]
            )
        res = optimize_over_basis(
            _quadratic_block_objective(rho.mat, rho.n_a, rho.n_b),
            rho.n_a,
            "max",
            _with_stream(cfg, 12, _seed_bases_for(rho)),
        )
        return MeasureResult(
            _clip_measure(rho.purity() - res.value), res.optimizer_report
        )
    if d is Distance.Bures:
        if rho.n_a != 2:
            raise UnsupportedDimension(
                "Bures geometric discord is evaluated only for n_a = 2; "
                "use bures_geo_discord_bounds for a certified interval"
            )
        sq = linalg.psd_sqrt(rho.mat)
        res = optimize_over_basis(
            _helstrom_objective(rho, sq),
            2,
            "max",
            _with_stream(cfg, 13, _seed_bases_for(rho)),
        )
        p_success = (1.0 + min(max(res.value, 0.0), 1.0)) / 2.0
        return MeasureResult(
            _clip_measure(2.0 - 2.0 * math.sqrt(p_success)), res.optimizer_report
        )
    if d is Distance.Trace:
        if rho.n_a != 2:
            raise UnsupportedDimension("trace geometric discord is evaluated only for n_a = 2")
        res = optimize_over_basis(
            _offdiag_trace_norm_objective(rho),
            2,
            "min",
            _with_stream(cfg, 14, _seed_bases_for(rho)),
        )
        return MeasureResult(_clip_measure(res.value), res.optimizer_report)
    raise ValueError(f"unknown distance {d}")


def meas_induced_discord(rho: DensityMatrix, d: Distance, config: OptimizerConfig | None = None) -> MeasureResult:
    """Squared distance to the nearest post-measurement image of rho."""
    cfg = config or DEFAULT_CONFIG
    if d is Distance.Hellinger:
        sq = linalg.psd_sqrt(rho.mat)
        res = optimize_over_basis(
            _hellinger_meas_objective(rho, sq),
            rho.n_a,
            "max",
            _with_stream(cfg, 21, _seed_bases_for(rho)),
        )
        value = 2.0 - 2.0 * min(max(res.value, 0.0), 1.0)
        return MeasureResult(_clip_measure(value), res.optimizer_report)
    if d is Distance.Bures:
        sq = linalg.psd_sqrt(rho.mat)
        res = optimize_over_basis(
            _bures_meas_objective(rho, sq),
            rho.n_a,
            "max",
            _with_stream(cfg, 23, _seed_bases_for(rho)),
        )
        value = 2.0 - 2.0 * min(max(res.value, 0.0), 1.0)
        return MeasureResult(_clip_measure(value), res.optimizer_report)
    if d is Distance.HilbertSchmidt:
        res = geo_discord(rho, d, config)
        report = dict(res.optimizer_report)
        report["route"] = "equals HS geometric discord at every dimension"
        return MeasureResult(res.value, report)
    if d is Distance.Trace:
        res = optimize_over_basis(
            _trace_meas_objective(rho),
            rho.n_a,
            "min",
            _with_stream(cfg, 24, _seed_bases_for(rho)),
        )
        return MeasureResult(_clip_measure(res.value), res.optimizer_report)
    raise ValueError(f"unknown distance {d}")


def disc_response(rho: DensityMatrix, d: Distance, config: OptimizerConfig | None = None) -> MeasureResult:
    """Normalized squared distance to the least-disturbing harmonic local unitary."""
    cfg = config or DEFAULT_CONFIG
    if d is Distance.Hellinger:
        if rho.n_a == 2:
            value = hellinger_response_closed(rho)
            return _closed_result(value, objective=1.0 - value / 2.0)
        sq = linalg.psd_sqrt(rho.mat)
        res = optimize_over_basis(
            _sin_weighted_block_objective(sq, rho.n_a, rho.n_b),
            rho.n_a,
            "min",
            _with_stream(cfg, 31, _seed_bases_for(rho)),
        )
        return MeasureResult(_clip_measure(min(res.value, 1.0)), res.optimizer_report)
    if d is Distance.HilbertSchmidt:
        if rho.n_a == 2:
            smax, axis = _hs_quadratic_max(rho.mat, rho.n_b)
            return _closed_result(
                2.0 * (rho.purity() - smax),
                objective=smax,
                argopt=[float(v) for v in axis],
            )
        res = optimize_over_basis(
            _sin_weighted_block_objective(rho.mat, rho.n_a, rho.n_b),
            rho.n_a,
            "min",
            _with_stream(cfg, 32, _seed_bases_for(rho)),
        )
        return MeasureResult(_clip_measure(res.value), res.optimizer_report)
    if d is Distance.Bures:
        sq = linalg.psd_sqrt(rho.mat)
        res = optimize_over_basis(
            _bures_response_objective(rho, sq),
            rho.n_a,
            "max",
            _with_stream(cfg, 33, _seed_bases_for(rho)),
        )
        return MeasureResult(
            _clip_measure(1.0 - min(max(res.value, 0.0), 1.0)), res.optimizer_report
        )
    if d is Distance.Trace:
        if rho.n_a == 2:
            res = optimize_over_basis(
                _offdiag_trace_norm_objective(rho),
                2,
                "min",
                _with_stream(cfg, 34, _seed_bases_for(rho)),
            )
        else:
            res = optimize_over_basis(
                _trace_response_general_objective(rho),
                rho.n_a,
                "min",
                _with_stream(cfg, 34, _seed_bases_for(rho)),
            )
        return MeasureResult(_clip_measure(min(res.value, 1.0)), res.optimizer_report)
    raise ValueError(f"unknown distance {d}")


def hs_response_general_route(rho: DensityMatrix, config: OptimizerConfig | None = None) -> MeasureResult:
    """The sin^2-weighted block optimization for the HS response at any n_a;
    exposed so the n_a = 2 closed form can be cross-checked against it."""
    cfg = config or DEFAULT_CONFIG
    res = optimize_over_basis(
        _sin_weighted_block_objective(rho.mat, rho.n_a, rho.n_b),
        rho.n_a,
        "min",
        _with_stream(cfg, 32, _seed_bases_for(rho)),
    )
    return MeasureResult(_clip_measure(res.value), res.optimizer_report)


def hellinger_response_general_route(rho: DensityMatrix, config: OptimizerConfig | None = None) -> MeasureResult:
    """The sin^2-weighted block optimization on sqrt(rho) at any n_a; exposed
    so the n_a = 2 closed form can be cross-checked against it."""
    cfg = config or DEFAULT_CONFIG
    sq = linalg.psd_sqrt(rho.mat)
    res = optimize_over_basis(
        _sin_weighted_block_objective(sq, rho.n_a, rho.n_b),
        rho.n_a,
        "min",
        _with_stream(cfg, 31, _seed_bases_for(rho)),
    )
    return MeasureResult(_clip_measure(min(res.value, 1.0)), res.optimizer_report)


def skew_information(rho: DensityMatrix, k) -> float:
    """-(1/2) tr([sqrt(rho), K]^2) for a Hermitian observable K."""
    k = linalg.as_complex_matrix(k)
    if not linalg.is_hermitian(k):
        raise NotHermitian("observable must be Hermitian")
    if k.shape != rho.mat.shape:
        raise DimensionMismatch("observable dimension mismatch")
    sq = linalg.psd_sqrt(rho.mat)
    val = float(np.real(np.trace(k @ k @ rho.mat) - np.trace(sq @ k @ sq @ k)))
    if val < -MEASURE_CLIP:
        raise MeasureConsistencyError(f"skew information evaluated to {val}")
    return max(val, 0.0)


def modified_meas_discord_hellinger(rho: DensityMatrix, config: OptimizerConfig | None = None) -> float:
    """Luo-Fu style modified measurement-induced Hellinger measure, exposed
    through its identity with half the Hellinger response for n_a = 2."""
    if rho.n_a != 2:
        raise UnsupportedDimension("modified Hellinger measure provided only for n_a = 2")
    return disc_response(rho, Distance.Hellinger, config).value / 2.0


def bures_geo_discord_bounds(rho: DensityMatrix, config: OptimizerConfig | None = None) -> tuple[float, float]:
    """Certified (lower, upper) bounds on the Bures geometric discord from the
    square-root-measurement sandwich; works at any n_a."""
    he = geo_discord(rho, Distance.Hellinger, config).value
    lower = 2.0 - 2.0 * math.sqrt(math.sqrt(max(1.0 - he / 2.0, 0.0)))
    return (_clip_measure(lower), he)


# ---------------------------------------------------------------------------
# Closest classical-quantum states.
# ---------------------------------------------------------------------------


def _optimal_basis_for(rho: DensityMatrix, d: Distance, cfg: OptimizerConfig) -> np.ndarray:
    if d is Distance.Hellinger:
        if rho.n_a == 2:
            return _fano_axis_basis(rho)
        sq = linalg.psd_sqrt(rho.mat)
        res = optimize_over_basis(
            _quadratic_block_objective(sq, rho.n_a, rho.n_b),
            rho.n_a,
            "max",
            _with_stream(cfg, 51, _seed_bases_for(rho)),
        )
        if not res.optimizer_report["converged"]:
            raise OptimizerNotConverged("basis search did not converge")
        gens = linalg.gell_mann(rho.n_a)
        return _unitary_from_params(np.asarray(res.optimizer_report["argopt"]), rho.n_a, gens)
    if d is Distance.HilbertSchmidt:
        if rho.n_a == 2:
            _, axis = _hs_quadratic_max(rho.mat, rho.n_b)
            return _qubit_basis_from_axis(axis)
        res = optimize_over_basis(
            _quadratic_block_objective(rho.mat, rho.n_a, rho.n_b),
            rho.n_a,
            "max",
            _with_stream(cfg, 52, _seed_bases_for(rho)),
        )
        if not res.optimizer_report["converged"]:
            raise OptimizerNotConverged("basis search did not converge")
        gens = linalg.gell_mann(rho.n_a)
        return _unitary_from_params(np.asarray(res.optimizer_report["argopt"]), rho.n_a, gens)
    raise UnsupportedDimension(f"no closest-state basis rule for {d}")


def closest_cq_state(rho: DensityMatrix, d: Distance, config: OptimizerConfig | None = None) -> DensityMatrix:
    """Nearest classical-quantum state under the given distance."""
    cfg = config or DEFAULT_CONFIG
    if d is Distance.Bures:
        if rho.purity() < 1.0 - 1e-9:
            raise UnsupportedDimension(
                "Bures closest state is provided only for pure inputs"
            )
        w, v = np.linalg.eigh(rho.mat)
        dec = schmidt(v[:, -1], rho.n_a, rho.n_b)
        amax = dec.basis_a[:, 0]
        bmax = dec.basis_b[:, 0]
        vec = np.kron(amax, bmax)
        return DensityMatrix(n_a=rho.n_a, n_b=rho.n_b, mat=np.outer(vec, vec.conj()))
    if d is Distance.Hellinger:
        basis = _optimal_basis_for(rho, d, cfg)
        sq = linalg.psd_sqrt(rho.mat)
        sq4 = sq.reshape(rho.n_a, rho.n_b, rho.n_a, rho.n_b)
        total = np.zeros_like(rho.mat)
        norm = 0.0
        for i in range(rho.n_a):
            blk = _block(sq4, basis[:, i], basis[:, i])
            sq_blk = blk @ blk
            norm += float(np.real(np.trace(sq_blk)))
            total += np.kron(np.outer(basis[:, i], basis[:, i].conj()), sq_blk)
        mat = (total + total.conj().T) / 2.0 / norm
        return DensityMatrix(n_a=rho.n_a, n_b=rho.n_b, mat=mat)
    if d is Distance.HilbertSchmidt:
        basis = _optimal_basis_for(rho, d, cfg)
        return post_measurement_state(rho, basis)
    raise UnsupportedDimension(f"closest CQ state not provided for {d}")


# ---------------------------------------------------------------------------
# Pure-state closed forms.
# ---------------------------------------------------------------------------


def _response_entanglement(mu: np.ndarray, cfg: OptimizerConfig) -> float:
    """1 - max over harmonic-spectrum unitaries of |tr(diag(mu) U)|^2."""
    n = mu.size
    if n == 1:
        return 0.0
    phases = harmonic_spectrum(n).phases

    def objective(cand: BasisCandidate) -> float:
        u = cand.unitary
        diag = np.einsum("aj,j,aj->a", u, phases, u.conj())
        return float(abs(np.dot(mu, diag)) ** 2)

    res = optimize_over_basis(objective, n, "max", _with_stream(cfg, 41, ()))
    return _clip_measure(1.0 - min(max(res.value, 0.0), 1.0))


def pure_state_measure_table(mu, config: OptimizerConfig | None = None) -> dict:
    """All twelve measures of a pure state with Schmidt weights mu."""
    cfg = config or DEFAULT_CONFIG
    mu = np.sort(np.asarray(mu, dtype=float))[::-1]
    if np.any(mu < -1e-12) or abs(float(mu.sum()) - 1.0) > 1e-9:
        raise NotNormalized("Schmidt weights must be a probability vector")
    mu = np.clip(mu, 0.0, None)
    p2 = float(np.sum(mu**2))
    er = _response_entanglement(mu, cfg)
    two_qubit_side = mu.size == 2
    table = {
        "G_bu": 2.0 - 2.0 * math.sqrt(float(mu[0])),
        "G_he": 2.0 - 2.0 * math.sqrt(p2),
        "G_hs": 1.0 - p2,
        "G_tr": er if two_qubit_side else math.nan,
        "M_he": 2.0 - 2.0 * float(np.sum(mu**1.5)),
        "M_bu": 2.0 - 2.0 * math.sqrt(p2),
        "M_hs": 1.0 - p2,
        "M_tr": er if two_qubit_side else math.nan,
        "R_he": er,
        "R_hs": er,
        "R_tr": er,
        "R_bu": 1.0 - math.sqrt(max(1.0 - er, 0.0)),
        "response_entanglement": er,
    }
    return {
        k: (_clip_measure(v) if not math.isnan(v) else v) for k, v in table.items()
    }


MEASURE_KEYS = (
    "G_tr", "G_hs", "G_bu", "G_he",
    "M_tr", "M_hs", "M_bu", "M_he",
    "R_tr", "R_hs", "R_bu", "R_he",
)


def all_measures(rho: DensityMatrix, config: OptimizerConfig | None = None) -> dict:
    """All twelve measures as MeasureResult records keyed like 'G_he'."""
    cfg = config or DEFAULT_CONFIG
    dists = {
        "tr": Distance.Trace,
        "hs": Distance.HilbertSchmidt,
        "bu": Distance.Bures,
        "he": Distance.Hellinger,
    }
    out = {}
    for tag, d in dists.items():
        out[f"G_{tag}"] = geo_discord(rho, d, cfg)
        out[f"M_{tag}"] = meas_induced_discord(rho, d, cfg)
        out[f"R_{tag}"] = disc_response(rho, d, cfg)
    return out
