"""Bipartite density matrices: construction, decomposition, random sampling.

Includes the named two-qubit families used throughout the package: Bell
projectors, Werner states, and the fixed-purity families that maximize the
trace and Hellinger discords of response.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from . import linalg
from .linalg import DimensionMismatch, NotHermitian, NotPSD

STATE_TOL = 1e-10
FIXED_PURITY_ATTEMPTS = 10_000


class NotNormalized(ValueError):
    """Vector or weight normalization violated."""


class BadRank(ValueError):
    """Requested rank outside [1, n_A n_B]."""


class UnachievablePurity(ValueError):
    """No eigenvalue vector of the requested rank attains the purity."""


class PurityOutOfBranch(ValueError):
    """Purity outside the validity interval of the requested Werner branch."""


class PurityOutOfRange(ValueError):
    """Purity outside [1/4, 1] for a two-qubit family."""


class WrongDimension(ValueError):
    """Operation requires a qubit on side A (n_A = 2)."""


class BadDistribution(ValueError):
    """Weights are not a probability distribution or bases are not orthonormal."""


@dataclass(frozen=True)
class DensityMatrix:
    """Bipartite state on C^{n_a} (x) C^{n_b}; validated on construction."""

    n_a: int
    n_b: int
    mat: np.ndarray

    def __post_init__(self):
        mat = linalg.as_complex_matrix(self.mat)
        object.__setattr__(self, "mat", mat)
        n = self.n_a * self.n_b
        if mat.shape != (n, n):
            raise DimensionMismatch(f"expected {(n, n)}, got {mat.shape}")
        if float(np.max(np.abs(mat - mat.conj().T))) > STATE_TOL:
            raise NotHermitian("density matrix is not Hermitian within 1e-10")
        if abs(float(np.real(np.trace(mat))) - 1.0) > STATE_TOL:
            raise NotNormalized("trace differs from 1 by more than 1e-10")
        w = np.linalg.eigvalsh((mat + mat.conj().T) / 2.0)
        if float(w.min()) < -linalg.EIG_CLIP:
            raise NotPSD(f"eigenvalue {w.min()} below -1e-10")

    @property
    def dim(self) -> int:
        return self.n_a * self.n_b

    def purity(self) -> float:
        return float(np.real(np.trace(self.mat @ self.mat)))

    def marginal(self, keep: str) -> np.ndarray:
        return linalg.partial_trace(self.mat, self.n_a, self.n_b, keep)


def purity(rho: DensityMatrix) -> float:
    return rho.purity()


@dataclass(frozen=True)
class SchmidtDecomposition:
    """Descending Schmidt weights mu (summing to 1) and orthonormal bases."""

    coefficients: np.ndarray
    basis_a: np.ndarray
    basis_b: np.ndarray

    def __post_init__(self):
        mu = np.asarray(self.coefficients, dtype=float)
        object.__setattr__(self, "coefficients", mu)
        if abs(float(mu.sum()) - 1.0) > STATE_TOL:
            raise NotNormalized("Schmidt coefficients must sum to 1")

    def reconstruct(self) -> np.ndarray:
        amps = np.sqrt(np.clip(self.coefficients, 0.0, None))
        n_a, r = self.basis_a.shape
        n_b = self.basis_b.shape[0]
        v = np.zeros(n_a * n_b, dtype=complex)
        for i in range(r):
            v += amps[i] * np.kron(self.basis_a[:, i], self.basis_b[:, i])
        return v


@dataclass(frozen=True)
class FanoSqrtDecomposition:
    """Coefficients of sqrt(rho) in the 1/sqrt(2 n_b) product operator basis."""

    t0: float
    x: np.ndarray
    y: np.ndarray
    t_mat: np.ndarray
    n_b: int

    def norm_square(self) -> float:
        return float(
            self.t0**2
            + self.x @ self.x
            + self.y @ self.y
            + np.sum(self.t_mat * self.t_mat)
        )

    def k_matrix(self) -> np.ndarray:
        """The 3x3 matrix x x^T + T T^T whose top eigenvalue enters Eq-style closed forms."""
        return np.outer(self.x, self.x) + self.t_mat @ self.t_mat.T

    def reconstruct(self) -> np.ndarray:
        paulis = linalg.gell_mann(2)
        gammas = [g * math.sqrt(self.n_b / 2.0) for g in linalg.gell_mann(self.n_b)]
        eye_b = np.eye(self.n_b)
        out = self.t0 * np.kron(np.eye(2), eye_b).astype(complex)
        for m in range(3):
            out += self.x[m] * np.kron(paulis[m], eye_b)
        for p, gp in enumerate(gammas):
            out += self.y[p] * np.kron(np.eye(2), gp)
        for m in range(3):
            for p, gp in enumerate(gammas):
                out += self.t_mat[m, p] * np.kron(paulis[m], gp)
        return out / math.sqrt(2.0 * self.n_b)


@dataclass(frozen=True)
class HarmonicSpectrum:
    """The non-degenerate unitary spectrum {exp(2 pi i j / n_a)}."""

    n_a: int
    phases: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "phases", np.asarray(self.phases, dtype=complex))


def harmonic_spectrum(n_a: int) -> HarmonicSpectrum:
    j = np.arange(1, n_a + 1)
    return HarmonicSpectrum(n_a=n_a, phases=np.exp(2j * np.pi * j / n_a))


# ---------------------------------------------------------------------------
# Basic constructors and decompositions.
# ---------------------------------------------------------------------------


def from_pure(v, n_a: int, n_b: int) -> DensityMatrix:
    v = np.asarray(v, dtype=complex).reshape(-1)
    if v.size != n_a * n_b:
        raise DimensionMismatch(f"vector length {v.size} != {n_a * n_b}")
    if abs(float(np.linalg.norm(v)) - 1.0) > STATE_TOL:
        raise NotNormalized("pure-state vector must be normalized")
    return DensityMatrix(n_a=n_a, n_b=n_b, mat=np.outer(v, v.conj()))


def schmidt(v, n_a: int, n_b: int) -> SchmidtDecomposition:
    v = np.asarray(v, dtype=complex).reshape(-1)
    if v.size != n_a * n_b:
        raise DimensionMismatch(f"vector length {v.size} != {n_a * n_b}")
    if abs(float(np.linalg.norm(v)) - 1.0) > STATE_TOL:
        raise NotNormalized("Schmidt decomposition needs a normalized vector")
    u, s, vh = np.linalg.svd(v.reshape(n_a, n_b), full_matrices=False)
    return SchmidtDecomposition(coefficients=s**2, basis_a=u, basis_b=vh.T)


def schmidt_number(dec: SchmidtDecomposition) -> float:
    return float(1.0 / np.sum(dec.coefficients**2))


def fano_sqrt_decomposition(rho: DensityMatrix) -> FanoSqrtDecomposition:
    """Coefficients (t0, x, y, T) of sqrt(rho) for a qubit-qudit state."""
    if rho.n_a != 2:
        raise WrongDimension("Fano square-root decomposition requires n_a = 2")
    n_b = rho.n_b
    sq = linalg.psd_sqrt(rho.mat)
    norm = math.sqrt(2.0 * n_b)
    paulis = linalg.gell_mann(2)
    gammas = [g * math.sqrt(n_b / 2.0) for g in linalg.gell_mann(n_b)]
    eye_b = np.eye(n_b)
    t0 = float(np.real(np.trace(sq))) / norm
    x = np.array(
        [float(np.real(np.trace(sq @ np.kron(p, eye_b)))) for p in paulis]
    ) / norm
    y = np.array(
        [float(np.real(np.trace(sq @ np.kron(np.eye(2), g)))) for g in gammas]
    ) / norm
    t_mat = np.array(
        [
            [float(np.real(np.trace(sq @ np.kron(p, g)))) for g in gammas]
            for p in paulis
        ]
    ) / norm
    dec = FanoSqrtDecomposition(t0=t0, x=x, y=y, t_mat=t_mat, n_b=n_b)
    if abs(dec.norm_square() - 1.0) > 1e-9:
        raise NotNormalized("Fano coefficient normalization failed")
    return dec


def classical_quantum_state(weights, basis_a, bases_b) -> DensityMatrix:
    """sum_ij q_ij |a_i><a_i| (x) |b^(i)_j><b^(i)_j| from orthonormal bases."""
    q = np.asarray(weights, dtype=float)
    if q.ndim != 2:
        raise BadDistribution("weights must be an n_a x n_b array")
    n_a, n_b = q.shape
    if np.any(q < -1e-12) or abs(float(q.sum()) - 1.0) > 1e-9:
        raise BadDistribution("weights must be a probability distribution")
    a = linalg.as_complex_matrix(basis_a)
    if a.shape != (n_a, n_a) or np.max(np.abs(a.conj().T @ a - np.eye(n_a))) > 1e-10:
        raise BadDistribution("basis_a must be an n_a x n_a unitary")
    if isinstance(bases_b, np.ndarray) and np.asarray(bases_b).ndim == 2:
        b_list = [linalg.as_complex_matrix(bases_b)] * n_a
    else:
        b_list = [linalg.as_complex_matrix(b) for b in bases_b]
    if len(b_list) != n_a:
        raise BadDistribution("need one B basis per A basis vector")
    for b in b_list:
        if b.shape != (n_b, n_b) or np.max(np.abs(b.conj().T @ b - np.eye(n_b))) > 1e-10:
            raise BadDistribution("each B basis must be an n_b x n_b unitary")
    mat = np.zeros((n_a * n_b, n_a * n_b), dtype=complex)
    for i in range(n_a):
        pa = np.outer(a[:, i], a[:, i].conj())
        for j in range(n_b):
            pb = np.outer(b_list[i][:, j], b_list[i][:, j].conj())
            mat += q[i, j] * np.kron(pa, pb)
    return DensityMatrix(n_a=n_a, n_b=n_b, mat=mat)


# ---------------------------------------------------------------------------
# Random sampling.
# ---------------------------------------------------------------------------


def _as_rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def random_haar_unitary(n: int, seed) -> np.ndarray:
    """Haar unitary via complex Ginibre + QR with R-diagonal phase fix."""
    rng = _as_rng(seed)
    g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    q, r = np.linalg.qr(g)
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_pure_vector(n: int, seed) -> np.ndarray:
    rng = _as_rng(seed)
    v = rng.normal(size=n) + 1j * rng.normal(size=n)
    return v / np.linalg.norm(v)


def random_haar_state(n_a: int, n_b: int, rank: int, seed) -> DensityMatrix:
    """Induced-measure random state: partial trace of a Haar pure state over
    a rank-dimensional ancilla (Ginibre construction)."""
    n = n_a * n_b
    if not 1 <= rank <= n:
        raise BadRank(f"rank must be in [1, {n}], got {rank}")
    rng = _as_rng(seed)
    g = rng.normal(size=(n, rank)) + 1j * rng.normal(size=(n, rank))
    m = g @ g.conj().T
    m /= np.real(np.trace(m))
    m = (m + m.conj().T) / 2.0
    return DensityMatrix(n_a=n_a, n_b=n_b, mat=m)


def _fixed_purity_eigenvalues(p: float, r: int, rng: np.random.Generator) -> np.ndarray:
    """Eigenvalue vector of length r with sum 1 and sum of squares p."""
    if r == 1:
        if abs(p - 1.0) > 1e-9:
            raise UnachievablePurity("rank 1 requires purity 1")
        return np.array([1.0])
    if r == 2:
        if p < 0.5 - 1e-12:
            raise UnachievablePurity("rank 2 requires purity >= 1/2")
        d = math.sqrt(max(2.0 * p - 1.0, 0.0))
        return np.array([(1.0 + d) / 2.0, (1.0 - d) / 2.0])
    if abs(p - 1.0 / r) < 1e-12:
        return np.full(r, 1.0 / r)
    # Sample the r-2 free eigenvalues uniformly from a small window, then
    # complete with the two-variable trace/purity solution; two alternating
    # window shapes cover the low- and high-purity regimes.
    w_low = min(1.0 / r, math.sqrt(max(p - 1.0 / r, 0.0)))
    lo_window = (max(0.0, 1.0 / r - w_low), min(1.0, 1.0 / r + w_low))
    hi_edge = max(2.0 * (1.0 - math.sqrt(p)) / (r - 2), 1e-9)
    hi_window = (0.0, min(hi_edge, 1.0))
    for attempt in range(FIXED_PURITY_ATTEMPTS):
        a, b = lo_window if attempt % 2 == 0 else hi_window
        s_free = rng.uniform(a, b, size=r - 2)
        s, t = float(s_free.sum()), float(s_free @ s_free)
        if s > 1.0 or t > p:
            continue
        disc = 2.0 * (p - t) - (1.0 - s) ** 2
        if disc < 0.0 or (1.0 - s) ** 2 < (p - t) - 1e-15:
            continue
        root = math.sqrt(max(disc, 0.0))
        top = ((1.0 - s) + root) / 2.0
        bot = ((1.0 - s) - root) / 2.0
        if bot < -1e-12:
            continue
        return np.concatenate([[top, max(bot, 0.0)], s_free])
    raise UnachievablePurity(
        f"no rank-{r} eigenvalue vector with purity {p} found in "
        f"{FIXED_PURITY_ATTEMPTS} attempts"
    )


def random_fixed_purity_state(n_a: int, n_b: int, p: float, rank: int, seed) -> DensityMatrix:
    """Random state with tr(rho^2) = p, rank <= rank, Haar eigenvectors."""
    n = n_a * n_b
    if not 1 <= rank <= n:
        raise BadRank(f"rank must be in [1, {n}], got {rank}")
    if p < 1.0 / rank - 1e-12 or p > 1.0 + 1e-12:
        raise UnachievablePurity(f"purity {p} not in [1/{rank}, 1]")
    rng = _as_rng(seed)
    lam = _fixed_purity_eigenvalues(min(p, 1.0), rank, rng)
    full = np.zeros(n)
    full[: rank] = lam
    u = random_haar_unitary(n, rng)
    m = (u * full) @ u.conj().T
    m = (m + m.conj().T) / 2.0
    return DensityMatrix(n_a=n_a, n_b=n_b, mat=m)


# ---------------------------------------------------------------------------
# Named two-qubit families.
# ---------------------------------------------------------------------------

_BELL_LABELS = ("phi+", "phi-", "psi+", "psi-")


def bell_vector(label: str) -> np.ndarray:
    tag = label.strip().lower()
    s = 1.0 / math.sqrt(2.0)
    vecs = {
        "phi+": np.array([s, 0.0, 0.0, s]),
        "phi-": np.array([s, 0.0, 0.0, -s]),
        "psi+": np.array([0.0, s, s, 0.0]),
        "psi-": np.array([0.0, s, -s, 0.0]),
    }
    if tag not in vecs:
        raise ValueError(f"unknown Bell label {label!r}; expected one of {_BELL_LABELS}")
    return vecs[tag].astype(complex)


def bell_state(label: str) -> DensityMatrix:
    return from_pure(bell_vector(label), 2, 2)


def werner_state(p: float, branch: str = "minus") -> DensityMatrix:
    """a/4 * identity + (1-a) |psi-><psi-| with a = 1 +/- sqrt((4P-1)/3)."""
    tag = branch.strip().lower()
    if tag not in ("plus", "minus"):
        raise ValueError(f"branch must be 'plus' or 'minus', got {branch!r}")
    hi = 1.0 / 3.0 if tag == "plus" else 1.0
    if p < 0.25 - 1e-12 or p > hi + 1e-12:
        raise PurityOutOfBranch(
            f"purity {p} outside [{0.25}, {hi}] for branch {tag}"
        )
    root = math.sqrt(max((4.0 * p - 1.0) / 3.0, 0.0))
    a = 1.0 + root if tag == "plus" else 1.0 - root
    psi = bell_vector("psi-")
    mat = a * np.eye(4, dtype=complex) / 4.0 + (1.0 - a) * np.outer(psi, psi.conj())
    return DensityMatrix(n_a=2, n_b=2, mat=mat)


def _bell_mixture(weights) -> DensityMatrix:
    mat = np.zeros((4, 4), dtype=complex)
    for w, label in zip(weights, _BELL_LABELS):
        if w > 0.0:
            v = bell_vector(label)
            mat += w * np.outer(v, v.conj())
    return DensityMatrix(n_a=2, n_b=2, mat=mat)


def max_trace_discord_state(p: float) -> DensityMatrix:
    """Bell-diagonal state maximizing the trace discord of response at purity p."""
    if p < 0.25 - 1e-12 or p > 1.0 + 1e-12:
        raise PurityOutOfRange(f"purity {p} not in [1/4, 1]")
    p = min(max(p, 0.25), 1.0)
    if p <= 0.375:
        s = math.sqrt(max(8.0 * p - 2.0, 0.0))
        weights = ((1.0 + s) / 4.0, (1.0 - s) / 4.0, 0.25, 0.25)
    else:
        s = math.sqrt(6.0 * p - 2.0)
        weights = ((2.0 - s) / 6.0, (2.0 - s) / 6.0, (2.0 + 2.0 * s) / 6.0, 0.0)
    return _bell_mixture(weights)


def max_trace_response_curve(p: float) -> float:
    """Maximal trace discord of response at purity p (piecewise closed form)."""
    if p < 0.25 - 1e-12 or p > 1.0 + 1e-12:
        raise PurityOutOfRange(f"purity {p} not in [1/4, 1]")
    if p <= 0.375:
        return (4.0 * p - 1.0) / 2.0
    return (math.sqrt(6.0 * p - 2.0) + 1.0) ** 2 / 9.0


def _rank3_hellinger_family(p: float, b: float, phi: float) -> np.ndarray | None:
    """Rank-3 candidate for the maximal Hellinger response at purity p, or
    None when (b, phi) is infeasible."""
    a_sq = 2.0 * p - 1.0 + 4.0 * b - 12.0 * b * b
    if a_sq < 0.0 or b < 0.0:
        return None
    a = 0.5 * math.sqrt(a_sq)
    lam_top = 0.5 + a - b
    lam_bot = 0.5 - a - b
    if lam_bot < -1e-14 or lam_top < 0.0:
        return None
    c, s = math.cos(phi), math.sin(phi)
    mat = np.zeros((4, 4), dtype=complex)
    mat[0, 0] = lam_top
    mat[3, 3] = max(lam_bot, 0.0)
    mat[1, 1] = 2.0 * b * c * c
    mat[2, 2] = 2.0 * b * s * s
    mat[1, 2] = mat[2, 1] = 2.0 * b * c * s
    mat[0, 0] += lam_bot - mat[3, 3]
    return mat


def _rank2_hellinger_family(p: float) -> np.ndarray:
    """Rank-2 maximal Hellinger-response state for p > 0.503 (closed form)."""
    b = (math.sqrt(2.0 * p - 1.0) + 1.0) / 4.0
    if p >= 1.0 - 1e-12:
        c = -1.0 / math.sqrt(2.0)
    else:
        s2p = math.sqrt(2.0 - 2.0 * p)
        r1 = math.sqrt(max(-4.0 * p * p + 6.0 * p - 2.0, 0.0))
        inner = (
            3.0 * p
            - 2.0 * s2p
            - 3.0 * math.sqrt(max(2.0 * p - 1.0, 0.0))
            + 2.0 * r1
        )
        rad = (p - 1.0) * inner
        outer = -4.0 * p - s2p + r1 + 4.0 + 2.0 * math.sqrt(max(rad, 0.0))
        c = -math.sqrt(max(outer, 0.0)) / (2.0 * s2p)
        c = min(max(c, -1.0), 1.0)
    s = math.sqrt(max(1.0 - c * c, 0.0))
    mat = np.zeros((4, 4), dtype=complex)
    mat[0, 0] = 1.0 - 2.0 * b
    mat[1, 1] = 2.0 * b * c * c
    mat[2, 2] = 2.0 * b * s * s
    mat[1, 2] = mat[2, 1] = 2.0 * b * c * s
    return mat


def _region2_parameters(p: float) -> tuple[float, float]:
    """(b, phi) maximizing the Hellinger response of the rank-3 family at p:
    64x64 grid then local refinement."""
    from .measures import hellinger_response_closed  # local import avoids a cycle

    def value(b: float, phi: float) -> float:
        mat = _rank3_hellinger_family(p, b, phi)
        if mat is None:
            return -1.0
        try:
            rho = DensityMatrix(n_a=2, n_b=2, mat=mat)
        except (NotPSD, NotNormalized):
            return -1.0
        return hellinger_response_closed(rho)

    b_hi = (1.0 + math.sqrt(max(6.0 * p - 2.0, 0.0))) / 6.0
    b_lo = max(0.0, (1.0 - math.sqrt(max(6.0 * p - 2.0, 0.0))) / 6.0)
    bs = np.linspace(b_lo + 1e-9, b_hi - 1e-9, 64)
    phis = np.linspace(0.0, math.pi / 2.0, 64)
    best = (-1.0, bs[0], phis[0])
    for b in bs:
        for phi in phis:
            v = value(b, phi)
            if v > best[0]:
                best = (v, b, phi)
    res = minimize(
        lambda x: -value(x[0], x[1]),
        np.array([best[1], best[2]]),
        method="Nelder-Mead",
        options={"xatol": 1e-7, "fatol": 1e-9, "maxiter": 400},
    )
    if -res.fun >= best[0]:
        return float(res.x[0]), float(res.x[1])
    return float(best[1]), float(best[2])


def max_hellinger_discord_state(p: float) -> DensityMatrix:
    """State maximizing the Hellinger discord of response at purity p."""
    if p < 0.25 - 1e-12 or p > 1.0 + 1e-12:
        raise PurityOutOfRange(f"purity {p} not in [1/4, 1]")
    p = min(max(p, 0.25), 1.0)
    if p <= 1.0 / 3.0:
        return werner_state(p, branch="plus")
    if p <= 0.503:
        b, phi = _region2_parameters(p)
        mat = _rank3_hellinger_family(p, b, phi)
        return DensityMatrix(n_a=2, n_b=2, mat=mat)
    return DensityMatrix(n_a=2, n_b=2, mat=_rank2_hellinger_family(p))


def max_hellinger_response_region1(p: float) -> float:
    """Closed maximal Hellinger response on [1/4, 1/3] (Werner plus branch)."""
    if p < 0.25 - 1e-12 or p > 1.0 / 3.0 + 1e-12:
        raise PurityOutOfRange(f"purity {p} not in [1/4, 1/3]")
    s = math.sqrt(max(12.0 * p - 3.0, 0.0))
    return (3.0 - s - math.sqrt(6.0) * math.sqrt(max(3.0 - 6.0 * p - s, 0.0))) / 6.0


# ---------------------------------------------------------------------------
# Serialization.
# ---------------------------------------------------------------------------


def state_to_json(rho: DensityMatrix) -> str:
    return json.dumps(
        {
            "n_a": rho.n_a,
            "n_b": rho.n_b,
            "re": rho.mat.real.tolist(),
            "im": rho.mat.imag.tolist(),
        }
    )


def state_from_json(text: str) -> DensityMatrix:
    data = json.loads(text)
    mat = np.asarray(data["re"], dtype=float) + 1j * np.asarray(data["im"], dtype=float)
    return DensityMatrix(n_a=int(data["n_a"]), n_b=int(data["n_b"]), mat=mat)


def eigenvalue_table_csv(states) -> str:
    """CSV with one row of descending eigenvalues per state."""
    lines = []
    width = 0
    rows = []
    for rho in states:
        w = np.sort(np.linalg.eigvalsh(rho.mat))[::-1]
        width = max(width, w.size)
        rows.append(w)
    lines.append("index," + ",".join(f"lambda_{i}" for i in range(width)))
    for idx, w in enumerate(rows):
        vals = [f"{v:.17g}" for v in w] + [""] * (width - w.size)
        lines.append(f"{idx}," + ",".join(vals))
    return "\n".join(lines) + "\n"
