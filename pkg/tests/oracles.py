"""Independent reference implementations and frozen expected values.

Everything here is deliberately definitional and self-contained: brute-force
grids over measurement bases or unitary axes, distances computed straight from
their definitions with eigendecompositions, and hand-frozen closed-form
constants. Nothing imports the package under test, so agreement between these
oracles and the library is a genuine cross-check of two different routes.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.optimize import minimize

I2 = np.eye(2)
SX = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SY = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SZ = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
PAULIS = (SX, SY, SZ)


# ---------------------------------------------------------------------------
# Frozen closed-form constants (hand arithmetic, two-qubit Bell projector and
# the Schmidt vector mu = (0.8, 0.2); K = 1 / sum(mu_i^2) = 1/0.68).
# ---------------------------------------------------------------------------

BELL_GEO_HELLINGER = 2.0 - math.sqrt(2.0)
BELL_GEO_BURES = 2.0 - math.sqrt(2.0)
BELL_GEO_HS = 0.5
BELL_GEO_TRACE = 1.0
BELL_MEAS_HELLINGER = 2.0 - math.sqrt(2.0)  # 2 - 2*(2 * 0.5**1.5)
BELL_MEAS_BURES = 2.0 - math.sqrt(2.0)
BELL_RESPONSE_ALL = 1.0  # trace, HS, Hellinger on any Bell projector
BELL_RESPONSE_BURES = 1.0  # 1 - sqrt(1 - 1)

# mu = (0.8, 0.2): sum mu^2 = 0.68, E-response = 4*0.8*0.2 = 0.64
PURE_08_02 = {
    "G_he": 2.0 - 2.0 * math.sqrt(0.68),
    "G_hs": 1.0 - 0.68,
    "G_bu": 2.0 - 2.0 * math.sqrt(0.8),
    "G_tr": 0.64,
    "M_he": 2.0 - 2.0 * (0.8**1.5 + 0.2**1.5),
    "M_bu": 2.0 - 2.0 * math.sqrt(0.68),
    "M_hs": 1.0 - 0.68,
    "M_tr": 0.64,
    "R_he": 0.64,
    "R_hs": 0.64,
    "R_tr": 0.64,
    "R_bu": 1.0 - math.sqrt(1.0 - 0.64),  # = 0.4
}


def exact_response_entanglement(mu) -> float:
    """Pure-state response entanglement for a length-2 Schmidt vector."""
    assert len(mu) == 2
    return float(4.0 * mu[0] * mu[1])


def max_trace_response_curve(p: float) -> float:
    """Piecewise maximal trace response at purity p on [1/4, 1]."""
    if p < 0.25 - 1e-12 or p > 1.0 + 1e-12:
        raise ValueError("purity outside [1/4, 1]")
    if p <= 0.375:
        return (4.0 * p - 1.0) / 2.0
    return (math.sqrt(6.0 * p - 2.0) + 1.0) ** 2 / 9.0


def max_hellinger_response_region1(p: float) -> float:
    """Closed maximal Hellinger response for purity p in [1/4, 1/3] (Werner)."""
    s = math.sqrt(12.0 * p - 3.0)
    return (3.0 - s - math.sqrt(6.0) * math.sqrt(3.0 - 6.0 * p - s)) / 6.0


def werner_hs_response(p: float) -> float:
    """Maximal HS response at purity p (attained on Werner states)."""
    return (4.0 * p - 1.0) / 3.0


# ---------------------------------------------------------------------------
# Small dense helpers (local, eigh-based).
# ---------------------------------------------------------------------------


def dm_sqrt(m: np.ndarray) -> np.ndarray:
    w, v = np.linalg.eigh((m + m.conj().T) / 2.0)
    w = np.clip(w, 0.0, None)
    return (v * np.sqrt(w)) @ v.conj().T


def ref_trace_norm(m: np.ndarray) -> float:
    return float(np.sum(np.linalg.svd(m, compute_uv=False)))


def ref_trace_distance(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.sum(np.abs(np.linalg.eigvalsh(a - b))))


def ref_hs_distance(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.linalg.norm(a - b, "fro"))


def ref_fidelity(a: np.ndarray, b: np.ndarray) -> float:
    sa = dm_sqrt(a)
    w = np.linalg.eigvalsh((sa @ b @ sa + (sa @ b @ sa).conj().T) / 2.0)
    return float(np.sum(np.sqrt(np.clip(w, 0.0, None))) ** 2)


def ref_bures_distance(a: np.ndarray, b: np.ndarray) -> float:
    f = min(ref_fidelity(a, b), 1.0)
    return math.sqrt(max(2.0 - 2.0 * math.sqrt(f), 0.0))


def ref_hellinger_distance(a: np.ndarray, b: np.ndarray) -> float:
    aff = float(np.real(np.trace(dm_sqrt(a) @ dm_sqrt(b))))
    return math.sqrt(max(2.0 - 2.0 * min(aff, 1.0), 0.0))


def qubit_basis(theta: float, phi: float) -> np.ndarray:
    """Orthonormal qubit basis as unitary columns, Bloch axis (theta, phi)."""
    c, s = math.cos(theta / 2.0), math.sin(theta / 2.0)
    e = np.exp(1j * phi)
    return np.array([[c, -s / e], [s * e, c]], dtype=complex)


def bloch_axis(theta: float, phi: float) -> np.ndarray:
    return np.array(
        [
            math.sin(theta) * math.cos(phi),
            math.sin(theta) * math.sin(phi),
            math.cos(theta),
        ]
    )


def fibonacci_sphere(n: int) -> np.ndarray:
    """n reasonably uniform points on the unit 2-sphere."""
    k = np.arange(n)
    z = 1.0 - 2.0 * (k + 0.5) / n
    r = np.sqrt(1.0 - z**2)
    golden = math.pi * (3.0 - math.sqrt(5.0))
    return np.stack([r * np.cos(golden * k), r * np.sin(golden * k), z], axis=1)


def block(x4: np.ndarray, ai: np.ndarray, aj: np.ndarray) -> np.ndarray:
    """<a_i| X |a_j> as an n_b x n_b matrix; x4 is X reshaped (2,nb,2,nb)."""
    return np.einsum("a,aibj,b->ij", ai.conj(), x4, aj)


def post_meas(rho: np.ndarray, basis: np.ndarray, n_b: int) -> np.ndarray:
    out = np.zeros_like(rho)
    for i in range(basis.shape[1]):
        p = np.kron(np.outer(basis[:, i], basis[:, i].conj()), np.eye(n_b))
        out += p @ rho @ p
    return out


def _refined_extremum(f, grid_args, sense: str) -> float:
    """Best grid value, then Nelder-Mead polish from the best grid point."""
    vals = [f(a) for a in grid_args]
    idx = int(np.argmin(vals)) if sense == "min" else int(np.argmax(vals))
    sign = 1.0 if sense == "min" else -1.0
    res = minimize(
        lambda x: sign * f(tuple(x)),
        np.asarray(grid_args[idx], dtype=float),
        method="Nelder-Mead",
        options={"xatol": 1e-9, "fatol": 1e-13, "maxiter": 800},
    )
    best = sign * res.fun
    return min(vals[idx], best) if sense == "min" else max(vals[idx], best)


def _theta_phi_grid(n_theta: int, n_phi: int):
    return [
        (t, p)
        for t in np.linspace(0.0, math.pi, n_theta)
        for p in np.linspace(0.0, 2.0 * math.pi, n_phi, endpoint=False)
    ]


# ---------------------------------------------------------------------------
# Brute-force references for the qubit-qudit measures (A side is a qubit).
# ---------------------------------------------------------------------------


def grid_hellinger_geo(rho: np.ndarray, n_b: int, n_theta=40, n_phi=80) -> float:
    """2 - 2*sqrt(max_basis sum_i tr (<a_i|sqrt(rho)|a_i>)^2) by brute force."""
    sq4 = dm_sqrt(rho).reshape(2, n_b, 2, n_b)

    def s_val(args):
        u = qubit_basis(*args)
        total = 0.0
        for i in range(2):
            b = block(sq4, u[:, i], u[:, i])
            total += float(np.real(np.trace(b @ b)))
        return total

    s_max = _refined_extremum(s_val, _theta_phi_grid(n_theta, n_phi), "max")
    return 2.0 - 2.0 * math.sqrt(min(s_max, 1.0))


def grid_lqu(rho: np.ndarray, n_b: int, n_points: int = 128) -> float:
    """Minimal skew information over observables u.sigma x 1, grid + polish."""
    sq = dm_sqrt(rho)

    def skew(u):
        k = np.kron(u[0] * SX + u[1] * SY + u[2] * SZ, np.eye(n_b))
        a = float(np.real(np.trace(k @ k @ rho)))
        b = float(np.real(np.trace(sq @ k @ sq @ k)))
        return a - b

    best_u = None
    best = np.inf
    for u in fibonacci_sphere(n_points):
        v = skew(u)
        if v < best:
            best, best_u = v, u
    theta0 = math.acos(np.clip(best_u[2], -1.0, 1.0))
    phi0 = math.atan2(best_u[1], best_u[0])
    res = minimize(
        lambda x: skew(bloch_axis(*x)),
        np.array([theta0, phi0]),
        method="Nelder-Mead",
        options={"xatol": 1e-9, "fatol": 1e-13, "maxiter": 800},
    )
    return float(min(best, res.fun))


def grid_trace_response(rho: np.ndarray, n_b: int, n_theta=30, n_phi=60) -> float:
    """min_U ||rho - U rho U*||_tr^2 / 4 over qubit harmonic unitaries."""

    def obj(args):
        u = qubit_basis(*args)
        uu = np.kron(
            np.outer(u[:, 0], u[:, 0].conj()) - np.outer(u[:, 1], u[:, 1].conj()),
            np.eye(n_b),
        )
        return ref_trace_distance(rho, uu @ rho @ uu.conj().T) ** 2 / 4.0

    return _refined_extremum(obj, _theta_phi_grid(n_theta, n_phi), "min")


def grid_bures_response(rho: np.ndarray, n_b: int, n_theta=30, n_phi=60) -> float:
    """1 - max_U sqrt(F(rho, U rho U*)) over qubit harmonic unitaries."""

    def obj(args):
        u = qubit_basis(*args)
        uu = np.kron(
            np.outer(u[:, 0], u[:, 0].conj()) - np.outer(u[:, 1], u[:, 1].conj()),
            np.eye(n_b),
        )
        return math.sqrt(min(ref_fidelity(rho, uu @ rho @ uu.conj().T), 1.0))

    return 1.0 - _refined_extremum(obj, _theta_phi_grid(n_theta, n_phi), "max")


def grid_hellinger_response(rho: np.ndarray, n_b: int, n_theta=30, n_phi=60) -> float:
    """min_U ||sqrt(rho) - U sqrt(rho) U*||_HS^2 over qubit harmonic unitaries."""
    sq = dm_sqrt(rho)

    def obj(args):
        u = qubit_basis(*args)
        uu = np.kron(
            np.outer(u[:, 0], u[:, 0].conj()) - np.outer(u[:, 1], u[:, 1].conj()),
            np.eye(n_b),
        )
        return ref_hs_distance(sq, uu @ sq @ uu.conj().T) ** 2 / 2.0

    return _refined_extremum(obj, _theta_phi_grid(n_theta, n_phi), "min")


def grid_meas_discord(
    rho: np.ndarray, n_b: int, dist: str, n_theta=30, n_phi=60
) -> float:
    """min_basis d(rho, post-measurement rho)^2 straight from the definition."""
    fn = {
        "trace": ref_trace_distance,
        "hs": ref_hs_distance,
        "bures": ref_bures_distance,
        "hellinger": ref_hellinger_distance,
    }[dist]

    def obj(args):
        u = qubit_basis(*args)
        return fn(rho, post_meas(rho, u, n_b)) ** 2

    return _refined_extremum(obj, _theta_phi_grid(n_theta, n_phi), "min")


# ---------------------------------------------------------------------------
# Reshuffling / channel references (loop-based, definitional).
# ---------------------------------------------------------------------------


def ref_reshuffle(x: np.ndarray, n_a: int, n_b: int) -> np.ndarray:
    out = np.zeros((n_a * n_a, n_b * n_b), dtype=complex)
    for i in range(n_a):
        for j in range(n_a):
            for k in range(n_b):
                for m in range(n_b):
                    out[i * n_a + j, k * n_b + m] = x[i * n_b + k, j * n_b + m]
    return out


def ref_superoperator(kraus: list[np.ndarray]) -> np.ndarray:
    """Matrix of rho -> sum K rho K* on row-major vectorized matrix units."""
    n = kraus[0].shape[0]
    sop = np.zeros((n * n, n * n), dtype=complex)
    for k in range(n):
        for m in range(n):
            unit = np.zeros((n, n), dtype=complex)
            unit[k, m] = 1.0
            img = sum(kk @ unit @ kk.conj().T for kk in kraus)
            sop[:, k * n + m] = img.reshape(-1)
    return sop


def haar_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    q, r = np.linalg.qr(g)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_density(n: int, rank: int, rng: np.random.Generator) -> np.ndarray:
    g = rng.normal(size=(n, rank)) + 1j * rng.normal(size=(n, rank))
    m = g @ g.conj().T
    return m / np.real(np.trace(m))
