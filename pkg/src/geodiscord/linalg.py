"""Dense complex linear algebra primitives for small Hermitian problems.

Matrices are carried as 2-D complex128 numpy arrays (row-major). All
operations are pure functions; tolerances follow the package-wide clipping
rules (eigenvalues in [-1e-10, 0) clip to 0, singular values below 1e-12
relative are reported as 0).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

HERM_TOL = 1e-10
EIG_CLIP = 1e-10
SV_RELATIVE_FLOOR = 1e-12


class DimensionMismatch(ValueError):
    """Operand shapes are incompatible with the declared tensor structure."""


class NotHermitian(ValueError):
    """Input violates the Hermitian-symmetry tolerance."""


class NotPSD(ValueError):
    """Input has an eigenvalue below the negative clipping threshold."""


class ConvergenceFailure(RuntimeError):
    """An iterative eigen/SVD solver failed to converge."""


def as_complex_matrix(m) -> np.ndarray:
    """Validate and return a finite 2-D complex matrix."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2:
        raise DimensionMismatch(f"expected a 2-D matrix, got ndim={a.ndim}")
    if not np.all(np.isfinite(a.real)) or not np.all(np.isfinite(a.imag)):
        raise ValueError("matrix contains non-finite entries")
    return a


def dagger(m: np.ndarray) -> np.ndarray:
    return m.conj().T


def is_hermitian(m: np.ndarray, tol: float = HERM_TOL) -> bool:
    m = as_complex_matrix(m)
    return m.shape[0] == m.shape[1] and float(np.max(np.abs(m - dagger(m)))) <= tol


@dataclass(frozen=True)
class HermEigResult:
    """Ascending eigenvalues and the matching unitary of column eigenvectors."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def herm_eig(h, tol: float = HERM_TOL) -> HermEigResult:
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending."""
    h = as_complex_matrix(h)
    if h.shape[0] != h.shape[1]:
        raise DimensionMismatch(f"expected square matrix, got {h.shape}")
    if float(np.max(np.abs(h - dagger(h)))) > tol:
        raise NotHermitian("matrix is not Hermitian within tolerance")
    try:
        w, v = np.linalg.eigh((h + dagger(h)) / 2.0)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - numpy rarely fails here
        raise ConvergenceFailure(str(exc)) from exc
    return HermEigResult(eigenvalues=w, eigenvectors=v)


def svd_values(m) -> np.ndarray:
    """Singular values, descending; values below 1e-12 * sigma_1 report as 0."""
    m = as_complex_matrix(m)
    try:
        s = np.linalg.svd(m, compute_uv=False)
    except np.linalg.LinAlgError as exc:  # pragma: no cover
        raise ConvergenceFailure(str(exc)) from exc
    if s.size and s[0] > 0.0:
        s = np.where(s < SV_RELATIVE_FLOOR * s[0], 0.0, s)
    return s


def psd_sqrt(rho, tol: float = HERM_TOL) -> np.ndarray:
    """Hermitian square root of a PSD matrix with the standard clipping rule."""
    dec = herm_eig(rho, tol=tol)
    w = dec.eigenvalues
    if float(w.min(initial=0.0)) < -EIG_CLIP:
        raise NotPSD(f"eigenvalue {w.min()} below -{EIG_CLIP}")
    w = np.clip(w, 0.0, None)
    v = dec.eigenvectors
    root = (v * np.sqrt(w)) @ dagger(v)
    return (root + dagger(root)) / 2.0


def trace_norm(m) -> float:
    """Sum of singular values."""
    return float(np.sum(svd_values(m)))


def hs_norm(m) -> float:
    """Frobenius (Hilbert-Schmidt) norm."""
    return float(np.linalg.norm(as_complex_matrix(m), "fro"))


def kron(a, b) -> np.ndarray:
    return np.kron(as_complex_matrix(a), as_complex_matrix(b))


def partial_trace(m, n_a: int, n_b: int, keep: str) -> np.ndarray:
    """Trace out one tensor factor of an (n_a*n_b)-dimensional operator."""
    m = as_complex_matrix(m)
    n = n_a * n_b
    if m.shape != (n, n):
        raise DimensionMismatch(f"expected {(n, n)}, got {m.shape}")
    t = m.reshape(n_a, n_b, n_a, n_b)
    tag = keep.strip().upper()
    if tag == "A":
        return np.einsum("ijkj->ik", t)
    if tag == "B":
        return np.einsum("ijil->jl", t)
    raise ValueError(f"keep must be 'A' or 'B', got {keep!r}")


def reshuffle(x, n_a: int, n_b: int) -> np.ndarray:
    """Reshuffled matrix: <i_a, j_a| X^R |k_b, l_b> = <i_a, k_b| X |j_a, l_b>."""
    x = as_complex_matrix(x)
    n = n_a * n_b
    if x.shape != (n, n):
        raise DimensionMismatch(f"expected {(n, n)}, got {x.shape}")
    return (
        x.reshape(n_a, n_b, n_a, n_b).transpose(0, 2, 1, 3).reshape(n_a**2, n_b**2)
    )


def unreshuffle(y, n_a: int, n_b: int) -> np.ndarray:
    """Inverse of reshuffle: recover the (n_a*n_b)-dimensional operator."""
    y = as_complex_matrix(y)
    if y.shape != (n_a**2, n_b**2):
        raise DimensionMismatch(f"expected {(n_a**2, n_b**2)}, got {y.shape}")
    return (
        y.reshape(n_a, n_a, n_b, n_b)
        .transpose(0, 2, 1, 3)
        .reshape(n_a * n_b, n_a * n_b)
    )


def gell_mann(n: int) -> list[np.ndarray]:
    """Generalized Gell-Mann matrices, tr(g_p g_q) = 2 delta_pq.

    Order: symmetric off-diagonal, antisymmetric off-diagonal, diagonal.
    For n=2 this is exactly (sigma_x, sigma_y, sigma_z).
    """
    if n < 2:
        raise DimensionMismatch("Gell-Mann basis needs dimension >= 2")
    out: list[np.ndarray] = []
    for j in range(n):
        for k in range(j + 1, n):
            m = np.zeros((n, n), dtype=complex)
            m[j, k] = m[k, j] = 1.0
            out.append(m)
    for j in range(n):
        for k in range(j + 1, n):
            m = np.zeros((n, n), dtype=complex)
            m[j, k] = -1.0j
            m[k, j] = 1.0j
            out.append(m)
    for d in range(1, n):
        m = np.zeros((n, n), dtype=complex)
        m[np.arange(d), np.arange(d)] = 1.0
        m[d, d] = -d
        out.append(m * np.sqrt(2.0 / (d * (d + 1))))
    return out
