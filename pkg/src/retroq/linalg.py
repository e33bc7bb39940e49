"""Dense complex linear-algebra kernel consumed by every other module."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatchError,
    NotHermitianError,
    NotPsdError,
    NotSquareError,
    ShapeMismatchError,
)


@dataclass(frozen=True)
class Tolerance:
    """Numerical thresholds used for all equality / rank / positivity decisions.

    eq_residual: relative Frobenius-norm threshold for matrix equations.
    rank_rel:    relative singular-value (or eigenvalue) cutoff for ranks and supports.
    psd_floor:   most-negative admissible eigenvalue, relative to the spectral scale.
    """

    eq_residual: float = 1e-9
    rank_rel: float = 1e-10
    psd_floor: float = 1e-9

    def __post_init__(self) -> None:
        for name in ("eq_residual", "rank_rel", "psd_floor"):
            value = getattr(self, name)
            if not 0.0 < value < 1.0:
                raise ValueError(f"{name} must lie strictly between 0 and 1, got {value!r}")


DEFAULT_TOL = Tolerance()


def as_matrix(a) -> np.ndarray:
    """Coerce to a 2-D complex128 array, rejecting NaN/Inf entries."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2:
        raise ShapeMismatchError(f"expected a matrix, got array of dimension {m.ndim}")
    if not np.all(np.isfinite(m.real)) or not np.all(np.isfinite(m.imag)):
        raise ValueError("matrix entries must be finite")
    return m


def as_vector(a) -> np.ndarray:
    """Coerce to a 1-D complex128 array, rejecting NaN/Inf entries."""
    v = np.asarray(a, dtype=complex)
    if v.ndim != 1:
        raise ShapeMismatchError(f"expected a vector, got array of dimension {v.ndim}")
    if not np.all(np.isfinite(v.real)) or not np.all(np.isfinite(v.imag)):
        raise ValueError("vector entries must be finite")
    return v


def dagger(m: np.ndarray) -> np.ndarray:
    return np.conj(m).T


def fro(m: np.ndarray) -> float:
    """Frobenius norm."""
    return float(np.linalg.norm(m))


def herm_eig(m, tol: Tolerance = DEFAULT_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix with eigenvalues descending.

    Returns ``(w, v)`` such that ``m ~ v @ diag(w) @ v.conj().T`` with
    orthonormal eigenvector columns.  The matrix is symmetrised before the
    decomposition, which removes representation noise but rejects inputs
    whose anti-Hermitian part exceeds ``tol.eq_residual`` relative to the
    norm of the matrix.
    """
    m = as_matrix(m)
    rows, cols = m.shape
    if rows != cols:
        raise NotSquareError(f"expected a square matrix, got shape {m.shape}")
    scale = fro(m)
    if scale > 0.0 and fro(m - dagger(m)) > tol.eq_residual * scale:
        raise NotHermitianError("matrix is not Hermitian within tolerance")
    w, v = np.linalg.eigh((m + dagger(m)) / 2.0)
    order = np.argsort(-w, kind="stable")
    return w[order], v[:, order]


def psd_eig(m, tol: Tolerance = DEFAULT_TOL,
            scale: float | None = None) -> tuple[np.ndarray, np.ndarray]:
    """herm_eig plus a positivity check against ``tol.psd_floor``.

    The floor is relative to ``scale`` when given (use 1.0 for operators
    bounded by the identity, such as POVM elements and density matrices),
    otherwise to the matrix's own spectral magnitude.
    """
    w, v = herm_eig(m, tol)
    if w.size:
        ref = scale if scale is not None else max(float(w[0]), -float(w[-1]))
        if float(w[-1]) < -tol.psd_floor * ref:
            raise NotPsdError(
                f"most negative eigenvalue {w[-1]:.3e} below the admissible floor"
            )
    return w, v


def support_projector(g, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Orthogonal projector onto the span of nonzero-eigenvalue eigenvectors of PSD ``g``.

    The zero matrix has empty support and maps to the zero matrix.
    """
    w, v = psd_eig(g, tol)
    lam_max = float(w[0]) if w.size else 0.0
    if lam_max <= 0.0:
        return np.zeros((w.size, w.size), dtype=complex)
    keep = w > tol.rank_rel * lam_max
    vk = v[:, keep]
    return vk @ dagger(vk)


def numeric_rank(m, tol: Tolerance = DEFAULT_TOL) -> int:
    """Number of singular values above ``tol.rank_rel`` times the largest (0 for the zero matrix)."""
    m = as_matrix(m)
    if m.size == 0:
        return 0
    s = np.linalg.svd(m, compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.count_nonzero(s > tol.rank_rel * s[0]))


def kron(a, b) -> np.ndarray:
    """Kronecker product of two matrices."""
    return np.kron(as_matrix(a), as_matrix(b))


def schmidt(
    v, d_left: int, d_right: int, tol: Tolerance = DEFAULT_TOL
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Schmidt decomposition of a bipartite unit vector.

    Returns ``(coeffs, left, right)`` with nonnegative coefficients in
    descending order and orthonormal columns, so that

        v = sum_j coeffs[j] * kron(left[:, j], right[:, j]).

    The coefficients are the singular values of the ``d_left x d_right``
    reshaping of ``v``; their squares sum to one.
    """
    v = as_vector(v)
    if v.size != d_left * d_right:
        raise DimensionMismatchError(
            f"vector of length {v.size} does not factor as {d_left} x {d_right}"
        )
    nrm = float(np.linalg.norm(v))
    if abs(nrm - 1.0) > tol.eq_residual:
        raise ValueError(f"expected a unit vector, got norm {nrm!r}")
    c = v.reshape(d_left, d_right)
    u, s, vh = np.linalg.svd(c, full_matrices=False)
    return s, u, vh.T


def schmidt_rank(coeffs: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> int:
    """Number of Schmidt coefficients above ``tol.rank_rel``."""
    return int(np.count_nonzero(np.asarray(coeffs) > tol.rank_rel))


def partial_trace(rho, dims: tuple[int, int], keep: int) -> np.ndarray:
    """Trace out one factor of an operator on a two-factor space.

    ``dims`` is ``(d_left, d_right)``; ``keep`` selects the surviving factor
    (0 = left, 1 = right).  Trace and Hermiticity are preserved.
    """
    rho = as_matrix(rho)
    d_left, d_right = dims
    n = d_left * d_right
    if rho.shape != (n, n):
        raise DimensionMismatchError(
            f"operator of shape {rho.shape} does not act on a {d_left} x {d_right} product space"
        )
    t = rho.reshape(d_left, d_right, d_left, d_right)
    if keep == 0:
        return np.einsum("ijkj->ik", t)
    if keep == 1:
        return np.einsum("ijil->jl", t)
    raise ValueError("keep must be 0 (left factor) or 1 (right factor)")
