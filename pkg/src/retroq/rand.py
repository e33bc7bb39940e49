"""Seeded random generators for states, unitaries, POVMs and measurements."""

from __future__ import annotations

import numpy as np

from .linalg import DEFAULT_TOL, Tolerance, dagger, herm_eig, numeric_rank
from .measurement import Measurement, Povm


def _rng(seed) -> np.random.Generator:
    return np.random.default_rng(seed)


def ginibre(d_out: int, d_in: int, rng) -> np.ndarray:
    """Complex Gaussian matrix."""
    rng = _rng(rng)
    return (rng.standard_normal((d_out, d_in)) + 1j * rng.standard_normal((d_out, d_in))) / np.sqrt(2.0)


def random_unitary(d: int, rng) -> np.ndarray:
    """Haar-distributed unitary (QR of a Ginibre matrix with phase fixing)."""
    q, r = np.linalg.qr(ginibre(d, d, rng))
    phases = np.diag(r).copy()
    phases /= np.abs(phases)
    return q * phases


def random_pure_state(d: int, rng) -> np.ndarray:
    v = ginibre(d, 1, rng).ravel()
    return v / np.linalg.norm(v)


def random_psd(d: int, rng) -> np.ndarray:
    g = ginibre(d, d, rng)
    return g @ dagger(g)


def psd_inv_sqrt(m: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Inverse square root of a positive definite matrix."""
    w, v = herm_eig(m, tol)
    if float(w[-1]) <= 0.0:
        raise ValueError("matrix must be positive definite")
    return (v * (1.0 / np.sqrt(w))) @ dagger(v)


def random_povm(d: int, n: int, rng, tol: Tolerance = DEFAULT_TOL) -> Povm:
    """POVM from n random PSD operators conjugated by the inverse root of their sum."""
    rng = _rng(rng)
    qs = [random_psd(d, rng) for _ in range(n)]
    root = psd_inv_sqrt(sum(qs), tol)
    return Povm(d, [root @ q @ root for q in qs], tol)


def random_projective_povm(d: int, n: int, rng, tol: Tolerance = DEFAULT_TOL) -> Povm:
    """Complete orthogonal projectors from a random partition of a Haar basis."""
    if not 1 <= n <= d:
        raise ValueError(f"need 1 <= n <= {d}, got {n}")
    rng = _rng(rng)
    u = random_unitary(d, rng)
    # every part nonempty: seed one column each, assign the rest at random
    owner = np.concatenate([np.arange(n), rng.integers(0, n, d - n)])
    rng.shuffle(owner)
    elements = []
    for k in range(n):
        cols = u[:, owner == k]
        elements.append(cols @ dagger(cols))
    return Povm(d, elements, tol)


def random_fine_grained(d_in: int, d_out: int, n: int, rng,
                        tol: Tolerance = DEFAULT_TOL) -> Measurement:
    """Generic fine-grained measurement (Kraus operators normalised to completeness)."""
    rng = _rng(rng)
    gs = [ginibre(d_out, d_in, rng) for _ in range(n)]
    root = psd_inv_sqrt(sum(dagger(g) @ g for g in gs), tol)
    return Measurement(d_in, d_out, [[g @ root] for g in gs], tol)


def random_nonsingular_independent(d: int, n: int, rng,
                                   tol: Tolerance = DEFAULT_TOL) -> Measurement:
    """Fine-grained measurement with non-singular, linearly independent Kraus operators."""
    if n > d * d:
        raise ValueError(f"at most {d * d} independent operators exist on dimension {d}")
    rng = _rng(rng)
    while True:
        m = random_fine_grained(d, d, n, rng, tol)
        ops = [g[0] for g in m.outcomes]
        if all(numeric_rank(a, tol) == d for a in ops):
            stack = np.stack([a.ravel() for a in ops])
            if numeric_rank(stack, tol) == n:
                return m


def random_nonsingular_dependent(d: int, n: int, rng,
                                 tol: Tolerance = DEFAULT_TOL) -> Measurement:
    """Fine-grained measurement with non-singular but linearly dependent Kraus operators."""
    if n < 2:
        raise ValueError("need at least two operators for a dependence")
    rng = _rng(rng)
    while True:
        gs = [ginibre(d, d, rng) for _ in range(n - 1)]
        coeffs = rng.standard_normal(n - 1) + 1j * rng.standard_normal(n - 1)
        gs.append(sum(c * g for c, g in zip(coeffs, gs)))
        if any(numeric_rank(g, tol) < d for g in gs):
            continue
        root = psd_inv_sqrt(sum(dagger(g) @ g for g in gs), tol)
        ops = [g @ root for g in gs]
        if all(numeric_rank(a, tol) == d for a in ops):
            return Measurement(d, d, [[a] for a in ops], tol)


def random_nonsingular_pair(d: int, rng, max_cond: float = 1e4) -> tuple[np.ndarray, np.ndarray]:
    """Two well-conditioned square operators (for image-independence witnesses)."""
    rng = _rng(rng)
    while True:
        a1, a2 = ginibre(d, d, rng), ginibre(d, d, rng)
        if np.linalg.cond(a1) < max_cond and np.linalg.cond(a2) < max_cond:
            return a1, a2
