"""Construct perfectly retrodictable measurements realising a given POVM.

Any POVM with no more outcomes than output dimensions admits a Kraus
decomposition whose outcome can be retrodicted for every input: diagonalise
each element, route all of its eigenvector weights onto one member ``x_k``
of an orthonormal reference family in the output space.  Distinct outcomes
then write into orthogonal one-dimensional slots.

The same spectral data also yields single-operator factors
``B_k = sum_r sqrt(w_kr) |x_r><pi_kr|`` with ``B_k^dag B_k`` equal to the
POVM element, and the Kraus family ``|x_k><x_r| B_k`` of the measure-copy-swap
realisation built from those factors.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BadBasisError, InvalidOperatorSetError, TooManyOutcomesError
from .linalg import DEFAULT_TOL, Tolerance, as_vector, fro, psd_eig
from .measurement import Measurement, Povm


@dataclass
class SynthesisResult:
    """Synthesised measurement plus the data it was assembled from.

    ``x_basis`` holds the orthonormal output-space vectors marking each
    outcome; ``spectral_data[k]`` lists the kept ``(weight, eigenvector)``
    pairs of POVM element ``k``.
    """

    measurement: Measurement
    x_basis: list[np.ndarray]
    spectral_data: list[list[tuple[float, np.ndarray]]]


def standard_basis(n: int, dim: int) -> list[np.ndarray]:
    """First ``n`` standard basis vectors of a ``dim``-dimensional space."""
    eye = np.eye(dim, dtype=complex)
    return [eye[:, j].copy() for j in range(n)]


def _checked_basis(x_basis, n: int, dim: int, tol: Tolerance) -> list[np.ndarray]:
    if x_basis is None:
        return standard_basis(n, dim)
    basis = [as_vector(x) for x in x_basis]
    if len(basis) < n:
        raise BadBasisError(f"need {n} reference vectors, got {len(basis)}")
    gram = np.array([[np.vdot(xi, xj) for xj in basis] for xi in basis])
    if np.linalg.norm(gram - np.eye(len(basis))) > tol.eq_residual * len(basis):
        raise BadBasisError("reference vectors are not orthonormal")
    for x in basis:
        if x.size != dim:
            raise BadBasisError(f"reference vector of dimension {x.size}; expected {dim}")
    return basis


def synthesize(p: Povm, d_out: int, x_basis=None,
               tol: Tolerance = DEFAULT_TOL) -> SynthesisResult:
    """Measurement in the equivalence class of ``p`` with retrodictable outcomes.

    Requires the number of outcomes not to exceed ``d_out``; this bound is
    also necessary, since more outcomes than output dimensions cannot have
    orthogonal post-measurement supports.  Eigen-terms below
    ``tol.rank_rel`` of each element's largest eigenvalue are dropped.
    """
    n = p.n_outcomes
    if n > d_out:
        raise TooManyOutcomesError(f"{n} outcomes exceed output dimension {d_out}")
    basis = _checked_basis(x_basis, n, d_out, tol)
    outcomes: list[list[np.ndarray]] = []
    spectral: list[list[tuple[float, np.ndarray]]] = []
    for k, element in enumerate(p.elements):
        w, v = psd_eig(element, tol, scale=1.0)
        lam_max = float(w[0]) if w.size else 0.0
        if lam_max <= 0.0:
            raise InvalidOperatorSetError(f"POVM element {k} is numerically zero")
        group, pairs = [], []
        for r in range(w.size):
            weight = float(w[r])
            if weight <= tol.rank_rel * lam_max:
                continue
            vec = v[:, r]
            group.append(np.sqrt(weight) * np.outer(basis[k], np.conj(vec)))
            pairs.append((weight, vec))
        outcomes.append(group)
        spectral.append(pairs)
    measurement = Measurement(p.d, d_out, outcomes, tol)
    return SynthesisResult(measurement, basis, spectral)


def b_factor(p: Povm, d_out: int | None = None, x_basis=None,
             tol: Tolerance = DEFAULT_TOL) -> list[np.ndarray]:
    """Single-operator factors ``B_k`` with ``B_k^dag B_k`` equal to element ``k``.

    Each factor carries the eigenbasis of its element onto the reference
    family, so the family needs ``max(n_outcomes, p.d)`` vectors; by default
    the first that many standard basis vectors of a ``max(n, p.d)``
    dimensional output space are used.
    """
    n = p.n_outcomes
    need = max(n, p.d)
    if d_out is None:
        d_out = need
    if n > d_out:
        raise TooManyOutcomesError(f"{n} outcomes exceed output dimension {d_out}")
    if d_out < need:
        raise BadBasisError(f"output dimension {d_out} cannot hold {need} orthonormal vectors")
    basis = _checked_basis(x_basis, need, d_out, tol)
    factors = []
    for element in p.elements:
        w, v = psd_eig(element, tol, scale=1.0)
        b = np.zeros((d_out, p.d), dtype=complex)
        for r in range(p.d):
            b += np.sqrt(max(float(w[r]), 0.0)) * np.outer(basis[r], np.conj(v[:, r]))
        factors.append(b)
    return factors


def dilated_kraus(factors: list[np.ndarray], x_basis,
                  tol: Tolerance = DEFAULT_TOL) -> Measurement:
    """Kraus operators ``|x_k><x_r| B_k`` induced by the two-ancilla realisation.

    ``factors`` must be POVM factors in the sense of :func:`b_factor`, with
    ranges inside the span of the reference family.  Numerically vanishing
    operators are dropped from each group.
    """
    if not factors:
        raise InvalidOperatorSetError("need at least one factor")
    n = len(factors)
    d_in = factors[0].shape[1]
    d_out = factors[0].shape[0]
    need = max(n, d_in)
    basis = _checked_basis(x_basis, need, d_out, tol)
    outcomes = []
    for k, b in enumerate(factors):
        candidates = [np.outer(basis[k], np.conj(basis[r]) @ b) for r in range(d_in)]
        weights = [fro(a) ** 2 for a in candidates]
        top = max(weights)
        group = [a for a, w in zip(candidates, weights) if w > tol.rank_rel * top]
        outcomes.append(group)
    return Measurement(d_in, d_out, outcomes, tol)
