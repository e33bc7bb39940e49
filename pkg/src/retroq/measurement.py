"""Generalised measurements, POVMs, quantum states and their statistics."""

from __future__ import annotations

from dataclasses import InitVar, dataclass

import numpy as np

from .errors import (
    DimensionMismatchError,
    InvalidOperatorSetError,
    NotPsdError,
    ZeroProbabilityOutcomeError,
)
from .linalg import DEFAULT_TOL, Tolerance, as_matrix, as_vector, dagger, fro, partial_trace, psd_eig


@dataclass
class Measurement:
    """A generalised measurement described by groups of Kraus operators.

    Outcome ``k`` carries the nonempty group ``outcomes[k]`` of operators
    mapping the input space (dimension ``d_in``) to the output space
    (dimension ``d_out``).  A measurement is fine-grained when every group
    has exactly one member.  Validation happens at construction, so invalid
    operator families are unrepresentable: the summed products over all
    groups must resolve the identity on the input space and no group may be
    numerically zero.
    """

    d_in: int
    d_out: int
    outcomes: list[list[np.ndarray]]
    tol: InitVar[Tolerance | None] = None

    def __post_init__(self, tol: Tolerance | None) -> None:
        tol = tol or DEFAULT_TOL
        if self.d_in < 1 or self.d_out < 1:
            raise InvalidOperatorSetError("dimensions must be positive")
        if not self.outcomes:
            raise InvalidOperatorSetError("a measurement needs at least one outcome")
        groups: list[list[np.ndarray]] = []
        for k, group in enumerate(self.outcomes):
            if not len(group):
                raise InvalidOperatorSetError(f"outcome {k} has no Kraus operators")
            ops = []
            for a in group:
                a = as_matrix(a)
                if a.shape != (self.d_out, self.d_in):
                    raise DimensionMismatchError(
                        f"operator of shape {a.shape} in outcome {k}; "
                        f"expected ({self.d_out}, {self.d_in})"
                    )
                ops.append(a)
            groups.append(ops)
        self.outcomes = groups

        total = np.zeros((self.d_in, self.d_in), dtype=complex)
        for k, group in enumerate(groups):
            element = sum(dagger(a) @ a for a in group)
            if fro(element) <= tol.eq_residual:
                raise InvalidOperatorSetError(f"outcome {k} has a vanishing POVM element")
            total += element
        eye = np.eye(self.d_in)
        if fro(total - eye) > tol.eq_residual * fro(eye):
            raise InvalidOperatorSetError(
                f"Kraus operators do not resolve the identity "
                f"(deviation {fro(total - eye):.3e})"
            )

    @property
    def n_outcomes(self) -> int:
        return len(self.outcomes)

    @property
    def fine_grained(self) -> bool:
        return all(len(group) == 1 for group in self.outcomes)

    def kraus(self, k: int) -> list[np.ndarray]:
        return self.outcomes[k]

    def all_kraus(self) -> list[np.ndarray]:
        """All Kraus operators, flattened in outcome order."""
        return [a for group in self.outcomes for a in group]


@dataclass
class Povm:
    """Positive operators on a ``d``-dimensional space summing to the identity."""

    d: int
    elements: list[np.ndarray]
    tol: InitVar[Tolerance | None] = None

    def __post_init__(self, tol: Tolerance | None) -> None:
        tol = tol or DEFAULT_TOL
        if self.d < 1:
            raise InvalidOperatorSetError("dimension must be positive")
        if not self.elements:
            raise InvalidOperatorSetError("a POVM needs at least one element")
        elems = []
        for k, e in enumerate(self.elements):
            e = as_matrix(e)
            if e.shape != (self.d, self.d):
                raise DimensionMismatchError(
                    f"element {k} has shape {e.shape}; expected ({self.d}, {self.d})"
                )
            try:
                psd_eig(e, tol, scale=1.0)
            except NotPsdError as exc:
                raise InvalidOperatorSetError(f"element {k} is not PSD: {exc}") from exc
            elems.append(e)
        self.elements = elems
        eye = np.eye(self.d)
        total = sum(elems)
        if fro(total - eye) > tol.eq_residual * fro(eye):
            raise InvalidOperatorSetError(
                f"elements do not sum to the identity (deviation {fro(total - eye):.3e})"
            )

    @property
    def n_outcomes(self) -> int:
        return len(self.elements)


@dataclass
class QuantumState:
    """A pure vector or density matrix, optionally split as system x ancilla.

    ``factor_dims`` records an explicit tensor factorisation ``(d_sys, d_anc)``;
    measurements always act on the first factor.
    """

    kind: str
    data: np.ndarray
    factor_dims: tuple[int, int] | None = None
    tol: InitVar[Tolerance | None] = None

    def __post_init__(self, tol: Tolerance | None) -> None:
        tol = tol or DEFAULT_TOL
        if self.kind == "pure":
            self.data = as_vector(self.data)
            nrm = float(np.linalg.norm(self.data))
            if abs(nrm - 1.0) > tol.eq_residual:
                raise InvalidOperatorSetError(f"pure state must have unit norm, got {nrm!r}")
        elif self.kind == "mixed":
            self.data = as_matrix(self.data)
            if self.data.shape[0] != self.data.shape[1]:
                raise DimensionMismatchError("density matrix must be square")
            try:
                psd_eig(self.data, tol, scale=1.0)
            except NotPsdError as exc:
                raise InvalidOperatorSetError(f"density matrix is not PSD: {exc}") from exc
            tr = float(np.trace(self.data).real)
            if abs(tr - 1.0) > tol.eq_residual:
                raise InvalidOperatorSetError(f"density matrix must have unit trace, got {tr!r}")
        else:
            raise ValueError(f"kind must be 'pure' or 'mixed', got {self.kind!r}")
        if self.factor_dims is not None:
            d_sys, d_anc = self.factor_dims
            if d_sys * d_anc != self.dim:
                raise DimensionMismatchError(
                    f"factor dims {self.factor_dims} do not multiply to {self.dim}"
                )
            self.factor_dims = (int(d_sys), int(d_anc))

    @classmethod
    def pure(cls, vec, factor_dims: tuple[int, int] | None = None,
             tol: Tolerance | None = None) -> "QuantumState":
        return cls("pure", vec, factor_dims, tol)

    @classmethod
    def mixed(cls, rho, factor_dims: tuple[int, int] | None = None,
              tol: Tolerance | None = None) -> "QuantumState":
        return cls("mixed", rho, factor_dims, tol)

    @property
    def dim(self) -> int:
        return self.data.shape[0]

    @property
    def is_bipartite(self) -> bool:
        return self.factor_dims is not None and self.factor_dims[1] > 1

    def density(self) -> np.ndarray:
        if self.kind == "pure":
            return np.outer(self.data, np.conj(self.data))
        return self.data


def povm_of(m: Measurement) -> Povm:
    """The POVM of a measurement: element ``k`` is the group sum of adjoint products."""
    elements = [sum(dagger(a) @ a for a in group) for group in m.outcomes]
    return Povm(m.d_in, elements)


def _split_dims(m: Measurement, s: QuantumState) -> int:
    """Ancilla dimension for ``s`` measured by ``m``; raises on mismatch."""
    if s.factor_dims is not None:
        d_sys, d_anc = s.factor_dims
        if d_sys != m.d_in:
            raise DimensionMismatchError(
                f"measurement expects input dimension {m.d_in}, state factors as {s.factor_dims}"
            )
        return d_anc
    if s.dim != m.d_in:
        raise DimensionMismatchError(
            f"measurement expects input dimension {m.d_in}, state has dimension {s.dim}"
        )
    return 1


def _apply_left(a: np.ndarray, psi: np.ndarray, d_anc: int) -> np.ndarray:
    """Apply ``a`` to the first tensor factor of the vector ``psi``."""
    if d_anc == 1:
        return a @ psi
    return (a @ psi.reshape(a.shape[1], d_anc)).reshape(-1)


def outcome_probabilities(m: Measurement, s: QuantumState,
                          tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Outcome distribution of ``m`` on ``s`` (first factor when bipartite).

    Probabilities below ``tol.rank_rel`` are reported as exactly zero; the
    vector is clamped to [0, 1] but not renormalised.
    """
    d_anc = _split_dims(m, s)
    p = np.empty(m.n_outcomes)
    if s.kind == "pure":
        for k, group in enumerate(m.outcomes):
            total = 0.0
            for a in group:
                phi = _apply_left(a, s.data, d_anc)
                total += float(np.vdot(phi, phi).real)
            p[k] = total
    else:
        rho_sys = s.data if d_anc == 1 else partial_trace(s.data, (m.d_in, d_anc), keep=0)
        for k, group in enumerate(m.outcomes):
            element = sum(dagger(a) @ a for a in group)
            p[k] = float(np.trace(element @ rho_sys).real)
    p[p < tol.rank_rel] = 0.0
    return np.clip(p, 0.0, 1.0)


def apply_outcome(m: Measurement, s: QuantumState, k: int,
                  tol: Tolerance = DEFAULT_TOL) -> QuantumState:
    """Normalised post-measurement state for outcome ``k``.

    Fine-grained pure inputs stay pure; coarse-grained groups and mixed
    inputs produce a density matrix.  Outcomes of zero probability are
    refused rather than divided through.
    """
    if not 0 <= k < m.n_outcomes:
        raise IndexError(f"outcome index {k} out of range")
    d_anc = _split_dims(m, s)
    p = outcome_probabilities(m, s, tol)[k]
    if p <= tol.rank_rel:
        raise ZeroProbabilityOutcomeError(f"outcome {k} has probability {p!r}")
    out_dims = (m.d_out, d_anc) if s.factor_dims is not None else None
    group = m.outcomes[k]
    if s.kind == "pure" and len(group) == 1:
        phi = _apply_left(group[0], s.data, d_anc)
        return QuantumState.pure(phi / np.linalg.norm(phi), out_dims, tol)
    rho = s.density()
    dim_out = m.d_out * d_anc
    out = np.zeros((dim_out, dim_out), dtype=complex)
    for a in group:
        lifted = a if d_anc == 1 else np.kron(a, np.eye(d_anc))
        out += lifted @ rho @ dagger(lifted)
    out /= float(np.trace(out).real)
    return QuantumState.mixed(out, out_dims, tol)
