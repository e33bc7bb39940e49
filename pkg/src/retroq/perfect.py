"""Perfect outcome retrodiction: decision, retrodictor construction, projective equivalence.

A measurement outcome can be retrodicted with certainty for every input
state exactly when Kraus operators belonging to different outcomes have
vanishing cross products.  When that holds, the supports of the group sums
``G_k = sum_r A_kr A_kr^dag`` on the output space are mutually orthogonal,
and projecting onto them identifies the outcome regardless of the input.
"""

from __future__ import annotations

from dataclasses import InitVar, dataclass

import numpy as np

from .errors import InvalidOperatorSetError, NotFineGrainedError, NotPerfectlyRetrodictableError
from .linalg import DEFAULT_TOL, Tolerance, as_matrix, dagger, fro, support_projector
from .measurement import Measurement, Povm


@dataclass
class PerfectCheckReport:
    """Verdict of the all-pairs cross-product test.

    ``max_residual`` is the largest scale-normalised Frobenius norm of a
    cross product between operators of different outcomes, and ``witness``
    identifies the pair ``(k, k_other, r, r_other)`` attaining it.
    """

    retrodictable: bool
    max_residual: float
    witness: tuple[int, int, int, int] | None


@dataclass
class ProjectiveRetrodictor:
    """Orthogonal projectors on the output space, one per outcome.

    The projectors are mutually orthogonal and complete on the subspace
    reachable by the measurement; the remainder of the output space never
    carries a post-measurement state.
    """

    d_out: int
    projectors: list[np.ndarray]
    tol: InitVar[Tolerance | None] = None

    def __post_init__(self, tol: Tolerance | None) -> None:
        tol = tol or DEFAULT_TOL
        projs = []
        for k, p in enumerate(self.projectors):
            p = as_matrix(p)
            if p.shape != (self.d_out, self.d_out):
                raise InvalidOperatorSetError(
                    f"projector {k} has shape {p.shape}; expected ({self.d_out}, {self.d_out})"
                )
            if fro(p @ p - p) > tol.eq_residual * max(fro(p), 1.0):
                raise InvalidOperatorSetError(f"operator {k} is not idempotent")
            if fro(p - dagger(p)) > tol.eq_residual * max(fro(p), 1.0):
                raise InvalidOperatorSetError(f"operator {k} is not Hermitian")
            projs.append(p)
        for k in range(len(projs)):
            for kp in range(k + 1, len(projs)):
                if fro(projs[k] @ projs[kp]) > tol.eq_residual * self.d_out:
                    raise InvalidOperatorSetError(f"projectors {k} and {kp} overlap")
        # orthogonal projectors sum to a projector, hence stay below the identity
        total = sum(projs) if projs else np.zeros((self.d_out, self.d_out))
        w = np.linalg.eigvalsh((total + dagger(total)) / 2.0)
        if w.size and float(w[-1]) > 1.0 + tol.psd_floor:
            raise InvalidOperatorSetError("projectors exceed the identity")
        self.projectors = projs

    @property
    def n_outcomes(self) -> int:
        return len(self.projectors)


@dataclass
class ProjectiveEquivalence:
    """Result of testing whether a fine-grained measurement is a projective
    measurement followed by a fixed isometry.

    When ``equivalent`` is true, ``transform`` is the isometry (labelled
    "unitary" when input and output dimensions agree) and ``povm`` holds the
    mutually orthogonal projectors.  Residuals are reported either way so a
    failing case is diagnosable.
    """

    equivalent: bool
    transform: np.ndarray | None
    kind: str | None
    povm: Povm | None
    isometry_residual: float
    projector_residual: float


def check_perfect(m: Measurement, tol: Tolerance = DEFAULT_TOL) -> PerfectCheckReport:
    """Decide perfect retrodictability of ``m`` for arbitrary input states.

    Evaluates every cross product ``A_{k'r'}^dag A_{kr}`` with ``k != k'``,
    normalised by the product of the operator norms so the verdict is
    scale-invariant.
    """
    norms = [[fro(a) for a in group] for group in m.outcomes]
    tiny = float(np.finfo(float).tiny)
    worst = 0.0
    witness: tuple[int, int, int, int] | None = None
    for k in range(m.n_outcomes):
        for kp in range(k + 1, m.n_outcomes):
            for r, a in enumerate(m.outcomes[k]):
                for rp, ap in enumerate(m.outcomes[kp]):
                    residual = fro(dagger(ap) @ a) / (norms[k][r] * norms[kp][rp] + tiny)
                    if residual > worst:
                        worst = residual
                        witness = (k, kp, r, rp)
    return PerfectCheckReport(bool(worst <= tol.eq_residual), float(worst), witness)


def build_retrodictor(m: Measurement, tol: Tolerance = DEFAULT_TOL) -> ProjectiveRetrodictor:
    """Projective retrodictor for a perfectly retrodictable measurement.

    Outcome ``k`` maps to the support projector of
    ``G_k = sum_r A_kr A_kr^dag``; every post-measurement state with nonzero
    probability lies inside the corresponding support.
    """
    report = check_perfect(m, tol)
    if not report.retrodictable:
        raise NotPerfectlyRetrodictableError(
            f"cross-product residual {report.max_residual:.3e} at witness {report.witness}"
        )
    projectors = []
    for group in m.outcomes:
        g = sum(a @ dagger(a) for a in group)
        projectors.append(support_projector(g, tol))
    return ProjectiveRetrodictor(m.d_out, projectors, tol)


def projective_equivalence(m: Measurement, tol: Tolerance = DEFAULT_TOL) -> ProjectiveEquivalence:
    """Test whether a fine-grained measurement is projective up to an isometry.

    The candidate transform is the sum of the Kraus operators; for a
    perfectly retrodictable fine-grained measurement it is an isometry ``S``
    with ``A_k = S P_k`` for the mutually orthogonal projectors
    ``P_k = A_k^dag A_k``.
    """
    if not m.fine_grained:
        raise NotFineGrainedError("projective equivalence is defined for fine-grained measurements")
    ops = [group[0] for group in m.outcomes]
    s = sum(ops)
    eye = np.eye(m.d_in)
    isometry_residual = fro(dagger(s) @ s - eye) / fro(eye)
    elements = [dagger(a) @ a for a in ops]
    projector_residual = 0.0
    for k, pk in enumerate(elements):
        for kp, pkp in enumerate(elements):
            target = pk if k == kp else 0.0
            projector_residual = max(projector_residual, fro(pkp @ pk - target))
    report = check_perfect(m, tol)
    if not report.retrodictable:
        return ProjectiveEquivalence(False, None, None, None,
                                     isometry_residual, projector_residual)
    kind = "unitary" if m.d_out == m.d_in else "isometry"
    return ProjectiveEquivalence(True, s, kind, Povm(m.d_in, elements, tol),
                                 isometry_residual, projector_residual)
