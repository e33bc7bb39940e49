"""Named worked examples used as fixtures by the tests and the CLI."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .dependence import fock_shift_example
from .measurement import Measurement, Povm


PAULI = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


@dataclass
class NamedExample:
    """A constructible fixture with the verdicts it is expected to produce.

    Exactly one of ``measurement``, ``povm`` or ``operators`` is set; the
    ``expected`` map is replayed against the analysis modules by the
    regression tests.
    """

    name: str
    description: str
    expected: dict = field(default_factory=dict)
    measurement: Measurement | None = None
    povm: Povm | None = None
    operators: list[np.ndarray] | None = None


def pauli_quarter() -> NamedExample:
    ops = [PAULI[s] / 2.0 for s in ("I", "X", "Y", "Z")]
    return NamedExample(
        name="pauli_quarter",
        description=(
            "Four-outcome qubit measurement with half-Pauli Kraus operators: "
            "linearly independent yet locally linearly dependent, and not "
            "perfectly retrodictable; an entangled input is required to "
            "identify the outcome unambiguously."
        ),
        expected={
            "linearly_independent": True,
            "lld": "yes",
            "lli": "no",
            "perfect": False,
            "assess": "yes",
        },
        measurement=Measurement(2, 2, [[a] for a in ops]),
    )


def counterexample_3d() -> NamedExample:
    e = np.eye(3, dtype=complex)
    a1 = np.outer(e[:, 0], e[:, 0]) / np.sqrt(2)
    a2 = np.outer(e[:, 1], e[:, 1]) / np.sqrt(2)
    a3 = np.outer(e[:, 2], e[:, 2])
    a4 = (np.outer(e[:, 0], e[:, 0]) + np.outer(e[:, 1], e[:, 1])) / np.sqrt(2)
    return NamedExample(
        name="counterexample_3d",
        description=(
            "Four singular, linearly dependent Kraus operators on a "
            "three-level system; preparing the third basis state makes the "
            "third outcome certain, so the outcome is retrodictable for that "
            "known input even though the operators are dependent."
        ),
        expected={
            "linearly_independent": False,
            "assess": "undecided",
            # basis state index -> certain outcome index
            "certain_state_index": 2,
            "certain_outcome_index": 2,
        },
        measurement=Measurement(3, 3, [[a1], [a2], [a3], [a4]]),
    )


def rank_one_pair() -> NamedExample:
    e = np.eye(2, dtype=complex)
    a1 = np.outer(e[:, 0], e[:, 0])
    a2 = np.outer(e[:, 0], e[:, 1])
    return NamedExample(
        name="rank_one_pair",
        description=(
            "Two rank-one qubit operators writing onto the same ray: "
            "linearly independent but locally linearly dependent via the "
            "exact two-operator criterion (shared one-dimensional range)."
        ),
        expected={
            "linearly_independent": True,
            "lld": "yes",
            "lld_reason": "shared_rank_one_range",
            "lli": "no",
            "perfect": False,
        },
        measurement=Measurement(2, 2, [[a1], [a2]]),
    )


def two_to_four() -> NamedExample:
    a1 = np.zeros((4, 2), dtype=complex)
    a2 = np.zeros((4, 2), dtype=complex)
    a1[0, 0] = a1[1, 1] = 1.0 / np.sqrt(2)
    a2[2, 0] = a2[3, 1] = 1.0 / np.sqrt(2)
    return NamedExample(
        name="two_to_four",
        description=(
            "Two-outcome embedding of a qubit into four dimensions; the two "
            "operators write into orthogonal planes, so their images stay "
            "independent for every input (locally linearly independent) and "
            "the outcome is perfectly retrodictable."
        ),
        expected={
            "linearly_independent": True,
            "lld": "no",
            "lli": "yes_probabilistic",
            "min_sigma": 1.0 / np.sqrt(2.0),
            "perfect": True,
        },
        measurement=Measurement(2, 4, [[a1], [a2]]),
    )


def fock_shift(d: int = 8, mu: complex = 0.5) -> NamedExample:
    a1, a2, valid_dim = fock_shift_example(d, mu)
    return NamedExample(
        name="fock_shift",
        description=(
            "Truncated bosonic mode: a weighted raising operator plus a "
            "scaled identity.  On states below the truncation cutoff the "
            "images are independent for every input; the truncation itself "
            "leaves a completeness deficit on the top level and a spurious "
            "kernel, so whole-space verdicts differ from the untruncated ones."
        ),
        expected={
            "linearly_independent": True,
            "lld": "no",
            "lli": "no",  # the truncated raising operator kills the top level
            "valid_dim": valid_dim,
            "mu": mu,
        },
        operators=[a1, a2],
    )


def trine_povm() -> NamedExample:
    elements = []
    for k in range(3):
        theta = 2.0 * np.pi * k / 3.0
        v = np.array([np.cos(theta / 2.0), np.sin(theta / 2.0)], dtype=complex)
        elements.append((2.0 / 3.0) * np.outer(v, np.conj(v)))
    return NamedExample(
        name="trine_povm",
        description=(
            "Three symmetric rank-one qubit POVM elements; with a "
            "three-dimensional output space it synthesises into a perfectly "
            "retrodictable measurement, while two dimensions are too few for "
            "three outcomes."
        ),
        expected={
            "synthesis_d_out": 3,
            "synthesis_perfect": True,
            "too_few_d_out": 2,
        },
        povm=Povm(2, elements),
    )


def catalog() -> list[NamedExample]:
    """All bundled examples."""
    return [
        pauli_quarter(),
        counterexample_3d(),
        rank_one_pair(),
        two_to_four(),
        fock_shift(),
        trine_povm(),
    ]


def get_example(name: str) -> NamedExample:
    for ex in catalog():
        if ex.name == name:
            return ex
    known = ", ".join(ex.name for ex in catalog())
    raise KeyError(f"unknown example {name!r}; available: {known}")
