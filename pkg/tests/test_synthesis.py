"""POVM synthesis into retrodictable measurements and its factorisations."""

from __future__ import annotations

import numpy as np
import pytest

from retroq import (
    BadBasisError,
    Povm,
    TooManyOutcomesError,
    b_factor,
    build_retrodictor,
    check_perfect,
    dilated_kraus,
    povm_of,
    standard_basis,
    synthesize,
)
from retroq.catalog import trine_povm
from retroq.rand import random_povm, random_projective_povm, random_unitary


def dag(m):
    return np.conj(m).T


def _povm_distance(p: Povm, q: Povm) -> float:
    return max(np.linalg.norm(a - b) for a, b in zip(p.elements, q.elements))


# ---------------------------------------------------------------- synthesize

def test_trine_synthesis_satisfies_both_conditions():
    result = synthesize(trine_povm().povm, d_out=3)
    m = result.measurement
    # group sums reproduce the POVM elements
    for k, element in enumerate(trine_povm().povm.elements):
        total = sum(dag(a) @ a for a in m.outcomes[k])
        assert np.linalg.norm(total - element) < 1e-10
    # cross products between outcomes vanish
    assert check_perfect(m).max_residual < 1e-10


def test_projective_povm_synthesis_is_rank_one():
    povm = Povm(2, [np.diag([1.0, 0.0 + 0j]), np.diag([0.0 + 0j, 1.0])])
    result = synthesize(povm, d_out=2)
    for k, group in enumerate(result.measurement.outcomes):
        assert len(group) == 1
        # A_k = |x_k><pi_k| is rank one with unit norm
        assert np.linalg.norm(group[0]) == pytest.approx(1.0, abs=1e-12)
    retro = build_retrodictor(result.measurement)
    for k, x in enumerate(result.x_basis):
        assert np.linalg.norm(retro.projectors[k] - np.outer(x, x.conj())) < 1e-10


def test_too_many_outcomes_is_rejected():
    four = Povm(2, [np.eye(2) / 4.0] * 4)
    with pytest.raises(TooManyOutcomesError):
        synthesize(four, d_out=2)


def test_bad_basis_is_rejected():
    povm = trine_povm().povm
    skew = [np.array([1.0, 0.0, 0.0]), np.array([1.0, 1.0, 0.0]) / np.sqrt(2),
            np.array([0.0, 0.0, 1.0])]
    with pytest.raises(BadBasisError):
        synthesize(povm, d_out=3, x_basis=skew)
    with pytest.raises(BadBasisError):
        synthesize(povm, d_out=3, x_basis=standard_basis(2, 3))


def test_synthesis_with_custom_basis(rng):
    povm = random_povm(2, 3, rng)
    u = random_unitary(4, rng)
    basis = [u[:, j] for j in range(3)]
    result = synthesize(povm, d_out=4, x_basis=basis)
    assert check_perfect(result.measurement).retrodictable
    assert _povm_distance(povm_of(result.measurement), povm) < 1e-10


def test_round_trip_and_support_markers(rng):
    # equivalence-class membership and |x_k><x_k| supports, random instances
    for _ in range(5):
        d = int(rng.integers(2, 4))
        d_out = int(rng.integers(2, 5))
        n = int(rng.integers(1, d_out + 1))
        povm = random_povm(d, n, rng)
        result = synthesize(povm, d_out=d_out)
        assert _povm_distance(povm_of(result.measurement), povm) < 1e-10
        assert check_perfect(result.measurement).retrodictable
        retro = build_retrodictor(result.measurement)
        for k, x in enumerate(result.x_basis):
            assert np.linalg.norm(retro.projectors[k] - np.outer(x, x.conj())) < 1e-10


# ------------------------------------------------------------------ b_factor

def test_b_factor_reproduces_elements(rng):
    povm = trine_povm().povm
    for b, element in zip(b_factor(povm), povm.elements):
        assert np.linalg.norm(dag(b) @ b - element) < 1e-12


def test_b_factor_projective_is_partial_isometry():
    povm = Povm(2, [np.diag([1.0, 0.0 + 0j]), np.diag([0.0 + 0j, 1.0])])
    for b, element in zip(b_factor(povm), povm.elements):
        assert np.linalg.norm(dag(b) @ b - element) < 1e-12
        # B restricted to its support preserves norms
        s = np.linalg.svd(b, compute_uv=False)
        assert np.allclose(s[s > 1e-12], 1.0, atol=1e-12)


def test_b_factor_identity_povm_is_unitary():
    povm = Povm(3, [np.eye(3, dtype=complex)])
    (b,) = b_factor(povm)
    assert b.shape == (3, 3)
    assert np.linalg.norm(dag(b) @ b - np.eye(3)) < 1e-12


def test_b_factor_short_basis_is_rejected():
    povm = Povm(3, [np.eye(3, dtype=complex)])
    with pytest.raises(BadBasisError):
        b_factor(povm, d_out=3, x_basis=standard_basis(1, 3))


# -------------------------------------------------------------- dilated_kraus

def test_dilated_kraus_matches_synthesis(rng):
    for _ in range(5):
        d = int(rng.integers(2, 4))
        n = int(rng.integers(1, d + 1))
        povm = random_povm(d, n, rng)
        d_out = max(n, d)
        basis = standard_basis(d_out, d_out)
        factors = b_factor(povm, d_out=d_out, x_basis=basis)
        m = dilated_kraus(factors, basis)
        result = synthesize(povm, d_out=d_out, x_basis=basis[:n])
        assert check_perfect(m).retrodictable
        # identical nonzero Kraus operators up to ordering within each group
        for g1, g2 in zip(m.outcomes, result.measurement.outcomes):
            assert len(g1) == len(g2)
            for a in g1:
                assert min(np.linalg.norm(a - b) for b in g2) < 1e-10


def test_dilated_kraus_identity_povm():
    povm = Povm(2, [np.eye(2, dtype=complex)])
    basis = standard_basis(2, 2)
    m = dilated_kraus(b_factor(povm, x_basis=basis), basis)
    assert m.n_outcomes == 1
    assert check_perfect(m).retrodictable


def test_dilated_kraus_projective_single_term_per_outcome():
    povm = Povm(2, [np.diag([1.0, 0.0 + 0j]), np.diag([0.0 + 0j, 1.0])])
    basis = standard_basis(2, 2)
    m = dilated_kraus(b_factor(povm, x_basis=basis), basis)
    assert [len(g) for g in m.outcomes] == [1, 1]


def test_projective_round_trip_through_dilation(rng):
    povm = random_projective_povm(3, 3, rng)
    basis = standard_basis(3, 3)
    m = dilated_kraus(b_factor(povm, x_basis=basis), basis)
    assert _povm_distance(povm_of(m), povm) < 1e-10
