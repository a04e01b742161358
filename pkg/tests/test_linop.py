"""States, diagonal operators, density matrices, expectations."""

from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from spectral_logic.linop import (
    ALGEBRA_ATOL,
    DensityMatrix,
    DiagonalOperator,
    DimensionMismatchError,
    State,
    density_from_state,
    expectation,
    expectation_rho,
    kron,
)


def test_state_requires_unit_norm():
    State([1.0, 0.0])
    State([math.sqrt(0.5), math.sqrt(0.5)])
    with pytest.raises(ValueError):
        State([1.0, 1.0])
    with pytest.raises(ValueError):
        State([0.0, 0.0])


def test_state_norm_gate_is_tight():
    # Just inside the 1e-9 gate passes, just outside fails.
    State([1.0 + 4e-10, 0.0])
    with pytest.raises(ValueError):
        State([1.0 + 1e-8, 0.0])


def test_state_basis():
    e2 = State.basis(4, 2)
    assert e2.dim == 4
    assert np.allclose(e2.probabilities, [0, 0, 1, 0])
    with pytest.raises(IndexError):
        State.basis(4, 4)


def test_state_probabilities_sum_to_one():
    psi = State([0.6, 0.8j])
    assert psi.probabilities == pytest.approx([0.36, 0.64])


def test_state_is_immutable():
    psi = State([1.0, 0.0])
    with pytest.raises(ValueError):
        psi.amplitudes[0] = 0.5


def test_state_kron():
    a = State([0.6, 0.8])
    b = State([0.0, 1.0])
    ab = a.kron(b)
    assert ab.dim == 4
    assert np.allclose(ab.probabilities, [0.0, 0.36, 0.0, 0.64])


def test_state_equality_and_hash():
    a = State([0.6, 0.8])
    b = State([0.6, 0.8])
    assert a == b
    assert hash(a) == hash(b)
    assert a != State([0.8, 0.6])


def test_diagonal_operator_basics():
    f = DiagonalOperator([0.0, 1.0, 2.0])
    assert f.dim == 3
    assert np.array_equal(f.diagonal, [0.0, 1.0, 2.0])
    assert DiagonalOperator.identity(2) == DiagonalOperator([1.0, 1.0])
    assert DiagonalOperator.zero(2) == DiagonalOperator([0.0, 0.0])


def test_diagonal_operator_algebra():
    f = DiagonalOperator([0.0, 1.0])
    g = DiagonalOperator([1.0, 1.0])
    assert (f + g) == DiagonalOperator([1.0, 2.0])
    assert (g - f) == DiagonalOperator([1.0, 0.0])
    assert (f * g) == f  # entrywise product = operator product for diagonals
    assert (2.0 * f) == DiagonalOperator([0.0, 2.0])
    assert (f * 2.0) == DiagonalOperator([0.0, 2.0])
    assert (-f) == DiagonalOperator([0.0, -1.0])
    assert f ** 2 == f
    assert DiagonalOperator([2.0, 3.0]) ** 2 == DiagonalOperator([4.0, 9.0])


def test_diagonal_operator_dimension_mismatch():
    f = DiagonalOperator([0.0, 1.0])
    g = DiagonalOperator([0.0, 1.0, 2.0])
    with pytest.raises(DimensionMismatchError):
        f + g
    with pytest.raises(DimensionMismatchError):
        f * g


def test_idempotence_detection():
    assert DiagonalOperator([0.0, 1.0, 1.0]).is_idempotent()
    assert not DiagonalOperator([0.0, 0.5]).is_idempotent()
    # Tolerance boundary: within atol counts as idempotent.
    assert DiagonalOperator([0.0, 1.0 + 1e-13]).is_idempotent()
    assert not DiagonalOperator([0.0, 1.0 + 1e-6]).is_idempotent()


def test_kron_diagonal_operators():
    f = DiagonalOperator([1.0, 2.0])
    g = DiagonalOperator([3.0, 5.0])
    assert kron(f, g) == DiagonalOperator([3.0, 5.0, 6.0, 10.0])
    assert f.kron(g) == kron(f, g)


def test_expectation_pure_state():
    f = DiagonalOperator([0.0, 1.0])
    assert expectation(State([1.0, 0.0]), f) == 0.0
    assert expectation(State([0.0, 1.0]), f) == 1.0
    assert expectation(State([math.sqrt(0.5), math.sqrt(0.5)]), f) == pytest.approx(0.5)


def test_expectation_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        expectation(State([1.0, 0.0]), DiagonalOperator([1.0, 2.0, 3.0]))


def test_density_matrix_validation():
    rho = DensityMatrix([[0.5, 0.0], [0.0, 0.5]])
    assert not rho.is_pure()
    with pytest.raises(ValueError):
        DensityMatrix([[0.7, 0.0], [0.0, 0.5]])  # trace != 1
    with pytest.raises(ValueError):
        DensityMatrix([[0.5, 0.5], [0.0, 0.5]])  # not Hermitian
    with pytest.raises(ValueError):
        DensityMatrix([[1.5, 0.0], [0.0, -0.5]])  # not PSD


def test_density_from_state_is_pure():
    rho = density_from_state(State([0.6, 0.8]))
    assert rho.is_pure()
    assert rho.entries[0, 0] == pytest.approx(0.36)
    assert rho.entries[1, 1] == pytest.approx(0.64)


def test_expectation_matches_density_form():
    psi = State([0.6, 0.8j])
    f = DiagonalOperator([0.25, 0.75])
    assert expectation(psi, f) == pytest.approx(
        expectation_rho(density_from_state(psi), f), abs=ALGEBRA_ATOL
    )


def test_mixed_state_expectation():
    rho = DensityMatrix([[0.25, 0.0], [0.0, 0.75]])
    f = DiagonalOperator([0.0, 1.0])
    assert expectation_rho(rho, f) == pytest.approx(0.75)


@st.composite
def unit_states(draw, dim=2):
    parts = draw(
        st.lists(
            st.tuples(
                st.floats(-1, 1, allow_nan=False), st.floats(-1, 1, allow_nan=False)
            ),
            min_size=dim,
            max_size=dim,
        )
    )
    vec = np.array([complex(re, im) for re, im in parts])
    norm = np.linalg.norm(vec)
    if norm < 1e-3:
        vec = np.zeros(dim, dtype=complex)
        vec[0] = 1.0
        norm = 1.0
    return State(vec / norm)


@given(unit_states(), st.lists(st.floats(-5, 5, allow_nan=False), min_size=2, max_size=2))
def test_expectation_bounded_by_spectrum(psi, diag):
    f = DiagonalOperator(diag)
    value = expectation(psi, f)
    assert min(diag) - 1e-9 <= value <= max(diag) + 1e-9


@given(unit_states(dim=2), unit_states(dim=3))
def test_product_state_probabilities_factor(a, b):
    joint = a.kron(b)
    expected = np.kron(a.probabilities, b.probabilities)
    assert np.allclose(joint.probabilities, expected, atol=1e-12)
