"""Tri-valued and general m-valued logical observables.

Covers the {+1,0,-1} angular-momentum alphabet (projector polynomials),
the {0,1,2} level alphabet (dictators, Min, Max), and a polynomial
interpolation path that rewrites any connective in powers of its
argument dictators.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .connectives import (
    LogicalObservable,
    TruthTable,
    index_digits,
    observable_from_truth_table,
)
from .linop import ALGEBRA_ATOL, DiagonalOperator

TRI_ALPHABET = (1, 0, -1)    # false, neutral, true
LEVEL_ALPHABET = (0, 1, 2)   # no light, weak-level light, high-level light

# General m-valued tables go through the same diagonal layout as the
# binary case; re-exported under the name the multivalued surface uses.
observable_from_truth_table_m = observable_from_truth_table


def angular_momentum_observable() -> LogicalObservable:
    """diag(+1, 0, -1): the z angular-momentum spectrum at unit scale."""
    return LogicalObservable(
        DiagonalOperator([1.0, 0.0, -1.0]), m=3, n=1, alphabet=TRI_ALPHABET
    )


def tri_projectors(
    a: LogicalObservable,
) -> tuple[LogicalObservable, LogicalObservable, LogicalObservable]:
    """Rank projectors of a {+1,0,-1}-spectrum observable.

    Built from the operator polynomials A(A+1)/2, I - A^2 and A(A-1)/2;
    the three outputs are idempotent, mutually orthogonal and sum to I.
    """
    d = a.op.diagonal
    if not np.all(np.min(np.abs(d[:, None] - np.array([1.0, 0.0, -1.0])), axis=1) <= ALGEBRA_ATOL):
        raise ValueError("observable spectrum must be contained in {+1, 0, -1}")
    plus = DiagonalOperator(d * (d + 1.0) / 2.0)
    zero = DiagonalOperator(1.0 - d * d)
    minus = DiagonalOperator(d * (d - 1.0) / 2.0)
    wrap = lambda op: LogicalObservable(op, m=a.m, n=a.n, alphabet=(0, 1))
    return wrap(plus), wrap(zero), wrap(minus)


def dictator(m: int, n: int, position: int) -> LogicalObservable:
    """Connective equal to its argument at the given position (letters 0..m-1)."""
    if not 0 <= position < n:
        raise IndexError(f"argument position {position} out of range for arity {n}")
    table = TruthTable.from_function(m, n, lambda *args: args[position])
    return observable_from_truth_table(table)


def dictators_3() -> tuple[LogicalObservable, LogicalObservable]:
    """The two tri-valued sensor dictators over {0,1,2}, arity 2."""
    return dictator(3, 2, 0), dictator(3, 2, 1)


def min3() -> LogicalObservable:
    """Min connective over {0,1,2}: diag(0,0,0,0,1,1,0,1,2)."""
    return observable_from_truth_table(TruthTable.from_function(3, 2, min))


def max3() -> LogicalObservable:
    """Max connective over {0,1,2}: diag(0,1,2,1,1,2,2,2,2)."""
    return observable_from_truth_table(TruthTable.from_function(3, 2, max))


@dataclass(frozen=True)
class PolynomialExpansion:
    """Multivariate polynomial in the argument dictators.

    ``coefficients`` maps exponent tuples (one exponent per argument,
    each at most m-1) to real coefficients. Evaluating the polynomial at
    every alphabet tuple reproduces the source truth table.
    """

    m: int
    n: int
    coefficients: dict = field(default_factory=dict)

    def evaluate_at(self, letters: Sequence[float]) -> float:
        """Scalar value of the polynomial at one assignment of letters."""
        if len(letters) != self.n:
            raise ValueError(f"expected {self.n} letters, got {len(letters)}")
        total = 0.0
        for exps, coeff in self.coefficients.items():
            term = coeff
            for letter, e in zip(letters, exps):
                term *= float(letter) ** e
            total += term
        return total

    def terms(self) -> list[tuple[tuple[int, ...], float]]:
        """Coefficients in graded-lexicographic exponent order."""
        return sorted(self.coefficients.items(), key=lambda kv: (sum(kv[0]), kv[0]))


def interpolate_polynomial(
    f: LogicalObservable, *, prune_atol: float = 1e-12
) -> PolynomialExpansion:
    """Unique expansion of a connective in powers of its dictators.

    Solves the square evaluation system over all assignment tuples, with
    exponents capped at m-1 per argument (higher powers collapse on an
    m-point alphabet). Coefficients below prune_atol are dropped.
    """
    m, n = f.m, f.n
    dim = m ** n
    letters = np.array(f.alphabet, dtype=np.float64)
    if len(set(f.alphabet)) != m:
        raise ValueError("interpolation needs m distinct alphabet letters")
    # Row i: assignment letters for basis index i. Column j: exponent
    # tuple index_digits(j), the same enumeration as the basis itself.
    assignments = np.array(
        [[letters[d] for d in index_digits(i, m, n)] for i in range(dim)]
    )
    exponents = [index_digits(j, m, n) for j in range(dim)]
    system = np.ones((dim, dim))
    for j, exps in enumerate(exponents):
        for k, e in enumerate(exps):
            system[:, j] *= assignments[:, k] ** e
    coeffs = np.linalg.solve(system, f.op.diagonal)
    coefficients = {
        exps: float(c)
        for exps, c in zip(exponents, coeffs)
        if abs(c) > prune_atol
    }
    return PolynomialExpansion(m=m, n=n, coefficients=coefficients)


def evaluate_polynomial(
    p: PolynomialExpansion, dictators: Sequence[LogicalObservable]
) -> LogicalObservable:
    """Substitute dictator observables into the polynomial, entrywise."""
    if len(dictators) != p.n:
        raise ValueError(f"expected {p.n} dictators, got {len(dictators)}")
    dim = p.m ** p.n
    for d in dictators:
        if d.dim != dim:
            raise ValueError(f"dictator dim {d.dim} != m^n = {dim}")
    total = np.zeros(dim)
    for exps, coeff in p.coefficients.items():
        term = np.full(dim, coeff)
        for d, e in zip(dictators, exps):
            term *= d.op.diagonal ** e
        total += term
    return LogicalObservable(
        DiagonalOperator(total), m=p.m, n=p.n, alphabet=dictators[0].alphabet
    )
