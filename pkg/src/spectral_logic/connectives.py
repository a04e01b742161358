"""Logical connectives as projective diagonal observables.

The canonical basis enumerates interpretations: for n arguments over an
m-letter alphabet, basis index = sum_k digit_k * m^(n-1-k), leftmost
argument most significant. A connective's truth table, laid out in that
order, is exactly the diagonal of its observable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .linop import ALGEBRA_ATOL, DiagonalOperator

BIT_ALPHABET = (0, 1)
ISOMETRIC_ALPHABET = (1, -1)  # false -> +1, true -> -1

# Largest m^n we are willing to enumerate (dimension guard).
MAX_STATES = 4096


def basis_index(digits: Sequence[int], m: int) -> int:
    """Index of the assignment tuple, leftmost digit most significant."""
    index = 0
    for d in digits:
        if not 0 <= d < m:
            raise ValueError(f"digit {d} out of range for alphabet size {m}")
        index = index * m + d
    return index


def index_digits(index: int, m: int, n: int) -> tuple[int, ...]:
    """Inverse of basis_index: the assignment tuple at a basis index."""
    if not 0 <= index < m ** n:
        raise IndexError(f"index {index} out of range for m={m}, n={n}")
    digits = []
    for _ in range(n):
        index, d = divmod(index, m)
        digits.append(d)
    return tuple(reversed(digits))


@dataclass(frozen=True)
class TruthTable:
    """Total function from n-tuples over an m-letter alphabet to letters.

    ``values`` is indexed by the basis convention. ``alphabet`` orders the
    letters; position in the alphabet is the basis digit, so for the
    default alphabet (0..m-1) letters and digits coincide.
    """

    m: int
    n: int
    values: tuple
    alphabet: tuple = field(default=())

    def __post_init__(self):
        if self.m < 2:
            raise ValueError("alphabet size must be at least 2")
        if self.n < 1:
            raise ValueError("arity must be at least 1")
        alphabet = self.alphabet or tuple(range(self.m))
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "values", tuple(self.values))
        if len(alphabet) != self.m or len(set(alphabet)) != self.m:
            raise ValueError(f"alphabet must hold {self.m} distinct letters")
        if len(self.values) != self.m ** self.n:
            raise ValueError(
                f"expected {self.m ** self.n} values, got {len(self.values)}"
            )
        for v in self.values:
            if v not in alphabet:
                raise ValueError(f"value {v} is not a letter of {alphabet}")

    def value_at(self, digits: Sequence[int]):
        return self.values[basis_index(digits, self.m)]

    @classmethod
    def from_function(cls, m: int, n: int, fn, alphabet: tuple = ()) -> "TruthTable":
        """Tabulate fn over all assignment tuples of letters."""
        letters = alphabet or tuple(range(m))
        values = tuple(
            fn(*(letters[d] for d in index_digits(i, m, n))) for i in range(m ** n)
        )
        return cls(m=m, n=n, values=values, alphabet=letters)


@dataclass(frozen=True)
class LogicalObservable:
    """Diagonal operator carrying its logical reading.

    ``m`` is the input alphabet size, ``n`` the arity, ``alphabet`` the
    intended eigenvalue letters. Crisp connectives have every diagonal
    entry in the alphabet; derived operators (polynomial combinations)
    may be graded, so membership is checked by ``is_crisp`` rather than
    enforced on construction.
    """

    op: DiagonalOperator
    m: int
    n: int
    alphabet: tuple

    def __post_init__(self):
        if self.op.dim != self.m ** self.n:
            raise ValueError(
                f"operator dim {self.op.dim} != m^n = {self.m ** self.n}"
            )
        object.__setattr__(self, "alphabet", tuple(self.alphabet))

    @property
    def diagonal(self) -> np.ndarray:
        return self.op.diagonal

    @property
    def dim(self) -> int:
        return self.op.dim

    def eigenvalue_at(self, digits: Sequence[int]) -> float:
        """Eigenvalue on the basis state of an assignment tuple."""
        return float(self.op.diagonal[basis_index(digits, self.m)])

    def is_projective(self, atol: float = ALGEBRA_ATOL) -> bool:
        """All eigenvalues in {0, 1}."""
        d = self.op.diagonal
        return bool(np.all(np.minimum(np.abs(d), np.abs(d - 1.0)) <= atol))

    def is_crisp(self, atol: float = ALGEBRA_ATOL) -> bool:
        """Every diagonal entry is (numerically) a letter of the alphabet."""
        d = self.op.diagonal
        letters = np.array(self.alphabet, dtype=np.float64)
        return bool(np.all(np.min(np.abs(d[:, None] - letters[None, :]), axis=1) <= atol))


def rank1_projector(m: int, n: int, index: int) -> LogicalObservable:
    """Projector onto a single interpretation: 1 at the index, 0 elsewhere."""
    dim = m ** n
    if not 0 <= index < dim:
        raise IndexError(f"index {index} out of range for dimension {dim}")
    diag = np.zeros(dim)
    diag[index] = 1.0
    return LogicalObservable(DiagonalOperator(diag), m=m, n=n, alphabet=BIT_ALPHABET)


def observable_from_truth_table(t: TruthTable) -> LogicalObservable:
    """Lay the table on the diagonal; equals sum_x f(x) * Pi_x exactly."""
    return LogicalObservable(
        DiagonalOperator(np.array(t.values, dtype=np.float64)),
        m=t.m,
        n=t.n,
        alphabet=t.alphabet,
    )


def diagonal_bits(f: LogicalObservable) -> str:
    """Canonical name of a projective connective: its diagonal as a bit string."""
    if not f.is_projective():
        raise ValueError("bit-string naming applies to projective observables only")
    return "".join(str(int(round(v))) for v in f.op.diagonal)


# Human names for the distinguished binary connectives, keyed by the
# 4-bit diagonal read in basis order f(0,0) f(0,1) f(1,0) f(1,1).
BINARY_CONNECTIVE_NAMES = {
    "0000": "FALSE",
    "0001": "AND",
    "0011": "A",
    "0101": "B",
    "0110": "XOR",
    "0111": "OR",
    "1000": "NOR",
    "1001": "EQUIV",
    "1010": "NOT_B",
    "1011": "CONVERSE",
    "1100": "NOT_A",
    "1101": "IMPLIES",
    "1110": "NAND",
    "1111": "TRUE",
}

NAMED_BINARY_BITS = {name: bits for bits, name in BINARY_CONNECTIVE_NAMES.items()}


def all_binary_connectives() -> list[LogicalObservable]:
    """The 16 two-argument connectives over {0,1}, ordered by bit string."""
    result = []
    for code in range(16):
        bits = tuple((code >> (3 - k)) & 1 for k in range(4))
        result.append(observable_from_truth_table(TruthTable(m=2, n=2, values=bits)))
    return result


def binary_connective(name: str) -> LogicalObservable:
    """Look up a named two-argument connective, or a raw 4-bit string."""
    key = name.strip().upper()
    bits = NAMED_BINARY_BITS.get(key, key)
    if len(bits) != 4 or any(c not in "01" for c in bits):
        raise KeyError(f"unknown binary connective {name!r}")
    values = tuple(int(c) for c in bits)
    return observable_from_truth_table(TruthTable(m=2, n=2, values=values))


def to_isometric(f: LogicalObservable) -> LogicalObservable:
    """Map a projective observable to I - 2F over {+1,-1}.

    Eigenvalue 0 (false) maps to +1, 1 (true) to -1, matching the
    inhibition/excitation reading used by the vehicle actuators.
    """
    if not f.is_projective():
        raise ValueError("isometric form requires a projective observable")
    op = DiagonalOperator(1.0 - 2.0 * f.op.diagonal)
    return LogicalObservable(op, m=f.m, n=f.n, alphabet=ISOMETRIC_ALPHABET)


def from_isometric(g: LogicalObservable) -> LogicalObservable:
    """Inverse of to_isometric: (I - G) / 2 back over {0,1}."""
    d = g.op.diagonal
    if not np.all(np.minimum(np.abs(d - 1.0), np.abs(d + 1.0)) <= ALGEBRA_ATOL):
        raise ValueError("isometric observable must have eigenvalues in {+1,-1}")
    op = DiagonalOperator((1.0 - d) / 2.0)
    return LogicalObservable(op, m=g.m, n=g.n, alphabet=BIT_ALPHABET)


def connective_count(m: int, n: int) -> int:
    """Number of distinct connectives: m to the power m^n."""
    if m < 2:
        raise ValueError("alphabet size must be at least 2")
    if n < 1:
        raise ValueError("arity must be at least 1")
    states = m ** n
    if states > MAX_STATES:
        raise OverflowError(
            f"m^n = {states} exceeds the supported dimension {MAX_STATES}"
        )
    return m ** states
