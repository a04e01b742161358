"""Dense complex linear algebra over small Hilbert spaces.

Every operator in scope is diagonal in the canonical basis, so operators
store only their diagonal; full matrices appear solely as density matrices.
All values are immutable after construction and safe to share.
"""

from __future__ import annotations

from typing import Iterable

import numpy as np

ALGEBRA_ATOL = 1e-12  # algebraic identities (idempotence, Hermiticity, trace)
NORM_ATOL = 1e-9      # normalization gates on constructors
PSD_FLOOR = -1e-10    # smallest admissible density-matrix eigenvalue


class DimensionMismatchError(ValueError):
    """Operands live in Hilbert spaces of different dimensions."""


def _require_same_dim(a, b) -> None:
    if a.dim != b.dim:
        raise DimensionMismatchError(f"dimension mismatch: {a.dim} vs {b.dim}")


class State:
    """Normalized complex amplitude vector over the canonical basis.

    Normalization is the caller's duty: the constructor verifies and
    rejects rather than silently renormalizing.
    """

    __slots__ = ("_amps",)

    def __init__(self, amplitudes: Iterable[complex], *, atol: float = NORM_ATOL):
        amps = np.array(amplitudes, dtype=np.complex128).reshape(-1)
        if amps.size == 0:
            raise ValueError("state needs at least one amplitude")
        norm = float(np.linalg.norm(amps))
        if abs(norm - 1.0) > atol:
            raise ValueError(f"state is not normalized: norm = {norm}")
        amps.flags.writeable = False
        self._amps = amps

    @classmethod
    def basis(cls, dim: int, index: int) -> "State":
        """Canonical basis vector |index> in a dim-dimensional space."""
        if not 0 <= index < dim:
            raise IndexError(f"basis index {index} out of range for dim {dim}")
        amps = np.zeros(dim, dtype=np.complex128)
        amps[index] = 1.0
        return cls(amps)

    @property
    def amplitudes(self) -> np.ndarray:
        return self._amps

    @property
    def dim(self) -> int:
        return int(self._amps.size)

    @property
    def probabilities(self) -> np.ndarray:
        """Squared moduli of the amplitudes (phase-independent)."""
        return np.abs(self._amps) ** 2

    def kron(self, other: "State") -> "State":
        """Joint product state; index order puts self most significant."""
        return State(np.kron(self._amps, other._amps))

    def __eq__(self, other) -> bool:
        if not isinstance(other, State):
            return NotImplemented
        return bool(np.array_equal(self._amps, other._amps))

    def __hash__(self) -> int:
        return hash(self._amps.tobytes())

    def __repr__(self) -> str:
        return f"State({self._amps.tolist()!r})"


class DiagonalOperator:
    """Real diagonal operator; off-diagonal entries are implicitly zero.

    Diagonal operators all commute, so the operator product is the
    entrywise product of diagonals and is exposed through ``*``.
    """

    __slots__ = ("_diag",)

    def __init__(self, diagonal: Iterable[float]):
        diag = np.array(diagonal, dtype=np.float64).reshape(-1)
        if diag.size == 0:
            raise ValueError("diagonal must be nonempty")
        diag.flags.writeable = False
        self._diag = diag

    @classmethod
    def identity(cls, dim: int) -> "DiagonalOperator":
        return cls(np.ones(dim))

    @classmethod
    def zero(cls, dim: int) -> "DiagonalOperator":
        return cls(np.zeros(dim))

    @property
    def diagonal(self) -> np.ndarray:
        return self._diag

    @property
    def dim(self) -> int:
        return int(self._diag.size)

    def kron(self, other: "DiagonalOperator") -> "DiagonalOperator":
        return DiagonalOperator(np.kron(self._diag, other._diag))

    def is_idempotent(self, atol: float = ALGEBRA_ATOL) -> bool:
        """d*d = d entrywise, i.e. the operator is a projector."""
        return bool(np.all(np.abs(self._diag * self._diag - self._diag) <= atol))

    def __add__(self, other: "DiagonalOperator") -> "DiagonalOperator":
        _require_same_dim(self, other)
        return DiagonalOperator(self._diag + other._diag)

    def __sub__(self, other: "DiagonalOperator") -> "DiagonalOperator":
        _require_same_dim(self, other)
        return DiagonalOperator(self._diag - other._diag)

    def __mul__(self, other) -> "DiagonalOperator":
        if isinstance(other, DiagonalOperator):
            _require_same_dim(self, other)
            return DiagonalOperator(self._diag * other._diag)
        return DiagonalOperator(self._diag * float(other))

    def __rmul__(self, scalar) -> "DiagonalOperator":
        return DiagonalOperator(float(scalar) * self._diag)

    def __pow__(self, exponent: int) -> "DiagonalOperator":
        return DiagonalOperator(self._diag ** int(exponent))

    def __neg__(self) -> "DiagonalOperator":
        return DiagonalOperator(-self._diag)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DiagonalOperator):
            return NotImplemented
        return bool(np.array_equal(self._diag, other._diag))

    def __hash__(self) -> int:
        return hash(self._diag.tobytes())

    def __repr__(self) -> str:
        return f"DiagonalOperator({self._diag.tolist()!r})"


class DensityMatrix:
    """Hermitian, unit-trace, positive semidefinite complex matrix."""

    __slots__ = ("_entries",)

    def __init__(self, entries, *, atol: float = ALGEBRA_ATOL):
        mat = np.array(entries, dtype=np.complex128)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise ValueError(f"density matrix must be square, got shape {mat.shape}")
        if not np.allclose(mat, mat.conj().T, rtol=0.0, atol=atol):
            raise ValueError("density matrix is not Hermitian")
        trace = complex(np.trace(mat))
        if abs(trace - 1.0) > atol:
            raise ValueError(f"density matrix trace is {trace}, expected 1")
        if float(np.min(np.linalg.eigvalsh(mat))) < PSD_FLOOR:
            raise ValueError("density matrix is not positive semidefinite")
        mat.flags.writeable = False
        self._entries = mat

    @property
    def entries(self) -> np.ndarray:
        return self._entries

    @property
    def dim(self) -> int:
        return int(self._entries.shape[0])

    def is_pure(self, atol: float = 1e-10) -> bool:
        """Idempotence check rho*rho = rho; true exactly for rank-1 states."""
        prod = self._entries @ self._entries
        return bool(np.max(np.abs(prod - self._entries)) <= atol)

    def __repr__(self) -> str:
        return f"DensityMatrix(dim={self.dim})"


def kron(a: DiagonalOperator, b: DiagonalOperator) -> DiagonalOperator:
    """Kronecker product of diagonals; entry i*dim(b)+j holds a_i * b_j."""
    return a.kron(b)


def density_from_state(psi: State) -> DensityMatrix:
    """Rank-1 density matrix |psi><psi| of a normalized state."""
    return DensityMatrix(np.outer(psi.amplitudes, psi.amplitudes.conj()))


def expectation(psi: State, f: DiagonalOperator) -> float:
    """Born-rule mean value <psi|F|psi> = sum_i |psi_i|^2 * d_i."""
    _require_same_dim(psi, f)
    return float(np.dot(psi.probabilities, f.diagonal))


def expectation_rho(rho: DensityMatrix, f: DiagonalOperator) -> float:
    """Tr(rho * F); for diagonal F only the diagonal of rho contributes."""
    _require_same_dim(rho, f)
    return float(np.real(np.dot(np.diagonal(rho.entries), f.diagonal)))
