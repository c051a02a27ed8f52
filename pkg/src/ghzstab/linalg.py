"""Dense complex linear algebra on 2^n-dimensional Hilbert space.

State vectors, operators, tensor products, rank-revealing null spaces and
subspace comparison. Everything is double precision; the ambient dimension
is capped at MAX_DIM to keep dense storage honest.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce

import numpy as np

from .errors import DomainError, ShapeError, SizeError

MAX_DIM = 1 << 14
DEFAULT_TOL = 1e-9


def _check_power_of_two(dim: int) -> int:
    n = int(dim).bit_length() - 1
    if dim <= 0 or (1 << n) != dim:
        raise ShapeError(f"dimension {dim} is not a power of two")
    return n


@dataclass(frozen=True)
class StateVector:
    """A pure state of n_qubits qubits; party 1 owns the most significant bit."""

    n_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        if self.amplitudes.ndim != 1 or self.amplitudes.size != (1 << self.n_qubits):
            raise ShapeError(
                f"amplitudes must have length 2^{self.n_qubits}, "
                f"got {self.amplitudes.shape}"
            )

    @classmethod
    def from_amplitudes(cls, amps) -> "StateVector":
        amps = np.asarray(amps, dtype=np.complex128)
        n = _check_power_of_two(amps.size)
        return cls(n_qubits=n, amplitudes=amps)

    @classmethod
    def basis_state(cls, n_qubits: int, index: int) -> "StateVector":
        amps = np.zeros(1 << n_qubits, dtype=np.complex128)
        amps[index] = 1.0
        return cls(n_qubits=n_qubits, amplitudes=amps)

    @classmethod
    def ghz(cls, n_qubits: int) -> "StateVector":
        """(|0..0> + |1..1>) / sqrt(2)."""
        amps = np.zeros(1 << n_qubits, dtype=np.complex128)
        amps[0] = amps[-1] = 1.0 / np.sqrt(2.0)
        return cls(n_qubits=n_qubits, amplitudes=amps)

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def normalize(self) -> "StateVector":
        n = self.norm()
        if n == 0.0:
            raise DomainError("cannot normalize the zero vector")
        return StateVector(self.n_qubits, self.amplitudes / n)


@dataclass(frozen=True)
class Operator:
    """A dense square operator on a power-of-two dimensional space."""

    dim: int
    entries: np.ndarray

    def __post_init__(self):
        if self.entries.shape != (self.dim, self.dim):
            raise ShapeError(
                f"entries must be {self.dim}x{self.dim}, got {self.entries.shape}"
            )
        _check_power_of_two(self.dim)

    @classmethod
    def from_entries(cls, entries) -> "Operator":
        entries = np.asarray(entries, dtype=np.complex128)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise ShapeError(f"operator entries must be square, got {entries.shape}")
        return cls(dim=entries.shape[0], entries=entries)

    @classmethod
    def identity(cls, dim: int) -> "Operator":
        return cls.from_entries(np.eye(dim, dtype=np.complex128))

    def is_hermitian(self, tol: float = 1e-12) -> bool:
        return bool(np.max(np.abs(self.entries - self.entries.conj().T)) <= tol)

    def is_involution(self, tol: float = 1e-10) -> bool:
        delta = self.entries @ self.entries - np.eye(self.dim)
        return bool(np.max(np.abs(delta)) <= tol)

    def apply(self, v: StateVector) -> StateVector:
        if v.dim != self.dim:
            raise ShapeError(f"dimension mismatch: {self.dim} vs {v.dim}")
        return StateVector(v.n_qubits, self.entries @ v.amplitudes)


@dataclass(frozen=True)
class SubspaceBasis:
    """Orthonormal basis of a subspace, stored as columns of `matrix`."""

    dim: int
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.matrix.ndim != 2 or self.matrix.shape[0] != self.dim:
            raise ShapeError(
                f"basis matrix must be {self.dim} x k, got {self.matrix.shape}"
            )

    @classmethod
    def empty(cls, dim: int) -> "SubspaceBasis":
        return cls(dim=dim, matrix=np.zeros((dim, 0), dtype=np.complex128))

    @classmethod
    def from_vectors(cls, vectors, dim: int | None = None) -> "SubspaceBasis":
        cols = [np.asarray(v.amplitudes if isinstance(v, StateVector) else v,
                           dtype=np.complex128) for v in vectors]
        if not cols:
            if dim is None:
                raise ShapeError("dim required for an empty vector list")
            return cls.empty(dim)
        return cls(dim=cols[0].size, matrix=np.column_stack(cols))

    @property
    def count(self) -> int:
        return self.matrix.shape[1]

    @property
    def vectors(self) -> list[StateVector]:
        n = _check_power_of_two(self.dim)
        return [StateVector(n, self.matrix[:, k].copy()) for k in range(self.count)]

    def projector(self) -> np.ndarray:
        return self.matrix @ self.matrix.conj().T

    def gram_defect(self) -> float:
        """Max deviation of the Gram matrix from the identity."""
        if self.count == 0:
            return 0.0
        g = self.matrix.conj().T @ self.matrix
        return float(np.max(np.abs(g - np.eye(self.count))))


def kron(a: Operator, b: Operator) -> Operator:
    """Tensor product; the first factor owns the most significant index block."""
    out_dim = a.dim * b.dim
    if out_dim > MAX_DIM:
        raise SizeError(f"kron result dimension {out_dim} exceeds cap {MAX_DIM}")
    return Operator(dim=out_dim, entries=np.kron(a.entries, b.entries))


def kron_all(ops) -> Operator:
    ops = list(ops)
    if not ops:
        raise DomainError("kron_all needs at least one factor")
    return reduce(kron, ops)


def null_space(m: Operator | np.ndarray, tol: float = DEFAULT_TOL) -> SubspaceBasis:
    """Orthonormal basis of the numerical null space of m.

    Singular values at or below tol times the largest singular value count
    as zero. Accepts rectangular arrays as well as Operator.
    """
    arr = m.entries if isinstance(m, Operator) else np.asarray(m, dtype=np.complex128)
    if arr.ndim != 2:
        raise ShapeError(f"null_space needs a matrix, got shape {arr.shape}")
    cols = arr.shape[1]
    _, s, vh = np.linalg.svd(arr, full_matrices=True)
    smax = s[0] if s.size else 0.0
    if smax == 0.0:
        rank = 0
    else:
        rank = int(np.sum(s > tol * smax))
    basis = vh[rank:].conj().T
    return SubspaceBasis(dim=cols, matrix=np.ascontiguousarray(basis))


def fidelity(u: StateVector, v: StateVector) -> float:
    """|<u|v>| for normalized states."""
    if u.dim != v.dim:
        raise ShapeError(f"dimension mismatch: {u.dim} vs {v.dim}")
    return float(abs(np.vdot(u.amplitudes, v.amplitudes)))


def subspace_distance(a: SubspaceBasis, b: SubspaceBasis) -> float:
    """Operator-norm distance between the orthogonal projectors of a and b."""
    if a.dim != b.dim:
        raise ShapeError(f"ambient dimension mismatch: {a.dim} vs {b.dim}")
    if a.count == 0 and b.count == 0:
        return 0.0
    diff = a.projector() - b.projector()
    return float(np.linalg.norm(diff, 2))


def apply_locals(mats: np.ndarray, amps: np.ndarray) -> np.ndarray:
    """Apply the tensor product of n 2x2 matrices to a 2^n amplitude vector
    without materializing the full operator."""
    n = mats.shape[0]
    t = amps.reshape((2,) * n)
    for l in range(n):
        t = np.moveaxis(np.tensordot(mats[l], t, axes=([1], [l])), 0, l)
    return np.ascontiguousarray(t.reshape(-1))


def single_party_reduced(state: StateVector, party: int) -> np.ndarray:
    """2x2 reduced density matrix of one party (1-based index)."""
    n = state.n_qubits
    if not 1 <= party <= n:
        raise DomainError(f"party {party} out of range 1..{n}")
    t = state.amplitudes.reshape((2,) * n)
    t = np.moveaxis(t, party - 1, 0).reshape(2, -1)
    return t @ t.conj().T
