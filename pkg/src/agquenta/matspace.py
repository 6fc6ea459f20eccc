"""Matrices and subspaces over a finite field.

Matrices are plain int64 numpy arrays of element representations paired with a
:class:`~agquenta.galois.Field`; there is no wrapper class for them.  Subspaces
of F^n carry a canonical basis (the reduced row echelon form of any generating
set with zero rows dropped), so two subspaces are equal exactly when their
basis arrays are equal.
"""

from __future__ import annotations

import numpy as np

from agquenta import _kernels
from agquenta.galois import GF, Field

__all__ = [
    "as_matrix",
    "rref",
    "rank",
    "nullspace",
    "matmul",
    "Subspace",
    "matrix_to_text",
    "matrix_from_text",
]


def as_matrix(field: Field, M, width: int | None = None) -> np.ndarray:
    """Validate and convert to a 2-D int64 array of elements of `field`."""
    A = np.array(M, dtype=np.int64, copy=True)
    if A.ndim == 1:
        A = A.reshape(1, -1)
    if A.ndim != 2:
        raise ValueError(f"expected a matrix, got ndim {A.ndim}")
    if A.size == 0:
        A = A.reshape(0, width if width is not None else A.shape[-1] if A.ndim == 2 else 0)
    if width is not None and A.shape[1] != width:
        raise ValueError(f"expected {width} columns, got {A.shape[1]}")
    if A.size and (A.min() < 0 or A.max() >= field.q):
        raise ValueError(f"matrix entries outside {field}")
    return A


def rref(field: Field, M: np.ndarray) -> tuple[np.ndarray, np.ndarray, int]:
    """Reduced row echelon form of M; returns (R, pivot columns, rank)."""
    return _kernels.rref(M, field.tables)


def rank(field: Field, M: np.ndarray) -> int:
    return rref(field, M)[2]


def nullspace(field: Field, M: np.ndarray) -> np.ndarray:
    """Canonical basis for the right kernel {x : M x = 0}, one row per vector."""
    M = np.ascontiguousarray(M, dtype=np.int64)
    n = M.shape[1]
    R, piv, r = rref(field, M)
    free = [c for c in range(n) if c not in set(piv.tolist())]
    basis = np.zeros((len(free), n), dtype=np.int64)
    neg = field.tables["neg"]
    for row, fc in enumerate(free):
        basis[row, fc] = 1
        for i, pc in enumerate(piv):
            basis[row, pc] = neg[R[i, fc]]
    # one more reduction makes the basis canonical regardless of column order
    B, _, nr = rref(field, basis)
    return B[:nr]


def matmul(field: Field, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    return _kernels.matmul(A, B, field.tables)


class Subspace:
    """A subspace of F^n with a canonical (rref) basis."""

    def __init__(self, field: Field, vectors, n: int | None = None):
        self.field = field
        M = as_matrix(field, vectors, width=n)
        R, _, r = rref(field, M)
        self.basis = R[:r].copy()
        self.n = M.shape[1]

    @classmethod
    def zero(cls, field: Field, n: int) -> "Subspace":
        return cls(field, np.zeros((0, n), dtype=np.int64), n=n)

    @classmethod
    def full(cls, field: Field, n: int) -> "Subspace":
        return cls(field, np.eye(n, dtype=np.int64), n=n)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, n={self.n}, {self.field})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subspace)
            and self.field == other.field
            and self.n == other.n
            and self.basis.shape == other.basis.shape
            and np.array_equal(self.basis, other.basis)
        )

    def __hash__(self):
        return hash((self.field, self.n, self.basis.tobytes()))

    def contains(self, vec) -> bool:
        v = as_matrix(self.field, vec, width=self.n)
        stacked = np.vstack([self.basis, v])
        return rank(self.field, stacked) == self.dim

    def __le__(self, other: "Subspace") -> bool:
        self._check_compatible(other)
        stacked = np.vstack([other.basis, self.basis])
        return rank(self.field, stacked) == other.dim

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check_compatible(other)
        return Subspace(self.field, np.vstack([self.basis, other.basis]), n=self.n)

    def __and__(self, other: "Subspace") -> "Subspace":
        """Intersection, computed as the kernel of the stacked dual bases."""
        self._check_compatible(other)
        duals = np.vstack([self.orthogonal().basis, other.orthogonal().basis])
        if duals.shape[0] == 0:
            return Subspace.full(self.field, self.n)
        return Subspace(self.field, nullspace(self.field, duals), n=self.n)

    def orthogonal(self) -> "Subspace":
        """The subspace of vectors orthogonal to this one (standard bilinear form)."""
        if self.dim == 0:
            return Subspace.full(self.field, self.n)
        return Subspace(self.field, nullspace(self.field, self.basis), n=self.n)

    def _check_compatible(self, other: "Subspace") -> None:
        if self.field != other.field or self.n != other.n:
            raise ValueError("subspaces live in different ambient spaces")


# -- plain-text matrix serialization ------------------------------------------


def matrix_to_text(field: Field, M: np.ndarray) -> str:
    """Render as 'rows cols p m' header plus one line of entries per row."""
    M = as_matrix(field, M)
    lines = [f"{M.shape[0]} {M.shape[1]} {field.p} {field.m}"]
    for row in M:
        lines.append(" ".join(str(int(x)) for x in row))
    return "\n".join(lines) + "\n"


def matrix_from_text(text: str) -> tuple[Field, np.ndarray]:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty matrix text")
    head = lines[0].split()
    if len(head) != 4:
        raise ValueError(f"bad matrix header {lines[0]!r}")
    rows, cols, p, m = map(int, head)
    field = GF(p**m)
    if len(lines) != rows + 1:
        raise ValueError(f"expected {rows} rows, found {len(lines) - 1}")
    data = np.zeros((rows, cols), dtype=np.int64)
    for i, ln in enumerate(lines[1:]):
        vals = ln.split()
        if len(vals) != cols:
            raise ValueError(f"row {i} has {len(vals)} entries, expected {cols}")
        data[i] = [int(v) for v in vals]
    return field, as_matrix(field, data)
