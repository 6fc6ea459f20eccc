"""Linear codes over small finite fields with exact weight computations.

A code is stored by a canonical generator matrix (reduced row echelon basis),
so equal codes compare equal.  Minimum weights are exact whenever either the
code or its dual is small enough to enumerate under the message budget; the
dual route recovers the full weight distribution through the MacWilliams
identity with integer arithmetic, so it is exact too.  Only when both sides
exceed the budget does the report fall back to a caller-supplied floor.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

import numpy as np

from agquenta import _kernels
from agquenta.galois import Field
from agquenta.matspace import Subspace, as_matrix, matmul, nullspace, rank, rref

__all__ = [
    "LinearCode",
    "WeightReport",
    "default_budget",
    "macwilliams_transform",
    "random_code",
]

DEFAULT_BUDGET = 1 << 24


def default_budget() -> int:
    """Message-enumeration budget, overridable via QUENTA_BUDGET."""
    raw = os.environ.get("QUENTA_BUDGET")
    return int(raw) if raw else DEFAULT_BUDGET


@dataclass(frozen=True)
class WeightReport:
    """Result of a (relative) minimum-weight computation.

    value is None exactly when the searched set is empty.  exact is False only
    for the bound method, where value echoes the caller's floor.
    """

    value: int | None
    exact: bool
    method: str  # "direct", "macwilliams" or "bound"
    enumerated: int


class LinearCode:
    """An [n, k] linear code over a finite field."""

    def __init__(self, field: Field, generator, n: int | None = None):
        self.field = field
        M = as_matrix(field, generator, width=n)
        R, _, r = rref(field, M)
        self.generator = R[:r].copy()
        self.n = M.shape[1]
        self.k = r
        self._wd_cache: dict[int, tuple | None] = {}

    @classmethod
    def from_parity_check(cls, field: Field, H, n: int | None = None) -> "LinearCode":
        H = as_matrix(field, H, width=n)
        return cls(field, nullspace(field, H), n=H.shape[1])

    def __repr__(self) -> str:
        return f"LinearCode[n={self.n}, k={self.k}, {self.field}]"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LinearCode)
            and self.field == other.field
            and self.n == other.n
            and self.generator.shape == other.generator.shape
            and np.array_equal(self.generator, other.generator)
        )

    def __hash__(self):
        return hash((self.field, self.n, self.generator.tobytes()))

    def subspace(self) -> Subspace:
        return Subspace(self.field, self.generator, n=self.n)

    def contains(self, vec) -> bool:
        return self.subspace().contains(vec)

    def is_subcode_of(self, other: "LinearCode") -> bool:
        self._check_compatible(other)
        return rank(self.field, np.vstack([other.generator, self.generator])) == other.k

    # -- derived codes -----------------------------------------------------

    def dual(self) -> "LinearCode":
        """Euclidean dual under the standard bilinear form."""
        if self.k == 0:
            return LinearCode(self.field, np.eye(self.n, dtype=np.int64))
        return LinearCode(self.field, nullspace(self.field, self.generator), n=self.n)

    def parity_check_matrix(self) -> np.ndarray:
        return self.dual().generator

    def power_code(self, e: int) -> "LinearCode":
        """The code {(c_1**e, ..., c_n**e) : c in C} for e a power of char."""
        F = self.field
        F.frobenius(0, e)  # validates the exponent
        rows = np.array(
            [[F.pow(int(x), e) for x in row] for row in self.generator],
            dtype=np.int64,
        ).reshape(self.k, self.n)
        return LinearCode(F, rows, n=self.n)

    def hermitian_dual(self) -> "LinearCode":
        """Dual under <x, y> = sum x_i y_i**q0 on a field of square order."""
        q0 = self.field.sqrt_order()
        return self.dual().power_code(q0)

    def hull(self) -> "LinearCode":
        return self.intersection(self.dual())

    def is_lcd(self) -> bool:
        return self.hull().k == 0

    def intersection(self, other: "LinearCode") -> "LinearCode":
        self._check_compatible(other)
        meet = self.subspace() & other.subspace()
        return LinearCode(self.field, meet.basis, n=self.n)

    def sum_code(self, other: "LinearCode") -> "LinearCode":
        self._check_compatible(other)
        return LinearCode(self.field, np.vstack([self.generator, other.generator]))

    def dim_intersection(self, other: "LinearCode") -> int:
        self._check_compatible(other)
        return self.k + other.k - self.sum_code(other).k

    # -- weights ----------------------------------------------------------------

    def weight_distribution(self, budget: int | None = None) -> tuple[np.ndarray, str] | None:
        """Exact weight histogram (length n+1), or None if over budget.

        The second element names the route taken: direct enumeration of this
        code, or enumeration of the dual followed by the MacWilliams
        transform.
        """
        budget = default_budget() if budget is None else budget
        if budget in self._wd_cache:
            return self._wd_cache[budget]
        result = self._weight_distribution_uncached(budget)
        self._wd_cache[budget] = result
        return result

    def _weight_distribution_uncached(self, budget: int) -> tuple[np.ndarray, str] | None:
        q = self.field.q
        if q**self.k <= budget:
            if q > self.field.tables["add"].shape[0]:
                raise ValueError(f"enumeration unsupported for field order {q}")
            hist = _kernels.weight_histogram(self.generator, q, self.field.tables)
            return hist, "direct"
        if q ** (self.n - self.k) <= budget:
            dual_hist = _kernels.weight_histogram(
                self.dual().generator, q, self.field.tables
            )
            hist = macwilliams_transform(dual_hist, self.n, q, self.n - self.k)
            return hist, "macwilliams"
        return None

    def min_weight(self, budget: int | None = None, floor: int = 1) -> WeightReport:
        """Minimum nonzero weight; exact under budget, else the given floor."""
        dist = self.weight_distribution(budget)
        if dist is None:
            return WeightReport(value=floor, exact=False, method="bound", enumerated=0)
        hist, method = dist
        nz = np.nonzero(hist[1:])[0]
        value = int(nz[0]) + 1 if nz.size else None
        q = self.field.q
        enumerated = q**self.k if method == "direct" else q ** (self.n - self.k)
        return WeightReport(value=value, exact=True, method=method, enumerated=enumerated)

    def relative_min_weight(
        self, sub: "LinearCode", budget: int | None = None, floor: int = 1
    ) -> WeightReport:
        """Minimum weight over codewords of self that are NOT in `sub`.

        `sub` must be a subcode; the histogram of self minus the histogram of
        sub counts exactly the difference set.  Returns value None when the
        difference set is empty (sub == self).
        """
        if not sub.is_subcode_of(self):
            raise ValueError("relative minimum weight needs a subcode")
        if sub.k == self.k:
            return WeightReport(value=None, exact=True, method="direct", enumerated=0)
        big = self.weight_distribution(budget)
        small = sub.weight_distribution(budget)
        if big is None or small is None:
            return WeightReport(value=floor, exact=False, method="bound", enumerated=0)
        hist = big[0] - small[0]
        if hist.min() < 0 or hist[0] != 0:
            raise AssertionError("subcode histogram exceeds code histogram")
        nz = np.nonzero(hist)[0]
        value = int(nz[0]) if nz.size else None
        method = big[1] if big[1] == small[1] else f"{big[1]}+{small[1]}"
        return WeightReport(value=value, exact=True, method=method, enumerated=0)

    def _check_compatible(self, other: "LinearCode") -> None:
        if self.field != other.field or self.n != other.n:
            raise ValueError("codes live in different ambient spaces")


def macwilliams_transform(dual_hist: np.ndarray, n: int, q: int, dual_dim: int) -> np.ndarray:
    """Weight distribution of C from that of its dual, exactly.

    With B the distribution of the dual code of dimension dual_dim,
    A_i = q**(-dual_dim) * sum_j B_j K_i(j) where K_i is the Krawtchouk
    polynomial.  All arithmetic is integer; divisibility and the sanity
    identities A_0 = 1, sum A_i = q**(n - dual_dim) are asserted.
    """
    B = [int(x) for x in dual_hist]
    scale = q**dual_dim
    out = []
    for i in range(n + 1):
        total = 0
        for j, bj in enumerate(B):
            if bj:
                total += bj * _krawtchouk(i, j, n, q)
        if total % scale:
            raise AssertionError("MacWilliams sum not divisible by q**dim(dual)")
        out.append(total // scale)
    if out[0] != 1 or any(a < 0 for a in out) or sum(out) != q ** (n - dual_dim):
        raise AssertionError("MacWilliams transform failed sanity checks")
    return np.array(out, dtype=object)


def _krawtchouk(i: int, j: int, n: int, q: int) -> int:
    total = 0
    for s in range(i + 1):
        term = (q - 1) ** (i - s) * math.comb(j, s) * math.comb(n - j, i - s)
        total += -term if s & 1 else term
    return total


def random_code(field: Field, n: int, k: int, rng) -> LinearCode:
    """Random [n, k] code (generator resampled until full rank)."""
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    while True:
        M = np.array(
            [[rng.randrange(field.q) for _ in range(n)] for _ in range(k)],
            dtype=np.int64,
        ).reshape(k, n)
        code = LinearCode(field, M, n=n)
        if code.k == k:
            return code
