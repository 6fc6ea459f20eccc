"""Hot loops for finite-field linear algebra, with two implementations.

Every kernel works on int64 numpy arrays of field-element representations and
looks arithmetic up in the q-by-q tables supplied by :attr:`Field.tables`.
The numba implementation compiles tight element-level loops; the numpy
implementation expresses the same work as vectorized table gathers.  Both
produce bit-identical results.

Selection is controlled by the environment variable ``QUENTA_KERNELS``:

* ``auto`` (default): numba when importable, else numpy
* ``numba``: require numba, error if missing
* ``numpy``: pure numpy even when numba is installed
"""

from __future__ import annotations

import os

import numpy as np

__all__ = ["active_backend", "set_backend", "rref", "matmul", "weight_histogram"]

_BACKEND: str | None = None
_NB: dict | None = None

BLOCK_ROWS = 1 << 16


def active_backend() -> str:
    global _BACKEND
    if _BACKEND is None:
        set_backend(os.environ.get("QUENTA_KERNELS", "auto"))
    return _BACKEND


def set_backend(choice: str) -> str:
    """Resolve and pin the kernel backend; returns the resolved name."""
    global _BACKEND
    choice = choice.lower()
    if choice not in ("auto", "numba", "numpy"):
        raise ValueError(f"QUENTA_KERNELS must be auto, numba or numpy, got {choice!r}")
    if choice == "numpy":
        _BACKEND = "numpy"
    else:
        try:
            _load_numba()
            _BACKEND = "numba"
        except ImportError:
            if choice == "numba":
                raise RuntimeError("QUENTA_KERNELS=numba but numba is not importable")
            _BACKEND = "numpy"
    return _BACKEND


def _load_numba() -> dict:
    global _NB
    if _NB is not None:
        return _NB
    from numba import njit

    @njit(cache=True)
    def rref_nb(M, add, mul, neg, inv):
        rows, cols = M.shape
        R = M.copy()
        piv = np.empty(min(rows, cols), np.int64)
        r = 0
        for c in range(cols):
            if r == rows:
                break
            pr = -1
            for i in range(r, rows):
                if R[i, c] != 0:
                    pr = i
                    break
            if pr < 0:
                continue
            if pr != r:
                for t in range(cols):
                    R[r, t], R[pr, t] = R[pr, t], R[r, t]
            s = inv[R[r, c]]
            if s != 1:
                for t in range(cols):
                    R[r, t] = mul[s, R[r, t]]
            for i in range(rows):
                f = R[i, c]
                if i != r and f != 0:
                    nf = neg[f]
                    for t in range(cols):
                        R[i, t] = add[R[i, t], mul[nf, R[r, t]]]
            piv[r] = c
            r += 1
        return R, piv[:r], r

    @njit(cache=True)
    def matmul_nb(A, B, add, mul):
        ra, inner = A.shape
        cb = B.shape[1]
        C = np.zeros((ra, cb), np.int64)
        for i in range(ra):
            for k in range(inner):
                a = A[i, k]
                if a != 0:
                    for j in range(cb):
                        C[i, j] = add[C[i, j], mul[a, B[k, j]]]
        return C

    @njit(cache=True)
    def weight_hist_nb(deltas, q, add):
        k, _, n = deltas.shape
        total = 1
        for _ in range(k):
            total *= q
        hist = np.zeros(n + 1, np.int64)
        cw = np.zeros(n, np.int64)
        digits = np.zeros(k, np.int64)
        hist[0] += 1
        for _ in range(total - 1):
            i = 0
            while digits[i] == q - 1:
                for t in range(n):
                    cw[t] = add[cw[t], deltas[i, q - 1, t]]
                digits[i] = 0
                i += 1
            for t in range(n):
                cw[t] = add[cw[t], deltas[i, digits[i], t]]
            digits[i] += 1
            w = 0
            for t in range(n):
                if cw[t] != 0:
                    w += 1
            hist[w] += 1
        return hist

    _NB = {"rref": rref_nb, "matmul": matmul_nb, "weight_hist": weight_hist_nb}
    return _NB


# -- numpy implementations ---------------------------------------------------


def _rref_np(M, add, mul, neg, inv):
    rows, cols = M.shape
    R = M.copy()
    piv = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        pr = r + nz[0]
        if pr != r:
            R[[r, pr]] = R[[pr, r]]
        s = inv[R[r, c]]
        if s != 1:
            R[r] = mul[s, R[r]]
        col = R[:, c].copy()
        col[r] = 0
        hits = np.nonzero(col)[0]
        if hits.size:
            scaled = mul[col[hits][:, None], R[r][None, :]]
            R[hits] = add[R[hits], neg[scaled]]
        piv.append(c)
        r += 1
    return R, np.array(piv, dtype=np.int64), r


def _matmul_np(A, B, add, mul):
    C = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    for k in range(A.shape[1]):
        C = add[C, mul[A[:, k][:, None], B[k][None, :]]]
    return C


def _weight_hist_np(scaled, q, add):
    """Weight histogram of all q**k row combinations.

    scaled[i, v] is row i of the generator multiplied by the field element v.
    Low rows are expanded into one dense block of codeword combinations; the
    remaining message prefixes are walked in python, which keeps the inner
    work fully vectorized.
    """
    k, _, n = scaled.shape
    block = np.zeros((1, n), dtype=np.int64)
    j = 0
    while j < k and block.shape[0] * q <= BLOCK_ROWS:
        block = add[block[None, :, :], scaled[j][:, None, :]].reshape(-1, n)
        j += 1
    hist = np.zeros(n + 1, dtype=np.int64)
    for mh in range(q ** (k - j)):
        prefix = np.zeros(n, dtype=np.int64)
        v = mh
        for i in range(j, k):
            v, dig = divmod(v, q)
            if dig:
                prefix = add[prefix, scaled[i, dig]]
        words = add[block, prefix[None, :]]
        w = np.count_nonzero(words, axis=1)
        hist += np.bincount(w, minlength=n + 1)
    return hist


# -- dispatch ------------------------------------------------------------------


def rref(M: np.ndarray, tables: dict) -> tuple[np.ndarray, np.ndarray, int]:
    """Reduced row echelon form; returns (R, pivot columns, rank)."""
    M = np.ascontiguousarray(M, dtype=np.int64)
    if M.shape[0] == 0 or M.shape[1] == 0:
        return M.copy(), np.empty(0, dtype=np.int64), 0
    if active_backend() == "numba":
        return _load_numba()["rref"](M, tables["add"], tables["mul"],
                                     tables["neg"], tables["inv"])
    return _rref_np(M, tables["add"], tables["mul"], tables["neg"], tables["inv"])


def matmul(A: np.ndarray, B: np.ndarray, tables: dict) -> np.ndarray:
    A = np.ascontiguousarray(A, dtype=np.int64)
    B = np.ascontiguousarray(B, dtype=np.int64)
    if A.shape[1] != B.shape[0]:
        raise ValueError(f"shape mismatch {A.shape} @ {B.shape}")
    if A.shape[0] == 0 or B.shape[1] == 0 or A.shape[1] == 0:
        return np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    if active_backend() == "numba":
        return _load_numba()["matmul"](A, B, tables["add"], tables["mul"])
    return _matmul_np(A, B, tables["add"], tables["mul"])


def weight_histogram(G: np.ndarray, q: int, tables: dict) -> np.ndarray:
    """Exact weight histogram of the code spanned by the rows of G.

    Rows must be linearly independent: all q**k messages are enumerated and
    each codeword is counted once.
    """
    G = np.ascontiguousarray(G, dtype=np.int64)
    k, n = G.shape
    if k == 0:
        hist = np.zeros(n + 1, dtype=np.int64)
        hist[0] = 1
        return hist
    add, mul, neg = tables["add"], tables["mul"], tables["neg"]
    scaled = mul[np.arange(q)[None, :, None], G[:, None, :]]
    if active_backend() == "numba":
        # deltas[i, v] = (v+1 mod q)·G[i] - v·G[i], the row added per digit step
        nxt = scaled[:, (np.arange(q) + 1) % q, :]
        deltas = add[nxt, neg[scaled]]
        return _load_numba()["weight_hist"](np.ascontiguousarray(deltas), q, add)
    return _weight_hist_np(scaled, q, add)
