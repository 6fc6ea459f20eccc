"""Linear algebra checks, anchored by a cofactor-expansion rank oracle."""

import itertools
import random

import numpy as np
import pytest

from agquenta import _kernels
from agquenta.galois import GF
from agquenta.matspace import (
    Subspace,
    matmul,
    matrix_from_text,
    matrix_to_text,
    nullspace,
    rank,
    rref,
)


def det_oracle(F, M):
    """Determinant by cofactor expansion; independent of the rref path."""
    n = M.shape[0]
    if n == 1:
        return int(M[0, 0])
    total = 0
    sign_pos = True
    for j in range(n):
        minor = np.delete(np.delete(M, 0, axis=0), j, axis=1)
        term = F.mul(int(M[0, j]), det_oracle(F, minor))
        total = F.add(total, term if sign_pos else F.neg(term))
        sign_pos = not sign_pos
    return total


def rank_oracle(F, M):
    """Largest r with a nonsingular r-by-r minor."""
    rows, cols = M.shape
    for r in range(min(rows, cols), 0, -1):
        for rsel in itertools.combinations(range(rows), r):
            for csel in itertools.combinations(range(cols), r):
                sub = M[np.ix_(rsel, csel)]
                if det_oracle(F, sub) != 0:
                    return r
    return 0


def random_matrix(F, rng, rows, cols):
    return np.array([[rng.randrange(F.q) for _ in range(cols)] for _ in range(rows)],
                    dtype=np.int64)


@pytest.mark.parametrize("q", [2, 3, 4, 5, 9])
def test_rank_matches_minor_oracle(q):
    F = GF(q)
    rng = random.Random(q)
    for _ in range(25):
        M = random_matrix(F, rng, rng.randrange(1, 5), rng.randrange(1, 5))
        assert rank(F, M) == rank_oracle(F, M)


@pytest.mark.parametrize("q", [2, 4, 5, 8, 9])
def test_rref_properties(q):
    F = GF(q)
    rng = random.Random(100 + q)
    for _ in range(30):
        M = random_matrix(F, rng, rng.randrange(1, 7), rng.randrange(1, 7))
        R, piv, r = rref(F, M)
        assert r == len(piv)
        for i, c in enumerate(piv):
            assert R[i, c] == 1
            col = R[:, c].copy()
            col[i] = 0
            assert not col.any()
            # staircase: nothing to the left of a pivot in its row
            assert not R[i, :c].any()
        assert not R[r:].any()
        # row space is preserved: every original row reduces to zero against R
        stacked = np.vstack([R[:r], M])
        assert rank(F, stacked) == r


@pytest.mark.parametrize("q", [2, 3, 4, 5, 8, 9, 16])
def test_rank_nullity_and_kernel_membership(q):
    F = GF(q)
    rng = random.Random(200 + q)
    for _ in range(20):
        rows, cols = rng.randrange(1, 6), rng.randrange(1, 8)
        M = random_matrix(F, rng, rows, cols)
        K = nullspace(F, M)
        assert rank(F, M) + K.shape[0] == cols
        if K.shape[0]:
            prod = matmul(F, M, K.T)
            assert not prod.any()


def test_kernel_of_all_ones_row_gf2():
    F = GF(2)
    K = nullspace(F, np.array([[1, 1]], dtype=np.int64))
    assert np.array_equal(K, np.array([[1, 1]], dtype=np.int64))


def test_matmul_matches_scalar_reference():
    for q in [2, 5, 8, 9]:
        F = GF(q)
        rng = random.Random(300 + q)
        A = random_matrix(F, rng, 4, 3)
        B = random_matrix(F, rng, 3, 5)
        C = matmul(F, A, B)
        for i in range(4):
            for j in range(5):
                acc = 0
                for k in range(3):
                    acc = F.add(acc, F.mul(int(A[i, k]), int(B[k, j])))
                assert C[i, j] == acc


def test_subspace_canonical_basis_is_generator_invariant():
    F = GF(4)
    rng = random.Random(7)
    base = random_matrix(F, rng, 3, 6)
    S1 = Subspace(F, base)
    # scaled and shuffled generating set, plus redundant sums
    rows = [F.tables["mul"][2, base[0]], base[2], base[1],
            F.tables["add"][base[0], base[1]]]
    S2 = Subspace(F, np.array(rows, dtype=np.int64))
    assert S1 == S2
    assert hash(S1) == hash(S2)


def test_subspace_order_and_lattice_ops():
    F = GF(3)
    rng = random.Random(11)
    n = 7
    for _ in range(15):
        A = Subspace(F, random_matrix(F, rng, rng.randrange(1, 5), n))
        B = Subspace(F, random_matrix(F, rng, rng.randrange(1, 5), n))
        S = A + B
        I = A & B
        assert I <= A and I <= B and A <= S and B <= S
        # inclusion-exclusion on dimensions
        assert I.dim == A.dim + B.dim - S.dim
        for v in I.basis:
            assert A.contains(v) and B.contains(v)


def test_modular_law():
    F = GF(2)
    rng = random.Random(13)
    n = 6
    for _ in range(20):
        A = Subspace(F, random_matrix(F, rng, rng.randrange(1, 5), n))
        B = Subspace(F, random_matrix(F, rng, rng.randrange(1, 5), n))
        C = Subspace(F, random_matrix(F, rng, rng.randrange(1, 5), n))
        AC = A & C
        left = A & (B + AC)
        right = (A & B) + AC
        assert left == right


def test_orthogonal_complement_dimensions_and_double_dual():
    for q in [2, 4, 5]:
        F = GF(q)
        rng = random.Random(400 + q)
        for _ in range(10):
            n = rng.randrange(2, 8)
            A = Subspace(F, random_matrix(F, rng, rng.randrange(0, n + 1), n), n=n)
            O = A.orthogonal()
            assert A.dim + O.dim == n
            assert O.orthogonal() == A


def test_zero_and_full_subspace_edges():
    F = GF(5)
    Z = Subspace.zero(F, 4)
    U = Subspace.full(F, 4)
    assert Z.dim == 0 and U.dim == 4
    assert Z <= U and (Z & U) == Z and (Z + U) == U
    assert Z.orthogonal() == U and U.orthogonal() == Z
    assert U.contains([1, 2, 3, 4]) and not Z.contains([1, 0, 0, 0])


def test_matrix_text_round_trip():
    F = GF(9)
    M = np.array([[0, 8, 3], [4, 1, 7]], dtype=np.int64)
    text = matrix_to_text(F, M)
    assert text.splitlines()[0] == "2 3 3 2"
    F2, M2 = matrix_from_text(text)
    assert F2 == F
    assert np.array_equal(M, M2)
    with pytest.raises(ValueError):
        matrix_from_text("1 2 3\n")
    with pytest.raises(ValueError):
        matrix_from_text("2 2 2 1\n0 1\n")


def test_backends_agree():
    if _kernels.set_backend("auto") != "numba":
        pytest.skip("numba unavailable")
    F = GF(4)
    rng = random.Random(17)
    try:
        for _ in range(10):
            M = random_matrix(F, rng, rng.randrange(1, 6), rng.randrange(1, 6))
            G = random_matrix(F, rng, 3, 6)
            _kernels.set_backend("numba")
            R1 = rref(F, M)
            H1 = _kernels.weight_histogram(_independent(F, G), 4, F.tables)
            _kernels.set_backend("numpy")
            R2 = rref(F, M)
            H2 = _kernels.weight_histogram(_independent(F, G), 4, F.tables)
            assert np.array_equal(R1[0], R2[0]) and R1[2] == R2[2]
            assert np.array_equal(H1, H2)
    finally:
        _kernels.set_backend("auto")


def _independent(F, G):
    R, _, r = rref(F, G)
    return R[:r]


def test_weight_histogram_brute_force():
    F = GF(3)
    G = np.array([[1, 0, 2, 1], [0, 1, 1, 1]], dtype=np.int64)
    hist = _kernels.weight_histogram(G, 3, F.tables)
    # brute force over all 9 messages
    expected = np.zeros(5, dtype=np.int64)
    for a in range(3):
        for b in range(3):
            w = sum(
                1
                for t in range(4)
                if F.add(F.mul(a, int(G[0, t])), F.mul(b, int(G[1, t]))) != 0
            )
            expected[w] += 1
    assert np.array_equal(hist, expected)
    assert hist.sum() == 9
