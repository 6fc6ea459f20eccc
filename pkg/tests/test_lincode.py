"""Code-level checks: duality, weight machinery, Frobenius images."""

import itertools
import random

import numpy as np
import pytest

from agquenta.galois import GF
from agquenta.lincode import (
    LinearCode,
    macwilliams_transform,
    random_code,
)


def all_codewords(code):
    """Brute-force codeword list, independent of the kernel enumeration."""
    F, G = code.field, code.generator
    words = []
    for msg in itertools.product(range(F.q), repeat=code.k):
        w = [0] * code.n
        for m, row in zip(msg, G):
            if m:
                w = [F.add(a, F.mul(m, int(b))) for a, b in zip(w, row)]
        words.append(tuple(w))
    return words


def brute_min_weight(code, exclude=()):
    excl = set(exclude)
    best = None
    for w in all_codewords(code):
        if w in excl:
            continue
        wt = sum(1 for x in w if x)
        if wt and (best is None or wt < best):
            best = wt
    return best


def test_dual_orthogonality_exhaustive():
    F = GF(5)
    C = LinearCode(F, [[1, 0, 0, 4], [0, 1, 0, 3], [0, 0, 1, 1]])
    D = C.dual()
    assert C.k == 3 and D.k == 1 and C.n == D.n == 4
    cw = all_codewords(C)
    dw = all_codewords(D)
    assert len(cw) == 125 and len(dw) == 5
    for c in cw:
        for d in dw:
            acc = 0
            for a, b in zip(c, d):
                acc = F.add(acc, F.mul(a, b))
            assert acc == 0
    assert C.dual().dual() == C


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_min_weight_matches_brute_force(q):
    F = GF(q)
    rng = random.Random(q)
    for _ in range(10):
        n = rng.randrange(3, 8)
        k = rng.randrange(1, n)
        C = random_code(F, n, k, rng)
        rep = C.min_weight()
        assert rep.exact and rep.method == "direct"
        assert rep.value == brute_min_weight(C)


@pytest.mark.parametrize("q", [2, 3, 4])
def test_macwilliams_route_agrees_with_direct(q):
    F = GF(q)
    rng = random.Random(40 + q)
    for _ in range(8):
        n = rng.randrange(4, 9)
        k = rng.randrange(1, n)
        C = random_code(F, n, k, rng)
        direct = C.weight_distribution()[0]
        dual_hist = C.dual().weight_distribution()[0]
        via_dual = macwilliams_transform(np.asarray(dual_hist), n, q, n - k)
        assert [int(x) for x in direct] == [int(x) for x in via_dual]


def test_min_weight_budget_tiers():
    F = GF(2)
    C = random_code(F, 10, 6, random.Random(1))
    full = C.min_weight()
    # budget 2**4 forces the dual route (2**6 messages > 16 >= 2**4 dual)
    dual_side = C.min_weight(budget=16)
    assert dual_side.exact and dual_side.method == "macwilliams"
    assert dual_side.value == full.value
    floor = C.min_weight(budget=2, floor=3)
    assert not floor.exact and floor.method == "bound" and floor.value == 3


def test_power_code_frobenius_image():
    F = GF(4)
    # span{(1, w)} squares to span{(1, w^2)} = span{(1, w+1)}
    C = LinearCode(F, [[1, 2]])
    sq = C.power_code(2)
    assert np.array_equal(sq.generator, np.array([[1, 3]], dtype=np.int64))
    with pytest.raises(ValueError):
        C.power_code(3)
    # e = q is the identity map on the whole code
    assert C.power_code(4) == C


def test_power_code_is_image_of_codeword_map():
    F = GF(9)
    rng = random.Random(5)
    C = random_code(F, 5, 2, rng)
    P = C.power_code(3)
    cubes = {tuple(F.pow(x, 3) for x in w) for w in all_codewords(C)}
    assert cubes == set(map(tuple, all_codewords(P)))


def test_hermitian_dual_identities():
    F = GF(9)
    rng = random.Random(9)
    for _ in range(6):
        C = random_code(F, 4, rng.randrange(1, 4), rng)
        H = C.hermitian_dual()
        assert H.k == C.n - C.k
        # same space as the euclidean dual of the conjugated code
        assert H == C.power_code(3).dual()
        # every pair is hermitian-orthogonal
        for x in all_codewords(H):
            for c in all_codewords(C):
                acc = 0
                for a, b in zip(x, c):
                    acc = F.add(acc, F.mul(a, F.pow(b, 3)))
                assert acc == 0


def test_hull_and_lcd():
    F = GF(2)
    # self-dual [2,1] repetition code: hull is the whole code
    C = LinearCode(F, [[1, 1]])
    assert C.hull() == C and not C.is_lcd()
    # [3,1] repetition over GF(2) is LCD (1+1+1 = 1 != 0)
    R = LinearCode(F, [[1, 1, 1]])
    assert R.is_lcd()
    assert C.hull().is_subcode_of(C) and C.hull().is_subcode_of(C.dual())


def test_dim_intersection_matches_subspace_meet():
    F = GF(3)
    rng = random.Random(77)
    for _ in range(10):
        A = random_code(F, 6, rng.randrange(1, 5), rng)
        B = random_code(F, 6, rng.randrange(1, 5), rng)
        assert A.dim_intersection(B) == A.intersection(B).k


def test_relative_min_weight_brute_force():
    F = GF(3)
    rng = random.Random(21)
    for _ in range(10):
        C = random_code(F, 6, 3, rng)
        # a random proper subcode spanned by part of the generator
        S = LinearCode(F, C.generator[:2], n=6)
        rep = C.relative_min_weight(S)
        expected = brute_min_weight(C, exclude=set(all_codewords(S)))
        assert rep.exact and rep.value == expected
    # S == C leaves nothing to search
    empty = C.relative_min_weight(C)
    assert empty.value is None and empty.exact


def test_relative_min_weight_requires_subcode():
    F = GF(2)
    C = LinearCode(F, [[1, 0, 0], [0, 1, 0]])
    other = LinearCode(F, [[0, 0, 1]])
    with pytest.raises(ValueError):
        C.relative_min_weight(other)


def test_zero_code_edges():
    F = GF(4)
    Z = LinearCode(F, np.zeros((0, 5), dtype=np.int64), n=5)
    assert Z.k == 0
    assert Z.min_weight().value is None
    assert Z.dual().k == 5
    full = Z.dual()
    assert full.min_weight().value == 1


def test_from_parity_check_round_trip():
    F = GF(7)
    rng = random.Random(3)
    C = random_code(F, 6, 2, rng)
    assert LinearCode.from_parity_check(F, C.parity_check_matrix()) == C
