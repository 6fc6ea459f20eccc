"""Evaluation codes on curves, with verified lattice and duality structure.

An evaluation code sends each function of L(G) to its values at a list of
rational places disjoint from the support of G.  When deg G < n the
evaluation map is injective, so the code dimension equals l(G) and the
minimum distance is at least the designed value n - deg G.

The meet and join of two codes built on the same places mirror the lattice of
divisors; equality of the corresponding codes is checked under the hypotheses
deg(G1 v G2) < n (meet) and additionally deg(G1 ^ G2) > 2g - 2 (join).  The
dual of an evaluation code is again an evaluation code up to the residues of
the distinguished differential eta: exactly equal when the residues are the
same at every place, otherwise equal after a diagonal twist.
"""

from __future__ import annotations

import numpy as np

from agquenta.errors import ConstraintViolation, PropositionFalsified
from agquenta.funcfield import Divisor, Place
from agquenta.lincode import LinearCode

__all__ = ["AgCode", "evaluation_code", "code_meet", "code_join", "dual_code_check"]


class AgCode:
    """An evaluation code together with the curve data that produced it."""

    def __init__(self, curve, G: Divisor, places: list[Place], basis, code: LinearCode):
        self.curve = curve
        self.G = G
        self.places = places
        self.basis = basis
        self.code = code

    @property
    def n(self) -> int:
        return self.code.n

    @property
    def k(self) -> int:
        return self.code.k

    @property
    def designed_distance(self) -> int:
        """The evaluation-code bound n - deg G (meaningful for deg G < n)."""
        return self.n - self.G.degree()

    def __repr__(self):
        return (f"AgCode[n={self.n}, k={self.k}, designed_d={self.designed_distance}, "
                f"{self.curve.field}]")


def evaluation_code(curve, G: Divisor, places: list[Place] | None = None) -> AgCode:
    """Evaluate a basis of L(G) at the given places (default: all but P0)."""
    if places is None:
        places = curve.standard_evaluation_places()
    if len(set(places)) != len(places):
        raise ConstraintViolation("evaluation places must be distinct")
    support = set(G.support())
    overlap = [p for p in places if p in support]
    if overlap:
        raise ConstraintViolation(
            "supp(G) and supp(D) must be disjoint",
            f"shared places {overlap[:3]}",
        )
    basis = curve.rr_basis(G)
    n = len(places)
    M = np.zeros((len(basis), n), dtype=np.int64)
    for i, f in enumerate(basis):
        for j, p in enumerate(places):
            M[i, j] = curve.evaluate(f, p)
    code = LinearCode(curve.field, M, n=n)
    if G.degree() < n and code.k != len(basis):
        raise PropositionFalsified(
            f"evaluation not injective: rank {code.k} < l(G) = {len(basis)} "
            f"with deg G = {G.degree()} < n = {n}"
        )
    return AgCode(curve, G, places, basis, code)


def _same_context(a: AgCode, b: AgCode) -> None:
    if a.curve is not b.curve or a.places != b.places:
        raise ValueError("codes must share a curve and evaluation places")


def code_meet(a: AgCode, b: AgCode, check: bool = True) -> AgCode:
    """Evaluation code of the divisor meet; checked against the intersection.

    The identity C(G1) n C(G2) = C(G1 ^ G2) is verified whenever
    deg(G1 v G2) < n.
    """
    _same_context(a, b)
    built = evaluation_code(a.curve, a.G.meet(b.G), a.places)
    if check and a.G.join(b.G).degree() < a.n:
        expected = a.code.intersection(b.code)
        if built.code != expected:
            raise PropositionFalsified(
                f"C(G1 ^ G2) != C(G1) n C(G2) for G1={a.G}, G2={b.G}"
            )
    return built


def code_join(a: AgCode, b: AgCode, check: bool = True) -> AgCode:
    """Evaluation code of the divisor join; checked against the sum.

    The identity C(G1) + C(G2) = C(G1 v G2) is verified whenever
    deg(G1 v G2) < n and deg(G1 ^ G2) > 2g - 2.
    """
    _same_context(a, b)
    built = evaluation_code(a.curve, a.G.join(b.G), a.places)
    genus = a.curve.genus
    if (
        check
        and a.G.join(b.G).degree() < a.n
        and a.G.meet(b.G).degree() > 2 * genus - 2
    ):
        expected = a.code.sum_code(b.code)
        if built.code != expected:
            raise PropositionFalsified(
                f"C(G1 v G2) != C(G1) + C(G2) for G1={a.G}, G2={b.G}"
            )
    return built


def dual_code_check(curve, G: Divisor, places: list[Place] | None = None) -> dict:
    """Verify that the dual of C(D, G) is the evaluation code of D - G + (eta).

    The identity holds up to the diagonal matrix of residues of eta at the
    places of D; that twisted form is asserted unconditionally.  The returned
    dict reports whether the plain (untwisted) identity also holds and whether
    the residues are constant, which guarantees it.
    """
    ac = evaluation_code(curve, G, places)
    dual = ac.code.dual()
    g_perp = curve.dual_divisor(G, ac.places)
    perp = evaluation_code(curve, g_perp, ac.places)
    residues = curve.eta_residues()
    twist = np.array([residues[p] for p in ac.places], dtype=np.int64)
    mul = curve.field.tables["mul"]
    twisted = LinearCode(curve.field, mul[perp.code.generator, twist[None, :]],
                         n=ac.n)
    if twisted != dual:
        raise PropositionFalsified(
            f"dual of C(D, G) is not diag(res) C(D, D - G + (eta)) for G={G}"
        )
    constant = curve.eta_residues_constant()
    plain = perp.code == dual
    if constant and not plain:
        raise PropositionFalsified(
            "constant residues must make the dual an evaluation code exactly"
        )
    return {"plain_equal": plain, "residues_constant": constant,
            "dual_divisor": g_perp}
