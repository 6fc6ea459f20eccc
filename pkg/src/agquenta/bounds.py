"""Asymptotic rate/entanglement trade-off curves over square fields.

For a square prime power q the Ihara constant is A(q) = sqrt(q) - 1, and the
maximal-entanglement families supported here satisfy, as the length grows,

    rate >= 1 - delta - 1/A(q),      c/n in [delta, delta + 1/A(q)].

Everything is computed in exact rational arithmetic; CSV rendering is fixed
to six decimals so emitted files are byte-identical across runs.  The
Gilbert-Varshamov comparison curve is deliberately pluggable: callers supply
the evaluator, this module only lines the two curves up.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

__all__ = [
    "AsymptoticPoint",
    "ihara_a",
    "delta_grid",
    "family_curve",
    "gv_compare",
    "render_csv",
    "evaluator_from_expression",
]


def _is_prime_power(n: int) -> bool:
    if n < 2:
        return False
    p = 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            return n == 1
        p += 1
    return True  # n itself is prime


def ihara_a(q: int) -> int:
    """A(q) = sqrt(q) - 1 for square prime powers (exact, integer)."""
    root = 1
    while root * root < q:
        root += 1
    if root * root != q or not _is_prime_power(q):
        raise ValueError(f"A({q}) unknown here: need a square prime power")
    return root - 1


@dataclass(frozen=True)
class AsymptoticPoint:
    q: int
    delta: Fraction
    rate_lower: Fraction
    ent_lo: Fraction
    ent_hi: Fraction


def delta_grid(q: int, steps: int) -> Sequence[Fraction]:
    """steps + 1 evenly spaced deltas covering [0, 1 - 1/A(q)] exactly."""
    if steps < 1:
        raise ValueError("steps must be >= 1")
    top = 1 - Fraction(1, ihara_a(q))
    return [Fraction(i, steps) * top for i in range(steps + 1)]


def family_curve(q: int, deltas: Iterable) -> list[AsymptoticPoint]:
    inv_a = Fraction(1, ihara_a(q))
    points = []
    for delta in deltas:
        delta = Fraction(delta)
        if not 0 <= delta <= 1 - inv_a:
            raise ValueError(f"delta = {delta} outside [0, 1 - 1/A = {1 - inv_a}]")
        rate = 1 - delta - inv_a
        points.append(
            AsymptoticPoint(
                q=q,
                delta=delta,
                rate_lower=max(rate, Fraction(0)),
                ent_lo=delta,
                ent_hi=delta + inv_a,
            )
        )
    return points


GvEvaluator = Callable[[Fraction], Fraction]


def gv_compare(
    q: int, deltas: Iterable, gv_evaluator: Optional[GvEvaluator] = None
) -> list[tuple[AsymptoticPoint, Optional[Fraction], Optional[bool]]]:
    """Family curve side by side with a caller-supplied GV evaluator.

    Without an evaluator the GV fields stay None and the CSV renderer drops
    the comparison columns.
    """
    rows = []
    for point in family_curve(q, deltas):
        if gv_evaluator is None:
            rows.append((point, None, None))
        else:
            gv = Fraction(gv_evaluator(point.delta))
            rows.append((point, gv, point.rate_lower > gv))
    return rows


def _dec6(x: Fraction) -> str:
    scaled = round(Fraction(x) * 1_000_000)
    sign = "-" if scaled < 0 else ""
    scaled = abs(scaled)
    return f"{sign}{scaled // 1_000_000}.{scaled % 1_000_000:06d}"


def render_csv(rows) -> str:
    """CSV text (LF endings) from gv_compare rows or bare AsymptoticPoints."""
    rows = [(r, None, None) if isinstance(r, AsymptoticPoint) else r for r in rows]
    with_gv = any(gv is not None for _, gv, _ in rows)
    header = "delta,rate_lower,ent_lo,ent_hi"
    if with_gv:
        header += ",gv_rate,exceeds"
    lines = [header]
    for point, gv, exceeds in rows:
        cells = [
            _dec6(point.delta),
            _dec6(point.rate_lower),
            _dec6(point.ent_lo),
            _dec6(point.ent_hi),
        ]
        if with_gv:
            cells.append("" if gv is None else _dec6(gv))
            cells.append("" if exceeds is None else ("true" if exceeds else "false"))
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def evaluator_from_expression(text: str) -> GvEvaluator:
    """Compile a one-expression evaluator in the variable `delta`.

    The expression sees `delta` as an exact Fraction plus the Fraction
    constructor and min/max; it must return a number.
    """
    code = compile(text.strip(), "<gv-expression>", "eval")

    def evaluate(delta: Fraction) -> Fraction:
        value = eval(  # plug-in hook: expression comes from the operator
            code,
            {"__builtins__": {}},
            {"delta": delta, "Fraction": Fraction, "min": min, "max": max},
        )
        return Fraction(value)

    return evaluate
