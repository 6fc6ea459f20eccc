"""Exact arithmetic in GF(p^m) for prime powers up to 2**16.

A field element is a plain Python int in ``range(q)``: its little-endian
base-p digits are the coefficients of the residue polynomial, so 0 and 1 are
the field's zero and one for every (p, m).  The modulus is the monic
irreducible polynomial of degree m whose integer encoding (same digit
convention, including the leading 1) is smallest; this makes element
representations reproducible across runs and machines.

Multiplication and inversion go through log/antilog tables for fields with at
most 2**12 elements and fall back to on-the-fly polynomial reduction above
that.  Fields are immutable and hashable; all operations are pure.
"""

from __future__ import annotations

import functools

import numpy as np

__all__ = ["Field", "GF", "is_prime_power"]

LOG_TABLE_LIMIT = 2**12
KERNEL_TABLE_LIMIT = 2**10
ORDER_LIMIT = 2**16


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _factor_prime_power(q: int) -> tuple[int, int] | None:
    """Return (p, m) with q == p**m and p prime, or None."""
    if q < 2:
        return None
    for p in range(2, q + 1):
        if p * p > q:
            break
        if q % p:
            continue
        m = 0
        r = q
        while r % p == 0:
            r //= p
            m += 1
        return (p, m) if r == 1 else None
    return (q, 1)


def is_prime_power(q: int) -> bool:
    pm = _factor_prime_power(q)
    return pm is not None and _is_prime(pm[0])


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _digits(value: int, p: int) -> list[int]:
    out = []
    while value:
        value, r = divmod(value, p)
        out.append(r)
    return out


def _poly_mulmod(a: list[int], b: list[int], mod: list[int], p: int) -> list[int]:
    """Schoolbook product of digit lists reduced modulo the monic poly `mod`."""
    prod = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    m = len(mod) - 1
    # mod is monic, so reduction is repeated subtraction of shifted multiples
    for k in range(len(prod) - 1, m - 1, -1):
        c = prod[k]
        if c:
            prod[k] = 0
            for j in range(m):
                prod[k - m + j] = (prod[k - m + j] - c * mod[j]) % p
    out = prod[:m]
    while out and out[-1] == 0:
        out.pop()
    return out


def _poly_divides(d: list[int], f: list[int], p: int) -> bool:
    """True when monic digit-list d divides f over GF(p)."""
    rem = list(f)
    while len(rem) >= len(d):
        c = rem[-1]
        if c:
            shift = len(rem) - len(d)
            for j, dj in enumerate(d):
                rem[shift + j] = (rem[shift + j] - c * dj) % p
        rem.pop()
    return all(c == 0 for c in rem)


def _smallest_irreducible(p: int, m: int) -> tuple[int, ...]:
    """Monic irreducible of degree m over GF(p) with smallest integer encoding."""
    if m == 1:
        return (0, 1)
    for low in range(p**m):
        f = _digits(low, p)
        f += [0] * (m - len(f)) + [1]
        # trial division by every monic polynomial of degree 1..m//2
        reducible = False
        for deg in range(1, m // 2 + 1):
            for dlow in range(p**deg):
                d = _digits(dlow, p)
                d += [0] * (deg - len(d)) + [1]
                if _poly_divides(d, f, p):
                    reducible = True
                    break
            if reducible:
                break
        if not reducible:
            return tuple(f)
    raise RuntimeError(f"no irreducible of degree {m} over GF({p})")


class Field:
    """The finite field GF(p^m), elements encoded as ints below p^m."""

    def __init__(self, p: int, m: int, modulus: tuple[int, ...] | None = None):
        if not _is_prime(p):
            raise ValueError(f"p = {p} is not prime")
        if m < 1:
            raise ValueError(f"m = {m} must be positive")
        q = p**m
        if q > ORDER_LIMIT:
            raise ValueError(f"field order {q} exceeds {ORDER_LIMIT}")
        self.p = p
        self.m = m
        self.q = q
        if modulus is None:
            modulus = _smallest_irreducible(p, m)
        if len(modulus) != m + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree m")
        self.modulus = tuple(int(c) % p for c in modulus[:-1]) + (1,)
        self._exp: list[int] | None = None
        self._log: list[int] | None = None
        if m > 1 and q <= LOG_TABLE_LIMIT:
            self._build_log_tables()

    # -- representation ------------------------------------------------

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.m})" if self.m > 1 else f"GF({self.p})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Field)
            and (self.p, self.m, self.modulus) == (other.p, other.m, other.modulus)
        )

    def __hash__(self) -> int:
        return hash((self.p, self.m, self.modulus))

    def check(self, a: int) -> int:
        if not isinstance(a, (int, np.integer)) or not 0 <= a < self.q:
            raise ValueError(f"{a!r} is not an element of {self}")
        return int(a)

    def elements(self):
        """All q elements in representation order."""
        return range(self.q)

    # -- core arithmetic -------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        out, shift = 0, 1
        for _ in range(self.m):
            out += ((a + b) % self.p) * shift
            a //= self.p
            b //= self.p
            shift *= self.p
        return out

    def neg(self, a: int) -> int:
        if self.m == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        out, shift = 0, 1
        for _ in range(self.m):
            out += (-a % self.p) * shift
            a //= self.p
            shift *= self.p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a * b) % self.p
        if a == 0 or b == 0:
            return 0
        if self._exp is not None:
            return self._exp[self._log[a] + self._log[b]]
        return self._encode(_poly_mulmod(_digits(a, self.p), _digits(b, self.p),
                                         list(self.modulus), self.p))

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.m == 1:
            return pow(a, self.p - 2, self.p)
        if self._exp is not None:
            return self._exp[self.q - 1 - self._log[a]]
        return self.pow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        if a == 0:
            return 0 if e else 1
        if self._exp is not None and self.m > 1:
            return self._exp[(self._log[a] * e) % (self.q - 1)]
        if self.m == 1:
            return pow(a, e, self.p)
        out, base = 1, a
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out

    # -- structure maps --------------------------------------------------

    def frobenius(self, a: int, k: int) -> int:
        """a**k for k a power of the characteristic."""
        kk = k
        while kk > 1 and kk % self.p == 0:
            kk //= self.p
        if kk != 1:
            raise ValueError(f"k = {k} is not a power of {self.p}")
        return self.pow(a, k)

    def conj(self, a: int) -> int:
        """a -> a**sqrt(q) on a field of square order."""
        return self.pow(a, self.sqrt_order())

    def sqrt_order(self) -> int:
        if self.m % 2:
            raise ValueError(f"{self} has non-square order")
        return self.p ** (self.m // 2)

    def trace_to_prime(self, a: int) -> int:
        """Absolute trace into GF(p), returned as an int below p."""
        t, x = 0, a
        for _ in range(self.m):
            t = self.add(t, x)
            x = self.pow(x, self.p)
        return t

    # -- internals ---------------------------------------------------------

    def _encode(self, digits: list[int]) -> int:
        out = 0
        for c in reversed(digits):
            out = out * self.p + c
        return out

    def _raw_mul(self, a: int, b: int) -> int:
        return self._encode(_poly_mulmod(_digits(a, self.p), _digits(b, self.p),
                                         list(self.modulus), self.p))

    def _build_log_tables(self) -> None:
        g = self._find_generator()
        exp = [0] * (2 * (self.q - 1))
        log = [0] * self.q
        x = 1
        for i in range(self.q - 1):
            exp[i] = exp[i + self.q - 1] = x
            log[x] = i
            x = self._raw_mul(x, g)
        if x != 1:
            raise RuntimeError("generator order mismatch")
        self._exp, self._log = exp, log

    def _find_generator(self) -> int:
        n = self.q - 1
        checks = [n // f for f in _prime_factors(n)]
        for g in range(2, self.q):
            x, ok = g, True
            for c in checks:
                # g**c by square-and-multiply on raw polynomial products
                y, base, e = 1, g, c
                while e:
                    if e & 1:
                        y = self._raw_mul(y, base)
                    base = self._raw_mul(base, base)
                    e >>= 1
                if y == 1:
                    ok = False
                    break
            if ok:
                return g
        raise RuntimeError("no multiplicative generator found")

    # -- lookup tables for vectorized code --------------------------------

    @functools.cached_property
    def tables(self) -> dict[str, np.ndarray]:
        """q-by-q add/mul tables plus neg/inv rows, for array kernels.

        Only built for q <= 1024; larger fields never reach the matrix layer
        in this package.
        """
        if self.q > KERNEL_TABLE_LIMIT:
            raise ValueError(f"kernel tables unavailable for order {self.q}")
        q = self.q
        add = np.empty((q, q), dtype=np.int64)
        mul = np.empty((q, q), dtype=np.int64)
        for a in range(q):
            for b in range(a, q):
                s = self.add(a, b)
                m = self.mul(a, b)
                add[a, b] = add[b, a] = s
                mul[a, b] = mul[b, a] = m
        neg = np.array([self.neg(a) for a in range(q)], dtype=np.int64)
        inv = np.zeros(q, dtype=np.int64)
        for a in range(1, q):
            inv[a] = self.inv(a)
        return {"add": add, "mul": mul, "neg": neg, "inv": inv}


@functools.lru_cache(maxsize=None)
def GF(q: int) -> Field:
    """Field of order q with the package's deterministic modulus."""
    pm = _factor_prime_power(q)
    if pm is None or not _is_prime(pm[0]):
        raise ValueError(f"{q} is not a prime power")
    return Field(*pm)
