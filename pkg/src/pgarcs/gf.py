"""Exact arithmetic in the Galois field GF(p^h).

Elements are plain integers in [0, q): the integer encodes the coefficient
vector of the element over GF(p), base p, low digit first (value = sum
c_i * p^i).  Prime fields use direct mod-p arithmetic; extension fields use
exp/log tables over a multiplicative generator.
"""

from __future__ import annotations

from itertools import product
from math import isqrt
from typing import Optional, Sequence

import numpy as np


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for d in range(2, isqrt(n) + 1):
        if n % d == 0:
            return False
    return True


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


# ---------------------------------------------------------------------------
# polynomials over GF(p): tuples of ints, low-degree coefficient first
# ---------------------------------------------------------------------------

def _poly_deg(f: Sequence[int]) -> int:
    for i in range(len(f) - 1, -1, -1):
        if f[i] != 0:
            return i
    return -1


def _poly_mod(a: list[int], b: Sequence[int], p: int) -> list[int]:
    """Remainder of a modulo b over GF(p).  b must be nonzero."""
    a = list(a)
    db = _poly_deg(b)
    inv_lead = pow(b[db], p - 2, p)
    for i in range(len(a) - 1, db - 1, -1):
        if a[i] == 0:
            continue
        factor = (a[i] * inv_lead) % p
        for j in range(db + 1):
            a[i - db + j] = (a[i - db + j] - factor * b[j]) % p
    return a[:db] if db > 0 else []


def _poly_is_irreducible(f: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg(f)/2."""
    h = _poly_deg(f)
    if h < 1:
        return False
    if f[0] == 0:
        return h == 1  # divisible by x
    for d in range(1, h // 2 + 1):
        for low in product(range(p), repeat=d):
            g = list(low) + [1]
            if _poly_deg(_poly_mod(list(f), g, p)) < 0:
                return False
    return True


def _default_poly(p: int, h: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree h over GF(p),
    coefficients compared low-degree-first."""
    for low in product(*[range(p)] * h):
        f = tuple(low) + (1,)
        if _poly_is_irreducible(f, p):
            return f
    raise AssertionError(f"no irreducible polynomial of degree {h} over GF({p})")


class Field:
    """GF(p^h) with integer-encoded elements and vectorized table kernels."""

    def __init__(self, p: int, h: int, poly: Optional[Sequence[int]] = None):
        if h < 1:
            raise ValueError(f"extension degree must be >= 1, got {h}")
        if not _is_prime(p):
            raise ValueError(f"characteristic must be prime, got {p}")
        q = p ** h
        if q > 1 << 16:
            raise ValueError(f"field order {q} exceeds the supported maximum 2^16")
        self.p = p
        self.h = h
        self.q = q
        if h == 1:
            self.poly = (0, 1)  # sentinel: the identity map x
        else:
            if poly is None:
                poly = _default_poly(p, h)
            poly = tuple(int(c) % p for c in poly)
            if len(poly) != h + 1 or poly[h] != 1:
                raise ValueError(f"polynomial must be monic of degree {h}")
            if not _poly_is_irreducible(poly, p):
                raise ValueError(f"polynomial {list(poly)} is reducible over GF({p})")
            self.poly = poly
        self._build_tables()

    # -- construction helpers ------------------------------------------------

    def _digits(self, v: int) -> list[int]:
        out = []
        for _ in range(self.h):
            v, r = divmod(v, self.p)
            out.append(r)
        return out

    def _raw_mul(self, a: int, b: int) -> int:
        """Polynomial product reduced mod poly, without tables."""
        p, h = self.p, self.h
        if h == 1:
            return (a * b) % p
        da, db = self._digits(a), self._digits(b)
        prod = [0] * (2 * h - 1)
        for i, ai in enumerate(da):
            if ai:
                for j, bj in enumerate(db):
                    prod[i + j] = (prod[i + j] + ai * bj) % p
        rem = _poly_mod(prod, self.poly, p)
        v = 0
        for c in reversed(rem):
            v = v * p + c
        return v

    def _find_generator(self) -> int:
        order = self.q - 1
        factors = _prime_factors(order)
        for g in range(2, self.q):
            if all(self._pow_raw(g, order // r) != 1 for r in factors):
                return g
        raise AssertionError("no generator found")

    def _pow_raw(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self._raw_mul(r, a)
            a = self._raw_mul(a, a)
            e >>= 1
        return r

    def _build_tables(self):
        p, h, q = self.p, self.h, self.q
        if h > 1:
            g = self._find_generator()
            exp = np.zeros(2 * (q - 1), dtype=np.int64)
            log = np.zeros(q, dtype=np.int64)
            v = 1
            for i in range(q - 1):
                exp[i] = v
                log[v] = i
                v = self._raw_mul(v, g)
            exp[q - 1:] = exp[:q - 1]
            self.generator = g
            self._exp = exp
            self._log = log
            inv = np.zeros(q, dtype=np.int64)
            inv[1:] = exp[(q - 1 - log[1:]) % (q - 1)]
            self._inv = inv
            # digit table for vectorized addition (char p > 2)
            dig = np.zeros((q, h), dtype=np.int64)
            vals = np.arange(q)
            for i in range(h):
                dig[:, i] = vals % p
                vals = vals // p
            self._dig = dig
            self._pows = p ** np.arange(h, dtype=np.int64)
            neg = ((p - dig) % p) @ self._pows
            self._neg = neg
        else:
            self.generator = None
            inv = np.zeros(q, dtype=np.int64)
            for a in range(1, q):
                inv[a] = pow(a, p - 2, p)
            self._inv = inv

    # -- scalar operations ----------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.h == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        return int(((self._dig[a] + self._dig[b]) % self.p) @ self._pows)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def neg(self, a: int) -> int:
        if self.h == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        return int(self._neg[a])

    def mul(self, a: int, b: int) -> int:
        if self.h == 1:
            return (a * b) % self.p
        if a == 0 or b == 0:
            return 0
        return int(self._exp[self._log[a] + self._log[b]])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inversion of zero")
        return int(self._inv[a])

    def elements(self) -> range:
        return range(self.q)

    # -- vectorized kernels (numpy int64 arrays of element encodings) ---------

    def vadd(self, a, b):
        if self.h == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        return ((self._dig[a] + self._dig[b]) % self.p) @ self._pows

    def vsub(self, a, b):
        return self.vadd(a, self.vneg(b))

    def vneg(self, a):
        if self.h == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        return self._neg[a]

    def vmul(self, a, b):
        if self.h == 1:
            return (a * b) % self.p
        a = np.asarray(a)
        b = np.asarray(b)
        out = self._exp[self._log[a] + self._log[b]]
        return np.where((a == 0) | (b == 0), 0, out)

    def vinv(self, a):
        """Vectorized inverse; maps 0 to 0 (callers mask zeros themselves)."""
        return self._inv[a]

    # -- descriptions ----------------------------------------------------------

    def describe(self) -> str:
        if self.h == 1:
            return f"p={self.p} h=1"
        coeffs = ",".join(str(c) for c in self.poly)
        return f"p={self.p} h={self.h} poly={coeffs}"

    def __repr__(self):
        return f"Field(p={self.p}, h={self.h}, q={self.q})"

    def __eq__(self, other):
        return (isinstance(other, Field)
                and (self.p, self.h, self.poly) == (other.p, other.h, other.poly))

    def __hash__(self):
        return hash((self.p, self.h, self.poly))


def build_field(p: int, h: int, poly: Optional[Sequence[int]] = None) -> Field:
    """Construct GF(p^h); picks the default irreducible polynomial if none given."""
    return Field(p, h, poly)


def factor_prime_power(q: int) -> tuple[int, int]:
    """Resolve q to the unique (p, h) with q = p^h, or raise ValueError."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    for p in range(2, isqrt(q) + 1):
        if q % p == 0:
            h = 0
            n = q
            while n % p == 0:
                n //= p
                h += 1
            if n != 1:
                raise ValueError(f"{q} is not a prime power")
            return p, h
    return q, 1  # q itself is prime
