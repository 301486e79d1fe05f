"""Exact arithmetic in small finite fields F_{p^k}.

Elements are length-k tuples of ints in [0, p), little-endian coefficients
of the residue class modulo the defining polynomial.  Tuples are plain
values: equality is structural and every element is fully reduced.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .errors import DegreeMismatch, DivisionByZero, NonPrime, ReducibleModulus

FieldElement = tuple  # tuple[int, ...] of length k


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


# -- polynomial helpers over F_p, little-endian int lists ------------------


def _poly_trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_trim(out)


def _poly_rem(a: list[int], m: list[int], p: int) -> list[int]:
    """Remainder of a modulo a monic polynomial m."""
    a = _poly_trim(list(a))
    deg_m = len(m) - 1
    while len(a) - 1 >= deg_m and a:
        shift = len(a) - 1 - deg_m
        lead = a[-1]
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - lead * mi) % p
        _poly_trim(a)
    return a


def _is_irreducible(m: list[int], p: int) -> bool:
    """Brute-force irreducibility test for a monic polynomial of small degree."""
    deg = len(m) - 1
    for div_deg in range(1, deg // 2 + 1):
        for tail in product(range(p), repeat=div_deg):
            cand = list(tail) + [1]
            if not _poly_rem(list(m), cand, p):
                return False
    return True


@dataclass(frozen=True)
class FieldCtx:
    """Context for F_{p^k}; modulus is None exactly when k = 1."""

    p: int
    k: int
    modulus: tuple | None = None

    @property
    def order(self) -> int:
        return self.p**self.k

    def zero(self) -> FieldElement:
        return (0,) * self.k

    def one(self) -> FieldElement:
        return (1,) + (0,) * (self.k - 1)

    def from_int(self, c: int) -> FieldElement:
        return (c % self.p,) + (0,) * (self.k - 1)

    def el(self, v) -> FieldElement:
        """Build a canonical element from an int or coefficient iterable."""
        if isinstance(v, int):
            return self.from_int(v)
        coeffs = [int(c) % self.p for c in v]
        if len(coeffs) > self.k:
            raise DegreeMismatch(f"coefficient list longer than k={self.k}")
        coeffs += [0] * (self.k - len(coeffs))
        return tuple(coeffs)

    def add(self, a: FieldElement, b: FieldElement) -> FieldElement:
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def sub(self, a: FieldElement, b: FieldElement) -> FieldElement:
        return tuple((x - y) % self.p for x, y in zip(a, b))

    def neg(self, a: FieldElement) -> FieldElement:
        return tuple((-x) % self.p for x in a)

    def mul(self, a: FieldElement, b: FieldElement) -> FieldElement:
        if self.k == 1:
            return ((a[0] * b[0]) % self.p,)
        raw = _poly_mul(list(a), list(b), self.p)
        red = _poly_rem(raw, list(self.modulus), self.p)
        red += [0] * (self.k - len(red))
        return tuple(red)

    def pow(self, a: FieldElement, n: int) -> FieldElement:
        result = self.one()
        base = a
        while n > 0:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def inv(self, a: FieldElement) -> FieldElement:
        if a == self.zero():
            raise DivisionByZero("inverse of zero")
        return self.pow(a, self.order - 2)

    def is_zero(self, a: FieldElement) -> bool:
        return all(x == 0 for x in a)

    def frobenius(self, a: FieldElement) -> FieldElement:
        return self.pow(a, self.p)

    def frobenius_inv(self, a: FieldElement) -> FieldElement:
        # Frobenius has order k on F_{p^k}, so its inverse is k-1 iterations.
        b = a
        for _ in range(self.k - 1):
            b = self.frobenius(b)
        return b

    def elements(self):
        """All field elements, in deterministic lexicographic order."""
        for coeffs in product(range(self.p), repeat=self.k):
            yield coeffs

    def units(self):
        zero = self.zero()
        for a in self.elements():
            if a != zero:
                yield a


def field_make(p: int, k: int, modulus=None) -> FieldCtx:
    """Validate parameters and return an arithmetic context for F_{p^k}."""
    if not _is_prime(p):
        raise NonPrime(f"{p} is not prime")
    if k < 1:
        raise DegreeMismatch("extension degree must be >= 1")
    if k == 1:
        return FieldCtx(p, 1, None)
    if modulus is None:
        raise DegreeMismatch("modulus required for k > 1")
    mod = [int(c) % p for c in modulus]
    if len(mod) != k + 1 or mod[-1] != 1:
        raise DegreeMismatch(f"modulus must be monic of degree {k}")
    if not _is_irreducible(mod, p):
        raise ReducibleModulus(f"{modulus} is reducible over F_{p}")
    return FieldCtx(p, k, tuple(mod))


def field_arith(ctx: FieldCtx, op: str, a: FieldElement, b: FieldElement | None = None) -> FieldElement:
    """Dispatcher over the basic arithmetic operations."""
    if op == "add":
        return ctx.add(a, b)
    if op == "sub":
        return ctx.sub(a, b)
    if op == "mul":
        return ctx.mul(a, b)
    if op == "neg":
        return ctx.neg(a)
    if op == "inv":
        return ctx.inv(a)
    raise ValueError(f"unknown op {op!r}")


def frobenius(ctx: FieldCtx, a: FieldElement) -> FieldElement:
    return ctx.frobenius(a)


def frobenius_inv(ctx: FieldCtx, a: FieldElement) -> FieldElement:
    return ctx.frobenius_inv(a)


def embed_from_prime(ctx: FieldCtx, a_prime: FieldElement) -> FieldElement:
    """Embed an element of the prime field F_p into ctx = F_{p^k}."""
    return ctx.from_int(a_prime[0])


def serialize_element(ctx: FieldCtx, a: FieldElement):
    """Little-endian integer list; a bare integer when k = 1."""
    if ctx.k == 1:
        return a[0]
    return list(a)
