"""The commutative Hopf algebra A = u(h) for an abelian restricted Lie algebra.

Elements are sparse coefficient maps on truncated-exponent monomials
(every exponent strictly below p).  Multiplication reduces any exponent
reaching p through the p-map, leftmost index first.
"""

from __future__ import annotations

from itertools import product
from math import comb

from . import freemod
from .errors import NotAugmented, NotPMapCompatible
from .gfield import FieldCtx
from .linalg import Matrix, column, inverse, is_invertible, mat_vec

Monomial = tuple  # length-d tuple of ints in [0, p)
AlgElem = dict  # Monomial -> FieldElement


def unit_mono(d: int) -> Monomial:
    return (0,) * d


def monomials(h) -> list:
    """All PBW monomials of u(h), in deterministic lexicographic order."""
    cache = getattr(h, "_monomials", None)
    if cache is None:
        cache = sorted(product(range(h.ctx.p), repeat=h.d))
        h._monomials = cache
    return cache


def nonunit_monomials(h) -> list:
    return [m for m in monomials(h) if any(m)]


def alg_zero() -> AlgElem:
    return {}


def alg_unit(h) -> AlgElem:
    return {unit_mono(h.d): h.ctx.one()}


def alg_gen(h, i: int) -> AlgElem:
    m = [0] * h.d
    m[i] = 1
    return {tuple(m): h.ctx.one()}


def alg_from_vector(h, v) -> AlgElem:
    """Element of the degree-one subspace h with the given coordinates."""
    out: AlgElem = {}
    for i, c in enumerate(v):
        if not h.ctx.is_zero(c):
            m = [0] * h.d
            m[i] = 1
            out[tuple(m)] = c
    return out


def vector_of_alg(h, a: AlgElem):
    """Coordinates of a degree-one element; None if a is not in span(h)."""
    v = [h.ctx.zero()] * h.d
    for m, c in a.items():
        if sum(m) != 1:
            return None
        v[m.index(1)] = c
    return tuple(v)


def eps(h, a: AlgElem):
    """Augmentation: the coefficient of the unit monomial."""
    return a.get(unit_mono(h.d), h.ctx.zero())


def is_augmented(h, a: AlgElem) -> bool:
    return h.ctx.is_zero(eps(h, a))


def pmap_vector(h, v):
    """p-semilinear extension of the p-map to h: coords of (sum v_i x_i)^[p]."""
    ctx = h.ctx
    vp = tuple(ctx.frobenius(c) for c in v)
    return mat_vec(ctx, h.pmap, vp)


def _reduce_mono(h, m: Monomial) -> AlgElem:
    """Normal form of a raw exponent tuple (entries possibly >= p)."""
    p = h.ctx.p
    for i, e in enumerate(m):
        if e >= p:
            lowered = list(m)
            lowered[i] = e - p
            rest = _reduce_mono(h, tuple(lowered))
            # x_i^p is the degree-one element given by column i of the p-map
            sub = alg_from_vector(h, column(h.pmap, i))
            return mult(h, sub, rest)
    return {m: h.ctx.one()}


def mono_mult(h, m1: Monomial, m2: Monomial) -> AlgElem:
    cache = getattr(h, "_mono_cache", None)
    if cache is None:
        cache = {}
        h._mono_cache = cache
    key = (m1, m2)
    hit = cache.get(key)
    if hit is None:
        raw = tuple(a + b for a, b in zip(m1, m2))
        hit = _reduce_mono(h, raw)
        cache[key] = hit
    return hit


def mult(h, a: AlgElem, b: AlgElem) -> AlgElem:
    ctx = h.ctx
    out: AlgElem = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            c = ctx.mul(c1, c2)
            for m, cm in mono_mult(h, m1, m2).items():
                freemod.add_term(ctx, out, m, ctx.mul(c, cm))
    return out


def alg_pow(h, a: AlgElem, n: int) -> AlgElem:
    out = alg_unit(h)
    for _ in range(n):
        out = mult(h, out, a)
    return out


def coproduct(h, a: AlgElem) -> dict:
    """Full coproduct in A (x) A; every generator x_i is primitive."""
    ctx = h.ctx
    out: dict = {}
    for m, c in a.items():
        ranges = [range(e + 1) for e in m]
        for alpha in product(*ranges):
            coeff = 1
            for e, s in zip(m, alpha):
                coeff = (coeff * comb(e, s)) % ctx.p
            if coeff == 0:
                continue
            beta = tuple(e - s for e, s in zip(m, alpha))
            freemod.add_term(ctx, out, (alpha, beta), ctx.mul(c, ctx.from_int(coeff)))
    return out


def reduced_coproduct(h, a: AlgElem) -> dict:
    """Delta-bar(a) = Delta(a) - a(x)1 - 1(x)a, landing in A+ (x) A+."""
    ctx = h.ctx
    if not is_augmented(h, a):
        raise NotAugmented("reduced coproduct requires an augmentation-ideal element")
    unit = unit_mono(h.d)
    out = coproduct(h, a)
    for m, c in a.items():
        freemod.add_term(ctx, out, (m, unit), ctx.neg(c))
        freemod.add_term(ctx, out, (unit, m), ctx.neg(c))
    assert all(any(m1) and any(m2) for (m1, m2) in out), "reduced coproduct left A+ (x) A+"
    return out


def rho_apply(t, a: AlgElem) -> AlgElem:
    """Action of the derivation extending rho_z on an element of A."""
    h, r = t.h, t.rho
    ctx = h.ctx
    out: AlgElem = {}
    for m, c in a.items():
        for i, e in enumerate(m):
            if e == 0:
                continue
            lowered = list(m)
            lowered[i] = e - 1
            gen_img = alg_from_vector(h, column(r, i))
            part = mult(h, {tuple(lowered): ctx.mul(c, ctx.from_int(e))}, gen_img)
            out = freemod.add(ctx, out, part)
    return out


def rho_power(t, a: AlgElem, n: int) -> AlgElem:
    for _ in range(n):
        a = rho_apply(t, a)
    return a


class AlgebraAutomorphism:
    """Hopf algebra automorphism of A extending an invertible map on h."""

    def __init__(self, h, gmat: Matrix):
        self.h = h
        self.gmat = gmat
        self._images: dict = {}

    def apply(self, a: AlgElem) -> AlgElem:
        ctx = self.h.ctx
        out: AlgElem = {}
        for m, c in a.items():
            out = freemod.add(ctx, out, freemod.scale(ctx, c, self._mono_image(m)))
        return out

    def _mono_image(self, m: Monomial) -> AlgElem:
        hit = self._images.get(m)
        if hit is None:
            hit = alg_unit(self.h)
            for i, e in enumerate(m):
                gen_img = alg_from_vector(self.h, column(self.gmat, i))
                for _ in range(e):
                    hit = mult(self.h, hit, gen_img)
            self._images[m] = hit
        return hit


def extend_automorphism(h, gmat: Matrix) -> AlgebraAutomorphism:
    ctx = h.ctx
    if not is_invertible(ctx, gmat):
        raise NotPMapCompatible("matrix is not invertible")
    # g(x_j^[p]) must equal (g x_j)^[p] for every basis vector
    for j in range(h.d):
        lhs = mat_vec(ctx, gmat, column(h.pmap, j))
        rhs = pmap_vector(h, column(gmat, j))
        if lhs != rhs:
            raise NotPMapCompatible(f"p-map compatibility fails on basis vector {j}")
    return AlgebraAutomorphism(h, gmat)


def automorphism_inverse(h, g: AlgebraAutomorphism) -> AlgebraAutomorphism:
    return AlgebraAutomorphism(h, inverse(h.ctx, g.gmat))


def primitive_basis(h) -> list:
    """Basis of the primitive space of A, computed from Ker(Delta-bar) on A+."""
    from .linalg import from_columns, kernel_basis

    ctx = h.ctx
    nonunit = nonunit_monomials(h)
    pair_index = {(m1, m2): i for i, (m1, m2) in enumerate(product(nonunit, nonunit))}
    cols = []
    for m in nonunit:
        vec = [ctx.zero()] * len(pair_index)
        for key, c in reduced_coproduct(h, {m: ctx.one()}).items():
            vec[pair_index[key]] = c
        cols.append(tuple(vec))
    mtx = from_columns(ctx, cols)
    basis = []
    for kvec in kernel_basis(ctx, mtx):
        elem = {m: c for m, c in zip(nonunit, kvec) if not ctx.is_zero(c)}
        basis.append(elem)
    return basis


def deg2plus_monomials(h) -> list:
    """PBW monomials of total exponent >= 2 (the complement of h in A+)."""
    return [m for m in monomials(h) if sum(m) >= 2]


def split_deg(h, a: AlgElem):
    """Decompose an A+ element along A+ = A_{>=2} (+) h."""
    high: AlgElem = {}
    low = [h.ctx.zero()] * h.d
    for m, c in a.items():
        s = sum(m)
        if s >= 2:
            high[m] = c
        elif s == 1:
            low[m.index(1)] = c
        else:
            raise NotAugmented("element has a unit component")
    return high, tuple(low)


def serialize_alg(ctx: FieldCtx, a: AlgElem) -> list:
    from .gfield import serialize_element

    return [{"exps": list(m), "coeff": serialize_element(ctx, c)} for m, c in sorted(a.items())]


def parse_alg(ctx: FieldCtx, d: int, records) -> AlgElem:
    out: AlgElem = {}
    for rec in records:
        m = tuple(int(e) for e in rec["exps"])
        if len(m) != d:
            raise ValueError("exponent list has wrong length")
        freemod.add_term(ctx, out, m, ctx.el(rec["coeff"]))
    return out
