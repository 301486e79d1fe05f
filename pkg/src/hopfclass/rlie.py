"""Restricted Lie algebra data: abelian h, one-dimensional g, types and
their automorphisms.

A type bundles the base field, the p-map of h (column j holds the
coordinates of x_j^[p]), the polynomial z^{p^n} + sum lambda_i z^{p^i}
defining B = k[z]/f(z), and the matrix of rho_z on h.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import freemod, uenv
from .gfield import FieldCtx
from .linalg import (
    Matrix,
    SemilinearMap,
    identity,
    inverse,
    is_invertible,
    mat_add,
    mat_is_zero,
    mat_mul,
    mat_pow,
    mat_scale,
    semilinear_kernel,
    zeros,
)


@dataclass(eq=False)
class AbelianRLA:
    """Abelian restricted Lie algebra of dimension d with p-semilinear p-map."""

    ctx: FieldCtx
    d: int
    pmap: Matrix

    def __post_init__(self):
        if self.pmap.rows != self.d or self.pmap.cols != self.d:
            raise ValueError("p-map matrix must be d x d")


@dataclass(frozen=True)
class OneDimRLA:
    """B = k[z]/f(z) with f(z) = z^{p^n} + lambda_{n-1} z^{p^{n-1}} + ... + lambda_0 z."""

    ctx: FieldCtx
    n: int
    lambdas: tuple

    def __post_init__(self):
        if self.n < 1 or len(self.lambdas) != self.n:
            raise ValueError("need n >= 1 coefficients")


@dataclass(eq=False)
class TypeT:
    g: OneDimRLA
    h: AbelianRLA
    rho: Matrix

    @property
    def ctx(self) -> FieldCtx:
        return self.h.ctx

    @property
    def d(self) -> int:
        return self.h.d

    @property
    def n(self) -> int:
        return self.g.n

    @property
    def lam(self):
        """The scalar lambda when n = 1."""
        if self.g.n != 1:
            raise ValueError("lambda scalar only defined for n = 1")
        return self.g.lambdas[0]


@dataclass(frozen=True)
class Violation:
    condition: str
    witness: object = None

    def __str__(self):
        return f"{self.condition} (witness={self.witness})"


def validate_type(t: TypeT) -> list:
    """Check that rho extends to an algebraic representation of g on h.

    For one-dimensional g and abelian h the conditions collapse to two
    matrix identities; the bracket condition holds vacuously.
    """
    ctx = t.ctx
    violations = []
    if t.rho.rows != t.d or t.rho.cols != t.d:
        return [Violation("shape", "rho matrix is not d x d")]
    # rho_z kills every p-th power of h (ad a vanishes for abelian h)
    prod = mat_mul(ctx, t.rho, t.h.pmap)
    for j in range(t.d):
        if any(not ctx.is_zero(prod.entries[i][j]) for i in range(t.d)):
            violations.append(Violation("condition (d)", f"basis vector {j}"))
            break
    # f(rho_z) = 0, from rho_{z^p} = rho_z^p together with f(z) = 0 in B
    p = ctx.p
    acc = mat_pow(ctx, t.rho, p**t.g.n)
    for i, lam in enumerate(t.g.lambdas):
        acc = mat_add(ctx, acc, mat_scale(ctx, lam, mat_pow(ctx, t.rho, p**i)))
    if not mat_is_zero(ctx, acc):
        violations.append(Violation("condition (a)+(b)", "f(rho_z) != 0"))
    return violations


def is_torus(h: AbelianRLA) -> bool:
    """True iff the p-semilinear p-map of h has trivial additive kernel."""
    lmap = SemilinearMap(h.ctx, h.pmap, zeros(h.ctx, h.d, h.d))
    return not semilinear_kernel(lmap)


def module_hopf_check(t: TypeT, depth: int | None = None, rho_table: dict | None = None):
    """Verify the module-Hopf-algebra compatibility of the induced action.

    Checks Delta(rho a) = (rho (x) 1 + 1 (x) rho)(Delta a) and eps(rho a) = 0
    on all PBW monomials of total degree <= depth (all of them by default).
    An explicit rho_table (monomial -> AlgElem) may be supplied, e.g. to
    exercise a corrupted derivation table.  Returns (ok, witness_monomial).
    """
    h, ctx = t.h, t.ctx

    def rho_of_mono(m):
        if rho_table is not None and m in rho_table:
            return rho_table[m]
        return uenv.rho_apply(t, {m: ctx.one()})

    def rho_of_elem(a):
        out: uenv.AlgElem = {}
        for m, c in a.items():
            out = freemod.add(ctx, out, freemod.scale(ctx, c, rho_of_mono(m)))
        return out

    for m in uenv.nonunit_monomials(h):
        if depth is not None and sum(m) > depth:
            continue
        img = rho_of_mono(m)
        if not ctx.is_zero(uenv.eps(h, img)):
            return False, m
        lhs: dict = {}
        for key, c in uenv.coproduct(h, img).items():
            freemod.add_term(ctx, lhs, key, c)
        rhs: dict = {}
        for (m1, m2), c in uenv.coproduct(h, {m: ctx.one()}).items():
            for mm, cc in rho_of_mono(m1).items():
                freemod.add_term(ctx, rhs, (mm, m2), ctx.mul(c, cc))
            for mm, cc in rho_of_mono(m2).items():
                freemod.add_term(ctx, rhs, (m1, mm), ctx.mul(c, cc))
        if lhs != rhs:
            return False, m
    return True, None


# -- automorphisms of a type ------------------------------------------------


@dataclass(frozen=True)
class AutElem:
    """Pair (gamma, g) with g(z) = gamma z and g the matrix acting on h."""

    gamma: tuple
    gmat: Matrix


def validate_aut(t: TypeT, g: AutElem) -> bool:
    """Check the three conditions making (gamma, g) an automorphism of T."""
    ctx = t.ctx
    if ctx.is_zero(g.gamma) or not is_invertible(ctx, g.gmat):
        return False
    # gamma z must be a root of the same p-polynomial defining B
    top = ctx.pow(g.gamma, ctx.p**t.g.n)
    for i, lam in enumerate(t.g.lambdas):
        gap = ctx.sub(ctx.pow(g.gamma, ctx.p**i), top)
        if not ctx.is_zero(ctx.mul(lam, gap)):
            return False
    # g must be a restricted Lie map of h
    try:
        uenv.extend_automorphism(t.h, g.gmat)
    except Exception:
        return False
    # equivariance rho_z(g x) = gamma g(rho_z x)
    lhs = mat_mul(ctx, t.rho, g.gmat)
    rhs = mat_scale(ctx, g.gamma, mat_mul(ctx, g.gmat, t.rho))
    return lhs.entries == rhs.entries


def aut_identity(t: TypeT) -> AutElem:
    return AutElem(t.ctx.one(), identity(t.ctx, t.d))


def aut_compose(t: TypeT, g1: AutElem, g2: AutElem) -> AutElem:
    ctx = t.ctx
    return AutElem(ctx.mul(g1.gamma, g2.gamma), mat_mul(ctx, g1.gmat, g2.gmat))


def aut_inverse(t: TypeT, g: AutElem) -> AutElem:
    ctx = t.ctx
    return AutElem(ctx.inv(g.gamma), inverse(ctx, g.gmat))
