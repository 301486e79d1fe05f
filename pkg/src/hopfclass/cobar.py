"""Low-degree cobar complex of A = u(h) and the twisted operators on it.

Degree-n cochains are finitely supported maps on n-tuples of non-unit PBW
monomials.  The module provides the differentials d1/d2, the p-th power
operator, the twisted operators D_z^m and Phi_z, the omega map, canonical
H^2 coordinates, and the z-cocycle / z-characteristic / admissibility
predicates together with exhaustive enumeration of z-characteristic
classes.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import comb

from . import freemod, uenv
from .errors import NoSolution, NotCoboundary, NotCocycle, NotZCharacteristic
from .linalg import (
    SemilinearMap,
    _fp_basis_vectors,
    _flatten,
    _prime_ctx,
    _unflatten,
    from_columns,
    fp_span,
    identity,
    kernel_basis,
    mat_scale,
    mat_vec,
    solve,
)

Tensor2 = dict  # (Monomial, Monomial) -> FieldElement
Tensor3 = dict  # (Monomial, Monomial, Monomial) -> FieldElement


def _is_rank2(elem: dict) -> bool:
    """Distinguish A+ elements (monomial keys) from A+ (x) A+ tensors."""
    for key in elem:
        return isinstance(key[0], tuple)
    return False


# -- differentials ------------------------------------------------------------


def d1(h, a: uenv.AlgElem) -> Tensor2:
    """d^1(a) = -Delta-bar(a)."""
    return freemod.neg(h.ctx, uenv.reduced_coproduct(h, a))


def d2(h, t: Tensor2) -> Tensor3:
    """d^2(a (x) b) = -Delta-bar(a) (x) b + a (x) Delta-bar(b)."""
    ctx = h.ctx
    out: Tensor3 = {}
    for (m1, m2), c in t.items():
        for (a1, a2), cc in uenv.reduced_coproduct(h, {m1: ctx.one()}).items():
            freemod.add_term(ctx, out, (a1, a2, m2), ctx.neg(ctx.mul(c, cc)))
        for (b1, b2), cc in uenv.reduced_coproduct(h, {m2: ctx.one()}).items():
            freemod.add_term(ctx, out, (m1, b1, b2), ctx.mul(c, cc))
    return out


def t2_outer(h, a: uenv.AlgElem, b: uenv.AlgElem) -> Tensor2:
    """The simple tensor a (x) b expanded over monomial pairs."""
    ctx = h.ctx
    out: Tensor2 = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            freemod.add_term(ctx, out, (m1, m2), ctx.mul(c1, c2))
    return out


def omega(h, x: uenv.AlgElem) -> Tensor2:
    """omega(x) = sum_{1<=i<=p-1} (C(p,i)/p) x^i (x) x^{p-i}."""
    ctx = h.ctx
    p = ctx.p
    powers = [None, dict(x)]
    for i in range(2, p):
        powers.append(uenv.mult(h, powers[-1], x))
    out: Tensor2 = {}
    for i in range(1, p):
        c = ctx.from_int((comb(p, i) // p) % p)
        part = t2_outer(h, powers[i], powers[p - i])
        out = freemod.add(ctx, out, freemod.scale(ctx, c, part))
    return out


# -- the operators P, D_z^m, Phi_z -------------------------------------------


def calP(h, t: dict) -> dict:
    """The p-th power operator on A or A (x) A (additive in char p)."""
    ctx = h.ctx
    p = ctx.p
    out: dict = {}
    if _is_rank2(t):
        for (m1, m2), c in t.items():
            part = t2_outer(
                h,
                uenv.alg_pow(h, {m1: ctx.one()}, p),
                uenv.alg_pow(h, {m2: ctx.one()}, p),
            )
            out = freemod.add(ctx, out, freemod.scale(ctx, ctx.pow(c, p), part))
    else:
        for m, c in t.items():
            part = uenv.alg_pow(h, {m: ctx.one()}, p)
            out = freemod.add(ctx, out, freemod.scale(ctx, ctx.pow(c, p), part))
    return out


def rho_t(T, t: dict) -> dict:
    """rho_z on A or, on rank 2, rho_z (x) 1 + 1 (x) rho_z."""
    if not _is_rank2(t):
        return uenv.rho_apply(T, t)
    ctx = T.ctx
    out: Tensor2 = {}
    for (m1, m2), c in t.items():
        left = uenv.rho_apply(T, {m1: ctx.one()})
        right = uenv.rho_apply(T, {m2: ctx.one()})
        out = freemod.add(ctx, out, freemod.scale(ctx, c, t2_outer(h_of(T), left, {m2: ctx.one()})))
        out = freemod.add(ctx, out, freemod.scale(ctx, c, t2_outer(h_of(T), {m1: ctx.one()}, right)))
    return out


def h_of(T):
    return T.h


def _rho_t_power(T, t: dict, n: int) -> dict:
    for _ in range(n):
        t = rho_t(T, t)
    return t


def calD(T, m: int, t: dict) -> dict:
    """D_z^m by the recursion D^m = P∘D^{m-1} + rho_z^{p^m - p^{m-1}}∘D^{m-1}."""
    ctx = T.ctx
    p = ctx.p
    if m == 0:
        return dict(t)
    prev = calD(T, m - 1, t)
    out = calP(T.h, prev)
    return freemod.add(ctx, out, _rho_t_power(T, prev, p**m - p ** (m - 1)))


def calD_alt(T, m: int, t: dict) -> dict:
    """The alternative form D_z^m = P∘D_z^{m-1} + rho_z^{p^m - 1}."""
    ctx = T.ctx
    if m == 0:
        return dict(t)
    out = calP(T.h, calD_alt(T, m - 1, t))
    return freemod.add(ctx, out, _rho_t_power(T, t, ctx.p**m - 1))


def phi_z(T, t: dict) -> dict:
    """Phi_z = D_z^n + sum_i lambda_i D_z^i for f(z) = z^{p^n} + sum lambda_i z^{p^i}."""
    ctx = T.ctx
    out = calD(T, T.g.n, t)
    for i, lam in enumerate(T.g.lambdas):
        out = freemod.add(ctx, out, freemod.scale(ctx, lam, calD(T, i, t)))
    return out


# -- coboundaries and H^2 coordinates ----------------------------------------


def _pair_index(h) -> dict:
    nonunit = uenv.nonunit_monomials(h)
    return {(m1, m2): i for i, (m1, m2) in enumerate(product(nonunit, nonunit))}


def _t2_vector(h, t: Tensor2, index: dict) -> tuple:
    vec = [h.ctx.zero()] * len(index)
    for key, c in t.items():
        vec[index[key]] = c
    return tuple(vec)


def _d1_columns(h, monos: list, index: dict) -> list:
    cols = []
    for m in monos:
        cols.append(_t2_vector(h, d1(h, {m: h.ctx.one()}), index))
    return cols


def is_coboundary(h, t: Tensor2) -> uenv.AlgElem:
    """Solve d^1(a) = t over the monomial basis of A+; the witness a is returned."""
    ctx = h.ctx
    nonunit = uenv.nonunit_monomials(h)
    index = _pair_index(h)
    m = from_columns(ctx, _d1_columns(h, nonunit, index))
    try:
        res = solve(ctx, m, _t2_vector(h, t, index))
    except NoSolution:
        raise NotCoboundary("tensor is not in the image of d^1")
    return {mono: c for mono, c in zip(nonunit, res.solution) if not ctx.is_zero(c)}


def deg2_witness(h, t: Tensor2) -> uenv.AlgElem:
    """The unique a in A_{>=2} with d^1(a) = t (d^1 is injective there)."""
    ctx = h.ctx
    monos = uenv.deg2plus_monomials(h)
    index = _pair_index(h)
    m = from_columns(ctx, _d1_columns(h, monos, index))
    try:
        res = solve(ctx, m, _t2_vector(h, t, index))
    except NoSolution:
        raise NotCoboundary("tensor is not in d^1(A_{>=2})")
    return {mono: c for mono, c in zip(monos, res.solution) if not ctx.is_zero(c)}


@dataclass(frozen=True)
class H2Coord:
    """Canonical H^2 coordinates: pair slots (i, j) plus the omega vector.

    Pairs run over i < j for p > 2 (diagonal classes are coboundaries) and
    i <= j for p = 2, stored zero-free and sorted.  The omega vector lists
    mu_i for the class omega(sum mu_i x_i); it is empty when p = 2, where
    omega(x_i) = x_i (x) x_i already occupies the diagonal pair slot.
    """

    pairs: tuple
    omega: tuple


def h2_slots(h) -> list:
    """Ordered coordinate slots of H^2: pair slots then omega slots."""
    slots = []
    for i in range(h.d):
        for j in range(i if h.ctx.p == 2 else i + 1, h.d):
            slots.append(("pair", i, j))
    if h.ctx.p > 2:
        for i in range(h.d):
            slots.append(("omega", i))
    return slots


def h2_gens(h) -> list:
    """Standard cocycles spanning H^2, one per coordinate slot."""
    ctx = h.ctx
    gens = []
    for slot in h2_slots(h):
        if slot[0] == "pair":
            _, i, j = slot
            gens.append({(tuple(uenv.alg_gen(h, i))[0], tuple(uenv.alg_gen(h, j))[0]): ctx.one()})
        else:
            gens.append(omega(h, uenv.alg_gen(h, i=slot[1])))
    return gens


def h2_zero(h) -> H2Coord:
    return H2Coord((), (h.ctx.zero(),) * (h.d if h.ctx.p > 2 else 0))


def coord_vector(h, coord: H2Coord) -> tuple:
    """Flatten an H2Coord along h2_slots order."""
    ctx = h.ctx
    pair_map = dict(coord.pairs)
    vec = []
    for slot in h2_slots(h):
        if slot[0] == "pair":
            vec.append(pair_map.get((slot[1], slot[2]), ctx.zero()))
        else:
            vec.append(coord.omega[slot[1]])
    return tuple(vec)


def coord_from_vector(h, vec) -> H2Coord:
    ctx = h.ctx
    pairs = []
    om = [ctx.zero()] * (h.d if ctx.p > 2 else 0)
    for slot, c in zip(h2_slots(h), vec):
        if slot[0] == "pair":
            if not ctx.is_zero(c):
                pairs.append(((slot[1], slot[2]), c))
        else:
            om[slot[1]] = c
    return H2Coord(tuple(sorted(pairs)), tuple(om))


def h2_is_zero(h, coord: H2Coord) -> bool:
    return not coord.pairs and all(h.ctx.is_zero(c) for c in coord.omega)


def standard_cochain(h, coord: H2Coord) -> Tensor2:
    """sum mu_ij x_i (x) x_j plus omega(sum mu_i x_i)."""
    ctx = h.ctx
    out: Tensor2 = {}
    for (i, j), c in coord.pairs:
        mi = tuple(uenv.alg_gen(h, i))[0]
        mj = tuple(uenv.alg_gen(h, j))[0]
        freemod.add_term(ctx, out, (mi, mj), c)
    if any(not ctx.is_zero(c) for c in coord.omega):
        x = uenv.alg_from_vector(h, coord.omega)
        out = freemod.add(ctx, out, omega(h, x))
    return out


def h2_reduce(h, t: Tensor2):
    """Canonical coordinates of a 2-cocycle plus a coboundary witness.

    Solves t = sum nu_s * gen_s + d^1(a) over the field; the generator
    classes are linearly independent so the nu are unique.  The omega
    coefficient of the class omega(x_i) is the p-th power of the mu_i in
    the standard cochain omega(sum mu_i x_i), so mu_i = nu_i^{1/p}.  The
    witness is recomputed against the standard cochain.
    """
    ctx = h.ctx
    if d2(h, t):
        raise NotCocycle("tensor is not a 2-cocycle")
    slots = h2_slots(h)
    gens = h2_gens(h)
    nonunit = uenv.nonunit_monomials(h)
    index = _pair_index(h)
    cols = [_t2_vector(h, g, index) for g in gens]
    cols += _d1_columns(h, nonunit, index)
    res = solve(ctx, from_columns(ctx, cols), _t2_vector(h, t, index))
    vec = []
    for slot, nu in zip(slots, res.solution):
        vec.append(ctx.frobenius_inv(nu) if slot[0] == "omega" else nu)
    coord = coord_from_vector(h, tuple(vec))
    witness = is_coboundary(h, freemod.sub(ctx, t, standard_cochain(h, coord)))
    return coord, witness


# -- z-cocycles, z-characteristic classes, admissibility ----------------------


def is_z_cocycle(T, chi: Tensor2) -> bool:
    """True iff chi is a 2-cocycle with Phi_z(chi) a coboundary."""
    if d2(T.h, chi):
        raise NotCocycle("tensor is not a 2-cocycle")
    try:
        is_coboundary(T.h, phi_z(T, chi))
    except NotCoboundary:
        return False
    return True


def is_z_characteristic(T, xi: H2Coord) -> bool:
    """True iff Phi_z kills the class xi in H^2."""
    coord, _ = h2_reduce(T.h, phi_z(T, standard_cochain(T.h, xi)))
    return h2_is_zero(T.h, coord)


def is_admissible(T, xi: H2Coord):
    """Decide admissibility of a z-characteristic class; returns (flag, witness).

    The unique a0 in A_{>=2} with d^1(a0) = Phi_z(standard(xi)) may only be
    corrected by degree-1 terms, so the class is admissible exactly when
    rho_z(a0 + h) = 0 has a solution h in the degree-1 part.
    """
    h, ctx = T.h, T.ctx
    if not is_z_characteristic(T, xi):
        raise NotZCharacteristic("class is not killed by Phi_z")
    a0 = deg2_witness(h, phi_z(T, standard_cochain(h, xi)))
    nonunit = uenv.nonunit_monomials(h)
    index = {m: i for i, m in enumerate(nonunit)}
    cols = []
    for i in range(h.d):
        img = uenv.rho_apply(T, uenv.alg_gen(h, i))
        vec = [ctx.zero()] * len(nonunit)
        for m, c in img.items():
            vec[index[m]] = c
        cols.append(tuple(vec))
    target = [ctx.zero()] * len(nonunit)
    for m, c in uenv.rho_apply(T, a0).items():
        target[index[m]] = ctx.neg(c)
    try:
        res = solve(ctx, from_columns(ctx, cols), tuple(target))
    except NoSolution:
        return False, None
    witness = freemod.add(ctx, a0, uenv.alg_from_vector(h, res.solution))
    return True, witness


def zchar_enumerate(T) -> list:
    """All z-characteristic classes over the working field.

    The map taking H^2 coordinates of xi to the coordinates of
    Phi_z(standard(xi)) is F_p-additive (Phi_z is additive and commutes
    with d^1; the omega part is only Frobenius-semilinear over the field),
    so its kernel is computed from the F_p coordinate blow-up and then
    enumerated exhaustively.
    """
    h, ctx = T.h, T.ctx
    slots = h2_slots(h)
    n = len(slots)
    pctx = _prime_ctx(ctx)

    def induced(vec):
        coord = coord_from_vector(h, vec)
        out, _ = h2_reduce(h, phi_z(T, standard_cochain(h, coord)))
        return coord_vector(h, out)

    cols = [_flatten(ctx, induced(v)) for v in _fp_basis_vectors(ctx, n)]
    kern = kernel_basis(pctx, from_columns(pctx, cols))
    out = []
    for flat in fp_span(pctx, list(kern), n * ctx.k):
        out.append(coord_from_vector(h, _unflatten(ctx, flat, n)))
    out.sort(key=lambda c: coord_vector(h, c))
    return out


def zchar_omega_kernel(T) -> list:
    """Cross-check for the omega part, p > 2: kernel of x -> x^[p] + lambda^{1/p} x."""
    ctx = T.ctx
    lam_root = ctx.frobenius_inv(T.lam)
    lmap = SemilinearMap(ctx, T.h.pmap, mat_scale(ctx, lam_root, identity(ctx, T.d)))
    from .linalg import semilinear_kernel

    return semilinear_kernel(lmap)
