"""Exact linear algebra over F_{p^k}, plus additive p-semilinear maps.

Semilinear maps v -> A v^(p) + B v (Frobenius applied entrywise) are handled
by blowing each F_{p^k} coordinate up into k F_p coordinates, which turns
the Frobenius into an F_p-linear operator.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .errors import NoSolution
from .gfield import FieldCtx, field_make

Vector = tuple  # tuple of FieldElement


@dataclass(frozen=True)
class Matrix:
    rows: int
    cols: int
    entries: tuple  # tuple of row tuples of FieldElement


def mat(ctx: FieldCtx, rows) -> Matrix:
    """Build a canonical matrix from an iterable of rows of raw entries."""
    ent = tuple(tuple(ctx.el(e) for e in row) for row in rows)
    r = len(ent)
    c = len(ent[0]) if r else 0
    if any(len(row) != c for row in ent):
        raise ValueError("ragged rows")
    return Matrix(r, c, ent)


def identity(ctx: FieldCtx, n: int) -> Matrix:
    return Matrix(n, n, tuple(tuple(ctx.one() if i == j else ctx.zero() for j in range(n)) for i in range(n)))


def zeros(ctx: FieldCtx, r: int, c: int) -> Matrix:
    return Matrix(r, c, tuple(tuple(ctx.zero() for _ in range(c)) for _ in range(r)))


def zero_vector(ctx: FieldCtx, n: int) -> Vector:
    return (ctx.zero(),) * n


def vec_add(ctx: FieldCtx, u: Vector, v: Vector) -> Vector:
    return tuple(ctx.add(a, b) for a, b in zip(u, v))


def vec_sub(ctx: FieldCtx, u: Vector, v: Vector) -> Vector:
    return tuple(ctx.sub(a, b) for a, b in zip(u, v))


def vec_scale(ctx: FieldCtx, c, v: Vector) -> Vector:
    return tuple(ctx.mul(c, a) for a in v)


def vec_is_zero(ctx: FieldCtx, v: Vector) -> bool:
    return all(ctx.is_zero(a) for a in v)


def mat_vec(ctx: FieldCtx, m: Matrix, v: Vector) -> Vector:
    out = []
    for row in m.entries:
        acc = ctx.zero()
        for e, x in zip(row, v):
            acc = ctx.add(acc, ctx.mul(e, x))
        out.append(acc)
    return tuple(out)


def mat_mul(ctx: FieldCtx, a: Matrix, b: Matrix) -> Matrix:
    if a.cols != b.rows:
        raise ValueError("dimension mismatch")
    rows = []
    for i in range(a.rows):
        row = []
        for j in range(b.cols):
            acc = ctx.zero()
            for t in range(a.cols):
                acc = ctx.add(acc, ctx.mul(a.entries[i][t], b.entries[t][j]))
            row.append(acc)
        rows.append(tuple(row))
    return Matrix(a.rows, b.cols, tuple(rows))


def mat_add(ctx: FieldCtx, a: Matrix, b: Matrix) -> Matrix:
    return Matrix(a.rows, a.cols, tuple(tuple(ctx.add(x, y) for x, y in zip(r1, r2)) for r1, r2 in zip(a.entries, b.entries)))


def mat_scale(ctx: FieldCtx, c, a: Matrix) -> Matrix:
    return Matrix(a.rows, a.cols, tuple(tuple(ctx.mul(c, x) for x in row) for row in a.entries))


def mat_pow(ctx: FieldCtx, a: Matrix, n: int) -> Matrix:
    result = identity(ctx, a.rows)
    for _ in range(n):
        result = mat_mul(ctx, result, a)
    return result


def mat_is_zero(ctx: FieldCtx, a: Matrix) -> bool:
    return all(ctx.is_zero(x) for row in a.entries for x in row)


def column(m: Matrix, j: int) -> Vector:
    return tuple(m.entries[i][j] for i in range(m.rows))


def from_columns(ctx: FieldCtx, cols: list) -> Matrix:
    r = len(cols[0]) if cols else 0
    return Matrix(r, len(cols), tuple(tuple(col[i] for col in cols) for i in range(r)))


@dataclass(frozen=True)
class SolveResult:
    solution: Vector
    kernel_basis: tuple  # tuple of Vector


def solve(ctx: FieldCtx, m: Matrix, b: Vector) -> SolveResult:
    """Gaussian elimination with deterministic pivoting.

    Returns a particular solution of M x = b together with a kernel basis.
    Raises NoSolution when b is not in the image.  Pivot choice: first
    nonzero column, lowest row, so kernel bases are reproducible.
    """
    rows = [list(row) + [bi] for row, bi in zip(m.entries, b)]
    nrows, ncols = m.rows, m.cols
    pivots = []  # (row, col)
    rank = 0
    for col in range(ncols):
        piv = None
        for r in range(rank, nrows):
            if not ctx.is_zero(rows[r][col]):
                piv = r
                break
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = ctx.inv(rows[rank][col])
        rows[rank] = [ctx.mul(inv, x) for x in rows[rank]]
        for r in range(nrows):
            if r != rank and not ctx.is_zero(rows[r][col]):
                f = rows[r][col]
                rows[r] = [ctx.sub(x, ctx.mul(f, y)) for x, y in zip(rows[r], rows[rank])]
        pivots.append((rank, col))
        rank += 1
    for r in range(rank, nrows):
        if not ctx.is_zero(rows[r][ncols]):
            raise NoSolution("right-hand side not in column space")
    sol = [ctx.zero()] * ncols
    for r, c in pivots:
        sol[c] = rows[r][ncols]
    pivot_cols = {c for _, c in pivots}
    kernel = []
    for free in range(ncols):
        if free in pivot_cols:
            continue
        vec = [ctx.zero()] * ncols
        vec[free] = ctx.one()
        for r, c in pivots:
            vec[c] = ctx.neg(rows[r][free])
        kernel.append(tuple(vec))
    return SolveResult(tuple(sol), tuple(kernel))


def kernel_basis(ctx: FieldCtx, m: Matrix) -> tuple:
    return solve(ctx, m, zero_vector(ctx, m.rows)).kernel_basis


def is_invertible(ctx: FieldCtx, m: Matrix) -> bool:
    return m.rows == m.cols and not kernel_basis(ctx, m)


def inverse(ctx: FieldCtx, m: Matrix) -> Matrix:
    if m.rows != m.cols:
        raise NoSolution("not square")
    cols = []
    for j in range(m.rows):
        e = tuple(ctx.one() if i == j else ctx.zero() for i in range(m.rows))
        cols.append(solve(ctx, m, e).solution)
    return from_columns(ctx, cols)


# -- additive p-semilinear maps --------------------------------------------


@dataclass(frozen=True)
class SemilinearMap:
    """v -> frob_part * v^(p) + lin_part * v, Frobenius applied entrywise."""

    ctx: FieldCtx
    frob_part: Matrix
    lin_part: Matrix

    @property
    def dim(self) -> int:
        return self.lin_part.rows


def apply_semilinear(l: SemilinearMap, v: Vector) -> Vector:
    ctx = l.ctx
    vp = tuple(ctx.frobenius(x) for x in v)
    return vec_add(ctx, mat_vec(ctx, l.frob_part, vp), mat_vec(ctx, l.lin_part, v))


def _prime_ctx(ctx: FieldCtx) -> FieldCtx:
    return field_make(ctx.p, 1)


def _flatten(ctx: FieldCtx, v: Vector) -> tuple:
    return tuple((c,) for x in v for c in x)


def _fp_basis_vectors(ctx: FieldCtx, dim: int):
    """F_p-basis of F_{p^k}^dim: t^b at coordinate j, deterministic order."""
    for j in range(dim):
        for b in range(ctx.k):
            coeffs = [0] * ctx.k
            coeffs[b] = 1
            yield tuple(tuple(coeffs) if i == j else ctx.zero() for i in range(dim))


def _blowup_matrix(l: SemilinearMap) -> Matrix:
    ctx = l.ctx
    pctx = _prime_ctx(ctx)
    cols = [_flatten(ctx, apply_semilinear(l, v)) for v in _fp_basis_vectors(ctx, l.dim)]
    return from_columns(pctx, cols)


def _unflatten(ctx: FieldCtx, flat: tuple, dim: int) -> Vector:
    ints = [c[0] for c in flat]
    return tuple(tuple(ints[j * ctx.k : (j + 1) * ctx.k]) for j in range(dim))


def semilinear_kernel(l: SemilinearMap) -> list:
    """F_p-basis of the additive kernel, as vectors over F_{p^k}."""
    ctx = l.ctx
    pctx = _prime_ctx(ctx)
    big = _blowup_matrix(l)
    return [_unflatten(ctx, v, l.dim) for v in kernel_basis(pctx, big)]


def image_additive(l: SemilinearMap) -> list:
    """F_p-basis of the additive image, as vectors over F_{p^k}."""
    ctx = l.ctx
    pctx = _prime_ctx(ctx)
    images = [_flatten(ctx, apply_semilinear(l, v)) for v in _fp_basis_vectors(ctx, l.dim)]
    basis = []
    rref_rows: list = []
    for img in images:
        work = list(img)
        for pivot_row in rref_rows:
            col = next(i for i, x in enumerate(pivot_row) if x != (0,))
            if work[col] != (0,):
                f = work[col][0]
                work = [((x[0] - f * y[0]) % ctx.p,) for x, y in zip(work, pivot_row)]
        if any(x != (0,) for x in work):
            col = next(i for i, x in enumerate(work) if x != (0,))
            inv = pow(work[col][0], ctx.p - 2, ctx.p)
            work = [((x[0] * inv) % ctx.p,) for x in work]
            rref_rows.append(work)
            basis.append(_unflatten(ctx, tuple(img), l.dim))
    return basis


def fp_span(ctx: FieldCtx, basis: list, dim: int) -> list:
    """All F_p-linear combinations of the given vectors, sorted for determinism."""
    elems = {zero_vector(ctx, dim)}
    for v in basis:
        new = set()
        for c in range(ctx.p):
            cv = vec_scale(ctx, ctx.from_int(c), v)
            for e in elems:
                new.add(vec_add(ctx, e, cv))
        elems = new
    return sorted(elems)
