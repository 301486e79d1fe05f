"""Finitely supported coefficient maps over a field context.

All sparse objects in the package (algebra elements, tensors, extension
elements) are plain dicts from hashable keys to field elements, with the
invariant that zero coefficients are never stored.
"""

from __future__ import annotations

from .gfield import FieldCtx


def canonical(ctx: FieldCtx, terms: dict) -> dict:
    return {k: v for k, v in terms.items() if not ctx.is_zero(v)}


def add(ctx: FieldCtx, a: dict, b: dict) -> dict:
    out = dict(a)
    for k, v in b.items():
        s = ctx.add(out.get(k, ctx.zero()), v)
        if ctx.is_zero(s):
            out.pop(k, None)
        else:
            out[k] = s
    return out


def add_term(ctx: FieldCtx, out: dict, key, coeff) -> None:
    """In-place accumulation of a single term."""
    s = ctx.add(out.get(key, ctx.zero()), coeff)
    if ctx.is_zero(s):
        out.pop(key, None)
    else:
        out[key] = s


def scale(ctx: FieldCtx, c, a: dict) -> dict:
    if ctx.is_zero(c):
        return {}
    return canonical(ctx, {k: ctx.mul(c, v) for k, v in a.items()})


def neg(ctx: FieldCtx, a: dict) -> dict:
    return {k: ctx.neg(v) for k, v in a.items()}


def sub(ctx: FieldCtx, a: dict, b: dict) -> dict:
    return add(ctx, a, neg(ctx, b))


def freeze(a: dict) -> tuple:
    """Hashable canonical form, sorted by key."""
    return tuple(sorted(a.items()))


def thaw(frozen: tuple) -> dict:
    return dict(frozen)
