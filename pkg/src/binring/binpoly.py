"""Sparse polynomials in the binomial-coefficient basis.

A monomial is a tuple of ``(variable, exponent)`` pairs sorted by variable and
stands for the product of ``binom(x_v, k_v)``.  A polynomial is a dict from
monomials to integer coefficients.  The workhorse is :func:`substitute`, which
pulls a polynomial back along a linear change of variables without ever
leaving the binomial basis.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Mapping, Sequence

Monomial = tuple  # tuple[tuple[int, int], ...]
Poly = dict  # dict[Monomial, int]


def binom(a: int, k: int) -> int:
    """Integer-valued binomial coefficient, valid for every integer ``a``."""
    if k < 0:
        return 0
    if a >= 0:
        return math.comb(a, k)
    return (-1) ** k * math.comb(k - a - 1, k)


@lru_cache(maxsize=None)
def product_table(a: int, b: int) -> tuple[tuple[int, int], ...]:
    """binom(y,a)·binom(y,b) as ((c, coeff), ...) in the basis binom(y,c)."""
    return tuple((c, math.comb(c, a) * math.comb(a, c - b)) for c in range(max(a, b), a + b + 1))


@lru_cache(maxsize=None)
def scaled_binomial(c: int, k: int) -> tuple[tuple[int, int], ...]:
    """binom(c·y, k) as ((l, coeff), ...) in the basis binom(y, l)."""
    vals = [binom(c * j, k) for j in range(k + 1)]
    out = []
    for l in range(k + 1):
        s = sum((-1) ** (l - j) * math.comb(l, j) * vals[j] for j in range(l + 1))
        if s:
            out.append((l, s))
    return tuple(out)


@lru_cache(maxsize=None)
def shifted_binomial(alpha: int, k: int) -> tuple[tuple[int, int], ...]:
    """binom(y + alpha, k) = Σ_j binom(alpha, k-j) binom(y, j)."""
    return tuple((j, binom(alpha, k - j)) for j in range(k + 1) if binom(alpha, k - j))


def mono_degree(m: Monomial) -> int:
    return sum(k for _, k in m)


def mono_mul(m1: Monomial, m2: Monomial) -> Poly:
    """Product of two basis monomials."""
    if not m1:
        return {m2: 1}
    if not m2:
        return {m1: 1}
    d2 = dict(m2)
    overlap = [v for v, _ in m1 if v in d2]
    if not overlap:
        return {tuple(sorted(m1 + m2)): 1}
    d1 = dict(m1)
    fixed = {v: k for v, k in d1.items() if v not in d2}
    fixed.update((v, k) for v, k in d2.items() if v not in d1)
    partial: dict[tuple, int] = {(): 1}
    for v in overlap:
        nxt: dict[tuple, int] = {}
        for key, coef in partial.items():
            for c, w in product_table(d1[v], d2[v]):
                nk = key + ((v, c),)
                nxt[nk] = nxt.get(nk, 0) + coef * w
        partial = nxt
    base = tuple(fixed.items())
    return {tuple(sorted(base + key)): coef for key, coef in partial.items()}


def poly_mul(p: Poly, q: Poly) -> Poly:
    out: Poly = {}
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            for m, c in mono_mul(m1, m2).items():
                s = out.get(m, 0) + c1 * c2 * c
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
    return out


def poly_add(p: Poly, q: Poly, scale: int = 1) -> Poly:
    out = dict(p)
    for m, c in q.items():
        s = out.get(m, 0) + scale * c
        if s:
            out[m] = s
        else:
            out.pop(m, None)
    return out


def evaluate_monomial(m: Monomial, point: Mapping[int, int] | Sequence[int]) -> int:
    out = 1
    for v, k in m:
        out *= binom(point[v], k)
        if not out:
            return 0
    return out


def evaluate_poly(p: Poly, point) -> int:
    return sum(c * evaluate_monomial(m, point) for m, c in p.items())


def _compositions(k: int, parts: int):
    if parts == 1:
        yield (k,)
        return
    for first in range(k + 1):
        for rest in _compositions(k - first, parts - 1):
            yield (first,) + rest


@lru_cache(maxsize=200_000)
def linear_binomial(form: tuple[tuple[int, int], ...], k: int, shift: int = 0) -> tuple:
    """binom(Σ c_j y_j + shift, k) expanded in the binomial basis of the y_j.

    ``form`` is a sorted tuple of (variable, coefficient).  Uses Vandermonde to
    split over the summands and :func:`scaled_binomial` for each one.
    """
    if k == 0:
        return (((), 1),)
    unit = all(c == 1 for _, c in form) and shift == 0
    result: Poly = {}
    pieces = list(form) + ([(None, shift)] if shift else [])
    for comp in _compositions(k, len(pieces)) if pieces else ():
        if unit:
            mono = tuple((v, kj) for (v, _), kj in zip(form, comp) if kj)
            result[mono] = result.get(mono, 0) + 1
            continue
        partial: Poly = {(): 1}
        for (v, c), kj in zip(pieces, comp):
            if kj == 0:
                continue
            if v is None:
                const = binom(c, kj)
                partial = {m: x * const for m, x in partial.items()}
                continue
            expansion = scaled_binomial(c, kj)
            nxt: Poly = {}
            for m, x in partial.items():
                for l, w in expansion:
                    nm = m + ((v, l),) if l else m
                    nxt[nm] = nxt.get(nm, 0) + x * w
            partial = nxt
        for m, x in partial.items():
            if x:
                result[m] = result.get(m, 0) + x
    return tuple((m, c) for m, c in result.items() if c)


def substitute(p: Poly, images: Mapping[int, tuple[tuple[int, int], ...]],
               shifts: Mapping[int, int] | None = None, keep=None) -> Poly:
    """Pull ``p`` back along x_v ↦ Σ c·y_w (+ shift_v).

    ``images[v]`` is a sorted tuple of (w, c); a missing or empty image means
    x_v ↦ shift_v (0 by default).  ``keep`` optionally filters the resulting
    monomials (applied once at the end).
    """
    out: Poly = {}
    shifts = shifts or {}
    for mono, coef in p.items():
        acc: Poly = {(): coef}
        for v, k in mono:
            form = images.get(v, ())
            expansion = linear_binomial(form, k, shifts.get(v, 0))
            if not expansion:
                acc = {}
                break
            if len(expansion) == 1 and expansion[0][0] == ():
                c0 = expansion[0][1]
                acc = {m: x * c0 for m, x in acc.items()}
                continue
            nxt: Poly = {}
            for m1, x1 in acc.items():
                for m2, x2 in expansion:
                    for m, x in mono_mul(m1, m2).items():
                        nxt[m] = nxt.get(m, 0) + x1 * x2 * x
            acc = nxt
        for m, x in acc.items():
            if x and (keep is None or keep(m)):
                s = out.get(m, 0) + x
                if s:
                    out[m] = s
                else:
                    del out[m]
    return out
