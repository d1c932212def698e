"""Normalized cochains of Bin^{≤t} applied levelwise to a Dold–Kan model.

Level m of the cosimplicial lattice has one variable for each pair
(jump set J ⊂ {1..m}, basis vector a of C^{|J|}), where J encodes the
surjection [m] ↠ [|J|].  Every codegeneracy sends each variable either to a
single variable or to zero, and distinct variables to distinct ones, so its
binomial pullback sends basis monomials to basis monomials or to zero.  The
normalized subcomplex (intersection of codegeneracy kernels) is therefore
spanned by the monomials whose jump sets jointly cover {1..m}, and nothing
needs to be computed to find it.  Differentials are assembled by pulling
covering monomials back along each coface in the binomial basis.

When the input complex has zero differentials every coface is a
coefficient-one substitution with disjoint supports, so the complex splits by
binomial degree; each homogeneous piece is computed and cached separately.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from binring import binpoly
from binring.linalg import FgAbGroup, IntMatrix, LatticeCochainComplex, smith_normal_form


def surjection_values(J: tuple[int, ...], m: int) -> list[int]:
    vals, cur, js = [], 0, set(J)
    for j in range(m + 1):
        if j in js:
            cur += 1
        vals.append(cur)
    return vals


def jumps_of(vals: list[int]) -> tuple[int, ...]:
    return tuple(j for j in range(1, len(vals)) if vals[j] != vals[j - 1])


def coface_factor(J: tuple[int, ...], m: int, i: int):
    """Factor σ∘δ^i = ι∘σ' for σ:[m]↠[|J|] given by J.

    Returns (kind, J') with kind 'id' (ι the identity), 'd0' (ι = δ^0), or
    None when the composite's image misses an inner value.
    """
    vals = surjection_values(J, m)
    comp = vals[:i] + vals[i + 1:]
    n = len(J)
    image = set(comp)
    if len(image) == n + 1:
        return "id", jumps_of(comp)
    if len(image) == n and 0 not in image:
        return "d0", jumps_of([v - 1 for v in comp])
    return None


class DoldKanBinModel:
    """Normalized cochain complex of Bin^{≤t}(DK(C)) for a complex C in degrees ≥ 0."""

    def __init__(self, complex_: LatticeCochainComplex, pointed: bool = False):
        if complex_.start < 0:
            raise ValueError("complex must start in degree >= 0")
        if pointed and (complex_.start != 0 or complex_.rank_at(0) == 0):
            raise ValueError("a pointed model needs the pointing vector as basis vector 0 of C^0")
        if pointed and any(row[0] for row in complex_.differential(0).to_dense()):
            raise ValueError("the pointing vector must be a cocycle")
        self.complex = complex_
        # when pointed, the degree-0 variable (∅, 0) is the constant function 1
        # and is excluded from every monomial
        self.pointed = pointed
        self.top = complex_.end
        self.dense_d = {n: complex_.differential(n).to_dense() for n in range(complex_.start - 1, self.top + 1)}
        self.homogeneous = all(d.is_zero() for d in complex_.differentials)
        self._vars: dict[int, list[tuple[tuple[int, ...], int]]] = {}
        self._images: dict[tuple[int, int], dict[int, tuple]] = {}
        self._basis: dict[tuple, list] = {}
        self._smith: dict[tuple, tuple[int, ...]] = {}

    def rank_of(self, n: int) -> int:
        return self.complex.rank_at(n)

    # -- level variables ------------------------------------------------
    def level_vars(self, m: int) -> list[tuple[tuple[int, ...], int]]:
        if m not in self._vars:
            out = []
            for n in range(0, min(m, self.top) + 1):
                r = self.rank_of(n)
                if not r:
                    continue
                for J in itertools.combinations(range(1, m + 1), n):
                    out.extend((J, a) for a in range(r))
            self._vars[m] = out
        return self._vars[m]

    def var_index(self, m: int) -> dict:
        return {v: k for k, v in enumerate(self.level_vars(m))}

    def masks(self, m: int) -> list[int]:
        return [sum(1 << (j - 1) for j in J) for J, _ in self.level_vars(m)]

    def coface_images(self, m: int, i: int) -> dict[int, tuple]:
        """Coface d^i from level m-1 to level m as variable images."""
        key = (m, i)
        if key not in self._images:
            src_index = self.var_index(m - 1)
            acc: dict[int, dict[int, int]] = {}
            for w, (J, a) in enumerate(self.level_vars(m)):
                f = coface_factor(J, m, i)
                if f is None:
                    continue
                kind, Jp = f
                n = len(J)
                if kind == "id":
                    row = acc.setdefault(src_index[(Jp, a)], {})
                    row[w] = row.get(w, 0) + 1
                else:
                    # summand J' carries C^{n-1}; map into C^n via d^{n-1}
                    d = self.dense_d[n - 1]
                    for b in range(self.rank_of(n - 1)):
                        c = d[a][b]
                        if c:
                            v = src_index[(Jp, b)]
                            row = acc.setdefault(v, {})
                            row[w] = row.get(w, 0) + c
            self._images[key] = {v: tuple(sorted((w, c) for w, c in row.items() if c))
                                 for v, row in acc.items()}
        return self._images[key]

    # -- normalized basis ----------------------------------------------
    def normalized_basis(self, m: int, t: int, degree: int | None = None) -> list:
        """Covering monomials at level m of degree ≤ t (or exactly ``degree``)."""
        key = (m, t if degree is None else -1, degree)
        if key in self._basis:
            return self._basis[key]
        all_masks = self.masks(m)
        cand = list(range(1 if self.pointed else 0, len(all_masks)))
        masks = [all_masks[k] for k in cand]
        full = (1 << m) - 1
        nv = len(masks)
        suffix = [0] * (nv + 1)
        for k in range(nv - 1, -1, -1):
            suffix[k] = suffix[k + 1] | masks[k]
        lo = 0 if degree is None else degree
        hi = t if degree is None else degree
        out = []

        def rec(idx, remaining, mask, mono):
            if mask == full and (hi - remaining) >= lo:
                out.append(tuple(mono))
            if idx == nv or remaining == 0:
                return
            if (full & ~mask) & ~suffix[idx]:
                return
            for k in range(idx, nv):
                if (full & ~mask) & ~suffix[k]:
                    break
                mk = masks[k]
                for e in range(1, remaining + 1):
                    mono.append((cand[k], e))
                    rec(k + 1, remaining - e, mask | mk, mono)
                    mono.pop()

        rec(0, hi, 0, [])
        if degree is not None:
            out = [mo for mo in out if binpoly.mono_degree(mo) == degree]
        out.sort(key=lambda mo: (binpoly.mono_degree(mo), mo))
        self._basis[key] = out
        return out

    # -- differentials --------------------------------------------------
    def differential(self, m: int, t: int, degree: int | None = None) -> IntMatrix:
        """Normalized differential N^m → N^{m+1} (degree piece if given)."""
        src = self.normalized_basis(m, t, degree)
        tgt = self.normalized_basis(m + 1, t, degree)
        tindex = {mo: k for k, mo in enumerate(tgt)}
        masks = self.masks(m + 1)
        full = (1 << (m + 1)) - 1

        def covering(mo):
            acc = 0
            for v, _ in mo:
                acc |= masks[v]
            return acc == full

        images = [self.coface_images(m + 1, i) for i in range(m + 2)]
        fast = self.homogeneous
        cols = []
        for mo in src:
            col: dict[int, int] = {}
            for i, img in enumerate(images):
                sign = -1 if i % 2 else 1
                if fast:
                    terms = _unit_pullback(mo, img)
                    for tm in terms:
                        if covering(tm):
                            r = tindex[tm]
                            s = col.get(r, 0) + sign
                            if s:
                                col[r] = s
                            else:
                                del col[r]
                else:
                    for tm, c in binpoly.substitute({mo: 1}, img, keep=covering).items():
                        r = tindex[tm]
                        s = col.get(r, 0) + sign * c
                        if s:
                            col[r] = s
                        else:
                            del col[r]
            cols.append(col)
        return IntMatrix.from_columns(len(tgt), cols)

    def smith_diagonal(self, m: int, t: int, degree: int | None = None) -> tuple[int, ...]:
        """Cached Smith diagonal of the normalized differential N^m → N^{m+1}."""
        key = (m, t if degree is None else -1, degree)
        if key not in self._smith:
            if m < 0:
                self._smith[key] = ()
            else:
                self._smith[key] = smith_normal_form(self.differential(m, t, degree)).diagonal
        return self._smith[key]

    def piece_cohomology(self, i: int, t: int, degree: int | None = None) -> FgAbGroup:
        dim = len(self.normalized_basis(i, t, degree))
        if not dim:
            return FgAbGroup()
        rank_out = len(self.smith_diagonal(i, t, degree))
        D_in = self.smith_diagonal(i - 1, t, degree)
        return FgAbGroup.from_orders(dim - rank_out - len(D_in), [d for d in D_in if d > 1])

    def cohomology(self, i: int, t: int) -> FgAbGroup:
        """H^i of the normalized complex of Bin^{≤t} applied to the model."""
        if self.homogeneous:
            total = FgAbGroup()
            for k in range(t + 1):
                total = total + self.piece_cohomology(i, k, degree=k)
            return total
        return self.piece_cohomology(i, t)


def _unit_pullback(mono, images):
    """Pullback along a substitution with unit coefficients and disjoint supports."""
    parts = [()]
    for v, k in mono:
        targets = images.get(v, ())
        if not targets:
            return []
        if len(targets) == 1:
            w = targets[0][0]
            parts = [p + ((w, k),) for p in parts]
            continue
        options = _distributions(tuple(w for w, _ in targets), k)
        parts = [p + o for p in parts for o in options]
    return [tuple(sorted(p)) for p in parts]


@lru_cache(maxsize=None)
def _distributions(targets: tuple[int, ...], k: int):
    out = []
    for comp in binpoly._compositions(k, len(targets)):
        out.append(tuple((w, c) for w, c in zip(targets, comp) if c))
    return tuple(out)
