"""Augmentation-ideal quotients of group rings of finite abelian groups.

``psi(A, t)`` is Z[A^D]/J^{t+1} and ``phi(A, t)`` the dual of J/J^{t+1}.  The
dual group is realized as A itself; only isomorphism classes are returned.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

from binring.binomial import is_prime
from binring.errors import NotFinite, NotPrime
from binring.linalg import FgAbGroup, IntMatrix, cokernel_structure, dual_finite_group


@dataclass(frozen=True)
class GroupAlgebraPresentation:
    """Z[G] for G = Z/m_1 + ... + Z/m_k with mixed-radix basis of group elements."""

    moduli: tuple[int, ...]

    @property
    def order(self) -> int:
        return math.prod(self.moduli)

    def elements(self) -> list[tuple[int, ...]]:
        return list(itertools.product(*(range(m) for m in self.moduli)))

    def index(self, g: tuple[int, ...]) -> int:
        i = 0
        for x, m in zip(g, self.moduli):
            i = i * m + x % m
        return i

    def add(self, g, h) -> tuple[int, ...]:
        return tuple((x + y) % m for x, y, m in zip(g, h, self.moduli))

    def generators(self) -> list[tuple[int, ...]]:
        k = len(self.moduli)
        return [tuple(int(i == j) for j in range(k)) for i in range(k)]

    def multiply(self, a: dict, b: dict) -> dict:
        out: dict[tuple[int, ...], int] = {}
        for g, x in a.items():
            for h, y in b.items():
                s = self.add(g, h)
                out[s] = out.get(s, 0) + x * y
        return {g: c for g, c in out.items() if c}

    def augmentation_power_matrix(self, power: int) -> IntMatrix:
        """Columns spanning J^power: products of ``power`` factors ([g]-1) times [b]."""
        zero = tuple(0 for _ in self.moduli)
        if power == 0:
            return IntMatrix.identity(self.order)
        gens = self.generators()
        diffs = [{g: 1, zero: -1} for g in gens]
        cols = []
        for combo in itertools.combinations_with_replacement(range(len(gens)), power):
            prod = {zero: 1}
            for j in combo:
                prod = self.multiply(prod, diffs[j])
            for b in self.elements():
                shifted = self.multiply(prod, {b: 1})
                cols.append({self.index(g): c for g, c in shifted.items()})
        return IntMatrix.from_columns(self.order, cols)


@lru_cache(maxsize=None)
def psi(A: FgAbGroup, t: int) -> FgAbGroup:
    if not A.is_finite:
        raise NotFinite("not-finite")
    if t < 0:
        raise ValueError("t must be non-negative")
    if A.is_zero:
        return FgAbGroup(1)
    pres = GroupAlgebraPresentation(dual_finite_group(A).invariant_factors)
    return cokernel_structure(pres.augmentation_power_matrix(t + 1))


def phi(A: FgAbGroup, t: int) -> FgAbGroup:
    return dual_finite_group(psi(A, t).torsion())


def cyclotomic_phi_oracle(p: int, t: int) -> FgAbGroup:
    """Cokernel of multiplication by (x−1)^t on Z[x]/(1 + x + ... + x^{p−1})."""
    if not is_prime(p):
        raise NotPrime("not-prime")
    if t < 0:
        raise ValueError("t must be non-negative")
    n = p - 1

    def reduce(poly: list[int]) -> list[int]:
        poly = poly[:]
        for deg in range(len(poly) - 1, n - 1, -1):
            c = poly[deg]
            if c:
                # x^deg = -x^{deg-n} (1 + ... + x^{n-1}) modulo the cyclotomic polynomial
                for j in range(deg - n, deg):
                    poly[j] -= c
                poly[deg] = 0
        return (poly + [0] * n)[:n]

    factor = [1]
    for _ in range(t):
        factor = [a - b for a, b in zip([0] + factor, factor + [0])]
    cols = []
    for j in range(n):
        shifted = [0] * j + factor
        cols.append({i: c for i, c in enumerate(reduce(shifted)) if c})
    return cokernel_structure(IntMatrix.from_columns(n, cols))
