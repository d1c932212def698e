"""Truncated binomial algebras Bin^{≤t}(Z^r).

Elements are integer-valued polynomial functions of degree ≤ t on Z^r,
written in the basis ∏ binom(x_i, k_i) with |k| ≤ t.  Basis order is by total
degree, then lexicographically descending in the exponent vector, so for
r = 2 the degree-one part is ``(1, 0), (0, 1)``.

Most operations go through :func:`mahler_expand`, which recovers coordinates
from an evaluation oracle by iterated forward differences at the origin.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Mapping, Sequence

from binring import binpoly
from binring.binpoly import binom
from binring.errors import InvariantViolation, NotPolynomial, NotPrime, RankMismatch
from binring.linalg import IntMatrix

# full box {0..t+1}^r is used for degree checks up to this many points
BOX_LIMIT = 20_000

Index = tuple[int, ...]


@lru_cache(maxsize=None)
def basis_indices(rank: int, trunc: int) -> tuple[Index, ...]:
    out = []
    for d in range(trunc + 1):
        level = [k for k in _exact_degree(rank, d)]
        level.sort(reverse=True)
        out.extend(level)
    return tuple(out)


def _exact_degree(rank: int, d: int):
    if rank == 0:
        if d == 0:
            yield ()
        return
    for first in range(d, -1, -1):
        for rest in _exact_degree(rank - 1, d - first):
            yield (first,) + rest


@dataclass(frozen=True)
class TruncatedBinAlgebra:
    rank: int
    trunc: int

    def __post_init__(self):
        if self.rank < 0 or self.trunc < 0:
            raise ValueError("rank and truncation must be non-negative")

    @property
    def basis(self) -> tuple[Index, ...]:
        return basis_indices(self.rank, self.trunc)

    @property
    def dim(self) -> int:
        return math.comb(self.rank + self.trunc, self.trunc)

    @lru_cache(maxsize=None)
    def index_of(self) -> dict[Index, int]:
        return {k: i for i, k in enumerate(self.basis)}

    def element(self, coords: Mapping[Index, int] | Sequence[int]) -> "BinElement":
        if isinstance(coords, Mapping):
            pos = self.index_of()
            vec = [0] * self.dim
            for k, c in coords.items():
                vec[pos[tuple(k)]] += int(c)
            return BinElement(self, tuple(vec))
        return BinElement(self, tuple(int(c) for c in coords))

    def basis_element(self, k: Index) -> "BinElement":
        return self.element({tuple(k): 1})

    def one(self) -> "BinElement":
        return self.basis_element((0,) * self.rank)

    def zero(self) -> "BinElement":
        return BinElement(self, (0,) * self.dim)


@dataclass(frozen=True)
class BinElement:
    parent: TruncatedBinAlgebra
    coords: tuple[int, ...]

    def __post_init__(self):
        if len(self.coords) != self.parent.dim:
            raise ValueError(f"expected {self.parent.dim} coordinates, got {len(self.coords)}")

    @property
    def rank(self) -> int:
        return self.parent.rank

    @property
    def trunc(self) -> int:
        return self.parent.trunc

    def items(self):
        for k, c in zip(self.parent.basis, self.coords):
            if c:
                yield k, c

    def as_dict(self) -> dict[Index, int]:
        return dict(self.items())

    def __call__(self, point: Sequence[int]) -> int:
        return evaluate(self, point)

    def __add__(self, other: "BinElement") -> "BinElement":
        a, b = _common_parent(self, other)
        return BinElement(a.parent, tuple(x + y for x, y in zip(a.coords, b.coords)))

    def __sub__(self, other: "BinElement") -> "BinElement":
        return self + other.scale(-1)

    def scale(self, k: int) -> "BinElement":
        return BinElement(self.parent, tuple(k * c for c in self.coords))

    def lift(self, trunc: int) -> "BinElement":
        """Same function viewed in Bin^{≤trunc}, trunc ≥ own truncation."""
        if trunc < self.trunc:
            raise ValueError("cannot lift to a smaller truncation")
        return TruncatedBinAlgebra(self.rank, trunc).element(self.as_dict())

    def degree(self) -> int:
        return max((sum(k) for k, _ in self.items()), default=-1)

    def to_poly(self) -> dict:
        """Sparse binpoly form: monomials as ((var, exp), ...)."""
        return {tuple((i, e) for i, e in enumerate(k) if e): c for k, c in self.items()}

    def to_json(self) -> dict:
        return {"rank": self.rank, "trunc": self.trunc,
                "coords": {",".join(map(str, k)): str(c) for k, c in self.items()}}

    @classmethod
    def from_json(cls, data: Mapping) -> "BinElement":
        alg = TruncatedBinAlgebra(int(data["rank"]), int(data["trunc"]))
        coords = {}
        for key, c in data.get("coords", {}).items():
            k = tuple(int(x) for x in key.split(",")) if key != "" else ()
            if len(k) != alg.rank:
                raise ValueError(f"index {key!r} does not have {alg.rank} entries")
            if sum(k) > alg.trunc:
                raise ValueError(f"index {key!r} exceeds truncation {alg.trunc}")
            coords[k] = int(c)
        return alg.element(coords)


def _common_parent(a: BinElement, b: BinElement) -> tuple[BinElement, BinElement]:
    if a.rank != b.rank:
        raise RankMismatch("rank-mismatch")
    t = max(a.trunc, b.trunc)
    return a.lift(t), b.lift(t)


def from_poly(poly: Mapping, rank: int, trunc: int) -> BinElement:
    coords = {}
    for mono, c in poly.items():
        k = [0] * rank
        for v, e in mono:
            k[v] = e
        coords[tuple(k)] = coords.get(tuple(k), 0) + c
    return TruncatedBinAlgebra(rank, trunc).element(coords)


# ----------------------------------------------------------------------
# Mahler expansion and evaluation
# ----------------------------------------------------------------------

def _simplex(rank: int, bound: int):
    for d in range(bound + 1):
        yield from _exact_degree(rank, d)


def verification_grid(rank: int, trunc: int) -> list[Index]:
    """Box {0..t+1}^r when small, otherwise the simplex |j| ≤ t+1."""
    if (trunc + 2) ** rank <= BOX_LIMIT:
        return list(itertools.product(range(trunc + 2), repeat=rank))
    return list(_simplex(rank, trunc + 1))


def mahler_expand(f: Callable[[Index], int], rank: int, trunc: int, verify: bool = True) -> BinElement:
    """Binomial-basis coordinates of an integer-valued polynomial oracle.

    c_k = Σ_{j ≤ k} (−1)^{|k|−|j|} ∏ C(k_i, j_i) f(j).  When ``verify`` is set the
    expansion is re-evaluated on a grid one layer past the truncation and any
    disagreement raises :class:`NotPolynomial`.
    """
    alg = TruncatedBinAlgebra(rank, trunc)
    points = list(_simplex(rank, trunc))
    vals = {p: int(f(p)) for p in points}
    # forward differences one axis at a time; the simplex is closed under
    # decreasing any coordinate, so every needed value is present
    for axis in range(rank):
        nxt = {}
        for p in points:
            k = p[axis]
            s = 0
            for j in range(k + 1):
                q = p[:axis] + (j,) + p[axis + 1:]
                s += (-1) ** (k - j) * math.comb(k, j) * vals[q]
            nxt[p] = s
        vals = nxt
    e = alg.element([vals[k] for k in alg.basis])
    if verify:
        for p in verification_grid(rank, trunc):
            if evaluate(e, p) != int(f(p)):
                raise NotPolynomial("not-polynomial-of-degree-t")
    return e


def evaluate(e: BinElement, point: Sequence[int]) -> int:
    if len(point) != e.rank:
        raise RankMismatch("rank-mismatch")
    total = 0
    for k, c in e.items():
        term = c
        for a, ki in zip(point, k):
            if ki:
                term *= binom(a, ki)
                if not term:
                    break
        total += term
    return total


# ----------------------------------------------------------------------
# algebra and Hopf structure
# ----------------------------------------------------------------------

def multiply(a: BinElement, b: BinElement) -> BinElement:
    if a.rank != b.rank:
        raise RankMismatch("rank-mismatch")
    return mahler_expand(lambda p: evaluate(a, p) * evaluate(b, p), a.rank, a.trunc + b.trunc)


def multiply_fast(a: BinElement, b: BinElement) -> BinElement:
    """Same product via structure constants binom(y,i)·binom(y,j)."""
    if a.rank != b.rank:
        raise RankMismatch("rank-mismatch")
    return from_poly(binpoly.poly_mul(a.to_poly(), b.to_poly()), a.rank, a.trunc + b.trunc)


def comultiply(e: BinElement) -> dict[tuple[Index, Index], int]:
    """Δe as {(left index, right index): coefficient} on basis ⊗ basis."""
    r = e.rank
    doubled = mahler_expand(lambda p: evaluate(e, tuple(x + y for x, y in zip(p[:r], p[r:]))), 2 * r, e.trunc)
    return {(k[:r], k[r:]): c for k, c in doubled.items()}


def counit(e: BinElement) -> int:
    return evaluate(e, (0,) * e.rank)


def antipode(e: BinElement) -> BinElement:
    return mahler_expand(lambda p: evaluate(e, tuple(-x for x in p)), e.rank, e.trunc)


def tensor_evaluate(t: Mapping[tuple[Index, Index], int], a: Sequence[int], b: Sequence[int]) -> int:
    total = 0
    for (k, l), c in t.items():
        total += c * math.prod(binom(x, i) for x, i in zip(a, k)) * math.prod(binom(y, j) for y, j in zip(b, l))
    return total


def splitting_components(e: BinElement) -> tuple[int, BinElement]:
    c = counit(e)
    return c, e - e.parent.one().scale(c)


# ----------------------------------------------------------------------
# functoriality
# ----------------------------------------------------------------------

def induced_map(f: IntMatrix, trunc: int, method: str = "pullback") -> IntMatrix:
    """Matrix of Bin^{≤t}(f): Bin^{≤t}(Z^r) → Bin^{≤t}(Z^s), g ↦ g ∘ f^T.

    ``method="pullback"`` substitutes x_a ↦ Σ_b f[b,a] y_b symbolically;
    ``method="mahler"`` expands each composite from its evaluation oracle.
    """
    s, r = f.shape
    src = TruncatedBinAlgebra(r, trunc)
    tgt = TruncatedBinAlgebra(s, trunc)
    tindex = tgt.index_of()
    cols = []
    if method == "mahler":
        fT = f.T
        for k in src.basis:
            g = src.basis_element(k)
            img = mahler_expand(lambda lam: evaluate(g, fT.apply(lam)), s, trunc, verify=False)
            cols.append({i: c for i, c in enumerate(img.coords) if c})
    elif method == "pullback":
        images = {a: tuple(sorted(col.items())) for a, col in enumerate(f.columns())}
        for k in src.basis:
            mono = tuple((a, e) for a, e in enumerate(k) if e)
            poly = binpoly.substitute({mono: 1}, images)
            col = {}
            for m, c in poly.items():
                kk = [0] * s
                for v, e in m:
                    kk[v] = e
                col[tindex[tuple(kk)]] = c
            cols.append(col)
    else:
        raise ValueError(f"unknown method {method!r}")
    return IntMatrix.from_columns(tgt.dim, cols)


def monad_compose(rank: int, inner: int, outer: int) -> IntMatrix:
    """Composition Bin^{≤outer}(Bin^{≤inner}(Z^rank)) → Bin^{≤inner·outer}(Z^rank).

    A source basis function ∏ binom(y_K, j_K), with y_K the coordinate dual to
    the inner basis function e_K, goes to λ ↦ ∏ binom(e_K(λ), j_K).
    """
    inner_alg = TruncatedBinAlgebra(rank, inner)
    src = TruncatedBinAlgebra(inner_alg.dim, outer)
    tgt_trunc = inner * outer
    cols = []
    for j in src.basis:
        factors = [(inner_alg.basis[K], e) for K, e in enumerate(j) if e]

        def oracle(lam, factors=factors):
            out = 1
            for K, e in factors:
                val = math.prod(binom(x, ki) for x, ki in zip(lam, K))
                out *= binom(val, e)
                if not out:
                    return 0
            return out

        img = mahler_expand(oracle, rank, tgt_trunc)
        cols.append({i: c for i, c in enumerate(img.coords) if c})
    return IntMatrix.from_columns(math.comb(rank + tgt_trunc, tgt_trunc), cols)


def linear_inclusion(rank: int, trunc: int) -> IntMatrix:
    """Bin^{≤t}(Z^r) → Bin^{≤1}(Bin^{≤t}(Z^r)), e_K ↦ y_K (the linear summand)."""
    n = TruncatedBinAlgebra(rank, trunc).dim
    outer = TruncatedBinAlgebra(n, 1)
    pos = outer.index_of()
    ents = []
    for K in range(n):
        idx = tuple(int(i == K) for i in range(n))
        ents.append((pos[idx], K, 1))
    return IntMatrix(outer.dim, n, ents)


def unit_map(rank: int) -> IntMatrix:
    """Z^r → Bin^{≤1}(Z^r), e_i ↦ binom(x_i, 1)."""
    alg = TruncatedBinAlgebra(rank, 1)
    pos = alg.index_of()
    return IntMatrix(alg.dim, rank, ((pos[tuple(int(i == a) for i in range(rank))], a, 1) for a in range(rank)))


# ----------------------------------------------------------------------
# symmetric powers, associated graded
# ----------------------------------------------------------------------

def sym_to_bin(monomial_coords: Mapping[Index, int], rank: int, trunc: int) -> BinElement:
    """Expand Σ c_k x^k (ordinary monomials) in the binomial basis."""
    terms = [(tuple(k), int(c)) for k, c in monomial_coords.items() if c]
    for k, _ in terms:
        if len(k) != rank or sum(k) > trunc:
            raise ValueError(f"monomial {k} outside Sym^≤{trunc}(Z^{rank})")

    def oracle(p):
        return sum(c * math.prod(x ** e for x, e in zip(p, k)) for k, c in terms)

    return mahler_expand(oracle, rank, trunc)


def gr_projection(e: BinElement) -> dict[Index, int]:
    """Coordinates on the basis indices of total degree exactly t."""
    t = e.trunc
    return {k: c for k, c in zip(e.parent.basis, e.coords) if sum(k) == t}


def gr_basis(rank: int, trunc: int) -> list[Index]:
    return [k for k in basis_indices(rank, trunc) if sum(k) == trunc]


def monomial_to_binomial_matrix(rank: int, trunc: int) -> IntMatrix:
    """Change of basis from ordinary monomials x^k to the binomial basis."""
    alg = TruncatedBinAlgebra(rank, trunc)
    cols = []
    for k in alg.basis:
        img = sym_to_bin({k: 1}, rank, trunc)
        cols.append({i: c for i, c in enumerate(img.coords) if c})
    return IntMatrix.from_columns(alg.dim, cols)


# ----------------------------------------------------------------------
# reductions modulo p^n
# ----------------------------------------------------------------------

def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % q for q in range(2, math.isqrt(p) + 1))


def _period_bound_exponent(k: int, p: int) -> int:
    s = 0
    while p ** s <= k:
        s += 1
    return s


def _is_period(k: int, P: int, modulus: int) -> bool:
    # binom(x+P,k) - binom(x,k) has degree < k; vanishing mod p^n at k
    # consecutive integers forces all of its Mahler coefficients to vanish
    return all((binom(x + P, k) - binom(x, k)) % modulus == 0 for x in range(max(k, 1)))


def mod_pn_period(k: int, p: int, n: int) -> int:
    """Minimal period of x ↦ binom(x, k) mod p^n."""
    if not is_prime(p):
        raise NotPrime("not-prime")
    if n < 1 or k < 0:
        raise ValueError("need n ≥ 1 and k ≥ 0")
    modulus = p ** n
    s = _period_bound_exponent(k, p)
    bound = p ** (n + s - 1)
    if not _is_period(k, bound, modulus):
        raise InvariantViolation(f"binom(x,{k}) mod {p}^{n} is not {bound}-periodic")
    j = 0
    while not _is_period(k, p ** j, modulus):
        j += 1
    return p ** j


def scan_period(k: int, p: int, n: int) -> int:
    """Minimal period by brute force over one window of length p^{n+s-1}."""
    modulus = p ** n
    s = _period_bound_exponent(k, p)
    N = p ** (n + s - 1)
    vals = [binom(x, k) % modulus for x in range(2 * N)]
    for P in range(1, N + 1):
        if N % P == 0 and all(vals[x] == vals[x + P] for x in range(N)):
            return P
    return N


def _poly_pow_mod(poly: list[int], e: int, modulus: int) -> list[int]:
    result = [1]
    base = [c % modulus for c in poly]
    while e:
        if e & 1:
            result = _poly_mul_mod(result, base, modulus)
        base = _poly_mul_mod(base, base, modulus)
        e >>= 1
    return result


def _poly_mul_mod(a: list[int], b: list[int], modulus: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % modulus
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def congruence_holds(p: int, n: int, s: int) -> bool:
    """(T−1)^{p^{n−1+s}} ≡ (T^{p^s}−1)^{p^{n−1}} in (Z/p^n)[T]."""
    modulus = p ** n
    lhs = _poly_pow_mod([-1, 1], p ** (n - 1 + s), modulus)
    inner = [-1] + [0] * (p ** s - 1) + [1]
    rhs = _poly_pow_mod(inner, p ** (n - 1), modulus)
    return lhs == rhs
