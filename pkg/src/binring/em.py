"""Derived truncated binomial rings of coconnective lattice complexes.

Two routes compute the same groups:

* the explicit route builds the Dold–Kan cosimplicial lattice as matrices,
  applies ``induced_map`` levelwise and totalizes (normalized or not);
* the structured route (:class:`binring.dkbin.DoldKanBinModel`) works with the
  normalized subcomplex directly and is the only one that reaches the larger
  Eilenberg–MacLane degrees.

``em_cohomology`` packages the second route with the truncation check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from binring.binomial import induced_map
from binring.dkbin import DoldKanBinModel, jumps_of, surjection_values
from binring.errors import (ConnectiveRangeUnsupported, CosimplicialIdentityViolation,
                            InvariantViolation, NeedMoreLevels, TruncationUnstable)
from binring.linalg import (FgAbGroup, IntMatrix, LatticeCochainComplex, cohomology_from_differentials,
                            complex_cohomology, kernel_basis, smith_normal_form, solve_in_basis)

UNNORMALIZED_RANK_LIMIT = 2000


# ----------------------------------------------------------------------
# inputs
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class CoconnectiveLatticeComplex:
    """A lattice cochain complex in degrees [0, b] whose H^0 is torsion-free."""

    complex: LatticeCochainComplex

    def __post_init__(self):
        if self.complex.start != 0:
            raise ValueError("use CoconnectiveLatticeComplex.from_complex for other degree ranges")

    @classmethod
    def from_complex(cls, C: LatticeCochainComplex) -> "CoconnectiveLatticeComplex":
        """Normalize any bounded complex with H^{<0} = 0 and torsion-free H^0.

        Negative degrees are folded into C^0 / im d^{-1}; a complex starting
        above degree 0 is padded with zero lattices.
        """
        if C.start > 0:
            ranks = (0,) * C.start + C.ranks
            diffs = tuple(IntMatrix.zeros(ranks[k + 1], ranks[k]) for k in range(C.start)) + C.differentials
            return cls(LatticeCochainComplex(0, ranks, diffs))
        if C.start == 0:
            return cls(C)
        for i in range(C.start, min(0, C.end + 1)):
            if not complex_cohomology(C, i, method="rank").is_zero:
                raise InvariantViolation(f"input complex has nonzero H^{i} in negative degree")
        if C.end < 0:
            return cls(LatticeCochainComplex(0, (0,), ()))
        h0 = complex_cohomology(C, 0, method="rank")
        if h0.invariant_factors:
            raise InvariantViolation(f"H^0 of the input complex has torsion ({h0})")
        d_in = C.differential(-1)
        r0 = C.rank_at(0)
        snf = smith_normal_form(d_in, transforms=True)
        k = snf.rank
        U = snf.U
        Uinv = IntMatrix.from_dense(_inverse_dense(U), r0)
        quotient_section = Uinv.submatrix(range(r0), range(k, r0))
        ranks = [r0 - k] + list(C.ranks[-C.start + 1:])
        diffs = []
        if len(ranks) > 1:
            diffs.append(C.differential(0) @ quotient_section)
            diffs.extend(C.differentials[-C.start + 1:])
        return cls(LatticeCochainComplex(0, tuple(ranks), tuple(diffs)))

    @property
    def top(self) -> int:
        return self.complex.end


def _inverse_dense(U: IntMatrix) -> list[list[int]]:
    from binring.linalg import inverse_unimodular
    return inverse_unimodular(U).to_dense()


def single_degree_complex(n: int, rank: int = 1) -> LatticeCochainComplex:
    """Z^rank placed in degree n (zero lattices below)."""
    ranks = (0,) * n + (rank,)
    return LatticeCochainComplex(0, ranks, tuple(IntMatrix.zeros(ranks[k + 1], ranks[k]) for k in range(n)))


def two_term_complex(matrix: IntMatrix, n: int) -> LatticeCochainComplex:
    """[Z^cols → Z^rows] in degrees n, n+1."""
    ranks = (0,) * n + (matrix.cols, matrix.rows)
    diffs = tuple(IntMatrix.zeros(ranks[k + 1], ranks[k]) for k in range(n)) + (matrix,)
    return LatticeCochainComplex(0, ranks, diffs)


def em_input_complex(A: FgAbGroup, n: int) -> LatticeCochainComplex:
    """Dual complex of A[n]: Z^r in degree n, and [Z →m→ Z] in degrees n, n+1 per Z/m."""
    if n < 1:
        raise ConnectiveRangeUnsupported("connective-range-unsupported")
    r, tors = A.free_rank, A.invariant_factors
    if not tors:
        return single_degree_complex(n, r)
    ents = [(j, r + j, m) for j, m in enumerate(tors)]
    return two_term_complex(IntMatrix(len(tors), r + len(tors), ents), n)


def resolution_complex(A: FgAbGroup) -> LatticeCochainComplex:
    """Lattice resolution [Z^k → Z^k] of a finite A, in degrees 0, 1."""
    if not A.is_finite:
        raise ValueError("resolution_complex expects a finite group")
    tors = A.invariant_factors
    return two_term_complex(IntMatrix.diag(list(tors)), 0) if tors else LatticeCochainComplex(0, (0,), ())


# ----------------------------------------------------------------------
# cosimplicial lattices
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class CosimplicialLattice:
    """Levels 0..m_max with cofaces[m][j]: level m → m+1 (j ≤ m+1) and
    codegeneracies[m][j]: level m → m−1 (j ≤ m−1)."""

    ranks: tuple[int, ...]
    cofaces: tuple[tuple[IntMatrix, ...], ...]
    codegeneracies: tuple[tuple[IntMatrix, ...], ...]
    check: bool = field(default=True, compare=False)

    def __post_init__(self):
        if self.check:
            bad = self.identity_failures()
            if bad:
                raise CosimplicialIdentityViolation(f"cosimplicial-identity-violation: {bad[0]}")

    @property
    def m_max(self) -> int:
        return len(self.ranks) - 1

    def d(self, m: int, j: int) -> IntMatrix:
        """Coface d^j from level m to level m+1."""
        return self.cofaces[m][j]

    def s(self, m: int, j: int) -> IntMatrix:
        """Codegeneracy s^j from level m to level m−1."""
        return self.codegeneracies[m][j]

    def identity_failures(self) -> list[str]:
        out = []
        top = self.m_max
        for m in range(top - 1):
            for j in range(m + 3):
                for i in range(j):
                    if self.d(m + 1, j) @ self.d(m, i) != self.d(m + 1, i) @ self.d(m, j - 1):
                        out.append(f"d^{j} d^{i} at level {m}")
        for m in range(top):
            # s^j d^i on level m -> m+1 -> m
            for j in range(m + 1):
                for i in range(m + 2):
                    lhs = self.s(m + 1, j) @ self.d(m, i)
                    if i < j:
                        rhs = self.d(m - 1, i) @ self.s(m, j - 1)
                    elif i == j or i == j + 1:
                        rhs = IntMatrix.identity(self.ranks[m])
                    else:
                        rhs = self.d(m - 1, i - 1) @ self.s(m, j)
                    if lhs != rhs:
                        out.append(f"s^{j} d^{i} at level {m}")
        for m in range(2, top + 1):
            for j in range(m - 1):
                for i in range(j + 1):
                    if self.s(m - 1, j) @ self.s(m, i) != self.s(m - 1, i) @ self.s(m, j + 1):
                        out.append(f"s^{j} s^{i} at level {m}")
        return out

    def differential(self, m: int) -> IntMatrix:
        """Alternating sum Σ (−1)^j d^j from level m to m+1."""
        acc = IntMatrix.zeros(self.ranks[m + 1], self.ranks[m])
        for j, dj in enumerate(self.cofaces[m]):
            acc = acc + (dj if j % 2 == 0 else -dj)
        return acc

    def normalized_inclusion(self, m: int) -> IntMatrix:
        """Hermite basis (columns) of ∩_j ker s^j at level m."""
        if m == 0:
            return IntMatrix.identity(self.ranks[0])
        stacked = IntMatrix.vstack(list(self.codegeneracies[m]))
        return kernel_basis(stacked)


def dold_kan_cosimplicial(C: CoconnectiveLatticeComplex | LatticeCochainComplex, m_max: int) -> CosimplicialLattice:
    """Cosimplicial lattice with level m = ⊕_{σ:[m]↠[n]} C^n and normalized complex C."""
    if isinstance(C, LatticeCochainComplex):
        C = CoconnectiveLatticeComplex.from_complex(C)
    model = DoldKanBinModel(C.complex)
    levels = [model.level_vars(m) for m in range(m_max + 1)]
    index = [{v: k for k, v in enumerate(lv)} for lv in levels]
    cofaces = []
    for m in range(m_max):
        maps = []
        for i in range(m + 2):
            img = model.coface_images(m + 1, i)
            cols = [dict(img.get(v, ())) for v in range(len(levels[m]))]
            maps.append(IntMatrix.from_columns(len(levels[m + 1]), cols))
        cofaces.append(tuple(maps))
    cofaces.append(())
    codegs = [()]
    for m in range(1, m_max + 1):
        maps = []
        for j in range(m):
            ents = []
            for w, (J, a) in enumerate(levels[m]):
                if (j + 1) in J:
                    continue
                vals = surjection_values(J, m)
                Jp = jumps_of(vals[:j + 1] + vals[j + 2:])
                ents.append((index[m - 1][(Jp, a)], w, 1))
            maps.append(IntMatrix(len(levels[m - 1]), len(levels[m]), ents))
        codegs.append(tuple(maps))
    return CosimplicialLattice(tuple(len(lv) for lv in levels), tuple(cofaces), tuple(codegs))


def apply_bin_levelwise(X: CosimplicialLattice, t: int) -> CosimplicialLattice:
    ranks = tuple(math.comb(r + t, t) for r in X.ranks)
    cofaces = tuple(tuple(induced_map(d, t) for d in level) for level in X.cofaces)
    codegs = tuple(tuple(induced_map(s, t) for s in level) for level in X.codegeneracies)
    return CosimplicialLattice(ranks, cofaces, codegs)


def total_cohomology(X: CosimplicialLattice, i: int, normalized: bool = True) -> FgAbGroup:
    if i < 0:
        return FgAbGroup()
    if X.m_max < i + 1:
        raise NeedMoreLevels("need-more-levels")
    d_out = X.differential(i)
    d_in = X.differential(i - 1) if i > 0 else IntMatrix.zeros(X.ranks[0], 0)
    if not normalized:
        prev = X.ranks[i - 1] if i > 0 else 0
        C = LatticeCochainComplex(0, (prev, X.ranks[i], X.ranks[i + 1]), (d_in, d_out))
        return complex_cohomology(C, 1)
    K_prev = X.normalized_inclusion(i - 1) if i > 0 else IntMatrix.zeros(0, 0)
    K = X.normalized_inclusion(i)
    K_next = X.normalized_inclusion(i + 1)
    n_out = solve_in_basis(K_next, d_out @ K)
    n_in = solve_in_basis(K, d_in @ K_prev) if i > 0 else IntMatrix.zeros(K.cols, 0)
    C = LatticeCochainComplex(0, (n_in.cols, K.cols, K_next.cols), (n_in, n_out))
    return complex_cohomology(C, 1)


# ----------------------------------------------------------------------
# structured route
# ----------------------------------------------------------------------

_MODELS: dict[LatticeCochainComplex, DoldKanBinModel] = {}


def model_for(C: CoconnectiveLatticeComplex | LatticeCochainComplex) -> DoldKanBinModel:
    if isinstance(C, CoconnectiveLatticeComplex):
        C = C.complex
    if C.start != 0:
        C = CoconnectiveLatticeComplex.from_complex(C).complex
    model = _MODELS.get(C)
    if model is None:
        model = _MODELS[C] = DoldKanBinModel(C)
    return model


def clear_model_cache() -> None:
    _MODELS.clear()


def truncated_bin_cohomology(C: CoconnectiveLatticeComplex | LatticeCochainComplex, t: int, i: int,
                             engine: str = "structured") -> FgAbGroup:
    """H^i(LBin^{≤t}(C)).

    ``engine="explicit"`` composes dold_kan_cosimplicial, apply_bin_levelwise
    and total_cohomology; ``"structured"`` uses the normalized model.
    """
    if i < 0:
        return FgAbGroup()
    if engine == "explicit":
        if isinstance(C, LatticeCochainComplex):
            C = CoconnectiveLatticeComplex.from_complex(C)
        X = apply_bin_levelwise(dold_kan_cosimplicial(C, i + 1), t)
        normalized = max(X.ranks) > UNNORMALIZED_RANK_LIMIT
        return total_cohomology(X, i, normalized=normalized)
    if engine != "structured":
        raise ValueError(f"unknown engine {engine!r}")
    return model_for(C).cohomology(i, t)


@dataclass(frozen=True)
class EmResult:
    group: FgAbGroup
    trunc: int
    checked_trunc: int | None


def em_cohomology(A: FgAbGroup, n: int, i: int, trunc: int | None = None, check: bool = True) -> FgAbGroup:
    """H^i(K(A, n); Z) from LBin^{≤t} of the dual complex of A[n]."""
    return em_cohomology_report(A, n, i, trunc, check).group


def em_cohomology_report(A: FgAbGroup, n: int, i: int, trunc: int | None = None, check: bool = True) -> EmResult:
    C = em_input_complex(A, n)
    t = max(i, 1) if trunc is None else trunc
    return stable_cohomology(C, i, t, check)


def stable_cohomology(C: LatticeCochainComplex, i: int, t: int, check: bool = True) -> EmResult:
    """H^i at truncation t, confirmed equal at t+1 unless ``check`` is off."""
    group = truncated_bin_cohomology(C, t, i)
    if not check:
        return EmResult(group, t, None)
    other = truncated_bin_cohomology(C, t + 1, i)
    if other != group:
        raise TruncationUnstable(f"truncation-unstable: H^{i} is {group} at t={t} but {other} at t={t + 1}")
    return EmResult(group, t, t + 1)
