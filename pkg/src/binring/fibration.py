"""Cellular sheaves of lattices and cohomology of torus fibrations over them.

A torus fibration over a finite regular cell complex is described by a
pointed two-term complex of cellular sheaves E = [E^0 → E^1] whose degree-0
cohomology is the pointing Z and whose degree-1 cohomology is the lattice of
fibre classes.  Its total-space cohomology is the cohomology of a triple
complex: cells of the base, cosimplicial Dold–Kan levels of each stalk, and
functions of degree ≤ t on the affine coset where the pointing coordinate is
1.  The last two directions are handled by a pointed
:class:`~binring.dkbin.DoldKanBinModel` per stalk.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Hashable, Mapping, Sequence

from binring import binpoly
from binring.dkbin import DoldKanBinModel
from binring.errors import InvariantViolation, NotACocycle, PointingNotPrimitive, TruncationUnstable
from binring.linalg import (FgAbGroup, IntMatrix, LatticeCochainComplex, cohomology_from_differentials,
                            complex_cohomology, exterior_power, inverse_unimodular, kernel_basis,
                            smith_normal_form, unimodular_completion)

Cell = Hashable


# ----------------------------------------------------------------------
# cell complexes
# ----------------------------------------------------------------------

class CellComplex:
    """Finite regular cell complex given by cells and codimension-one incidences.

    ``incidence[(face, cell)]`` is the signed incidence number [cell : face].
    """

    def __init__(self, cells: Mapping[Cell, int], incidence: Mapping[tuple[Cell, Cell], int]):
        self.dims = dict(cells)
        self.incidence = {k: int(v) for k, v in incidence.items() if v}
        for (f, c), _ in self.incidence.items():
            if f not in self.dims or c not in self.dims:
                raise ValueError(f"incidence mentions unknown cell {f!r} or {c!r}")
            if self.dims[c] != self.dims[f] + 1:
                raise ValueError(f"incidence {f!r} < {c!r} is not of codimension one")
        self._faces: dict[Cell, list[Cell]] = {c: [] for c in self.dims}
        self._cofaces: dict[Cell, list[Cell]] = {c: [] for c in self.dims}
        for f, c in sorted(self.incidence, key=repr):
            self._faces[c].append(f)
            self._cofaces[f].append(c)
        self._check_boundary()

    def _check_boundary(self):
        for c in self.dims:
            acc: dict[Cell, int] = {}
            for f in self._faces[c]:
                for g in self._faces[f]:
                    acc[g] = acc.get(g, 0) + self.incidence[(f, c)] * self.incidence[(g, f)]
            if any(acc.values()):
                raise InvariantViolation(f"boundary of boundary of {c!r} is nonzero")

    @property
    def dimension(self) -> int:
        return max(self.dims.values(), default=-1)

    def cells(self, dim: int) -> list[Cell]:
        return sorted((c for c, d in self.dims.items() if d == dim), key=repr)

    def all_cells(self) -> list[Cell]:
        return sorted(self.dims, key=lambda c: (self.dims[c], repr(c)))

    def faces(self, cell: Cell) -> list[Cell]:
        return list(self._faces[cell])

    def cofaces(self, cell: Cell) -> list[Cell]:
        return list(self._cofaces[cell])

    def closure(self, cell: Cell) -> set[Cell]:
        out, stack = {cell}, [cell]
        while stack:
            for f in self._faces[stack.pop()]:
                if f not in out:
                    out.add(f)
                    stack.append(f)
        return out

    def boundary_matrix(self, dim: int) -> IntMatrix:
        """Cellular boundary C_dim → C_{dim-1}."""
        src, tgt = self.cells(dim), self.cells(dim - 1)
        pos = {c: i for i, c in enumerate(tgt)}
        ents = [(pos[f], j, self.incidence[(f, c)]) for j, c in enumerate(src) for f in self._faces[c]]
        return IntMatrix(len(tgt), len(src), ents)

    # -- builders ---------------------------------------------------
    @classmethod
    def from_simplices(cls, top: Sequence[Sequence[int]]) -> "CellComplex":
        """Simplicial complex generated by the given simplices (vertex tuples)."""
        cells: dict[tuple, int] = {}
        for s in top:
            s = tuple(sorted(s))
            for k in range(1, len(s) + 1):
                for face in itertools.combinations(s, k):
                    cells[face] = k - 1
        inc = {}
        for c, d in cells.items():
            if d == 0:
                continue
            for i in range(len(c)):
                inc[(c[:i] + c[i + 1:], c)] = (-1) ** i
        return cls(cells, inc)

    @classmethod
    def point(cls) -> "CellComplex":
        return cls.from_simplices([(0,)])

    @classmethod
    def circle(cls, n: int = 3) -> "CellComplex":
        if n < 3:
            raise ValueError("a regular circle needs at least 3 vertices")
        return cls.from_simplices([(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def sphere2(cls) -> "CellComplex":
        """Boundary of the tetrahedron."""
        return cls.from_simplices(list(itertools.combinations(range(4), 3)))

    def to_json(self) -> dict:
        return {"cells": [{"id": _cell_key(c), "dim": self.dims[c]} for c in self.all_cells()],
                "incidence": [[_cell_key(f), _cell_key(c), s] for (f, c), s in sorted(self.incidence.items(), key=repr)]}


def _cell_key(c: Cell) -> str:
    if isinstance(c, tuple):
        return "-".join(map(str, c))
    return str(c)


# ----------------------------------------------------------------------
# cellular sheaves
# ----------------------------------------------------------------------

class CellularLatticeSheaf:
    """Lattice-valued functor on the face poset, maps pointing to higher cells.

    Only codimension-one restrictions are stored; ``restrictions[(face, cell)]``
    has shape rank(cell) × rank(face).
    """

    def __init__(self, base: CellComplex, stalks: Mapping[Cell, int],
                 restrictions: Mapping[tuple[Cell, Cell], IntMatrix], check: bool = True):
        self.base = base
        self.stalks = {c: int(stalks.get(c, 0)) for c in base.dims}
        self.restrictions = {}
        for (f, c) in base.incidence:
            M = restrictions.get((f, c))
            if M is None:
                M = IntMatrix.zeros(self.stalks[c], self.stalks[f])
            if M.shape != (self.stalks[c], self.stalks[f]):
                raise ValueError(f"restriction {f!r}->{c!r} has shape {M.shape}")
            self.restrictions[(f, c)] = M
        if check:
            self._check_functorial()

    def _check_functorial(self):
        b = self.base
        for c in b.dims:
            for g in {g for f in b.faces(c) for g in b.faces(f)}:
                composites = {self.restrictions[(f, c)] @ self.restrictions[(g, f)]
                              for f in b.faces(c) if g in b.faces(f)}
                if len(composites) > 1:
                    raise InvariantViolation(f"restrictions from {g!r} to {c!r} do not commute")

    def restriction(self, face: Cell, cell: Cell) -> IntMatrix:
        return self.restrictions[(face, cell)]

    @classmethod
    def constant(cls, base: CellComplex, rank: int = 1) -> "CellularLatticeSheaf":
        I = IntMatrix.identity(rank)
        return cls(base, {c: rank for c in base.dims}, {k: I for k in base.incidence})

    @classmethod
    def circle_local_system(cls, base: CellComplex, monodromy: IntMatrix) -> "CellularLatticeSheaf":
        """Local system on a circle: identity restrictions except at the last
        vertex-edge incidence, where the monodromy is inserted."""
        r = monodromy.rows
        I = IntMatrix.identity(r)
        rest = {k: I for k in base.incidence}
        edges = base.cells(1)
        edge = edges[-1]
        face = base.faces(edge)[0]
        rest[(face, edge)] = monodromy
        return cls(base, {c: r for c in base.dims}, rest)

    def exterior_power(self, k: int) -> "CellularLatticeSheaf":
        return CellularLatticeSheaf(self.base, {c: math.comb(r, k) for c, r in self.stalks.items()},
                                    {key: exterior_power(M, k) for key, M in self.restrictions.items()},
                                    check=False)

    def cochain_complex(self) -> LatticeCochainComplex:
        b = self.base
        top = max(b.dimension, 0)
        offsets = {}
        ranks = []
        for p in range(top + 1):
            off = 0
            for c in b.cells(p):
                offsets[c] = off
                off += self.stalks[c]
            ranks.append(off)
        diffs = []
        for p in range(top):
            ents = []
            for c in b.cells(p + 1):
                for f in b.faces(c):
                    sign = b.incidence[(f, c)]
                    for r, col, v in self.restrictions[(f, c)].entries():
                        ents.append((offsets[c] + r, offsets[f] + col, sign * v))
            diffs.append(IntMatrix(ranks[p + 1], ranks[p], ents))
        return LatticeCochainComplex(0, tuple(ranks), tuple(diffs))


def sheaf_cohomology(F: CellularLatticeSheaf, i: int) -> FgAbGroup:
    C = F.cochain_complex()
    if i < 0 or i > C.end:
        return FgAbGroup()
    return complex_cohomology(C, i)


# ----------------------------------------------------------------------
# pointed complexes
# ----------------------------------------------------------------------

@dataclass
class PointedSheafComplex:
    """E^0 → E^1 with a pointing Z → E^0 (``pointing[cell]`` is a vector of E^0)."""

    base: CellComplex
    E0: CellularLatticeSheaf
    E1: CellularLatticeSheaf
    d: dict
    pointing: dict
    check: bool = field(default=True, repr=False)

    def __post_init__(self):
        if self.check:
            self.validate()

    def validate(self):
        b = self.base
        for c in b.dims:
            r0, r1 = self.E0.stalks[c], self.E1.stalks[c]
            dc = self.d[c]
            if dc.shape != (r1, r0):
                raise ValueError(f"d at {c!r} has shape {dc.shape}, expected {(r1, r0)}")
            v = list(self.pointing[c])
            if len(v) != r0:
                raise ValueError(f"pointing at {c!r} has wrong length")
            if not v or math.gcd(*v) != 1:
                raise PointingNotPrimitive("pointing-not-primitive")
            K = kernel_basis(dc)
            if K.cols != 1 or any(x for x in dc.apply(v)):
                raise InvariantViolation(f"kernel of d at {c!r} is not spanned by the pointing")
        for (f, c) in b.incidence:
            r0, r1 = self.E0.restriction(f, c), self.E1.restriction(f, c)
            if self.d[c] @ r0 != r1 @ self.d[f]:
                raise InvariantViolation(f"d does not commute with restriction {f!r}->{c!r}")
            if r0.apply(list(self.pointing[f])) != list(self.pointing[c]):
                raise InvariantViolation(f"restriction {f!r}->{c!r} does not preserve the pointing")

    def stalk_complex(self, c: Cell) -> LatticeCochainComplex:
        return LatticeCochainComplex(0, (self.E0.stalks[c], self.E1.stalks[c]), (self.d[c],))


def split_model(base: CellComplex, L: CellularLatticeSheaf) -> PointedSheafComplex:
    """E^0 = Z (the pointing), E^1 = L, d = 0."""
    Z = CellularLatticeSheaf.constant(base, 1)
    d = {c: IntMatrix.zeros(L.stalks[c], 1) for c in base.dims}
    return PointedSheafComplex(base, Z, L, d, {c: (1,) for c in base.dims})


def circle_bundle_model(base: CellComplex, euler: Mapping[Cell, int]) -> PointedSheafComplex:
    """Pointed complex with constant fibre lattice Z whose extension class is ``euler``.

    Over a cell τ, E^1(τ) is the vertex lattice of the closure of τ and E^0(τ)
    is Z ⊕ (edge lattice of the closure) modulo (c(σ), −∂σ) for the 2-cells σ
    of the closure; the differential is the edge boundary and the pointing is
    the class of (1, 0).
    """
    c2 = {s: int(euler.get(s, 0)) for s in base.cells(2)}
    for s in euler:
        if base.dims.get(s) != 2:
            raise ValueError(f"euler cochain has a value on non-2-cell {s!r}")
    for rho in base.cells(3):
        if sum(base.incidence[(s, rho)] * c2[s] for s in base.faces(rho)):
            raise NotACocycle("not-a-cocycle")

    local = {}
    for tau in base.dims:
        cl = base.closure(tau)
        verts = sorted((x for x in cl if base.dims[x] == 0), key=repr)
        edges = sorted((x for x in cl if base.dims[x] == 1), key=repr)
        faces = sorted((x for x in cl if base.dims[x] == 2), key=repr)
        epos = {e: i + 1 for i, e in enumerate(edges)}
        ents = []
        for j, s in enumerate(faces):
            if c2[s]:
                ents.append((0, j, c2[s]))
            for e in base.faces(s):
                ents.append((epos[e], j, -base.incidence[(e, s)]))
        R = IntMatrix(1 + len(edges), len(faces), ents)
        snf = smith_normal_form(R, transforms=True)
        if any(x != 1 for x in snf.diagonal):
            raise InvariantViolation(f"stalk of E^0 at {tau!r} has torsion")
        k = snf.rank
        n = 1 + len(edges)
        U = snf.U
        Uinv = inverse_unimodular(U)
        quotient = U.submatrix(range(k, n), range(n))
        section = Uinv.submatrix(range(n), range(k, n))
        vpos = {v: i for i, v in enumerate(verts)}
        bd = IntMatrix(len(verts), n, [(vpos[v], epos[e], base.incidence[(v, e)])
                                       for e in edges for v in base.faces(e)])
        local[tau] = dict(verts=verts, edges=edges, quotient=quotient, section=section,
                          d=bd @ section, pointing=tuple(quotient.apply([1] + [0] * len(edges))))

    r0, r1 = {}, {}
    for (f, c) in base.incidence:
        lf, lc = local[f], local[c]
        cpos = {e: i + 1 for i, e in enumerate(lc["edges"])}
        incl = IntMatrix(1 + len(lc["edges"]), 1 + len(lf["edges"]),
                         [(0, 0, 1)] + [(cpos[e], i + 1, 1) for i, e in enumerate(lf["edges"])])
        r0[(f, c)] = lc["quotient"] @ incl @ lf["section"]
        vpos = {v: i for i, v in enumerate(lc["verts"])}
        r1[(f, c)] = IntMatrix(len(lc["verts"]), len(lf["verts"]),
                               [(vpos[v], i, 1) for i, v in enumerate(lf["verts"])])
    E0 = CellularLatticeSheaf(base, {c: local[c]["quotient"].rows for c in base.dims}, r0)
    E1 = CellularLatticeSheaf(base, {c: len(local[c]["verts"]) for c in base.dims}, r1)
    return PointedSheafComplex(base, E0, E1, {c: local[c]["d"] for c in base.dims},
                               {c: local[c]["pointing"] for c in base.dims})


# ----------------------------------------------------------------------
# coaugmented binomial stalks
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class CoaugBinStalk:
    """Degree-≤t functions on the coset {λ : λ(v) = 1} of V^∨.

    ``adapt`` is unimodular with adapt·v = e_0; the basis consists of binomial
    monomials in the adapted coordinates 1..rank-1.
    """

    rank: int
    pointing: tuple[int, ...]
    trunc: int
    adapt: IntMatrix

    @property
    def basis(self) -> list[tuple]:
        free = self.rank - 1
        out = []
        for d in range(self.trunc + 1):
            for k in itertools.combinations_with_replacement(range(1, free + 1), d):
                mono = {}
                for v in k:
                    mono[v] = mono.get(v, 0) + 1
                out.append(tuple(sorted(mono.items())))
        return out

    @property
    def dim(self) -> int:
        return math.comb(self.rank - 1 + self.trunc, self.trunc)

    def evaluate(self, coords: Mapping[tuple, int], lam: Sequence[int]) -> int:
        """Evaluate a function given in this basis at λ ∈ V^∨ with λ(v) = 1."""
        if sum(a * b for a, b in zip(lam, self.pointing)) != 1:
            raise ValueError("point is not on the coset")
        Uinv = inverse_unimodular(self.adapt)
        # adapted variable u_a = U^{-1} e_a, evaluated at λ
        vals = {a: sum(lam[i] * Uinv[i, a] for i in range(self.rank)) for a in range(self.rank)}
        return binpoly.evaluate_poly(dict(coords), vals)


def coaug_bin_stalk(rank: int, pointing: Sequence[int], trunc: int) -> CoaugBinStalk:
    v = tuple(int(x) for x in pointing)
    if len(v) != rank or rank == 0:
        raise ValueError("pointing must be a vector of the lattice")
    U = unimodular_completion(v)
    return CoaugBinStalk(rank, v, trunc, U)


def coaug_induced_map(src: CoaugBinStalk, tgt: CoaugBinStalk, f: IntMatrix) -> IntMatrix:
    """Matrix of g ↦ g ∘ f^T between coset function lattices, for f(v) = w."""
    if list(f.apply(list(src.pointing))) != list(tgt.pointing):
        raise InvariantViolation("map does not preserve the pointing")
    fa = tgt.adapt @ f @ inverse_unimodular(src.adapt)
    images, shifts = _affine_images(fa)
    tindex = {m: i for i, m in enumerate(tgt.basis)}
    cols = []
    for mono in src.basis:
        out = binpoly.substitute({mono: 1}, images, shifts)
        cols.append({tindex[m]: c for m, c in out.items()})
    return IntMatrix.from_columns(tgt.dim, cols)


def _affine_images(fa: IntMatrix, var_of=lambda a: a):
    """Images of adapted variables 1.. under fa with coordinate 0 set to 1."""
    images, shifts = {}, {}
    for a, col in enumerate(fa.columns()):
        if a == 0:
            continue
        shifts[var_of(a)] = col.get(0, 0)
        images[var_of(a)] = tuple(sorted((var_of(b), c) for b, c in col.items() if b != 0))
    return images, shifts


# ----------------------------------------------------------------------
# total complex
# ----------------------------------------------------------------------

_POINTED_MODELS: dict[LatticeCochainComplex, DoldKanBinModel] = {}


def _pointed_model(C: LatticeCochainComplex) -> DoldKanBinModel:
    m = _POINTED_MODELS.get(C)
    if m is None:
        m = _POINTED_MODELS[C] = DoldKanBinModel(C, pointed=True)
    return m


class FibrationComplex:
    """Total complex of the cellular × cosimplicial × coset-function construction."""

    def __init__(self, E: PointedSheafComplex, t: int, graded: int | None = None):
        self.E = E
        self.t = t
        self.graded = graded
        b = E.base
        self.adapt = {c: unimodular_completion(E.pointing[c]) for c in b.dims}
        self.adapt_inv = {c: inverse_unimodular(U) for c, U in self.adapt.items()}
        self.models = {}
        for c in b.dims:
            d_adapted = E.d[c] @ self.adapt_inv[c]
            C = LatticeCochainComplex(0, (E.E0.stalks[c], E.E1.stalks[c]), (d_adapted,))
            self.models[c] = _pointed_model(C)
        self.r0 = {k: self.adapt[k[1]] @ E.E0.restriction(*k) @ self.adapt_inv[k[0]] for k in b.incidence}
        self._blocks: dict[int, list[tuple[Cell, int, int]]] = {}

    def basis(self, c: Cell, q: int) -> list:
        m = self.models[c]
        if self.graded is None:
            return m.normalized_basis(q, self.t)
        return m.normalized_basis(q, self.graded, degree=self.graded)

    def blocks(self, k: int) -> list[tuple[Cell, int, int]]:
        """(cell, level, offset) for total degree k, with total rank last."""
        if k not in self._blocks:
            out, off = [], 0
            b = self.E.base
            for p in range(0, min(k, b.dimension) + 1):
                for c in b.cells(p):
                    out.append((c, k - p, off))
                    off += len(self.basis(c, k - p))
            out.append((None, -1, off))
            self._blocks[k] = out
        return self._blocks[k]

    def rank(self, k: int) -> int:
        return self.blocks(k)[-1][2] if k >= 0 else 0

    def _restriction_images(self, f: Cell, c: Cell, q: int):
        """Variable images of the level-q Dold–Kan map induced by f → c."""
        mf, mc = self.models[f], self.models[c]
        src_vars, tgt_index = mf.level_vars(q), mc.var_index(q)
        r1 = self.E.E1.restriction(f, c)
        r0 = self.r0[(f, c)]
        images, shifts = {}, {}
        for v, (J, a) in enumerate(src_vars):
            if not J and a == 0:
                continue
            M = r0 if not J else r1
            col = M.column(a)
            if not J:
                shifts[v] = col.get(0, 0)
                col = {b: x for b, x in col.items() if b != 0}
            images[v] = tuple(sorted((tgt_index[(J, b)], x) for b, x in col.items()))
        return images, shifts

    def differential(self, k: int) -> IntMatrix:
        src, tgt = self.blocks(k), self.blocks(k + 1)
        tpos = {(c, q): off for c, q, off in tgt[:-1]}
        b = self.E.base
        ents = []
        for c, q, off in src[:-1]:
            p = b.dims[c]
            basis = self.basis(c, q)
            if not basis:
                continue
            # cosimplicial direction, signed by the cell dimension
            if (c, q + 1) in tpos:
                m = self.models[c]
                D = (m.differential(q, self.t) if self.graded is None
                     else m.differential(q, self.graded, degree=self.graded))
                sign = -1 if p % 2 else 1
                toff = tpos[(c, q + 1)]
                ents.extend((toff + r, off + j, sign * v) for r, j, v in D.entries())
            # cellular direction
            for c2 in b.cofaces(c):
                if (c2, q) not in tpos:
                    continue
                tbasis = self.basis(c2, q)
                tindex = {m: i for i, m in enumerate(tbasis)}
                toff = tpos[(c2, q)]
                sign = b.incidence[(c, c2)]
                images, shifts = self._restriction_images(c, c2, q)
                keep = None
                if self.graded is not None:
                    keep = lambda mo, g=self.graded: binpoly.mono_degree(mo) == g
                for j, mono in enumerate(basis):
                    for mo, x in binpoly.substitute({mono: 1}, images, shifts, keep=keep).items():
                        ents.append((toff + tindex[mo], off + j, sign * x))
        return IntMatrix(self.rank(k + 1), self.rank(k), ents)

    def cohomology(self, i: int) -> FgAbGroup:
        dim = self.rank(i)
        if not dim:
            return FgAbGroup()
        d_out = self.differential(i)
        d_in = self.differential(i - 1) if i > 0 else IntMatrix.zeros(dim, 0)
        return cohomology_from_differentials(dim, d_in, d_out)

    def as_complex(self, top: int) -> LatticeCochainComplex:
        ranks = tuple(self.rank(k) for k in range(top + 1))
        return LatticeCochainComplex(0, ranks, tuple(self.differential(k) for k in range(top)))


def pushforward_cohomology(E: PointedSheafComplex, t: int, i: int) -> FgAbGroup:
    if i < 0:
        return FgAbGroup()
    return FibrationComplex(E, t).cohomology(i)


@dataclass(frozen=True)
class FibrationResult:
    group: FgAbGroup
    trunc: int
    checked_trunc: int | None


def fibration_cohomology(E: PointedSheafComplex, i: int, trunc: int | None = None,
                         check: bool = True) -> FibrationResult:
    """H^i of the total space with the t versus t+1 agreement check."""
    t = max(i, 1) if trunc is None else trunc
    group = pushforward_cohomology(E, t, i)
    if not check:
        return FibrationResult(group, t, None)
    other = pushforward_cohomology(E, t + 1, i)
    if other != group:
        raise TruncationUnstable(f"truncation-unstable: H^{i} is {group} at t={t} but {other} at t={t + 1}")
    return FibrationResult(group, t, t + 1)


# ----------------------------------------------------------------------
# scene files
# ----------------------------------------------------------------------

def _matrix(data, rows: int, cols: int) -> IntMatrix:
    if isinstance(data, dict):
        M = IntMatrix.from_json(data)
    else:
        M = IntMatrix.from_dense([[int(x) for x in row] for row in data], cols) if rows else IntMatrix.zeros(0, cols)
    if M.shape != (rows, cols):
        raise ValueError(f"matrix has shape {M.shape}, expected {(rows, cols)}")
    return M


def _sheaf_from_json(base: CellComplex, data: Mapping) -> CellularLatticeSheaf:
    if "constant" in data:
        return CellularLatticeSheaf.constant(base, int(data["constant"]))
    stalks = {c: int(r) for c, r in data["stalks"].items()}
    for c in stalks:
        if c not in base.dims:
            raise ValueError(f"stalk given for unknown cell {c!r}")
    full = {c: stalks.get(c, 0) for c in base.dims}
    rest = {}
    entries = data.get("restrictions", [])
    if isinstance(entries, Mapping):
        # {"face->cell": matrix} shorthand
        entries = [dict(zip(("from", "to"), k.split("->")), matrix=m) for k, m in entries.items()]
    for entry in entries:
        f, c = entry["from"], entry["to"]
        rest[(f, c)] = _matrix(entry["matrix"], full[c], full[f])
    return CellularLatticeSheaf(base, full, rest)


def scene_from_json(data: Mapping) -> PointedSheafComplex:
    """Build the pointed complex described by a scene document.

    ``sheaf`` is either a lattice sheaf L (split model), or an object with keys
    ``E0``, ``E1`` and ``d`` (general model, ``pointing`` required); a scene
    with ``euler`` instead builds a circle bundle.
    """
    cells = {c["id"]: int(c["dim"]) for c in data["cells"]}
    inc = {(f, c): int(s) for f, c, s in data.get("incidence", [])}
    base = CellComplex(cells, inc)
    if "euler" in data:
        return circle_bundle_model(base, {c: int(k) for c, k in data["euler"].items()})
    sheaf = data["sheaf"]
    if "E0" not in sheaf:
        return split_model(base, _sheaf_from_json(base, sheaf))
    E0 = _sheaf_from_json(base, sheaf["E0"])
    E1 = _sheaf_from_json(base, sheaf["E1"])
    d = {c: _matrix(sheaf["d"][c], E1.stalks[c], E0.stalks[c]) if c in sheaf["d"]
         else IntMatrix.zeros(E1.stalks[c], E0.stalks[c]) for c in base.dims}
    pointing = {c: tuple(int(x) for x in data["pointing"][c]) for c in base.dims}
    return PointedSheafComplex(base, E0, E1, d, pointing)
