"""Exact integer linear algebra.

Everything here works over Z with Python integers; nothing is ever converted
to floating point.  Matrices are immutable values.  Smith normal form comes
in two flavours: a dense transform-tracking reduction for small inputs and
the sparse eliminator in :mod:`binring.sparse` for everything else.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import reduce
from typing import Iterable, Iterator, Sequence

from binring.errors import DegreeOutOfRange, InvariantViolation, NotFinite, PointingNotPrimitive
from binring import sparse

DENSE_THRESHOLD = 0.30


class IntMatrix:
    """Immutable integer matrix with sparse (row, col, value) storage.

    Entries are kept column-wise as ``{row: value}`` dictionaries with no
    stored zeros.  ``to_dense()`` gives the dense fallback.
    """

    __slots__ = ("rows", "cols", "_cols", "_hash")

    def __init__(self, rows: int, cols: int, entries: Iterable[tuple[int, int, int]] = ()):
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        self.rows = rows
        self.cols = cols
        data: list[dict[int, int]] = [dict() for _ in range(cols)]
        for r, c, v in entries:
            if not (0 <= r < rows and 0 <= c < cols):
                raise IndexError(f"entry ({r}, {c}) outside {rows}x{cols}")
            v = int(v)
            if v:
                col = data[c]
                s = col.get(r, 0) + v
                if s:
                    col[r] = s
                else:
                    col.pop(r, None)
            # explicit zeros are dropped
        self._cols = tuple(data)
        self._hash = None

    # -- constructors -------------------------------------------------
    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[int]], ncols: int | None = None) -> "IntMatrix":
        rows = [list(r) for r in rows]
        nrows = len(rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged dense matrix")
        return cls(nrows, ncols, ((i, j, v) for i, r in enumerate(rows) for j, v in enumerate(r) if v))

    @classmethod
    def from_columns(cls, nrows: int, columns: Sequence[dict[int, int]]) -> "IntMatrix":
        return cls(nrows, len(columns), ((r, j, v) for j, col in enumerate(columns) for r, v in col.items()))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, ((i, i, 1) for i in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols)

    @classmethod
    def diag(cls, values: Sequence[int], rows: int | None = None, cols: int | None = None) -> "IntMatrix":
        n = len(values)
        rows = n if rows is None else rows
        cols = n if cols is None else cols
        return cls(rows, cols, ((i, i, v) for i, v in enumerate(values)))

    # -- access -------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, rc: tuple[int, int]) -> int:
        r, c = rc
        return self._cols[c].get(r, 0)

    def column(self, c: int) -> dict[int, int]:
        return dict(self._cols[c])

    def columns(self) -> list[dict[int, int]]:
        return [dict(c) for c in self._cols]

    def entries(self) -> Iterator[tuple[int, int, int]]:
        for c, col in enumerate(self._cols):
            for r in sorted(col):
                yield r, c, col[r]

    @property
    def nnz(self) -> int:
        return sum(len(c) for c in self._cols)

    @property
    def density(self) -> float:
        size = self.rows * self.cols
        return self.nnz / size if size else 0.0

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for c, col in enumerate(self._cols):
            for r, v in col.items():
                out[r][c] = v
        return out

    def is_zero(self) -> bool:
        return all(not c for c in self._cols)

    # -- algebra ------------------------------------------------------
    @property
    def T(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows, ((c, r, v) for r, c, v in self.entries()))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        # row-indexed view of self
        rows: dict[int, dict[int, int]] = {}
        for c, col in enumerate(self._cols):
            for r, v in col.items():
                rows.setdefault(r, {})[c] = v
        out = []
        for j, col in enumerate(other._cols):
            acc: dict[int, int] = {}
            for k, w in col.items():
                for r, v in self._cols[k].items():
                    acc[r] = acc.get(r, 0) + v * w
            out.extend((r, j, v) for r, v in acc.items() if v)
        return IntMatrix(self.rows, other.cols, out)

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return IntMatrix(self.rows, self.cols, itertools.chain(self.entries(), other.entries()))

    def __neg__(self) -> "IntMatrix":
        return self.scale(-1)

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return self + (-other)

    def scale(self, k: int) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, ((r, c, k * v) for r, c, v in self.entries()))

    def apply(self, vec: Sequence[int]) -> list[int]:
        out = [0] * self.rows
        for c, col in enumerate(self._cols):
            x = vec[c]
            if x:
                for r, v in col.items():
                    out[r] += v * x
        return out

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "IntMatrix":
        rmap = {r: i for i, r in enumerate(rows)}
        ents = []
        for j, c in enumerate(cols):
            for r, v in self._cols[c].items():
                if r in rmap:
                    ents.append((rmap[r], j, v))
        return IntMatrix(len(rows), len(cols), ents)

    @staticmethod
    def hstack(mats: Sequence["IntMatrix"], rows: int | None = None) -> "IntMatrix":
        if not mats:
            return IntMatrix(rows or 0, 0)
        n = mats[0].rows
        ents, off = [], 0
        for m in mats:
            if m.rows != n:
                raise ValueError("hstack row mismatch")
            ents.extend((r, c + off, v) for r, c, v in m.entries())
            off += m.cols
        return IntMatrix(n, off, ents)

    @staticmethod
    def vstack(mats: Sequence["IntMatrix"], cols: int | None = None) -> "IntMatrix":
        if not mats:
            return IntMatrix(0, cols or 0)
        n = mats[0].cols
        ents, off = [], 0
        for m in mats:
            if m.cols != n:
                raise ValueError("vstack column mismatch")
            ents.extend((r + off, c, v) for r, c, v in m.entries())
            off += m.rows
        return IntMatrix(off, n, ents)

    @staticmethod
    def block_diag(mats: Sequence["IntMatrix"]) -> "IntMatrix":
        ents, ro, co = [], 0, 0
        for m in mats:
            ents.extend((r + ro, c + co, v) for r, c, v in m.entries())
            ro += m.rows
            co += m.cols
        return IntMatrix(ro, co, ents)

    # -- value semantics ----------------------------------------------
    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self._cols == other._cols

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.shape, tuple(self.entries())))
        return self._hash

    def __repr__(self) -> str:
        if self.rows * self.cols <= 64:
            return f"IntMatrix({self.to_dense()})"
        return f"IntMatrix<{self.rows}x{self.cols}, nnz={self.nnz}>"

    # -- JSON ---------------------------------------------------------
    def to_json(self) -> dict:
        return {"rows": self.rows, "cols": self.cols,
                "entries": [[r, c, str(v)] for r, c, v in self.entries()]}

    @classmethod
    def from_json(cls, data) -> "IntMatrix":
        """Sparse form ``{"rows", "cols", "entries"}`` or a dense list of rows."""
        if isinstance(data, list):
            return cls.from_dense([[int(x) for x in row] for row in data], len(data[0]) if data else 0)
        return cls(int(data["rows"]), int(data["cols"]),
                   ((int(r), int(c), int(v)) for r, c, v in data["entries"]))


LatticeMap = IntMatrix


# ----------------------------------------------------------------------
# finitely generated abelian groups
# ----------------------------------------------------------------------

def _prime_powers(n: int) -> list[tuple[int, int]]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            q = 1
            while n % p == 0:
                n //= p
                q *= p
            out.append((p, q))
        p += 1
    if n > 1:
        out.append((n, n))
    return out


def invariant_factors_from_orders(orders: Iterable[int]) -> tuple[int, ...]:
    """Divisibility-chain normal form of a direct sum of cyclic groups Z/o_i."""
    by_prime: dict[int, list[int]] = {}
    for o in orders:
        o = abs(int(o))
        if o == 0:
            raise ValueError("use free_rank for infinite cyclic summands")
        for p, q in _prime_powers(o):
            by_prime.setdefault(p, []).append(q)
    if not by_prime:
        return ()
    length = max(len(v) for v in by_prime.values())
    factors = [1] * length
    for qs in by_prime.values():
        qs.sort()
        for k, q in enumerate(reversed(qs)):
            factors[length - 1 - k] *= q
    return tuple(f for f in factors if f > 1)


@dataclass(frozen=True, order=True)
class FgAbGroup:
    """Z^free_rank + Z/d_1 + ... + Z/d_k with d_1 | d_2 | ... and every d_i >= 2."""

    free_rank: int = 0
    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "invariant_factors", tuple(int(d) for d in self.invariant_factors))
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        ds = self.invariant_factors
        if any(d < 2 for d in ds):
            raise ValueError(f"invariant factors must be >= 2, got {ds}")
        if any(ds[i + 1] % ds[i] for i in range(len(ds) - 1)):
            raise ValueError(f"invariant factors must form a divisibility chain, got {ds}")

    @classmethod
    def from_orders(cls, free_rank: int = 0, orders: Iterable[int] = ()) -> "FgAbGroup":
        return cls(free_rank, invariant_factors_from_orders(orders))

    @classmethod
    def zero(cls) -> "FgAbGroup":
        return cls()

    @classmethod
    def Z(cls, rank: int = 1) -> "FgAbGroup":
        return cls(rank)

    @classmethod
    def cyclic(cls, m: int) -> "FgAbGroup":
        return cls.from_orders(0, [m]) if m else cls(1)

    @classmethod
    def parse(cls, spec: str) -> "FgAbGroup":
        """Parse ``"Z^2 + Z/4 + Z/6"``; ``"0"`` is the trivial group."""
        spec = spec.strip()
        if spec in ("", "0"):
            return cls()
        rank, orders = 0, []
        for term in spec.split("+"):
            term = term.strip().replace(" ", "")
            if term == "0":
                continue
            if term == "Z":
                rank += 1
            elif term.startswith("Z^"):
                rank += int(term[2:])
            elif term.startswith("Z/"):
                m = int(term[2:])
                if m == 0:
                    rank += 1
                elif m > 1:
                    orders.append(m)
                elif m < 0:
                    raise ValueError(f"bad group term {term!r}")
            else:
                raise ValueError(f"bad group term {term!r}")
        return cls.from_orders(rank, orders)

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.invariant_factors

    def order(self) -> int:
        if not self.is_finite:
            raise NotFinite("infinite group has no finite order")
        return math.prod(self.invariant_factors)

    def torsion(self) -> "FgAbGroup":
        return FgAbGroup(0, self.invariant_factors)

    def __add__(self, other: "FgAbGroup") -> "FgAbGroup":
        return FgAbGroup.from_orders(self.free_rank + other.free_rank,
                                     self.invariant_factors + other.invariant_factors)

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.invariant_factors)
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.invariant_factors)}

    @classmethod
    def from_json(cls, data: dict) -> "FgAbGroup":
        return cls.from_orders(int(data["free_rank"]), data.get("torsion", []))


def dual_finite_group(G: FgAbGroup) -> FgAbGroup:
    """Pontryagin dual Hom(G, Q/Z) of a finite group (isomorphism class)."""
    if not G.is_finite:
        raise NotFinite("not-finite")
    return FgAbGroup(0, G.invariant_factors)


# ----------------------------------------------------------------------
# Smith normal form
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class SmithForm:
    diagonal: tuple[int, ...]
    U: IntMatrix | None = None
    V: IntMatrix | None = None

    @property
    def rank(self) -> int:
        return len(self.diagonal)


def _dense_smith(A: list[list[int]], m: int, n: int, track: bool):
    """Dense SNF by pivoting on the smallest entry.

    Returns (diag, U, V) with U A V = diag, U and V unimodular (as dense lists)
    when ``track`` is set.
    """
    A = [row[:] for row in A]
    U = [[int(i == j) for j in range(m)] for i in range(m)] if track else None
    V = [[int(i == j) for j in range(n)] for i in range(n)] if track else None

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        if track:
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        if track:
            for row in V:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst -= q * row_src
        if q:
            ra, rs = A[dst], A[src]
            for k in range(n):
                if rs[k]:
                    ra[k] -= q * rs[k]
            if track:
                ua, us = U[dst], U[src]
                for k in range(m):
                    if us[k]:
                        ua[k] -= q * us[k]

    def add_col(dst, src, q):  # col_dst -= q * col_src
        if q:
            for row in A:
                if row[src]:
                    row[dst] -= q * row[src]
            if track:
                for row in V:
                    if row[src]:
                        row[dst] -= q * row[src]

    diag = []
    t = 0
    while t < min(m, n):
        # smallest nonzero entry in the trailing block
        best = None
        for i in range(t, m):
            row = A[i]
            for j in range(t, n):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = A[t][t]
            done = True
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // p
                    add_row(i, t, q)
                    if A[i][t]:
                        done = False
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // p
                    add_col(j, t, q)
                    if A[t][j]:
                        done = False
            if done:
                # divisibility of the trailing block
                bad = None
                for i in range(t + 1, m):
                    for j in range(t + 1, n):
                        if A[i][j] % p:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                add_row(t, bad, -1)
                continue
            # move the smallest remaining entry of row/col t into the pivot
            best = (abs(p), t, t)
            for i in range(t + 1, m):
                if A[i][t] and abs(A[i][t]) < best[0]:
                    best = (abs(A[i][t]), i, t)
            for j in range(t + 1, n):
                if A[t][j] and abs(A[t][j]) < best[0]:
                    best = (abs(A[t][j]), t, j)
            _, i, j = best
            swap_rows(t, i)
            swap_cols(t, j)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            if track:
                U[t] = [-x for x in U[t]]
        diag.append(A[t][t])
        t += 1
    return diag, U, V


def smith_normal_form(M: IntMatrix, transforms: bool = False) -> SmithForm:
    """Smith normal form ``U M V = diag(D)``; D lists the nonzero diagonal.

    Transforms are computed only on request (dense path).  Without transforms,
    sparse inputs go through the fill-reducing sparse eliminator.
    """
    m, n = M.shape
    if m == 0 or n == 0 or M.is_zero():
        if transforms:
            return SmithForm((), IntMatrix.identity(m), IntMatrix.identity(n))
        return SmithForm(())
    if transforms:
        diag, U, V = _dense_smith(M.to_dense(), m, n, True)
        return SmithForm(tuple(diag), IntMatrix.from_dense(U, m), IntMatrix.from_dense(V, n))
    if M.density > DENSE_THRESHOLD and m * n <= 250_000:
        diag, _, _ = _dense_smith(M.to_dense(), m, n, False)
        return SmithForm(tuple(diag))
    return SmithForm(tuple(sparse.elementary_divisors(M.columns(), m)))


def rank(M: IntMatrix) -> int:
    if M.is_zero():
        return 0
    return sparse.rank(M.columns(), M.rows)


def cokernel_structure(M: IntMatrix) -> FgAbGroup:
    """Z^rows / im(M)."""
    D = smith_normal_form(M).diagonal
    return FgAbGroup.from_orders(M.rows - len(D), [d for d in D if d > 1])


# ----------------------------------------------------------------------
# Hermite form and kernels
# ----------------------------------------------------------------------

def column_hermite(M: IntMatrix) -> tuple[list[list[int]], list[list[int]], int]:
    """Column-style Hermite reduction ``H = M V``.

    Returns dense (H, V, r): the first r columns of H are in echelon form with
    positive pivots and reduced entries to the left of each pivot; the
    remaining columns of H are zero, so the last ``cols - r`` columns of V
    are a basis of ker M.
    """
    m, n = M.shape
    H = M.to_dense()
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def col_op(dst, src, q):  # col dst -= q col src
        if q:
            for row in H:
                if row[src]:
                    row[dst] -= q * row[src]
            for row in V:
                if row[src]:
                    row[dst] -= q * row[src]

    def swap(a, b):
        if a != b:
            for row in H:
                row[a], row[b] = row[b], row[a]
            for row in V:
                row[a], row[b] = row[b], row[a]

    def negate(a):
        for row in H:
            row[a] = -row[a]
        for row in V:
            row[a] = -row[a]

    r = 0
    pivots = []
    for i in range(m):
        if r == n:
            break
        while True:
            nz = [j for j in range(r, n) if H[i][j]]
            if not nz:
                break
            j = min(nz, key=lambda j: abs(H[i][j]))
            swap(r, j)
            if len(nz) == 1:
                break
            p = H[i][r]
            for j in range(r + 1, n):
                if H[i][j]:
                    col_op(j, r, H[i][j] // p)
        if any(H[i][j] for j in range(r, n)):
            if H[i][r] < 0:
                negate(r)
            p = H[i][r]
            for j in range(r):
                col_op(j, r, H[i][j] // p)
            pivots.append(i)
            r += 1
    return H, V, r


def kernel_basis(M: IntMatrix) -> IntMatrix:
    """Integral basis (as columns) of ker M, via column Hermite form."""
    n = M.cols
    if M.rows == 0 or M.is_zero():
        return IntMatrix.identity(n)
    _, V, r = column_hermite(M)
    return IntMatrix.from_dense([row[r:] for row in V], n - r)


def image_basis(M: IntMatrix) -> IntMatrix:
    H, _, r = column_hermite(M)
    return IntMatrix.from_dense([row[:r] for row in H], r)


def solve_in_basis(B: IntMatrix, Y: IntMatrix) -> IntMatrix:
    """Integer X with B X = Y, for B with independent columns; raises if none."""
    H, V, r = column_hermite(B)
    if r != B.cols:
        raise ValueError("basis columns are dependent")
    # B V = H with H in column echelon form; solve H Z = Y then X = V Z.
    pivots = []
    for j in range(r):
        i = next(i for i in range(B.rows) if H[i][j])
        pivots.append(i)
    out_cols = []
    for y in Y.columns():
        vec = [y.get(i, 0) for i in range(B.rows)]
        z = [0] * r
        for j in range(r):
            i = pivots[j]
            q, rem = divmod(vec[i], H[i][j])
            if rem:
                raise ValueError("vector not in the lattice spanned by the basis")
            z[j] = q
            if q:
                for k in range(B.rows):
                    if H[k][j]:
                        vec[k] -= q * H[k][j]
        if any(vec):
            raise ValueError("vector not in the span of the basis")
        x = [sum(V[a][j] * z[j] for j in range(r)) for a in range(B.cols)]
        out_cols.append({a: v for a, v in enumerate(x) if v})
    return IntMatrix.from_columns(B.cols, out_cols)


def determinant(M: IntMatrix) -> int:
    """Bareiss fraction-free determinant."""
    n = M.rows
    if n != M.cols:
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    A = M.to_dense()
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k]), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def unimodular_completion(v: Sequence[int]) -> IntMatrix:
    """Unimodular U with U v = e_0, for a primitive vector v."""
    n = len(v)
    col = IntMatrix.from_dense([[x] for x in v], 1)
    snf = smith_normal_form(col, transforms=True)
    if snf.diagonal != (1,):
        raise PointingNotPrimitive("pointing-not-primitive")
    # U col V = e_0 with V = [+-1]
    U = snf.U
    if snf.V[0, 0] == -1:
        U = U.scale(-1)
    return U


def inverse_unimodular(U: IntMatrix) -> IntMatrix:
    n = U.rows
    return solve_in_basis(U, IntMatrix.identity(n))


# ----------------------------------------------------------------------
# cochain complexes
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class LatticeCochainComplex:
    """C^a -> C^{a+1} -> ... -> C^b with differentials d^i of shape r_{i+1} x r_i."""

    start: int
    ranks: tuple[int, ...]
    differentials: tuple[IntMatrix, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "ranks", tuple(self.ranks))
        object.__setattr__(self, "differentials", tuple(self.differentials))
        if len(self.differentials) != max(len(self.ranks) - 1, 0):
            raise ValueError("need one differential between each pair of consecutive degrees")
        for k, d in enumerate(self.differentials):
            if d.shape != (self.ranks[k + 1], self.ranks[k]):
                raise ValueError(f"differential {self.start + k} has shape {d.shape}, "
                                 f"expected {(self.ranks[k + 1], self.ranks[k])}")
        for k in range(len(self.differentials) - 1):
            if not (self.differentials[k + 1] @ self.differentials[k]).is_zero():
                raise InvariantViolation(f"d∘d != 0 at degree {self.start + k}")

    @property
    def end(self) -> int:
        return self.start + len(self.ranks) - 1

    def rank_at(self, i: int) -> int:
        if self.start <= i <= self.end:
            return self.ranks[i - self.start]
        return 0

    def differential(self, i: int) -> IntMatrix:
        """d^i : C^i -> C^{i+1} (zero matrix outside the stored range)."""
        if self.start <= i < self.end:
            return self.differentials[i - self.start]
        return IntMatrix.zeros(self.rank_at(i + 1), self.rank_at(i))

    @classmethod
    def from_dense(cls, start: int, ranks: Sequence[int], diffs: Sequence[Sequence[Sequence[int]]]):
        mats = [IntMatrix.from_dense(d, ranks[k]) if ranks[k + 1] else IntMatrix.zeros(0, ranks[k])
                for k, d in enumerate(diffs)]
        return cls(start, tuple(ranks), tuple(mats))

    def change_of_basis(self, bases: Sequence[IntMatrix]) -> "LatticeCochainComplex":
        """Conjugate every differential by the given unimodular matrices."""
        invs = [inverse_unimodular(B) for B in bases]
        diffs = [bases[k + 1] @ d @ invs[k] for k, d in enumerate(self.differentials)]
        return LatticeCochainComplex(self.start, self.ranks, tuple(diffs))


def complex_cohomology(C: LatticeCochainComplex, i: int, method: str = "kernel") -> FgAbGroup:
    """H^i(C) = ker d^i / im d^{i-1}.

    ``method="kernel"`` restricts d^{i-1} to a Hermite basis of ker d^i and
    takes the cokernel.  ``method="rank"`` uses free rank
    ``r_i - rank d^i - rank d^{i-1}`` and the SNF torsion of d^{i-1}; both give
    the same group (torsion of coker d^{i-1} always lies in ker d^i).
    """
    if not (C.start <= i <= C.end):
        raise DegreeOutOfRange("degree-out-of-range")
    d_out = C.differential(i)
    d_in = C.differential(i - 1)
    if method == "rank":
        return cohomology_from_differentials(C.rank_at(i), d_in, d_out)
    K = kernel_basis(d_out)
    if K.cols == 0:
        return FgAbGroup()
    restricted = solve_in_basis(K, d_in) if d_in.cols else IntMatrix.zeros(K.cols, 0)
    return cokernel_structure(restricted)


def cohomology_from_differentials(dim: int, d_in: IntMatrix, d_out: IntMatrix) -> FgAbGroup:
    r_out = rank(d_out)
    D = smith_normal_form(d_in).diagonal
    return FgAbGroup.from_orders(dim - r_out - len(D), [d for d in D if d > 1])


# ----------------------------------------------------------------------
# exterior powers
# ----------------------------------------------------------------------

def exterior_power(f: IntMatrix, k: int) -> IntMatrix:
    """Matrix of Λ^k f in the lexicographic k-subset bases (entries are k×k minors)."""
    if k < 0:
        raise ValueError("negative exterior degree")
    src = list(itertools.combinations(range(f.cols), k))
    tgt = list(itertools.combinations(range(f.rows), k))
    dense = f.to_dense()
    ents = []
    for j, J in enumerate(src):
        for i, I in enumerate(tgt):
            minor = IntMatrix.from_dense([[dense[a][b] for b in J] for a in I], k) if k else None
            v = determinant(minor) if k else 1
            if v:
                ents.append((i, j, v))
    return IntMatrix(len(tgt), len(src), ents)


def gcd_list(xs: Iterable[int]) -> int:
    return reduce(math.gcd, xs, 0)
