"""Sparse integer elimination for rank and elementary divisors.

Matrices arrive as a list of columns, each a ``{row: value}`` dict.  The
eliminator first removes as many unit pivots as it can, choosing pivots by an
approximate Markowitz rule (short column first, then the shortest row among
its unit entries).  A unit pivot contributes a diagonal 1 and needs only
column operations, after which its row and column are dropped.  Whatever is
left is handled by Euclid-style pivoting on the smallest entry.
"""

from __future__ import annotations

import heapq
import math


def _build_rows(cols: list[dict[int, int]]) -> dict[int, set[int]]:
    rows: dict[int, set[int]] = {}
    for c, col in enumerate(cols):
        for r in col:
            s = rows.get(r)
            if s is None:
                rows[r] = {c}
            else:
                s.add(c)
    return rows


def _eliminate_units(cols: list[dict[int, int] | None], rows: dict[int, set[int]]) -> int:
    """Remove unit pivots in place; returns how many were removed."""
    heap = [(len(col), c) for c, col in enumerate(cols) if col]
    heapq.heapify(heap)
    deferred: list[int] = []
    count = 0
    while True:
        while heap:
            length, c = heapq.heappop(heap)
            col = cols[c]
            if col is None:
                continue
            if len(col) != length:
                if col:
                    heapq.heappush(heap, (len(col), c))
                continue
            if not col:
                cols[c] = None
                continue
            best_r, best_len = -1, 0
            for r, v in col.items():
                if v == 1 or v == -1:
                    rl = len(rows[r])
                    if best_r < 0 or rl < best_len:
                        best_r, best_len = r, rl
                        if rl == 1:
                            break
            if best_r < 0:
                deferred.append(c)
                continue
            r = best_r
            v = col[r]
            # clear row r by column operations
            for c2 in rows[r]:
                if c2 == c:
                    continue
                col2 = cols[c2]
                q = col2[r] * v
                for r2, w in col.items():
                    x = col2.get(r2, 0) - q * w
                    if x:
                        if r2 not in col2:
                            rows[r2].add(c2)
                        col2[r2] = x
                    else:
                        del col2[r2]
                        if r2 != r:
                            rows[r2].discard(c2)
                heapq.heappush(heap, (len(col2), c2))
            for r2 in col:
                if r2 != r:
                    rows[r2].discard(c)
            del rows[r]
            cols[c] = None
            count += 1
        # columns that had no unit entry may have gained one through fill
        retry, still = [], []
        for c in deferred:
            col = cols[c]
            if not col:
                continue
            if any(v == 1 or v == -1 for v in col.values()):
                retry.append((len(col), c))
            else:
                still.append(c)
        deferred = still
        if not retry:
            return count
        heap = retry
        heapq.heapify(heap)


def _euclid_pivots(cols: list[dict[int, int] | None], rows: dict[int, set[int]]) -> list[int]:
    """Diagonalize what remains with general pivots; returns |diagonal| entries."""
    diag = []
    live = {c for c, col in enumerate(cols) if col}
    while live:
        # smallest absolute entry overall, ties broken by fill estimate
        best = None
        for c in live:
            col = cols[c]
            for r, v in col.items():
                key = (abs(v), (len(col) - 1) * (len(rows[r]) - 1))
                if best is None or key < best[0]:
                    best = (key, r, c)
        _, r, c = best
        while True:
            p = cols[c][r]
            changed = False
            # reduce row r using column c
            for c2 in list(rows[r]):
                if c2 == c:
                    continue
                col2 = cols[c2]
                q = col2[r] // p
                if q:
                    for r2, w in cols[c].items():
                        x = col2.get(r2, 0) - q * w
                        if x:
                            if r2 not in col2:
                                rows[r2].add(c2)
                            col2[r2] = x
                        else:
                            del col2[r2]
                            rows[r2].discard(c2)
                if r in col2:
                    changed = True
            # reduce column c using row r; row r is not yet clear in general,
            # so row operations touch every column meeting row r
            for r2 in list(cols[c]):
                if r2 == r:
                    continue
                q = cols[c][r2] // p
                if q:
                    for c2 in list(rows[r]):
                        col2 = cols[c2]
                        x = col2.get(r2, 0) - q * col2[r]
                        if x:
                            if r2 not in col2:
                                rows[r2].add(c2)
                            col2[r2] = x
                        else:
                            del col2[r2]
                            rows[r2].discard(c2)
                if r2 in cols[c]:
                    changed = True
            if not changed:
                break
            # move the smallest remaining entry in row r / column c to the pivot
            cand = [(abs(cols[c2][r]), r, c2) for c2 in rows[r]]
            cand += [(abs(v), r2, c) for r2, v in cols[c].items()]
            _, r, c = min(cand)
        diag.append(abs(cols[c][r]))
        for r2 in cols[c]:
            rows[r2].discard(c)
        for c2 in rows[r]:
            if c2 != c:
                cols[c2].pop(r, None)
        del rows[r]
        cols[c] = None
        live.discard(c)
        live = {c2 for c2 in live if cols[c2]}
        for c2 in list(live):
            if not cols[c2]:
                live.discard(c2)
    return diag


def _normalize(units: int, others: list[int]) -> list[int]:
    from binring.linalg import invariant_factors_from_orders

    others = [d for d in others if d]
    big = list(invariant_factors_from_orders([d for d in others if d > 1]))
    ones = units + len(others) - len(big)
    return [1] * ones + big


def elementary_divisors(columns: list[dict[int, int]], nrows: int) -> list[int]:
    """Nonzero Smith diagonal (divisibility chain) of the matrix given by columns.

    The input dicts are consumed.
    """
    cols: list[dict[int, int] | None] = [c if c else None for c in columns]
    rows = _build_rows([c or {} for c in cols])
    units = _eliminate_units(cols, rows)
    rest = _euclid_pivots(cols, rows)
    return _normalize(units, rest)


def rank(columns: list[dict[int, int]], nrows: int) -> int:
    return len(elementary_divisors([dict(c) for c in columns], nrows))


def gcd_of(values) -> int:
    g = 0
    for v in values:
        g = math.gcd(g, v)
    return g
