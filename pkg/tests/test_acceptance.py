"""Acceptance criteria, one test each, printing a PASS/FAIL line with timing.

Run with ``pytest tests/test_acceptance.py -v``; the verdict lines go straight
to the terminal even when output capture is on.
"""

import math
import random
import time
from contextlib import contextmanager
from functools import lru_cache

import pytest

from binring import binomial as B
from binring.em import em_cohomology, em_cohomology_report, resolution_complex, single_degree_complex, \
    truncated_bin_cohomology
from binring.fibration import CellComplex, CellularLatticeSheaf, circle_bundle_model, fibration_cohomology, \
    split_model
from binring.linalg import FgAbGroup, IntMatrix, cokernel_structure
from binring.torsion import cyclotomic_phi_oracle, phi
from oracles import (circle_bundle_over_sphere, cochain_cohomology, cp_cochains, klein_cochains, kz3_cohomology,
                     rp_infinity_cochains, torus_cochains)

CASES = 200


def pairs(groups):
    return [(g.free_rank, g.invariant_factors) for g in groups]


@pytest.fixture
def verdict(capsys):
    @contextmanager
    def run(label, budget):
        start = time.perf_counter()
        failure = None
        try:
            yield
        except AssertionError as exc:
            failure = exc
        elapsed = time.perf_counter() - start
        over = elapsed > budget
        status = "FAIL" if failure or over else "PASS"
        note = f" over budget {budget:.0f}s" if over else ""
        detail = f": {str(failure).splitlines()[0]}" if failure else ""
        with capsys.disabled():
            print(f"\n{status} {label} ({elapsed:.1f}s){note}{detail}")
        if failure:
            raise failure
        assert not over, f"{label} took {elapsed:.1f}s, budget {budget}s"
    return run


def test_criterion_01_circle(verdict):
    with verdict("1 circle: Z,Z,0,0 for t=1..6", 1):
        C = single_degree_complex(1)
        expected = [(1, ()), (1, ()), (0, ()), (0, ())]
        for t in range(1, 7):
            assert pairs(truncated_bin_cohomology(C, t, i) for i in range(4)) == expected, f"t={t}"


def test_criterion_02_kz2(verdict):
    with verdict("2 K(Z,2) degrees 0..6 vs CP^3 cells", 300):
        expected = cochain_cohomology(*cp_cochains(3))
        assert pairs(em_cohomology(FgAbGroup(1), 2, i) for i in range(7)) == expected


def test_criterion_03_rp_infinity(verdict):
    with verdict("3 K(Z/2,1) degrees 0..5 vs RP^inf cells", 120):
        expected = cochain_cohomology(*rp_infinity_cochains(6))[:6]
        assert pairs(em_cohomology(FgAbGroup.cyclic(2), 1, i) for i in range(6)) == expected


def test_criterion_04_kz3(verdict):
    with verdict("4 K(Z,3) H^3..H^5 (mandatory)", 600):
        expected = kz3_cohomology(6)
        got = pairs(em_cohomology(FgAbGroup(1), 3, i) for i in range(3, 6))
        assert got == expected[3:6] == [(1, ()), (0, ()), (0, ())]


def test_criterion_04_kz3_h6_stretch(verdict):
    # the default policy would compare t = 6 and 7, far past desk scale; t = 4 is
    # checked against t = 5 instead, and both must match the bar construction
    with verdict("4 K(Z,3) H^6 = Z/2 stretch (t=4 checked at t=5)", 1800):
        res = em_cohomology_report(FgAbGroup(1), 3, 6, trunc=4)
        assert (res.trunc, res.checked_trunc) == (4, 5)
        assert pairs([res.group]) == [kz3_cohomology(6)[6]] == [(0, (2,))]


def test_criterion_05_torsion_functors(verdict):
    with verdict("5 Phi^t(Z/2) = Z/2^t, cyclotomic agreement and orders", 10):
        for t in range(9):
            assert phi(FgAbGroup.cyclic(2), t) == FgAbGroup.from_orders(0, [2 ** t] if t else []), f"t={t}"
        for p in (2, 3, 5):
            for t in range(7):
                got = phi(FgAbGroup.cyclic(p), t)
                assert got == cyclotomic_phi_oracle(p, t), f"p={p} t={t}"
                assert got.order() == p ** t, f"p={p} t={t}"


def test_criterion_06_two_sided_validation(verdict):
    with verdict("6 resolutions: H^1 = Phi^t, H^0 = Z, H^{>=2} = 0", 120):
        problems = []
        for spec in ("Z/2", "Z/3", "Z/4", "Z/2 + Z/2"):
            A = FgAbGroup.parse(spec)
            C = resolution_complex(A)
            for t in range(1, 5):
                if truncated_bin_cohomology(C, t, 0) != FgAbGroup(1):
                    problems.append(f"H^0 {spec} t={t}")
                if truncated_bin_cohomology(C, t, 1) != phi(A, t):
                    problems.append(f"H^1 {spec} t={t}")
                for i in (2, 3):
                    G = truncated_bin_cohomology(C, t, i)
                    if not G.is_zero:
                        problems.append(f"H^{i}({spec}) = {G} at t={t}")
        assert not problems, "; ".join(problems)


# -- criterion 7 ------------------------------------------------------------

def random_element(rng, max_rank=2, max_trunc=3, bound=3):
    alg = B.TruncatedBinAlgebra(rng.randint(1, max_rank), rng.randint(0, max_trunc))
    return alg.element([rng.randint(-bound, bound) for _ in range(alg.dim)])


def random_matrix(rng, rows, cols):
    return IntMatrix.from_dense([[rng.randint(-3, 3) for _ in range(cols)] for _ in range(rows)], cols)


@lru_cache(maxsize=None)
def basis_coproduct(rank, trunc, k):
    return B.comultiply(B.TruncatedBinAlgebra(rank, trunc).basis_element(k))


def coassociative(e):
    left, right = {}, {}
    for (k, l), c in B.comultiply(e).items():
        for (k1, k2), c2 in basis_coproduct(e.rank, e.trunc, k).items():
            left[(k1, k2, l)] = left.get((k1, k2, l), 0) + c * c2
        for (l1, l2), c2 in basis_coproduct(e.rank, e.trunc, l).items():
            right[(k, l1, l2)] = right.get((k, l1, l2), 0) + c * c2
    return {k: v for k, v in left.items() if v} == {k: v for k, v in right.items() if v}


def counital(e):
    alg = B.TruncatedBinAlgebra(e.rank, e.trunc)
    left, right = {}, {}
    for (k, l), c in B.comultiply(e).items():
        left[l] = left.get(l, 0) + c * B.counit(alg.basis_element(k))
        right[k] = right.get(k, 0) + c * B.counit(alg.basis_element(l))
    return alg.element(left) == e == alg.element(right)


def antipodal(e):
    alg, doubled = B.TruncatedBinAlgebra(e.rank, e.trunc), B.TruncatedBinAlgebra(e.rank, 2 * e.trunc)
    total = doubled.zero()
    for (a, b), c in B.comultiply(e).items():
        total = total + B.multiply(B.antipode(alg.basis_element(a)), alg.basis_element(b)).scale(c)
    return total == doubled.one().scale(B.counit(e))


@lru_cache(maxsize=None)
def unit_routes(r, n):
    return (B.monad_compose(r, n, 1) @ B.linear_inclusion(r, n),
            B.monad_compose(r, 1, n) @ B.induced_map(B.unit_map(r), n))


@lru_cache(maxsize=None)
def associativity_routes(l, m, n):
    inner_dim = B.TruncatedBinAlgebra(1, n).dim
    return (B.monad_compose(1, n, l * m) @ B.monad_compose(inner_dim, m, l),
            B.monad_compose(1, m * n, l) @ B.induced_map(B.monad_compose(1, n, m), l))


def embedded(first_rank, second_rank, trunc, which):
    r = first_rank + second_rank
    offset, size = (0, first_rank) if which == 0 else (first_rank, second_rank)
    return B.induced_map(IntMatrix(r, size, [(offset + i, i, 1) for i in range(size)]), trunc)


def monoidal(rng):
    # Bin(V1) ⊗ Bin(V2) → Bin(V1 + V2) sends k ⊗ l to the basis element k + l
    r1, r2, t1, t2 = rng.randint(1, 2), rng.randint(1, 2), rng.randint(0, 3), rng.randint(0, 3)
    A1, A2 = B.TruncatedBinAlgebra(r1, t1), B.TruncatedBinAlgebra(r2, t2)
    a = A1.element([rng.randint(-3, 3) for _ in range(A1.dim)])
    b = A2.element([rng.randint(-3, 3) for _ in range(A2.dim)])
    P1, P2 = embedded(r1, r2, t1, 0), embedded(r1, r2, t2, 1)
    big1, big2 = B.TruncatedBinAlgebra(r1 + r2, t1), B.TruncatedBinAlgebra(r1 + r2, t2)
    prod = B.multiply(big1.element(P1.apply(list(a.coords))), big2.element(P2.apply(list(b.coords))))
    expected = {k + l: x * y for k, x in a.as_dict().items() for l, y in b.as_dict().items() if x * y}
    return prod.as_dict() == expected


def test_criterion_07_binomial_properties(verdict):
    with verdict(f"7 binomial algebra property suite ({CASES} random cases each)", 60):
        rng = random.Random(20261016)
        failures = []

        def check(name, ok):
            if not ok:
                failures.append(name)

        for _ in range(CASES):
            e = random_element(rng)
            check("mahler round trip", B.mahler_expand(e, e.rank, e.trunc) == e)
            check("coassociativity", coassociative(e))
            check("counit", counital(e))
            check("antipode", antipodal(e))
            a, b = random_element(rng, max_rank=1, max_trunc=4), random_element(rng, max_rank=1, max_trunc=4)
            check("ev_1 ring map", B.multiply(a, b)((1,)) == a((1,)) * b((1,)))
            dims = [rng.randint(1, 3) for _ in range(3)]
            t = rng.randint(0, 3)
            f, g = random_matrix(rng, dims[1], dims[0]), random_matrix(rng, dims[2], dims[1])
            check("functoriality", B.induced_map(g @ f, t) == B.induced_map(g, t) @ B.induced_map(f, t))
            r, n = rng.randint(1, 2), rng.randint(1, 3)
            v = [rng.randint(-5, 5) for _ in range(B.TruncatedBinAlgebra(r, n).dim)]
            check("monad unit", all(route.apply(v) == v for route in unit_routes(r, n)))
            l, m, n = (rng.randint(1, 2) for _ in range(3))
            outer, inner = associativity_routes(l, m, n)
            w = [rng.randint(-5, 5) for _ in range(outer.cols)]
            check("monad associativity", outer.apply(w) == inner.apply(w))
            check("monoidality", monoidal(rng))
        assert not failures, f"{len(failures)} failures: {sorted(set(failures))}"


def test_criterion_08_mod_pn_periodicity(verdict):
    with verdict("8 mod p^n periods and the power congruence", 10):
        for p in (2, 3):
            for n in range(1, 4):
                for k in range(9):
                    s = next(s for s in range(10) if p ** s > k)
                    P = B.mod_pn_period(k, p, n)
                    assert p ** (n + s - 1) % P == 0, f"p={p} n={n} k={k}"
                    assert P == B.scan_period(k, p, n), f"p={p} n={n} k={k}"
                for s in range(8):
                    if p ** (n - 1 + s) <= 2 ** 7:
                        assert B.congruence_holds(p, n, s), f"p={p} n={n} s={s}"


def test_criterion_09_fibrations(verdict):
    with verdict("9 torus, Klein bottle and circle bundles over S^2", 300):
        circle = CellComplex.circle(3)
        torus = split_model(circle, CellularLatticeSheaf.constant(circle))
        assert pairs(fibration_cohomology(torus, i).group for i in range(3)) == cochain_cohomology(*torus_cochains())
        flip = CellularLatticeSheaf.circle_local_system(circle, IntMatrix.from_dense([[-1]]))
        klein = split_model(circle, flip)
        assert pairs(fibration_cohomology(klein, i).group for i in range(3)) == cochain_cohomology(*klein_cochains())
        sphere = CellComplex.sphere2()
        for k in range(4):
            E = circle_bundle_model(sphere, {sphere.cells(2)[0]: k} if k else {})
            got = pairs(fibration_cohomology(E, i).group for i in range(4))
            assert got == cochain_cohomology(*circle_bundle_over_sphere(k)), f"k={k}"


def test_criterion_10_norm_map(verdict):
    with verdict("10 coker(Sym^t -> Gamma^t) = Z/t!", 1):
        for t in range(7):
            top = B.gr_projection(B.sym_to_bin({(t,): 1}, 1, t))
            M = IntMatrix.from_dense([[top.get((t,), 0)]], 1)
            assert cokernel_structure(M) == FgAbGroup.from_orders(0, [math.factorial(t)]), f"t={t}"
