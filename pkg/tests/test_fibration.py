import math
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from binring.em import single_degree_complex, truncated_bin_cohomology
from binring.errors import InvariantViolation, NotACocycle, PointingNotPrimitive
from binring.fibration import (CellComplex, CellularLatticeSheaf, FibrationComplex, PointedSheafComplex,
                               circle_bundle_model, coaug_bin_stalk, coaug_induced_map, fibration_cohomology,
                               pushforward_cohomology, scene_from_json, sheaf_cohomology, split_model)
from binring.linalg import FgAbGroup, IntMatrix, determinant, unimodular_completion
from oracles import circle_bundle_over_sphere, cochain_cohomology, klein_cochains, torus_cochains

Z, ZERO = FgAbGroup(1), FgAbGroup()
MINUS_ONE = IntMatrix.from_dense([[-1]])


def as_pairs(groups):
    return [(g.free_rank, g.invariant_factors) for g in groups]


def klein(n=3):
    base = CellComplex.circle(n)
    return split_model(base, CellularLatticeSheaf.circle_local_system(base, MINUS_ONE))


def sphere_bundle(k):
    base = CellComplex.sphere2()
    return circle_bundle_model(base, {base.cells(2)[0]: k})


# -- cell complexes and sheaves ----------------------------------------

def test_cell_complex_checks_boundary():
    with pytest.raises(InvariantViolation):
        CellComplex({"v": 0, "w": 0, "e": 1, "f": 2}, {("v", "e"): 1, ("w", "e"): -1, ("e", "f"): 1})


def test_sheaf_cohomology_examples():
    base = CellComplex.circle(3)
    const = CellularLatticeSheaf.constant(base)
    assert [sheaf_cohomology(const, i) for i in (0, 1)] == [Z, Z]
    twisted = CellularLatticeSheaf.circle_local_system(base, MINUS_ONE)
    assert [sheaf_cohomology(twisted, i) for i in (0, 1)] == [ZERO, FgAbGroup.cyclic(2)]
    pt = CellularLatticeSheaf.constant(CellComplex.point())
    assert sheaf_cohomology(pt, 0) == Z


def test_sheaf_functoriality_is_checked():
    base = CellComplex.from_simplices([(0, 1, 2)])
    rest = {k: IntMatrix.identity(1) for k in base.incidence}
    rest[((0,), (0, 1))] = IntMatrix.from_dense([[2]])
    with pytest.raises(InvariantViolation):
        CellularLatticeSheaf(base, {c: 1 for c in base.dims}, rest)


# -- coset function lattices ---------------------------------------------

def test_coaug_stalk_examples():
    for t in range(4):
        assert coaug_bin_stalk(1, (1,), t).dim == 1
        assert coaug_bin_stalk(2, (1, 0), t).dim == t + 1
    assert coaug_bin_stalk(2, (1, 2), 1).dim == 2
    with pytest.raises(PointingNotPrimitive):
        coaug_bin_stalk(2, (2, 4), 1)


@st.composite
def pointed_maps(draw):
    """(V, v) → (W, w) with f(v) = w primitive, plus a point of W^∨ on the coset."""
    r = draw(st.integers(1, 3))
    s = draw(st.integers(1, 3))
    rows = [[draw(st.integers(-2, 2)) for _ in range(r)] for _ in range(s)]
    v = [draw(st.integers(-3, 3)) for _ in range(r)]
    f = IntMatrix.from_dense(rows, r)
    w = f.apply(v)
    if not any(v) or gcd(*v) != 1 or not any(w) or gcd(*w) != 1:
        return None
    # λ with λ(w) = 1, shifted by random multiples of the other completion columns
    U = unimodular_completion(w)
    coeffs = [1] + [draw(st.integers(-3, 3)) for _ in range(s - 1)]
    lam = [sum(U[a, i] * coeffs[a] for a in range(s)) for i in range(s)]
    assert sum(x * y for x, y in zip(lam, w)) == 1
    return f, tuple(v), tuple(w), lam


@settings(max_examples=200)
@given(pointed_maps(), st.integers(0, 3), st.data())
def test_coaug_induced_map_is_precomposition(case, t, data):
    if case is None:
        return
    f, v, w, lam = case
    src, tgt = coaug_bin_stalk(len(v), v, t), coaug_bin_stalk(len(w), w, t)
    M = coaug_induced_map(src, tgt, f)
    j = data.draw(st.integers(0, src.dim - 1))
    image = {tgt.basis[i]: c for i, c in M.column(j).items()}
    pulled = f.T.apply(lam)
    assert tgt.evaluate(image, lam) == src.evaluate({src.basis[j]: 1}, pulled)


def test_coaug_split_case_is_binomial_algebra():
    # (Z + Z^2, (1,0,0)) gives Bin^{≤t}(Z^2); an automorphism fixing the pointing acts invertibly
    t = 3
    stalk = coaug_bin_stalk(3, (1, 0, 0), t)
    assert stalk.dim == 10
    g = IntMatrix.from_dense([[1, 2, -1], [0, 1, 1], [0, 0, 1]])
    M = coaug_induced_map(stalk, stalk, g)
    assert abs(determinant(M)) == 1


# -- pushforward -----------------------------------------------------------

@pytest.mark.parametrize("r", [1, 2, 3])
def test_point_base_is_exterior_algebra(r):
    E = split_model(CellComplex.point(), CellularLatticeSheaf.constant(CellComplex.point(), r))
    got = [fibration_cohomology(E, i).group for i in range(r + 2)]
    assert got == [FgAbGroup(math.comb(r, i)) if math.comb(r, i) else ZERO for i in range(r + 2)]


def test_klein_bottle():
    expected = cochain_cohomology(*klein_cochains())
    assert as_pairs(fibration_cohomology(klein(), i).group for i in range(3)) == expected
    assert fibration_cohomology(klein(), 3).group.is_zero


@pytest.mark.parametrize("k", [0, 1, 2, 3])
def test_circle_bundles_over_sphere(k):
    expected = cochain_cohomology(*circle_bundle_over_sphere(k))
    E = sphere_bundle(k)
    assert as_pairs(fibration_cohomology(E, i).group for i in range(4)) == expected


def test_split_model_examples():
    base = CellComplex.circle(3)
    zero = CellularLatticeSheaf(base, {c: 0 for c in base.dims}, {})
    E = split_model(base, zero)
    const = CellularLatticeSheaf.constant(base)
    assert [pushforward_cohomology(E, 2, i) for i in range(3)] == [sheaf_cohomology(const, i) for i in range(3)]
    torus = split_model(base, const)
    assert as_pairs(fibration_cohomology(torus, i).group for i in range(3)) == cochain_cohomology(*torus_cochains())
    pt = CellComplex.point()
    E = split_model(pt, CellularLatticeSheaf.constant(pt, 2))
    assert [pushforward_cohomology(E, 2, i).free_rank for i in range(3)] == [1, 2, 1]


def test_zero_euler_class_is_split():
    base = CellComplex.sphere2()
    E = circle_bundle_model(base, {})
    split = split_model(base, CellularLatticeSheaf.constant(base))
    for i in range(4):
        assert pushforward_cohomology(E, 3, i) == pushforward_cohomology(split, 3, i)


def test_not_a_cocycle():
    ball = CellComplex.from_simplices([(0, 1, 2, 3)])
    with pytest.raises(NotACocycle):
        circle_bundle_model(ball, {ball.cells(2)[0]: 1})


@pytest.mark.parametrize("r", [1, 2])
@pytest.mark.parametrize("t", [1, 2, 3])
def test_point_base_matches_em(r, t):
    pt = CellComplex.point()
    E = split_model(pt, CellularLatticeSheaf.constant(pt, r))
    for i in range(r + 2):
        assert pushforward_cohomology(E, t, i) == truncated_bin_cohomology(single_degree_complex(1, r), t, i)


SHEAVES = {
    "const1": lambda b: CellularLatticeSheaf.constant(b, 1),
    "twist1": lambda b: CellularLatticeSheaf.circle_local_system(b, MINUS_ONE),
    "const2": lambda b: CellularLatticeSheaf.constant(b, 2),
    "swap2": lambda b: CellularLatticeSheaf.circle_local_system(b, IntMatrix.from_dense([[0, 1], [1, 0]])),
    "shear2": lambda b: CellularLatticeSheaf.circle_local_system(b, IntMatrix.from_dense([[1, 1], [0, 1]])),
}


@pytest.mark.parametrize("name", sorted(SHEAVES))
def test_associated_graded(name):
    base = CellComplex.circle(3)
    L = SHEAVES[name](base)
    E = split_model(base, L)
    for k in range(3):
        F = FibrationComplex(E, 2, graded=k)
        wedge = L.exterior_power(k)
        for i in range(4):
            assert F.cohomology(i) == sheaf_cohomology(wedge, i - k)


def test_homotopy_invariance_of_triangulation():
    for i in range(4):
        for t in (1, 2, 3):
            assert pushforward_cohomology(klein(3), t, i) == pushforward_cohomology(klein(4), t, i)


def test_cohomologous_euler_cocycles():
    base = CellComplex.sphere2()
    faces = base.cells(2)
    k = 2
    for edge in base.cells(1):
        euler = {faces[0]: k}
        for s in base.cofaces(edge):
            euler[s] = euler.get(s, 0) + base.incidence[(edge, s)]
        for i in range(4):
            assert pushforward_cohomology(circle_bundle_model(base, euler), 3, i) == \
                pushforward_cohomology(sphere_bundle(k), 3, i)


@pytest.mark.parametrize("name,build", [("klein", klein), ("lens2", lambda: sphere_bundle(2)),
                                        ("torus", lambda: split_model(CellComplex.circle(3),
                                                                      CellularLatticeSheaf.constant(
                                                                          CellComplex.circle(3))))])
def test_truncation_stability(name, build):
    E = build()
    for i in range(4):
        for t in range(max(i, 1), i + 3):
            assert pushforward_cohomology(E, t, i) == pushforward_cohomology(E, t + 1, i)


# -- pointed complexes and scenes -----------------------------------------

def test_pointed_complex_validation():
    pt = CellComplex.point()
    c = pt.cells(0)[0]
    Z1 = CellularLatticeSheaf.constant(pt, 1)
    Z2 = CellularLatticeSheaf.constant(pt, 2)
    with pytest.raises(PointingNotPrimitive):
        PointedSheafComplex(pt, Z1, Z1, {c: IntMatrix.zeros(1, 1)}, {c: (2,)})
    with pytest.raises(InvariantViolation):
        PointedSheafComplex(pt, Z2, Z1, {c: IntMatrix.zeros(1, 2)}, {c: (1, 0)})
    # d is onto and kills the pointing, so the fiber directions cancel
    E = PointedSheafComplex(pt, Z2, Z1, {c: IntMatrix.from_dense([[3, 1]])}, {c: (1, -3)})
    assert [pushforward_cohomology(E, 2, i) for i in range(3)] == [Z, ZERO, ZERO]


def test_scene_circle_bundle():
    base = CellComplex.sphere2()
    doc = base.to_json()
    doc["euler"] = {"-".join(map(str, base.cells(2)[0])): 3}
    E = scene_from_json(doc)
    assert fibration_cohomology(E, 2).group == FgAbGroup.cyclic(3)


def test_scene_general_model_matches_split():
    base = CellComplex.circle(3)
    doc = base.to_json()
    ids = [c["id"] for c in doc["cells"]]
    last_edge = "-".join(map(str, base.cells(1)[-1]))
    first_face = "-".join(map(str, base.faces(base.cells(1)[-1])[0]))
    restrictions = {f"{f}->{c}": ([[-1]] if (f, c) == (first_face, last_edge) else [[1]])
                    for f, c, _ in doc["incidence"]}
    doc["sheaf"] = {
        "E0": {"constant": 1},
        "E1": {"stalks": {i: 1 for i in ids}, "restrictions": restrictions},
        "d": {},
    }
    doc["pointing"] = {i: [1] for i in ids}
    E = scene_from_json(doc)
    assert [fibration_cohomology(E, i).group for i in range(3)] == [Z, Z, FgAbGroup.cyclic(2)]
    doc2 = dict(doc, sheaf={"stalks": doc["sheaf"]["E1"]["stalks"],
                            "restrictions": [{"from": k.split("->")[0], "to": k.split("->")[1], "matrix": m}
                                             for k, m in restrictions.items()]})
    E2 = scene_from_json(doc2)
    assert [pushforward_cohomology(E2, 2, i) for i in range(3)] == [pushforward_cohomology(E, 2, i) for i in range(3)]
