import pytest
from hypothesis import given, settings, strategies as st

from binring.errors import NotFinite, NotPrime
from binring.linalg import FgAbGroup
from binring.torsion import GroupAlgebraPresentation, cyclotomic_phi_oracle, phi, psi
from oracles import augmentation_quotient


def G(spec):
    return FgAbGroup.parse(spec)


def test_psi_examples():
    assert psi(FgAbGroup(), 5) == FgAbGroup(1)
    assert psi(G("Z/2"), 3) == G("Z + Z/8")
    assert psi(G("Z/6 + Z/2"), 0) == FgAbGroup(1)
    with pytest.raises(NotFinite):
        psi(G("Z"), 1)


def test_phi_examples():
    for t in range(9):
        assert phi(G("Z/2"), t) == FgAbGroup.from_orders(0, [2 ** t] if t else [])
    assert phi(G("Z/3"), 3) == G("Z/3 + Z/9")
    assert phi(G("Z/4 + Z/2"), 0).is_zero


def test_cyclotomic_examples():
    assert cyclotomic_phi_oracle(2, 3) == G("Z/8")
    assert cyclotomic_phi_oracle(3, 2) == G("Z/3 + Z/3")
    assert cyclotomic_phi_oracle(7, 0).is_zero
    with pytest.raises(NotPrime):
        cyclotomic_phi_oracle(9, 1)


def test_presentation_is_mixed_radix():
    P = GroupAlgebraPresentation((2, 3))
    assert [P.index(g) for g in P.elements()] == list(range(6))
    assert P.add((1, 2), (1, 2)) == (0, 1)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_oracle_agreement_and_order(p):
    for t in range(7):
        got = phi(G(f"Z/{p}"), t)
        assert got == cyclotomic_phi_oracle(p, t)
        assert got.order() == p ** t


@pytest.mark.parametrize("spec,p", [("Z/2", 2), ("Z/3", 3), ("Z/4", 2)])
def test_divisibility_trend(spec, p):
    A = G(spec)
    for t in range(6):
        small, big = phi(A, t), phi(A, t + 1)
        ratio, rem = divmod(big.order(), small.order())
        assert rem == 0
        while ratio % p == 0:
            ratio //= p
        assert ratio == 1
        a, b = small.invariant_factors, big.invariant_factors
        a = (1,) * (len(b) - len(a)) + a
        assert len(a) == len(b) and all(y % x == 0 for x, y in zip(a, b))


@pytest.mark.parametrize("spec", ["Z/2", "Z/3", "Z/4", "Z/2 + Z/2", "Z/6"])
def test_filtration_monotone(spec):
    A = G(spec)
    for t in range(1, 6):
        assert psi(A, t).torsion().order() % psi(A, t - 1).torsion().order() == 0


@settings(max_examples=60)
@given(st.lists(st.integers(2, 6), min_size=1, max_size=2), st.integers(0, 4))
def test_phi_matches_augmentation_oracle(moduli, t):
    A = FgAbGroup.from_orders(0, moduli)
    assert phi(A, t).invariant_factors == augmentation_quotient(tuple(moduli), t)
