import random

import pytest

from hmsbench.algebra import ThetaMatrix, UnitScalar
from hmsbench.bside import (
    ExceptionalAlgebraSpec,
    build_B,
    build_C,
    build_F,
    hirzebruch_top_dim,
    q_invariant,
    realize_q,
    rescale_theta,
)
from hmsbench.dgcat import GaugeCertificate, GaugeTransform, gauge_match


def test_spec_validation():
    with pytest.raises(ValueError):
        ExceptionalAlgebraSpec((2, 2, 2))
    with pytest.raises(ValueError):
        ExceptionalAlgebraSpec((1, 0, 2))
    with pytest.raises(ValueError):
        ExceptionalAlgebraSpec((1, 1, 1), window=(0, 2, 1))
    assert ExceptionalAlgebraSpec((1, 2, 3)).gorenstein == 6


def test_B_hom_dimensions():
    B = build_B((1, 2, 3))
    assert len(B.objects) == 6
    # Hom(P_i, P_j) = (S)_{j-i}
    dims = {1: 1, 2: 2, 3: 3, 4: 4, 5: 5}
    for i in range(6):
        for j in range(i + 1, 6):
            assert B.hom_dim(i, j) == dims[j - i]


def test_C_is_reversed_exterior():
    C = build_C((1, 2, 3))
    assert C.objects[0] == "w5" and C.objects[-1] == "w0"
    # morphisms of C have degree equal to the number of exterior letters
    for g in C.generators:
        assert g.degree == sum(C.meta["monomials"][g.name])


def test_q_invariant_and_realize():
    for w in [(1, 1, 1), (1, 2, 3), (2, 3, 5), (4, 2, 1)]:
        for target in [2, -3, "q", UnitScalar.make(-6, {"s": 2})]:
            th = realize_q(w, target)
            assert q_invariant(th, w) == UnitScalar.coerce(target)
    with pytest.raises(ValueError):
        realize_q((2, 4, 6), 2)


def test_rescaling_preserves_q_and_category():
    rng = random.Random(4)
    w = (1, 2, 3)
    th = ThetaMatrix.random_constant(3, rng)
    th2 = rescale_theta(th, [2, -3, 5], w)
    assert q_invariant(th, w) == q_invariant(th2, w)
    assert isinstance(gauge_match(build_C(w, th), build_C(w, th2)), GaugeTransform)


def test_gauge_equivalence_iff_same_q():
    rng = random.Random(9)
    w = (1, 2, 3)
    for _ in range(15):
        t1, t2 = ThetaMatrix.random_constant(3, rng), ThetaMatrix.random_constant(3, rng)
        same = q_invariant(t1, w) == q_invariant(t2, w)
        res = gauge_match(build_C(w, t1), build_C(w, t2))
        assert isinstance(res, GaugeTransform) == same
        if not same:
            assert isinstance(res, GaugeCertificate)


def test_hirzebruch_corner():
    F = build_F(3)
    assert F.objects == ["P0", "P1", "P3", "P4"]
    # S_3 = four monomials in x, y plus z; S_4 = five plus zx, zy
    assert [F.hom_dim(0, j) for j in (1, 2, 3)] == [2, 5, 7]
    # dim S(1,1,n)_{n+1} = n + 4 (monomials x^i y^{n+1-i} and z x, z y)
    for n in range(2, 9):
        assert hirzebruch_top_dim(n) == n + 4
    with pytest.raises(ValueError):
        build_F(1)
