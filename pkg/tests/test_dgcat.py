import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hmsbench.algebra import LaurentPoly, ThetaMatrix, UnitScalar
from hmsbench.bside import build_B, build_C, realize_q
from hmsbench.cli import sklyanin_relations, sklyanin_table
from hmsbench.dgcat import (
    DirectedCategory,
    GaugeCertificate,
    GaugeTransform,
    Generator,
    apply_gauge,
    check_associativity,
    check_degrees,
    gauge_match,
    quadratic_dual,
    tables_equal,
)

LETTERS = {f"{l}{i}": l for l in "xyz" for i in (0, 1)}


def tiny():
    gens = [Generator("f", 0, 1, 0), Generator("g", 1, 2, 0), Generator("h", 0, 2, 0)]
    return DirectedCategory(["A", "B", "C"], gens, {("f", "g"): {"h": LaurentPoly.coerce(3)}})


def test_directedness_enforced():
    with pytest.raises(ValueError):
        DirectedCategory(["A", "B"], [Generator("f", 1, 0, 0)])
    with pytest.raises(ValueError):
        DirectedCategory(["A", "B", "C"], [Generator("f", 0, 1, 0), Generator("g", 0, 2, 0)], {("f", "g"): {}})


def test_json_roundtrip():
    C = build_C((1, 2, 3), ThetaMatrix.generic(3))
    D = DirectedCategory.from_json(C.to_json())
    assert tables_equal(C, D)
    assert C.names() == D.names()


def test_built_categories_are_associative():
    for w in [(1, 1, 1), (1, 2, 3), (2, 3)]:
        th = ThetaMatrix.generic(len(w))
        for C in (build_B(w, th), build_C(w, th)):
            assert check_associativity(C)
            assert check_degrees(C) is None


def test_associativity_failure_is_reported():
    C = build_C((1, 1, 1, 1))
    # an entry out of object 0 that is reused by a longer composite
    p, q = next(k for k in C.m2 if C.gen(k[0]).source == 0 and C.gen(k[1]).target == 2)
    r = next(iter(C.m2[(p, q)]))
    bad = C.with_constant(p, q, r, 7)
    res = check_associativity(bad)
    assert not res.passed and res.triple is not None


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_gauge_roundtrip(seed):
    rng = random.Random(seed)
    C = build_C((1, 1, 1), realize_q((1, 1, 1), "q"))
    g = GaugeTransform.random(C.names(), rng, params=["q"])
    D = apply_gauge(C, g)
    h = gauge_match(C, D)
    assert isinstance(h, GaugeTransform)
    assert tables_equal(apply_gauge(C, h), D)


def test_gauge_is_group_action():
    rng = random.Random(2)
    C = build_C((1, 2, 3), realize_q((1, 2, 3), 6))
    g1 = GaugeTransform.random(C.names(), rng)
    g2 = GaugeTransform.random(C.names(), rng)
    assert tables_equal(apply_gauge(apply_gauge(C, g1), g2), apply_gauge(C, g1.then(g2)))
    assert tables_equal(apply_gauge(apply_gauge(C, g1), g1.inverse()), C)


def test_gauge_certificate_on_invariant_mismatch():
    w = (1, 1, 1)
    C1 = build_C(w, realize_q(w, 3))
    C2 = build_C(w, realize_q(w, 6))
    cert = gauge_match(C1, C2)
    assert isinstance(cert, GaugeCertificate) and not cert
    assert "prime:2" in cert.describe()


def test_gauge_certificate_sign():
    w = (1, 2, 3)
    cert = gauge_match(build_C(w, realize_q(w, 5)), build_C(w, realize_q(w, -5)))
    assert isinstance(cert, GaugeCertificate)
    assert cert.modulus == 2


def test_quadratic_dual_elliptic():
    rng = random.Random(0)
    for _ in range(5):
        a, b, c = (rng.randint(1, 30) for _ in range(3))
        R = quadratic_dual(sklyanin_table(a, b, c), letters=LETTERS)
        assert len(R.rows) == 3
        assert R.span_equals(sklyanin_relations(a, b, c))


def test_quadratic_dual_degenerate_parameters():
    # (a, b, c) = (1, -1, 0) gives the commutative polynomial ring
    R = quadratic_dual(sklyanin_table(1, -1, 0), letters=LETTERS)
    assert R.span_equals([
        {("x", "y"): 1, ("y", "x"): -1},
        {("x", "z"): 1, ("z", "x"): -1},
        {("y", "z"): 1, ("z", "y"): -1},
    ])
    # (1, 1, 0) gives anticommuting variables instead
    R = quadratic_dual(sklyanin_table(1, 1, 0), letters=LETTERS)
    assert R.span_equals([
        {("x", "y"): 1, ("y", "x"): 1},
        {("x", "z"): 1, ("z", "x"): 1},
        {("y", "z"): 1, ("z", "y"): 1},
    ])


def test_quadratic_dual_of_exterior_category_is_symmetric_algebra():
    C = build_C((1, 1, 1))
    letters = {g.name: "xyz"[C.meta["monomials"][g.name].index(1)] for g in C.hom(0, 1) + C.hom(1, 2)}
    R = quadratic_dual(C, letters=letters)
    assert R.span_equals([
        {("x", "y"): 1, ("y", "x"): -1},
        {("x", "z"): 1, ("z", "x"): -1},
        {("y", "z"): 1, ("z", "y"): -1},
    ])


def test_quadratic_dual_needs_surjection():
    with pytest.raises(ValueError):
        quadratic_dual(sklyanin_table(0, 0, 0), letters=LETTERS)
