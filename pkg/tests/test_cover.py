import pytest
from hypothesis import given
from hypothesis import strategies as st

from hmsbench.cover import (
    ArcPath,
    branch_arcs,
    build_cover,
    check_consistency,
    check_offsets,
    closed_form_table,
    coprime_triples,
    intersection_table,
    lift_cycle,
    monodromy_permutation,
    normalize_weights,
    transport,
    arc_svg,
)

TRIPLES = list(coprime_triples(12))


def test_triples_listing():
    assert (1, 1, 1) in TRIPLES and (2, 2, 2) not in TRIPLES
    assert all(sum(w) <= 12 for w in TRIPLES)


@pytest.mark.parametrize("w", TRIPLES[:40])
def test_consistency(w):
    assert check_consistency(build_cover(*w)) == []


def test_origin_monodromy():
    d = build_cover(4, 2, 1)
    assert monodromy_permutation(d, ArcPath.rotation(7)) == (2, 0, 1)  # q -> q - 4 mod 3


def test_branch_transpositions():
    d = build_cover(4, 2, 1)
    for m in range(d.n):
        perm = monodromy_permutation(d, ArcPath.branch_loop(m))
        moved = [q for q in range(3) if perm[q] != q]
        assert sorted(moved) == sorted({m % 3, (m + 2) % 3})


def test_bad_paths_rejected():
    d = build_cover(1, 1, 1)
    with pytest.raises(ValueError):
        transport(d, ArcPath((("radial_out", 2),)), 0)
    with pytest.raises(ValueError):
        build_cover(2, 2, 4)


def test_vanishing_cycle_endpoints():
    d = build_cover(4, 2, 1)
    assert sorted(lift_cycle(d, 0).endpoints) == [1, 5]
    for m in range(d.n):
        for j in branch_arcs(d, m):
            assert m in lift_cycle(d, j).endpoints


@pytest.mark.parametrize("w", TRIPLES)
def test_intersection_table(w):
    (a, b, c), _ = normalize_weights(w)
    t = intersection_table(build_cover(a, b, c))
    assert t.total == 3 * (a + b + c)
    assert sorted((p.name, p.i, p.j) for p in t.points) == closed_form_table(a, b, c)
    assert check_offsets(t) == []


@given(st.sampled_from(TRIPLES))
def test_counts_by_type(w):
    (a, b, c), _ = normalize_weights(w)
    counts = intersection_table(build_cover(a, b, c)).counts()
    assert counts.get("x", 0) == b + c and counts.get("xbar", 0) == a
    assert counts.get("y", 0) == a + c and counts.get("ybar", 0) == b
    assert counts.get("z", 0) == a + b and counts.get("zbar", 0) == c


def test_svg():
    s = arc_svg(build_cover(1, 2, 3))
    assert s.startswith("<svg") and s.count("<path") + s.count("<line") + s.count("<polyline") > 0
