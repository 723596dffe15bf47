import pytest

from hmsbench.algebra import cohomology_dim
from hmsbench.mutation import (
    ChainMap,
    b_algebra,
    cone,
    dual_collection,
    fn_vanishing_check,
    hom_complex,
    is_exceptional,
    iterated_left,
    koszul_simple,
    left_mutate,
    left_mutation_at,
    profile,
    projective,
    projectives,
    right_mutate,
    right_mutation_at,
    shift,
)


@pytest.fixture(scope="module")
def plane():
    alg = b_algebra((1, 1, 1))
    return alg, projectives(alg)


def test_projectives_are_exceptional(plane):
    alg, P = plane
    assert all(is_exceptional(X) for X in P)
    assert hom_complex(P[0], P[2]).nonzero() == {0: 6}
    assert hom_complex(P[2], P[0]).nonzero() == {}


def test_cone_of_identity_is_acyclic(plane):
    alg, P = plane
    f = ChainMap(P[1], P[1], {0: {(0, 0): alg.identity(1)}})
    C = cone(f)
    for j in range(3):
        assert hom_complex(projective(alg, j), C).nonzero() == {}


def test_left_mutation_on_the_line():
    # on P(1,1), L_O O(1) is the kernel O(-1) of O^2 -> O(1): Hom^k(O(j), .) = H^k(O(-1-j))
    alg = b_algebra((1, 1))
    P = projectives(alg)
    X = left_mutate(P[0], P[1])
    assert X.terms == {0: [0, 0], 1: [1]}
    for j in range(2):
        got = hom_complex(projective(alg, j), X).nonzero()
        want = {k: cohomology_dim((1, 1), None, k, -1 - j) for k in range(2)}
        assert got == {k: v for k, v in want.items() if v}


def test_left_mutation_on_the_plane(plane):
    # on P2 the kernel of O^3 -> O(1) is Omega(1); Bott: only H^1(Omega) = 1 survives
    alg, P = plane
    X = left_mutate(P[0], P[1])
    assert X.terms == {0: [0, 0, 0], 1: [1]}
    assert [hom_complex(projective(alg, j), X).nonzero() for j in range(3)] == [{}, {1: 1}, {}]


@pytest.mark.parametrize("weights", [(1, 1, 1), (1, 1, 2)])
def test_dual_collection_matches_simples(weights):
    alg = b_algebra(weights)
    P = projectives(alg)
    for i in range(len(P)):
        X = shift(iterated_left(P, i), i)
        Q = koszul_simple(alg, i)
        assert profile(X) == profile(Q)
        assert profile(Q)[i] == {0: 1}
        assert all(profile(Q)[j] == {} for j in range(len(P)) if j != i)
    assert len(dual_collection(P)) == len(P)


def test_mutations_preserve_exceptionality(plane):
    alg, P = plane
    col = left_mutation_at(P, 0)
    assert all(is_exceptional(X) for X in col)
    col = right_mutation_at(P, 1)
    assert all(is_exceptional(X) for X in col)


def test_right_inverts_left(plane):
    alg, P = plane
    for i in range(2):
        Y = right_mutate(left_mutate(P[i], P[i + 1]), P[i])
        assert profile(Y) == profile(P[i + 1])


def test_braid_relation(plane):
    alg, P = plane
    lhs = left_mutate(P[0], left_mutate(P[1], P[2]))
    rhs = left_mutate(left_mutate(P[0], P[1]), left_mutate(P[0], P[2]))
    assert profile(lhs) == profile(rhs)


@pytest.mark.parametrize("n,k", [(4, 3), (5, 3), (5, 4)])
def test_fn_vanishing(n, k):
    rep = fn_vanishing_check(n, k)
    assert rep.passed, rep.first_failure


def test_fn_bad_arguments():
    with pytest.raises(ValueError):
        fn_vanishing_check(4, 2)
