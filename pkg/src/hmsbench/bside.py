"""B-side categories built from weighted (skew) projective spaces.

``build_B`` gives the endomorphism category of the projectives P_i over the
algebra with Hom(P_i, P_j) = (S_theta)_{j-i}; ``build_C`` gives the
Koszul-dual exterior category, whose objects are emitted in reversed order
so that homs go forward.  In both, m2(p, q) for p: i -> j, q: j -> k is the
algebra product q * p.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from math import gcd
from typing import Sequence

from sympy.core.intfunc import igcdex

from .algebra import (
    EXTERIOR,
    POLYNOMIAL,
    GradedSkewAlgebra,
    LaurentPoly,
    ThetaMatrix,
    UnitScalar,
)
from .dgcat import DirectedCategory, Generator, check_associativity


@dataclass(frozen=True)
class ExceptionalAlgebraSpec:
    weights: tuple
    theta: ThetaMatrix | None = None
    window: tuple | None = None
    require_coprime: bool = True

    def __post_init__(self):
        w = tuple(int(a) for a in self.weights)
        object.__setattr__(self, "weights", w)
        if len(w) < 2 or any(a <= 0 for a in w):
            raise ValueError("need at least two positive weights")
        if self.require_coprime and reduce(gcd, w) != 1:
            raise ValueError(f"weights {w} are not coprime")
        if self.theta is None:
            object.__setattr__(self, "theta", ThetaMatrix.identity(len(w)))
        if self.window is None:
            object.__setattr__(self, "window", tuple(range(sum(w))))
        else:
            win = tuple(int(i) for i in self.window)
            if any(b <= a for a, b in zip(win, win[1:])):
                raise ValueError("window indices must be strictly increasing")
            object.__setattr__(self, "window", win)

    @property
    def gorenstein(self) -> int:
        return sum(self.weights)

    def algebra(self, kind: str = POLYNOMIAL) -> GradedSkewAlgebra:
        return GradedSkewAlgebra(self.weights, self.theta, kind)


def _as_spec(spec_or_weights, theta=None) -> ExceptionalAlgebraSpec:
    if isinstance(spec_or_weights, ExceptionalAlgebraSpec):
        return spec_or_weights
    return ExceptionalAlgebraSpec(tuple(spec_or_weights), theta)


def build_B(spec, theta: ThetaMatrix | None = None, verify: bool = False) -> DirectedCategory:
    spec = _as_spec(spec, theta)
    alg = spec.algebra(POLYNOMIAL)
    win = spec.window
    objects = [f"P{w}" for w in win]
    gens = []
    mono = {}
    for i in range(len(win)):
        for j in range(i + 1, len(win)):
            for e in alg.graded_basis(win[j] - win[i]):
                name = f"P{win[i]}P{win[j]}:{alg.monomial_name(e)}"
                gens.append(Generator(name, i, j, 0))
                mono[name] = e
    names = {(g.source, g.target, mono[g.name]): g.name for g in gens}
    m2 = {}
    for p in gens:
        for q in gens:
            if p.target != q.source:
                continue
            c, e = alg.multiply_monomials(mono[q.name], mono[p.name])
            m2[(p.name, q.name)] = {names[(p.source, q.target, e)]: LaurentPoly.from_unit(c)}
    C = DirectedCategory(objects, gens, m2, meta={"kind": "B", "weights": spec.weights, "window": win, "monomials": mono})
    if verify and not check_associativity(C):
        raise ArithmeticError("B category is not associative")
    return C


def build_C(spec, theta: ThetaMatrix | None = None, verify: bool = False) -> DirectedCategory:
    """Exterior category; object k of the output is w_{l-1-k}."""
    spec = _as_spec(spec, theta)
    alg = spec.algebra(EXTERIOR)
    win = spec.window
    rev = list(reversed(win))
    objects = [f"w{w}" for w in rev]
    gens = []
    mono = {}
    for k in range(len(rev)):
        for m in range(k + 1, len(rev)):
            # Hom(w_{rev[k]}, w_{rev[m]}) = Lambda_{rev[m] - rev[k]}, a nonpositive degree
            for e in alg.graded_basis(rev[m] - rev[k]):
                name = f"L{k}L{m}:{alg.monomial_name(e)}"
                gens.append(Generator(name, k, m, sum(e)))
                mono[name] = e
    names = {(g.source, g.target, mono[g.name]): g.name for g in gens}
    m2 = {}
    for p in gens:
        for q in gens:
            if p.target != q.source:
                continue
            r = alg.multiply_monomials(mono[q.name], mono[p.name])
            if r is None:
                continue
            key = (p.source, q.target, r[1])
            if key in names:
                m2[(p.name, q.name)] = {names[key]: LaurentPoly.from_unit(r[0])}
    meta = {
        "kind": "C",
        "weights": spec.weights,
        "reversal": {k: rev[k] for k in range(len(rev))},
        "monomials": mono,
    }
    C = DirectedCategory(objects, gens, m2, meta=meta)
    if verify and not check_associativity(C):
        raise ArithmeticError("C category is not associative")
    return C


def q_invariant(theta: ThetaMatrix, weights: Sequence[int]) -> UnitScalar:
    """theta01^c theta12^a theta20^b / (theta10^c theta21^a theta02^b)."""
    if theta.size != 3:
        raise ValueError("q is defined for planes (three weights)")
    a, b, c = weights
    return (
        theta[0, 1] ** c * theta[1, 2] ** a * theta[2, 0] ** b
        / (theta[1, 0] ** c * theta[2, 1] ** a * theta[0, 2] ** b)
    )


def _bezout3(c: int, a: int, b: int) -> tuple:
    x, y, g1 = igcdex(c, a)
    s, w, g = igcdex(g1, b)
    if g != 1:
        raise ValueError("weights are not coprime")
    return int(x * s), int(y * s), int(w)


def realize_q(weights: Sequence[int], target) -> ThetaMatrix:
    """A theta with q_invariant(theta) == target (entries off the cycle are 1)."""
    a, b, c = (int(x) for x in weights)
    if gcd(gcd(a, b), c) != 1:
        raise ValueError("gcd(a,b,c) must be 1")
    t = UnitScalar.coerce(target)
    u, v, w = _bezout3(c, a, b)
    rows = [[UnitScalar() for _ in range(3)] for _ in range(3)]
    rows[0][1] = t ** u
    rows[1][2] = t ** v
    rows[2][0] = t ** w
    th = ThetaMatrix.build(rows)
    assert q_invariant(th, (a, b, c)) == t
    return th


def rescale_theta(theta: ThetaMatrix, m: Sequence, weights: Sequence[int]) -> ThetaMatrix:
    """theta'_ij = theta_ij * m_i^{a_j}."""
    n = theta.size
    ms = [UnitScalar.coerce(x) for x in m]
    return ThetaMatrix.build([[theta[i, j] * ms[i] ** weights[j] for j in range(n)] for i in range(n)])


def build_F(n: int, theta: ThetaMatrix | None = None) -> DirectedCategory:
    """Corner of B(1,1,n) on the projectives P0, P1, Pn, P(n+1)."""
    if n < 2:
        raise ValueError("F(n) is built here for n >= 2; F0 and F1 come from the Floer side")
    spec = ExceptionalAlgebraSpec((1, 1, n), theta, window=(0, 1, n, n + 1))
    return build_B(spec)


def hirzebruch_top_dim(n: int) -> int:
    """dim (S(1,1,n))_{n+1}, the Hom(P0, P(n+1)) space of F(n)."""
    return GradedSkewAlgebra.make((1, 1, n)).graded_dim(n + 1)
