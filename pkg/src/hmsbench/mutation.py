"""Bounded complexes of projectives over a directed algebra, and mutations.

The algebra is presented by a degree-0 ``DirectedCategory`` B whose objects
are the indecomposable projectives P_i; a map P_i -> P_j is a vector in
Hom_B(i, j) (the identity alone when i == j).  Complexes live in the
additive closure of B, so every Hom computation reduces to linear algebra on
those vectors.  Coefficients are exact Fractions (formal parameters must be
specialized first).

Conventions: cohomological grading, d of degree +1,
(E[m])^p = E^{p+m} with differential (-1)^m d, Cone(f)^p = X^{p+1} + Y^p
with d = [[-d_X, 0], [f, d_Y]], and delta f = d_D f - (-1)^k f d_C on
Hom^k(C, D).
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from . import linalg
from .algebra import ThetaMatrix, koszul_coefficient
from .bside import ExceptionalAlgebraSpec, build_B
from .dgcat import DirectedCategory


class MorphismAlgebra:
    """Numeric composition tables of a directed degree-0 category."""

    def __init__(self, C: DirectedCategory, values: Mapping | None = None):
        self.category = C
        self.N = len(C.objects)
        self.basis = {}
        for i in range(self.N):
            self.basis[(i, i)] = ["id"]
            for j in range(i + 1, self.N):
                self.basis[(i, j)] = [g.name for g in C.hom(i, j)]
        self.index = {k: {nm: t for t, nm in enumerate(v)} for k, v in self.basis.items()}
        self.table = {}
        for (p, q), row in C.m2.items():
            gp, gq = C.gen(p), C.gen(q)
            i, j, k = gp.source, gp.target, gq.target
            a, b = self.index[(i, j)][p], self.index[(j, k)][q]
            out = [(self.index[(i, k)][r], Fraction(c.evaluate(values))) for r, c in row.items()]
            self.table.setdefault((i, j, k), {})[(a, b)] = out

    def dim(self, i: int, j: int) -> int:
        return len(self.basis[(i, j)]) if i <= j else 0

    def zero(self, i: int, j: int) -> tuple:
        return (Fraction(0),) * self.dim(i, j)

    def compose(self, i: int, j: int, k: int, u: Sequence, v: Sequence) -> tuple:
        """u: P_i -> P_j then v: P_j -> P_k."""
        if not (i <= j <= k):
            return self.zero(i, k) if i <= k else ()
        if i == j:
            return tuple(u[0] * x for x in v)
        if j == k:
            return tuple(v[0] * x for x in u)
        out = [Fraction(0)] * self.dim(i, k)
        tab = self.table.get((i, j, k), {})
        for a, ua in enumerate(u):
            if not ua:
                continue
            for b, vb in enumerate(v):
                if not vb:
                    continue
                for c, val in tab.get((a, b), ()):
                    out[c] += ua * vb * val
        return tuple(out)

    def vector(self, i: int, j: int, terms: Mapping[str, object]) -> tuple:
        v = [Fraction(0)] * self.dim(i, j)
        for nm, c in terms.items():
            v[self.index[(i, j)][nm]] += Fraction(c)
        return tuple(v)

    def identity(self, i: int) -> tuple:
        return (Fraction(1),)


def _nz(v) -> bool:
    return any(v)


@dataclass
class ProjComplex:
    alg: MorphismAlgebra
    terms: dict  # degree -> list of object indices
    d: dict = field(default_factory=dict)  # degree p -> {(t, s): vector}, s in terms[p], t in terms[p+1]
    name: str = ""

    def __post_init__(self):
        self.terms = {p: list(v) for p, v in self.terms.items() if v}
        clean = {}
        for p, ent in self.d.items():
            row = {k: tuple(v) for k, v in ent.items() if _nz(v)}
            if row:
                clean[p] = row
        self.d = clean

    def degrees(self) -> list:
        return sorted(self.terms)

    def term(self, p: int) -> list:
        return self.terms.get(p, [])

    def entry(self, p: int, t: int, s: int) -> tuple:
        return self.d.get(p, {}).get((t, s), self.alg.zero(self.term(p)[s], self.term(p + 1)[t]))

    def check_d2(self) -> bool:
        A = self.alg
        for p in self.degrees():
            src, mid, dst = self.term(p), self.term(p + 1), self.term(p + 2)
            if not mid or not dst:
                continue
            for s, i in enumerate(src):
                for u, k in enumerate(dst):
                    if i > k:
                        continue
                    acc = [Fraction(0)] * A.dim(i, k)
                    for t, j in enumerate(mid):
                        if i <= j <= k:
                            v = A.compose(i, j, k, self.entry(p, t, s), self.entry(p + 1, u, t))
                            acc = [x + y for x, y in zip(acc, v)]
                    if any(acc):
                        return False
        return True

    def total_rank(self) -> int:
        return sum(len(v) for v in self.terms.values())

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "terms": {str(p): [self.alg.category.objects[i] for i in v] for p, v in sorted(self.terms.items())},
            "differential": [
                {"degree": p, "from": s, "to": t, "entry": [str(x) for x in v]}
                for p, ent in sorted(self.d.items())
                for (t, s), v in sorted(ent.items())
            ],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1)


def projective(alg: MorphismAlgebra, i: int, degree: int = 0) -> ProjComplex:
    return ProjComplex(alg, {degree: [i]}, {}, name=f"P{i}")


def shift(C: ProjComplex, m: int) -> ProjComplex:
    sign = -1 if m % 2 else 1
    terms = {p - m: v for p, v in C.terms.items()}
    d = {p - m: {k: tuple(sign * x for x in v) for k, v in ent.items()} for p, ent in C.d.items()}
    return ProjComplex(C.alg, terms, d, name=f"{C.name}[{m}]")


def direct_sum(cs: Sequence[ProjComplex]) -> tuple:
    """Direct sum and, per summand, its offset in every degree."""
    alg = cs[0].alg
    terms: dict = {}
    offsets = []
    for C in cs:
        off = {}
        for p in C.terms:
            off[p] = len(terms.get(p, []))
            terms.setdefault(p, []).extend(C.terms[p])
        offsets.append(off)
    d: dict = {}
    for C, off in zip(cs, offsets):
        for p, ent in C.d.items():
            for (t, s), v in ent.items():
                d.setdefault(p, {})[(t + off.get(p + 1, 0), s + off.get(p, 0))] = v
    return ProjComplex(alg, terms, d, name="+".join(c.name for c in cs)), offsets


@dataclass
class ChainMap:
    source: ProjComplex
    target: ProjComplex
    comp: dict  # degree p -> {(t, s): vector}  X^p_s -> Y^p_t

    def entry(self, p, t, s):
        X, Y = self.source, self.target
        return self.comp.get(p, {}).get((t, s), X.alg.zero(X.term(p)[s], Y.term(p)[t]))

    def is_chain_map(self) -> bool:
        X, Y, A = self.source, self.target, self.source.alg
        degs = set(X.terms) | set(Y.terms)
        for p in degs:
            for s, i in enumerate(X.term(p)):
                for t, k in enumerate(Y.term(p + 1)):
                    if i > k:
                        continue
                    acc = [Fraction(0)] * A.dim(i, k)
                    for u, j in enumerate(Y.term(p)):  # d_Y f
                        if i <= j <= k:
                            v = A.compose(i, j, k, self.entry(p, u, s), Y.entry(p, t, u))
                            acc = [x + y for x, y in zip(acc, v)]
                    for u, j in enumerate(X.term(p + 1)):  # f d_X
                        if i <= j <= k:
                            v = A.compose(i, j, k, X.entry(p, u, s), self.entry(p + 1, t, u))
                            acc = [x - y for x, y in zip(acc, v)]
                    if any(acc):
                        return False
        return True


def cone(f: ChainMap, check: bool = True) -> ProjComplex:
    X, Y = f.source, f.target
    if check and not f.is_chain_map():
        raise ValueError("cone needs a chain map")
    degs = sorted({p - 1 for p in X.terms} | set(Y.terms))
    terms = {p: X.term(p + 1) + Y.term(p) for p in degs}
    d: dict = {}
    for p in degs:
        nx0, nx1 = len(X.term(p + 1)), len(X.term(p + 2))
        ent = {}
        for (t, s), v in X.d.get(p + 1, {}).items():
            ent[(t, s)] = tuple(-x for x in v)
        for (t, s), v in f.comp.get(p + 1, {}).items():
            ent[(nx1 + t, s)] = v
        for (t, s), v in Y.d.get(p, {}).items():
            ent[(nx1 + t, nx0 + s)] = v
        d[p] = ent
    out = ProjComplex(X.alg, terms, d, name=f"Cone({X.name}->{Y.name})")
    if not out.check_d2():
        raise ArithmeticError("cone has d^2 != 0")
    return out


def minimalize(C: ProjComplex) -> ProjComplex:
    """Strip contractible pieces P_i --(c id)--> P_i, c != 0 (Gaussian elimination)."""
    A = C.alg
    terms = {p: list(v) for p, v in C.terms.items()}
    d = {p: dict(e) for p, e in C.d.items()}
    while True:
        found = None
        for p in sorted(d):
            for (t, s), v in sorted(d[p].items()):
                if terms[p][s] == terms[p + 1][t] and v[0] != 0:
                    found = (p, t, s, v[0])
                    break
            if found:
                break
        if not found:
            break
        p, t0, s0, phi = found
        i0 = terms[p][s0]
        src, dst = terms[p], terms[p + 1]
        ent = d[p]
        beta = {s: v for (t, s), v in ent.items() if t == t0 and s != s0}  # A' -> b
        gamma = {t: v for (t, s), v in ent.items() if s == s0 and t != t0}  # a -> B'
        new = {}
        for (t, s), v in ent.items():
            if t != t0 and s != s0:
                new[(t, s)] = list(v)
        for s, bv in beta.items():
            for t, gv in gamma.items():
                corr = A.compose(src[s], i0, dst[t], bv, gv)
                cur = new.get((t, s), [Fraction(0)] * len(corr))
                new[(t, s)] = [x - y / phi for x, y in zip(cur, corr)]

        def reindex(k, drop):
            return k - (1 if k > drop else 0)

        d[p] = {(reindex(t, t0), reindex(s, s0)): tuple(v) for (t, s), v in new.items() if any(v)}
        if p - 1 in d:
            d[p - 1] = {(reindex(t, s0), s): v for (t, s), v in d[p - 1].items() if t != s0}
        if p + 1 in d:
            d[p + 1] = {(t, reindex(s, t0)): v for (t, s), v in d[p + 1].items() if s != t0}
        del src[s0]
        del dst[t0]
    out = ProjComplex(A, terms, d, name=C.name)
    if not out.check_d2():
        raise ArithmeticError("minimalization broke d^2 = 0")
    return out


# Hom complexes

@dataclass
class HomComplexReport:
    dims: dict  # k -> dim H^k
    cocycles: dict = field(default_factory=dict)  # k -> list of cocycle dicts

    def nonzero(self) -> dict:
        return {k: v for k, v in sorted(self.dims.items()) if v}

    def total(self) -> int:
        return sum(self.dims.values())


def _hom_basis(C: ProjComplex, D: ProjComplex, k: int) -> list:
    A = C.alg
    out = []
    for p in C.degrees():
        for s, i in enumerate(C.term(p)):
            for t, j in enumerate(D.term(p + k)):
                for b in range(A.dim(i, j)):
                    out.append((p, s, t, b))
    return out


def _delta_matrix(C: ProjComplex, D: ProjComplex, k: int, src: list, dst: list) -> list:
    A = C.alg
    didx = {key: r for r, key in enumerate(dst)}
    rows = [[Fraction(0)] * len(src) for _ in dst]
    sign = -1 if k % 2 else 1
    for col, (p, s, t, b) in enumerate(src):
        i, j = C.term(p)[s], D.term(p + k)[t]
        f = [Fraction(0)] * A.dim(i, j)
        f[b] = Fraction(1)
        # d_D o f : C^p_s -> D^{p+k+1}_u
        for (u, tt), dv in D.d.get(p + k, {}).items():
            if tt != t:
                continue
            jj = D.term(p + k + 1)[u]
            if i > jj:
                continue
            v = A.compose(i, j, jj, f, dv)
            for bb, x in enumerate(v):
                if x:
                    rows[didx[(p, s, u, bb)]][col] += x
        # -(-1)^k f o d_C : C^{p-1}_r -> D^{p+k}_t
        for (ss, r), cv in C.d.get(p - 1, {}).items():
            if ss != s:
                continue
            ii = C.term(p - 1)[r]
            if ii > j:
                continue
            v = A.compose(ii, i, j, cv, f)
            for bb, x in enumerate(v):
                if x:
                    rows[didx[(p - 1, r, t, bb)]][col] -= sign * x
    return rows


def hom_complex(C: ProjComplex, D: ProjComplex, with_cocycles: bool = False) -> HomComplexReport:
    if C.alg is not D.alg:
        raise ValueError("complexes over different algebras")
    if not C.terms or not D.terms:
        return HomComplexReport({}, {})
    lo = min(D.terms) - max(C.terms) - 1
    hi = max(D.terms) - min(C.terms) + 1
    bases = {k: _hom_basis(C, D, k) for k in range(lo, hi + 1)}
    mats = {}
    for k in range(lo, hi):
        if bases[k] and bases[k + 1]:
            mats[k] = _delta_matrix(C, D, k, bases[k], bases[k + 1])
    dims, cocycles = {}, {}
    for k in range(lo + 1, hi):
        nk = len(bases[k])
        if not nk:
            continue
        rk_out = linalg.rank(mats[k], nk) if k in mats else 0
        prev = mats.get(k - 1)
        rk_in = linalg.rank(prev, len(bases[k - 1])) if prev else 0
        h = nk - rk_out - rk_in
        if h:
            dims[k] = h
            if with_cocycles:
                cocycles[k] = _cohomology_reps(mats.get(k), prev, bases[k], bases.get(k - 1, []), h, C, D, k)
    return HomComplexReport(dims, cocycles)


def _cohomology_reps(out_mat, in_mat, basis, prev_basis, h, C, D, k) -> list:
    n = len(basis)
    Z = linalg.nullspace(out_mat, n) if out_mat else [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    # B^k: columns of the incoming matrix
    Bk = [list(col) for col in zip(*in_mat)] if in_mat else []
    Bk = linalg.rref(Bk, n) if Bk else []
    chosen = []
    base_rank = len(Bk)
    for z in linalg.rref(Z, n):
        trial = Bk + chosen + [z]
        if linalg.rank(trial, n) == base_rank + len(chosen) + 1:
            chosen.append(z)
        if len(chosen) == h:
            break
    reps = []
    A = C.alg
    for z in chosen:
        comp: dict = {}
        for coeff, (p, s, t, b) in zip(z, basis):
            if not coeff:
                continue
            i, j = C.term(p)[s], D.term(p + k)[t]
            vec = comp.setdefault((p, s, t), [Fraction(0)] * A.dim(i, j))
            vec[b] += coeff
        reps.append({key: tuple(v) for key, v in comp.items()})
    return reps


# mutations

def left_mutate(E: ProjComplex, X: ProjComplex, minimal: bool = True) -> ProjComplex:
    """L_E X = Cone(sum_k Hom^k(E, X) (x) E[-k] -> X)[-1]."""
    rep = hom_complex(E, X, with_cocycles=True)
    copies, maps = [], []
    for k in sorted(rep.cocycles):
        for phi in rep.cocycles[k]:
            copies.append(shift(E, -k))
            maps.append((k, phi))
    if not copies:
        return X
    S, offsets = direct_sum(copies)
    comp: dict = {}
    for (k, phi), off in zip(maps, offsets):
        for (p, s, t), v in phi.items():
            q = p + k  # E^p sits in degree p+k of E[-k]
            comp.setdefault(q, {})[(t, s + off.get(q, 0))] = v
    ev = ChainMap(S, X, comp)
    out = shift(cone(ev), -1)
    out.name = f"L_{E.name}({X.name})"
    return minimalize(out) if minimal else out


def right_mutate(A: ProjComplex, B: ProjComplex, minimal: bool = True) -> ProjComplex:
    """R_B A = Cone(A -> sum_j Hom^j(A, B)^* (x) B[j])."""
    rep = hom_complex(A, B, with_cocycles=True)
    copies, maps = [], []
    for j in sorted(rep.cocycles):
        for psi in rep.cocycles[j]:
            copies.append(shift(B, j))
            maps.append((j, psi))
    if not copies:
        return A
    S, offsets = direct_sum(copies)
    comp: dict = {}
    for (j, psi), off in zip(maps, offsets):
        for (p, s, t), v in psi.items():
            # B^{p+j} sits in degree p of B[j]
            comp.setdefault(p, {})[(t + off.get(p, 0), s)] = v
    coev = ChainMap(A, S, comp)
    out = cone(coev)
    out.name = f"R_{B.name}({A.name})"
    return minimalize(out) if minimal else out


def left_mutation_at(collection: Sequence[ProjComplex], i: int) -> list:
    """(.., E_i, E_{i+1}, ..) -> (.., L_{E_i} E_{i+1}, E_i, ..)."""
    col = list(collection)
    col[i], col[i + 1] = left_mutate(col[i], col[i + 1]), col[i]
    return col


def right_mutation_at(collection: Sequence[ProjComplex], i: int) -> list:
    """(.., E_i, E_{i+1}, ..) -> (.., E_{i+1}, R_{E_{i+1}} E_i, ..)."""
    col = list(collection)
    col[i], col[i + 1] = col[i + 1], right_mutate(col[i], col[i + 1])
    return col


def iterated_left(collection: Sequence[ProjComplex], i: int) -> ProjComplex:
    """L^{(i)} E_i = L_{E_0} L_{E_1} ... L_{E_{i-1}} E_i."""
    X = collection[i]
    for j in range(i - 1, -1, -1):
        X = left_mutate(collection[j], X)
    return X


def dual_collection(collection: Sequence[ProjComplex]) -> list:
    """(L^{(n)} E_n, ..., L^{(1)} E_1, E_0)."""
    return [iterated_left(collection, i) for i in range(len(collection) - 1, -1, -1)]


# invariants used as the quasi-isomorphism proxy

def profile(X: ProjComplex) -> dict:
    """H* Hom(P_j, X) for every object j, plus End dims."""
    A = X.alg
    out = {j: hom_complex(projective(A, j), X).nonzero() for j in range(A.N)}
    out["end"] = hom_complex(X, X).nonzero()
    return out


def is_exceptional(X: ProjComplex) -> bool:
    return hom_complex(X, X).nonzero() == {0: 1}


# algebras and resolutions

def b_algebra(weights: Sequence[int], theta: ThetaMatrix | None = None, window=None, values=None) -> MorphismAlgebra:
    spec = ExceptionalAlgebraSpec(tuple(weights), theta, window)
    return MorphismAlgebra(build_B(spec), values)


def projectives(alg: MorphismAlgebra) -> list:
    return [projective(alg, i) for i in range(alg.N)]


def koszul_simple(alg: MorphismAlgebra, i: int, theta: ThetaMatrix | None = None, values=None) -> ProjComplex:
    """Resolution of the simple module at P_i by the Koszul complex:
    P_{i - a_I} in degree -|I|, maps by x_{i_s} with the Koszul signs."""
    meta = alg.category.meta
    weights = meta["weights"]
    win = list(meta["window"])
    pos = {w: k for k, w in enumerate(win)}
    theta = theta or ThetaMatrix.identity(len(weights))
    from itertools import combinations

    n1 = len(weights)
    idx_of = {}
    terms: dict = {}
    for k in range(n1 + 1):
        for I in combinations(range(n1), k):
            lab = win[i] - sum(weights[t] for t in I)
            if lab in pos:
                idx_of[I] = (-k, len(terms.setdefault(-k, [])))
                terms[-k].append(pos[lab])
    d: dict = {}
    mono = meta["monomials"]
    for I, (deg, s) in idx_of.items():
        for sidx in range(len(I)):
            J = I[:sidx] + I[sidx + 1:]
            if J not in idx_of:
                continue
            _, t = idx_of[J]
            src, dst = terms[deg][s], terms[deg + 1][t]
            e = tuple(1 if u == I[sidx] else 0 for u in range(n1))
            name = next(nm for nm, m in mono.items() if m == e and alg.category.gen(nm).source == src and alg.category.gen(nm).target == dst)
            c = Fraction(koszul_coefficient(theta, I, sidx).evaluate(values))
            d.setdefault(deg, {})[(t, s)] = alg.vector(src, dst, {name: c})
    out = ProjComplex(alg, terms, d, name=f"S{i}")
    if not out.check_d2():
        raise ArithmeticError("Koszul resolution has d^2 != 0")
    return out


@dataclass
class VanishingReport:
    passed: bool
    checks: dict  # (i, target) -> nonzero cohomology dims
    first_failure: tuple | None = None

    def __bool__(self):
        return self.passed


def fn_vanishing_check(n: int, k: int) -> VanishingReport:
    """F_i = L_{P_k} L_{P_{k+1}} P_i in B(1,1,n); Hom(F_i, P_n) = Hom(F_i, P_{n+1}) = 0."""
    if not 2 < k < n:
        raise ValueError("need 2 < k < n")
    alg = b_algebra((1, 1, n), window=tuple(range(n + 2)))
    P = projectives(alg)
    checks, failure = {}, None
    for i in range(k + 2, n + 2):
        F = left_mutate(P[k], left_mutate(P[k + 1], P[i]))
        for target in (n, n + 1):
            dims = hom_complex(F, P[target]).nonzero()
            checks[(i, target)] = dims
            if dims and failure is None:
                failure = (i, target, min(dims))
    return VanishingReport(failure is None, checks, failure)
