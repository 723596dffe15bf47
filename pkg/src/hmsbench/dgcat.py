"""Finite directed categories with strictly associative composition.

A ``DirectedCategory`` stores ordered objects, a graded basis of
Hom(i, j) for i < j, and a table of structure constants

    m2(p, q) = sum_r c_r r        p in Hom(i, j), q in Hom(j, k), r in Hom(i, k)

with coefficients ``LaurentPoly`` (single-term ones are unit scalars).
Identities are implicit.  m1 and higher products are recorded only as
flags.

Gauge matching treats the structure constants as multiplicative data: a
rescaling g multiplies c by g(p) g(q) / g(r), so matching two tables is an
integer linear system on exponent vectors, one per prime, one per formal
parameter, plus a parity system for the sign.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import linalg
from .algebra import ONE, LaurentPoly, UnitScalar


@dataclass(frozen=True)
class Generator:
    name: str
    source: int
    target: int
    degree: int = 0


@dataclass
class DirectedCategory:
    objects: list
    generators: list  # list[Generator], ordered
    m2: dict = field(default_factory=dict)  # (p, q) -> {r: LaurentPoly}
    m1_zero: bool = True
    higher_mk_zero: bool = True
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self._by_name = {}
        for g in self.generators:
            if g.name in self._by_name:
                raise ValueError(f"duplicate generator {g.name}")
            if not 0 <= g.source < g.target < len(self.objects):
                raise ValueError(f"generator {g.name} violates directedness")
            self._by_name[g.name] = g
        clean = {}
        for (p, q), out in self.m2.items():
            gp, gq = self._by_name[p], self._by_name[q]
            if gp.target != gq.source:
                raise ValueError(f"m2({p},{q}) is not composable")
            row = {}
            for r, c in out.items():
                c = LaurentPoly.coerce(c)
                if c.is_zero():
                    continue
                gr = self._by_name[r]
                if (gr.source, gr.target) != (gp.source, gq.target):
                    raise ValueError(f"m2({p},{q}) -> {r} has wrong endpoints")
                row[r] = c
            if row:
                clean[(p, q)] = row
        self.m2 = clean

    # access
    def gen(self, name: str) -> Generator:
        return self._by_name[name]

    def hom(self, i: int, j: int) -> list:
        return [g for g in self.generators if g.source == i and g.target == j]

    def hom_dim(self, i: int, j: int) -> int:
        if i == j:
            return 1
        return len(self.hom(i, j))

    def names(self) -> list:
        return [g.name for g in self.generators]

    def product(self, p: str, q: str) -> dict:
        return self.m2.get((p, q), {})

    def compose(self, f: Mapping[str, object], g: Mapping[str, object]) -> dict:
        """Bilinear m2 on vectors name -> coefficient."""
        out: dict = {}
        for p, cp in f.items():
            for q, cq in g.items():
                for r, c in self.product(p, q).items():
                    v = LaurentPoly.coerce(cp) * LaurentPoly.coerce(cq) * c
                    out[r] = out.get(r, LaurentPoly()) + v
        return {k: v for k, v in out.items() if not v.is_zero()}

    def is_single_term(self) -> bool:
        return all(c.as_unit() is not None for row in self.m2.values() for c in row.values())

    def unit_constant(self, p: str, q: str, r: str) -> UnitScalar | None:
        c = self.m2.get((p, q), {}).get(r)
        return None if c is None else c.as_unit()

    def evaluated(self, values: Mapping[str, object]) -> "DirectedCategory":
        """Same category with formal parameters replaced by numbers."""
        new = {
            k: {r: LaurentPoly.coerce(Fraction(c.evaluate(values))) for r, c in row.items()}
            for k, row in self.m2.items()
        }
        return DirectedCategory(list(self.objects), list(self.generators), new, self.m1_zero, self.higher_mk_zero, dict(self.meta))

    def substituted(self, values: Mapping[str, UnitScalar]) -> "DirectedCategory":
        new = {k: {r: c.substitute(values) for r, c in row.items()} for k, row in self.m2.items()}
        return DirectedCategory(list(self.objects), list(self.generators), new, self.m1_zero, self.higher_mk_zero, dict(self.meta))

    def with_constant(self, p: str, q: str, r: str, c) -> "DirectedCategory":
        new = {k: dict(v) for k, v in self.m2.items()}
        new.setdefault((p, q), {})[r] = LaurentPoly.coerce(c)
        return DirectedCategory(list(self.objects), list(self.generators), new, self.m1_zero, self.higher_mk_zero, dict(self.meta))

    def skeleton(self) -> tuple:
        return tuple(self.objects), tuple(self.generators)

    # serialization
    def to_json(self) -> dict:
        return {
            "objects": list(self.objects),
            "generators": [
                {"name": g.name, "source": g.source, "target": g.target, "degree": g.degree}
                for g in self.generators
            ],
            "m2": [
                {"p": p, "q": q, "r": r, "coeff": c.to_json()}
                for (p, q), row in self.m2.items()
                for r, c in row.items()
            ],
            "m1_zero": self.m1_zero,
            "higher_mk_zero": self.higher_mk_zero,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1, default=str)

    @classmethod
    def from_json(cls, d: Mapping) -> "DirectedCategory":
        gens = [Generator(g["name"], g["source"], g["target"], g.get("degree", 0)) for g in d["generators"]]
        m2: dict = {}
        for t in d.get("m2", []):
            m2.setdefault((t["p"], t["q"]), {})[t["r"]] = LaurentPoly.from_json(t["coeff"])
        return cls(list(d["objects"]), gens, m2, d.get("m1_zero", True), d.get("higher_mk_zero", True))


# associativity and degrees

def check_degrees(C: DirectedCategory):
    """None if every m2 output has degree deg p + deg q."""
    for (p, q), row in C.m2.items():
        want = C.gen(p).degree + C.gen(q).degree
        for r in row:
            if C.gen(r).degree != want:
                return p, q, r
    return None


@dataclass
class AssociativityResult:
    passed: bool
    triple: tuple | None = None
    lhs: dict | None = None
    rhs: dict | None = None

    def __bool__(self):
        return self.passed


def check_associativity(C: DirectedCategory) -> AssociativityResult:
    """m2(m2(p,q),r) = m2(p,m2(q,r)) on all composable triples of generators.

    Identity laws hold by construction since identities are implicit.
    """
    if not (C.m1_zero and C.higher_mk_zero):
        raise ValueError("strict associativity only applies when m1 = 0 and m_k = 0 for k >= 3")
    out_of = {}
    for g in C.generators:
        out_of.setdefault(g.source, []).append(g)
    for p in C.generators:
        for q in out_of.get(p.target, []):
            for r in out_of.get(q.target, []):
                lhs = C.compose(C.compose({p.name: 1}, {q.name: 1}), {r.name: 1})
                rhs = C.compose({p.name: 1}, C.compose({q.name: 1}, {r.name: 1}))
                if lhs != rhs:
                    return AssociativityResult(False, (p.name, q.name, r.name), lhs, rhs)
    return AssociativityResult(True)


# gauge transformations

@dataclass
class GaugeTransform:
    scale: dict  # name -> UnitScalar

    def __call__(self, name: str) -> UnitScalar:
        return self.scale.get(name, ONE)

    def inverse(self) -> "GaugeTransform":
        return GaugeTransform({k: v.inverse() for k, v in self.scale.items()})

    def then(self, other: "GaugeTransform") -> "GaugeTransform":
        keys = set(self.scale) | set(other.scale)
        return GaugeTransform({k: self(k) * other(k) for k in keys})

    @classmethod
    def random(cls, names: Iterable[str], rng: random.Random, params: Sequence[str] = ()) -> "GaugeTransform":
        out = {}
        for n in names:
            q = Fraction(1)
            for p in (2, 3, 5):
                q *= Fraction(p) ** rng.randint(-2, 2)
            u = UnitScalar.from_rational(q if rng.random() < 0.5 else -q)
            for prm in params:
                u = u * UnitScalar.param(prm, rng.randint(-2, 2))
            out[n] = u
        return cls(out)


def apply_gauge(C: DirectedCategory, g: GaugeTransform) -> DirectedCategory:
    new = {}
    for (p, q), row in C.m2.items():
        new[(p, q)] = {r: c * (g(p) * g(q) / g(r)) for r, c in row.items()}
    return DirectedCategory(list(C.objects), list(C.generators), new, C.m1_zero, C.higher_mk_zero, dict(C.meta))


@dataclass
class GaugeCertificate:
    """Witness that no rescaling works.

    ``weights`` gives integer exponents y_e on the table entries e = (p,q,r);
    any rescaling leaves prod_e (c2_e/c1_e)^{y_e} unchanged in ``component``
    modulo ``modulus`` (0 means exactly), yet the observed value is ``value``.
    """

    reason: str
    component: str | None = None
    modulus: int | None = None
    value: int | None = None
    weights: dict | None = None
    entries: list | None = None

    def __bool__(self):
        return False

    def describe(self) -> str:
        if self.component is None:
            return self.reason
        terms = " * ".join(f"({p},{q}->{r})^{y}" for (p, q, r), y in self.weights.items())
        mod = "exactly" if not self.modulus else f"mod {self.modulus}"
        return f"{self.reason}: component {self.component} of {terms} is {self.value}, must vanish {mod}"


def _components(u: UnitScalar) -> dict:
    out = {"sign": 0 if u.sign > 0 else 1}
    for p, e in u.primes:
        out[f"prime:{p}"] = e
    for k, e in u.params:
        out[f"param:{k}"] = e
    return out


def gauge_match(C1: DirectedCategory, C2: DirectedCategory):
    """A GaugeTransform g with apply_gauge(C1, g) == C2, or a GaugeCertificate."""
    if C1.skeleton() != C2.skeleton():
        return GaugeCertificate("object/generator skeletons differ")
    if not (C1.is_single_term() and C2.is_single_term()):
        raise ValueError("gauge matching needs single-term structure constants")
    keys1 = {(p, q, r) for (p, q), row in C1.m2.items() for r in row}
    keys2 = {(p, q, r) for (p, q), row in C2.m2.items() for r in row}
    if keys1 != keys2:
        diff = sorted(keys1 ^ keys2)
        return GaugeCertificate(f"zero patterns differ at {diff[:4]}")
    entries = sorted(keys1)
    names = C1.names()
    col = {n: i for i, n in enumerate(names)}
    if not entries:
        return GaugeTransform({n: ONE for n in names})
    A = []
    rhs_by_comp: dict = {}
    for e_idx, (p, q, r) in enumerate(entries):
        row = [0] * len(names)
        row[col[p]] += 1
        row[col[q]] += 1
        row[col[r]] -= 1
        A.append(row)
        t = C2.unit_constant(p, q, r) / C1.unit_constant(p, q, r)
        for comp, v in _components(t).items():
            rhs_by_comp.setdefault(comp, [0] * len(entries))[e_idx] = v
    rhs_by_comp.setdefault("sign", [0] * len(entries))
    diag, U, V = linalg.smith(A, len(names))
    rk = sum(1 for d in diag if d)
    nrows = len(entries)

    solution = {comp: [0] * len(names) for comp in rhs_by_comp}
    for comp in sorted(rhs_by_comp):
        b = rhs_by_comp[comp]
        s = [sum(U[k][i] * b[i] for i in range(nrows)) for k in range(nrows)]
        z = [0] * len(names)
        for k in range(nrows):
            d = diag[k] if k < len(diag) else 0
            if comp == "sign":
                if d % 2 == 1:
                    z[k] = s[k] % 2
                    continue
                mod, ok = 2, s[k] % 2 == 0
            elif d:
                mod, ok = d, s[k] % d == 0
                if ok:
                    z[k] = s[k] // d
                    continue
            else:
                mod, ok = 0, s[k] == 0
            if not ok:
                w = {entries[i]: U[k][i] for i in range(nrows) if U[k][i]}
                return GaugeCertificate(
                    "no rescaling matches the tables",
                    component=comp,
                    modulus=mod,
                    value=s[k],
                    weights=w,
                    entries=entries,
                )
        x = [sum(V[i][k] * z[k] for k in range(len(names))) for i in range(len(names))]
        solution[comp] = x

    scale = {}
    for i, n in enumerate(names):
        sign = -1 if solution["sign"][i] % 2 else 1
        primes = tuple(sorted((int(c.split(":")[1]), solution[c][i]) for c in solution if c.startswith("prime:") and solution[c][i]))
        params = tuple(sorted((c.split(":", 1)[1], solution[c][i]) for c in solution if c.startswith("param:") and solution[c][i]))
        scale[n] = UnitScalar(sign, primes, params)
    g = GaugeTransform(scale)
    if not tables_equal(apply_gauge(C1, g), C2):
        raise ArithmeticError("gauge solver produced an inconsistent transform")
    return g


def tables_equal(C1: DirectedCategory, C2: DirectedCategory) -> bool:
    return C1.skeleton() == C2.skeleton() and C1.m2 == C2.m2


# quadratic dual

def _default_letter(name: str) -> str:
    return name.rstrip("0123456789").split(":")[-1]


def quadratic_dual(
    C: DirectedCategory,
    letters: Mapping[str, str] | None = None,
    values: Mapping[str, object] | None = None,
    basis: Sequence[str] | None = None,
):
    """Quadratic relations of the algebra whose Koszul dual is C.

    Hom(0,1) and Hom(1,2) are identified with a common space V by
    ``letters``.  The relations are the annihilator in V (x) V of the kernel of
    m2 : Hom(0,1) (x) Hom(1,2) -> Hom(0,2), where the basis element p (x) q is
    read as the word "q p" (composition order).  Returned as rows of a reduced
    echelon basis indexed by two-letter words.
    """
    h01, h12, h02 = C.hom(0, 1), C.hom(1, 2), C.hom(0, 2)
    if letters is None:
        letters = {g.name: _default_letter(g.name) for g in h01 + h12}
    if basis is None:
        basis = sorted({letters[g.name] for g in h01})
    basis = list(basis)
    if sorted(letters[g.name] for g in h01) != sorted(basis) or sorted(letters[g.name] for g in h12) != sorted(basis):
        raise ValueError("Hom(0,1) and Hom(1,2) are not identified with a common basis")
    words = [(u, v) for u in basis for v in basis]
    widx = {w: i for i, w in enumerate(words)}
    targets = [g.name for g in h02]
    tidx = {r: i for i, r in enumerate(targets)}
    # matrix of m2 on the tensor basis, column per word "q p"
    M = [[Fraction(0)] * len(words) for _ in targets]
    for p in h01:
        for q in h12:
            col = widx[(letters[q.name], letters[p.name])]
            for r, c in C.product(p.name, q.name).items():
                M[tidx[r]][col] += Fraction(c.evaluate(values))
    if linalg.rank(M, len(words)) < len(targets):
        raise ValueError("m2 does not surject onto Hom(0,2)")
    kernel = linalg.nullspace(M, len(words))
    relations = linalg.nullspace(kernel, len(words)) if kernel else [
        [Fraction(int(i == j)) for j in range(len(words))] for i in range(len(words))
    ]
    red = linalg.rref(relations, len(words))
    return QuadraticRelations(basis, words, red)


@dataclass
class QuadraticRelations:
    basis: list
    words: list
    rows: list  # reduced echelon rows

    def span_equals(self, other_rows: Sequence[Mapping[tuple, object]]) -> bool:
        vecs = [[Fraction(r.get(w, 0)) for w in self.words] for r in other_rows]
        return linalg.rref(vecs, len(self.words)) == self.rows

    def as_strings(self) -> list:
        out = []
        for row in self.rows:
            terms = []
            for w, c in zip(self.words, row):
                if c:
                    terms.append(f"{c}*{w[0]}{w[1]}")
            out.append(" + ".join(terms))
        return out
