"""Exact coefficients and graded skew algebras.

``UnitScalar`` is an element of the multiplicative group
{±1} x Q_{>0} x (Laurent monomials in named parameters).  Positive rationals
are kept factored over primes so that multiplicative equations turn into
integer linear algebra on exponent vectors.

``GradedSkewAlgebra`` covers both the skew polynomial ring S_theta and the
skew exterior algebra Lambda_theta on weighted generators.  Monomials are
exponent tuples in variable-index order.  ``KoszulComplex`` is the free
resolution of the trivial right module together with the action of the
exterior generators on it.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Mapping, Sequence

from sympy import factorint

from . import linalg

POLYNOMIAL = "polynomial"
EXTERIOR = "exterior"


def _merge(a: Iterable[tuple], b: Iterable[tuple], sb: int = 1) -> tuple:
    out: dict = dict(a)
    for k, e in b:
        out[k] = out.get(k, 0) + sb * e
    return tuple(sorted((k, e) for k, e in out.items() if e))


@dataclass(frozen=True)
class UnitScalar:
    """sign * prod p^e * prod param^k, stored in canonical sorted form."""

    sign: int = 1
    primes: tuple = ()
    params: tuple = ()

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")

    # construction
    @classmethod
    def one(cls) -> "UnitScalar":
        return cls()

    @classmethod
    def from_rational(cls, q) -> "UnitScalar":
        q = Fraction(q)
        if q == 0:
            raise ValueError("zero is not a unit")
        sign = 1 if q > 0 else -1
        q = abs(q)
        fac = [(p, e) for p, e in factorint(q.numerator).items()]
        fac = _merge(fac, factorint(q.denominator).items(), -1)
        return cls(sign, fac, ())

    @classmethod
    def param(cls, name: str, exp: int = 1) -> "UnitScalar":
        return cls(1, (), ((name, exp),) if exp else ())

    @classmethod
    def make(cls, rational=1, params: Mapping[str, int] | None = None) -> "UnitScalar":
        base = cls.from_rational(rational)
        pm = tuple(sorted((k, v) for k, v in (params or {}).items() if v))
        return cls(base.sign, base.primes, pm)

    @classmethod
    def coerce(cls, x) -> "UnitScalar":
        if isinstance(x, UnitScalar):
            return x
        if isinstance(x, str):
            return cls.param(x)
        return cls.from_rational(x)

    # group structure
    def __mul__(self, other) -> "UnitScalar":
        other = UnitScalar.coerce(other)
        return UnitScalar(
            self.sign * other.sign,
            _merge(self.primes, other.primes),
            _merge(self.params, other.params),
        )

    __rmul__ = __mul__

    def inverse(self) -> "UnitScalar":
        return UnitScalar(
            self.sign,
            tuple((p, -e) for p, e in self.primes),
            tuple((k, -e) for k, e in self.params),
        )

    def __truediv__(self, other) -> "UnitScalar":
        return self * UnitScalar.coerce(other).inverse()

    def __rtruediv__(self, other) -> "UnitScalar":
        return UnitScalar.coerce(other) * self.inverse()

    def __pow__(self, k: int) -> "UnitScalar":
        k = int(k)
        return UnitScalar(
            self.sign ** (k % 2) if self.sign < 0 else 1,
            tuple((p, e * k) for p, e in self.primes if e * k),
            tuple((n, e * k) for n, e in self.params if e * k),
        )

    def __neg__(self) -> "UnitScalar":
        return UnitScalar(-self.sign, self.primes, self.params)

    # inspection
    @property
    def rational(self) -> Fraction:
        r = Fraction(1)
        for p, e in self.primes:
            r *= Fraction(p) ** e
        return r

    @property
    def value(self) -> Fraction:
        """Signed rational part (ignores parameters)."""
        return self.sign * self.rational

    @property
    def param_dict(self) -> dict:
        return dict(self.params)

    def is_one(self) -> bool:
        return self.sign == 1 and not self.primes and not self.params

    def is_constant(self) -> bool:
        return not self.params

    def evaluate(self, values: Mapping[str, object] | None = None):
        """Numeric value once every parameter is assigned (Fraction or complex)."""
        out = self.value
        for name, e in self.params:
            if values is None or name not in values:
                raise KeyError(f"no value for parameter {name!r}")
            v = values[name]
            out = out * (v ** e if e > 0 else 1 / (v ** (-e)))
        return out

    def substitute(self, values: Mapping[str, "UnitScalar"]) -> "UnitScalar":
        """Replace parameters by other unit scalars (partial substitution allowed)."""
        out = UnitScalar(self.sign, self.primes, ())
        for name, e in self.params:
            if name in values:
                out = out * UnitScalar.coerce(values[name]) ** e
            else:
                out = out * UnitScalar.param(name, e)
        return out

    def to_json(self) -> dict:
        r = self.rational
        return {
            "sign": self.sign,
            "num": r.numerator,
            "den": r.denominator,
            "params": dict(self.params),
        }

    @classmethod
    def from_json(cls, d: Mapping) -> "UnitScalar":
        s = cls.make(Fraction(d["num"], d["den"]), d.get("params", {}))
        return -s if d.get("sign", 1) < 0 else s

    def __str__(self) -> str:
        parts = []
        r = self.rational
        if r != 1 or not self.params:
            parts.append(str(r))
        for n, e in self.params:
            parts.append(n if e == 1 else f"{n}^{e}")
        body = "*".join(parts)
        return ("-" if self.sign < 0 else "") + body

    __repr__ = __str__


ONE = UnitScalar()


class LaurentPoly:
    """Finite sum of Fraction * parameter-monomial.

    Used for multi-term structure constants and symbolic identity checks
    (e.g. d^2 = 0 with theta left formal).
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple, Fraction] | None = None):
        self.terms = {k: Fraction(v) for k, v in (terms or {}).items() if v}

    @classmethod
    def from_unit(cls, u: UnitScalar, coeff=1) -> "LaurentPoly":
        return cls({u.params: Fraction(coeff) * u.value})

    @classmethod
    def coerce(cls, x) -> "LaurentPoly":
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, UnitScalar):
            return cls.from_unit(x)
        return cls({(): Fraction(x)})

    def __add__(self, other) -> "LaurentPoly":
        other = LaurentPoly.coerce(other)
        t = dict(self.terms)
        for k, v in other.terms.items():
            t[k] = t.get(k, 0) + v
        return LaurentPoly(t)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({k: -v for k, v in self.terms.items()})

    def __sub__(self, other) -> "LaurentPoly":
        return self + (-LaurentPoly.coerce(other))

    def __mul__(self, other) -> "LaurentPoly":
        other = LaurentPoly.coerce(other)
        t: dict = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                k = _merge(k1, k2)
                t[k] = t.get(k, 0) + v1 * v2
        return LaurentPoly(t)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        try:
            other = LaurentPoly.coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def as_unit(self) -> UnitScalar | None:
        """The single-term value as a UnitScalar, or None for sums/zero."""
        if len(self.terms) != 1:
            return None
        (k, v), = self.terms.items()
        u = UnitScalar.from_rational(v)
        return UnitScalar(u.sign, u.primes, k)

    def evaluate(self, values: Mapping[str, object] | None = None):
        total = 0
        for k, v in self.terms.items():
            total = total + UnitScalar(1, (), k).evaluate(values) * v
        return total

    def substitute(self, values: Mapping[str, UnitScalar]) -> "LaurentPoly":
        out = LaurentPoly()
        for k, v in self.terms.items():
            out = out + LaurentPoly.from_unit(UnitScalar(1, (), k).substitute(values), v)
        return out

    def to_json(self) -> list:
        return [{"coeff": str(v), "params": dict(k)} for k, v in sorted(self.terms.items())]

    @classmethod
    def from_json(cls, data) -> "LaurentPoly":
        if isinstance(data, Mapping):
            return cls.from_unit(UnitScalar.from_json(data))
        t = {}
        for term in data:
            t[tuple(sorted(term["params"].items()))] = Fraction(term["coeff"])
        return cls(t)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(
            str(UnitScalar.from_rational(v) * UnitScalar(1, (), k)) for k, v in sorted(self.terms.items())
        )

    __repr__ = __str__


@dataclass(frozen=True)
class ThetaMatrix:
    entries: tuple

    def __post_init__(self):
        n = len(self.entries)
        if n < 2 or any(len(r) != n for r in self.entries):
            raise ValueError("theta must be a square matrix of size >= 2")

    @property
    def size(self) -> int:
        return len(self.entries)

    @classmethod
    def build(cls, rows: Sequence[Sequence]) -> "ThetaMatrix":
        return cls(tuple(tuple(UnitScalar.coerce(v) for v in r) for r in rows))

    @classmethod
    def identity(cls, size: int) -> "ThetaMatrix":
        return cls(tuple(tuple(ONE for _ in range(size)) for _ in range(size)))

    @classmethod
    def generic(cls, size: int, prefix: str = "t") -> "ThetaMatrix":
        """Every entry an independent formal parameter t_i_j."""
        return cls(
            tuple(tuple(UnitScalar.param(f"{prefix}{i}{j}") for j in range(size)) for i in range(size))
        )

    @classmethod
    def random_constant(cls, size: int, rng: random.Random, primes=(2, 3, 5, 7)) -> "ThetaMatrix":
        def one():
            q = Fraction(1)
            for p in primes:
                q *= Fraction(p) ** rng.randint(-2, 2)
            return UnitScalar.from_rational(q if rng.random() < 0.5 else -q)

        return cls(tuple(tuple(one() for _ in range(size)) for _ in range(size)))

    def __getitem__(self, ij) -> UnitScalar:
        i, j = ij
        return self.entries[i][j]

    def an(self, i: int, j: int) -> UnitScalar:
        """theta_ij / theta_ji, the only combination the algebra sees."""
        return self.entries[i][j] / self.entries[j][i]

    def an_matrix(self) -> "ThetaMatrix":
        n = self.size
        return ThetaMatrix(tuple(tuple(self.an(i, j) for j in range(n)) for i in range(n)))

    def parameters(self) -> set:
        return {k for r in self.entries for u in r for k, _ in u.params}

    def to_json(self) -> list:
        return [[u.to_json() for u in r] for r in self.entries]

    @classmethod
    def from_json(cls, data) -> "ThetaMatrix":
        return cls(tuple(tuple(UnitScalar.from_json(u) for u in r) for r in data))


@dataclass(frozen=True)
class GradedSkewAlgebra:
    weights: tuple
    theta: ThetaMatrix
    kind: str = POLYNOMIAL

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
        if any(w <= 0 for w in self.weights):
            raise ValueError("weights must be positive")
        if self.theta.size != len(self.weights):
            raise ValueError("theta size does not match the number of weights")
        if self.kind not in (POLYNOMIAL, EXTERIOR):
            raise ValueError(f"unknown kind {self.kind!r}")

    @classmethod
    def make(cls, weights: Sequence[int], theta: ThetaMatrix | None = None, kind: str = POLYNOMIAL):
        theta = theta or ThetaMatrix.identity(len(weights))
        return cls(tuple(weights), theta, kind)

    @property
    def nvars(self) -> int:
        return len(self.weights)

    @property
    def gorenstein(self) -> int:
        return sum(self.weights)

    def with_kind(self, kind: str) -> "GradedSkewAlgebra":
        return GradedSkewAlgebra(self.weights, self.theta, kind)

    # normal forms
    def normalize_word(self, word: Sequence[int]):
        """(coefficient, exponent tuple) or None when the word is zero.

        Equivalent to bubble sorting: every inverted pair (x_j before x_i, i<j)
        is swapped exactly once and contributes theta_ij/theta_ji (and a sign
        in the exterior case).
        """
        n = self.nvars
        if any(not 0 <= i < n for i in word):
            raise IndexError("generator index out of range")
        ext = self.kind == EXTERIOR
        if ext and len(set(word)) != len(word):
            return None
        coeff = ONE
        sign = 1
        for p in range(len(word)):
            for q in range(p + 1, len(word)):
                j, i = word[p], word[q]
                if j > i:
                    coeff = coeff * self.theta.an(i, j)
                    if ext:
                        sign = -sign
        exps = [0] * n
        for i in word:
            exps[i] += 1
        return (coeff if sign > 0 else -coeff), tuple(exps)

    def multiply_monomials(self, e1: tuple, e2: tuple):
        """Product of two normal-form monomials, as (coefficient, exps) or None."""
        if self.kind == EXTERIOR and any(a and b for a, b in zip(e1, e2)):
            return None
        coeff = ONE
        odd = 0
        n = self.nvars
        for i in range(n):
            if not e1[i]:
                continue
            for j in range(i):
                if e2[j]:
                    k = e1[i] * e2[j]
                    coeff = coeff * self.theta.an(j, i) ** k
                    odd += k
        if self.kind == EXTERIOR and odd % 2:
            coeff = -coeff
        return coeff, tuple(a + b for a, b in zip(e1, e2))

    def multiply(self, m1, m2):
        """Scaled monomials (c, exps) -> scaled monomial or None."""
        if m1 is None or m2 is None:
            return None
        r = self.multiply_monomials(m1[1], m2[1])
        if r is None:
            return None
        return (UnitScalar.coerce(m1[0]) * UnitScalar.coerce(m2[0]) * r[0], r[1])

    def multiply_elements(self, f: Mapping[tuple, LaurentPoly], g: Mapping[tuple, LaurentPoly]) -> dict:
        """Bilinear extension on dicts exps -> LaurentPoly."""
        out: dict = {}
        for e1, c1 in f.items():
            for e2, c2 in g.items():
                r = self.multiply_monomials(e1, e2)
                if r is None:
                    continue
                val = LaurentPoly.coerce(c1) * LaurentPoly.coerce(c2) * r[0]
                out[r[1]] = out.get(r[1], LaurentPoly()) + val
        return {k: v for k, v in out.items() if not v.is_zero()}

    def word_of(self, exps: tuple) -> tuple:
        return tuple(i for i, e in enumerate(exps) for _ in range(e))

    def monomial_degree(self, exps: tuple) -> int:
        s = sum(e * a for e, a in zip(exps, self.weights))
        return -s if self.kind == EXTERIOR else s

    def monomial_name(self, exps: tuple, letter: str | None = None) -> str:
        letter = letter or ("x" if self.kind == POLYNOMIAL else "y")
        if not any(exps):
            return "1"
        parts = []
        for i, e in enumerate(exps):
            if e:
                parts.append(f"{letter}{i}" + (f"^{e}" if e > 1 else ""))
        return "".join(parts)

    # graded pieces
    def graded_basis(self, k: int) -> list:
        return list(_graded_basis(self.weights, self.kind, int(k)))

    def graded_dim(self, k: int) -> int:
        if self.kind == EXTERIOR:
            return len(_graded_basis(self.weights, self.kind, int(k)))
        return _poly_count(self.weights, int(k))

    def total_dim(self) -> int:
        if self.kind != EXTERIOR:
            raise ValueError("polynomial algebras are infinite dimensional")
        return 2 ** self.nvars

    def to_json(self) -> dict:
        return {"weights": list(self.weights), "kind": self.kind, "theta": self.theta.to_json()}

    @classmethod
    def from_json(cls, d: Mapping) -> "GradedSkewAlgebra":
        return cls(tuple(d["weights"]), ThetaMatrix.from_json(d["theta"]), d.get("kind", POLYNOMIAL))


@lru_cache(maxsize=None)
def _poly_count(weights: tuple, k: int) -> int:
    if k < 0:
        return 0
    ways = [1] + [0] * k
    for a in weights:
        for s in range(a, k + 1):
            ways[s] += ways[s - a]
    return ways[k]


@lru_cache(maxsize=None)
def _graded_basis(weights: tuple, kind: str, k: int) -> tuple:
    n = len(weights)
    if kind == EXTERIOR:
        out = []
        for bits in itertools.product((0, 1), repeat=n):
            if -sum(b * a for b, a in zip(bits, weights)) == k:
                out.append(bits)
        return tuple(sorted(out, reverse=True))
    if k < 0:
        return ()
    out = []

    def rec(i, rest, acc):
        if i == n - 1:
            if rest % weights[i] == 0:
                out.append(tuple(acc + [rest // weights[i]]))
            return
        for e in range(rest // weights[i], -1, -1):
            rec(i + 1, rest - e * weights[i], acc + [e])

    rec(0, k, [])
    return tuple(out)


def cohomology_dim(weights: Sequence[int], theta: ThetaMatrix | None, p: int, k: int) -> int:
    """dim H^p(O(k)) on the weighted (noncommutative) projective space."""
    if p < 0:
        raise ValueError("p must be nonnegative")
    w = tuple(weights)
    n = len(w) - 1
    l = sum(w)
    if p == 0 and k >= 0:
        return _poly_count(w, k)
    if p == n and k <= -l:
        return _poly_count(w, -k - l)
    return 0


# Koszul complex

@dataclass(frozen=True)
class KoszulComplex:
    algebra: GradedSkewAlgebra
    terms: tuple  # terms[k] = tuple of subsets of size k
    shifts: dict = field(hash=False, compare=False)
    differentials: tuple = field(hash=False, compare=False)
    # differentials[k]: {I: [(J, coefficient, s_index_variable)]} for |I| = k

    def rank(self, k: int) -> int:
        return len(self.terms[k])

    def term_ranks(self) -> tuple:
        return tuple(len(t) for t in self.terms)

    def to_json(self) -> dict:
        trip = []
        for k, dk in enumerate(self.differentials):
            for I, images in dk.items():
                for J, c, v in images:
                    trip.append({"from": list(I), "to": list(J), "variable": v, "coeff": c.to_json()})
        return {
            "algebra": self.algebra.to_json(),
            "terms": [[list(I) for I in t] for t in self.terms],
            "shifts": {",".join(map(str, I)): s for I, s in self.shifts.items()},
            "differential": trip,
        }


def koszul_coefficient(theta: ThetaMatrix, I: Sequence[int], s: int) -> UnitScalar:
    """(-1)^s prod_{i in I} theta_{i, i_s}."""
    c = ONE
    for i in I:
        c = c * theta[i, I[s]]
    return -c if s % 2 else c


def lambda_coefficient(theta: ThetaMatrix, I: Sequence[int], s: int) -> UnitScalar:
    """(-1)^s prod_{i in I} theta_{i_s, i}."""
    c = ONE
    for i in I:
        c = c * theta[I[s], i]
    return -c if s % 2 else c


def koszul_build(alg: GradedSkewAlgebra, verify: bool = True) -> KoszulComplex:
    if alg.kind != POLYNOMIAL:
        raise ValueError("the Koszul complex is built over the polynomial kind")
    n1 = alg.nvars
    terms = tuple(tuple(itertools.combinations(range(n1), k)) for k in range(n1 + 1))
    shifts = {I: -sum(alg.weights[i] for i in I) for t in terms for I in t}
    diffs = []
    for k in range(n1 + 1):
        dk = {}
        for I in terms[k]:
            dk[I] = [
                (I[:s] + I[s + 1:], koszul_coefficient(alg.theta, I, s), I[s]) for s in range(k)
            ]
        diffs.append(dk)
    K = KoszulComplex(alg, terms, shifts, tuple(diffs))
    if verify:
        bad = koszul_d_squared(K)
        if bad is not None:
            raise ArithmeticError(f"Koszul d^2 != 0 at summand {bad}")
    return K


def _unit_var(alg: GradedSkewAlgebra, i: int) -> tuple:
    e = [0] * alg.nvars
    e[i] = 1
    return tuple(e)


def koszul_d_squared(K: KoszulComplex):
    """None if d.d = 0 symbolically, else the first offending summand.

    Right-module convention: d(e_I f) = sum c e_{I - i_s} x_{i_s} f, so the
    composite on e_I is sum c c' e_J (x_t x_s) with t removed second.
    """
    alg = K.algebra
    for k in range(2, len(K.terms)):
        for I in K.terms[k]:
            acc: dict = {}
            for J, c1, s in K.differentials[k][I]:
                for L, c2, t in K.differentials[k - 1][J]:
                    r = alg.normalize_word((t, s))
                    key = (L, r[1])
                    acc[key] = acc.get(key, LaurentPoly()) + LaurentPoly.from_unit(c1 * c2 * r[0])
            for key, v in acc.items():
                if not v.is_zero():
                    return I, key
    return None


def default_specialization(params: Iterable[str], seed: int = 0) -> dict:
    """Distinct primes (shuffled reproducibly) for formal parameters."""
    names = sorted(params)
    primes = []
    p = 2
    while len(primes) < len(names):
        if all(p % q for q in primes):
            primes.append(p)
        p += 1
    random.Random(seed).shuffle(primes)
    return {nm: Fraction(pr) for nm, pr in zip(names, primes)}


def _specialized(c: UnitScalar, values: Mapping) -> Fraction:
    return Fraction(c.evaluate(values))


def koszul_graded_matrix(K: KoszulComplex, k: int, m: int, values: Mapping) -> tuple:
    """Matrix of d_k in internal degree m: columns C_k, rows C_{k-1}."""
    alg = K.algebra

    def basis(kk):
        out = []
        for I in K.terms[kk]:
            for e in alg.graded_basis(m + K.shifts[I]):
                out.append((I, e))
        return out

    src, dst = basis(k), basis(k - 1)
    index = {b: i for i, b in enumerate(dst)}
    rows = [[Fraction(0)] * len(src) for _ in range(len(dst))]
    for col, (I, f) in enumerate(src):
        for J, c, s in K.differentials[k][I]:
            r = alg.multiply_monomials(_unit_var(alg, s), f)
            row = index[(J, r[1])]
            rows[row][col] += _specialized(c * r[0], values)
    return rows, len(src), len(dst)


@dataclass
class HomologyReport:
    passed: bool
    dims: dict  # (k, m) -> homology dimension
    first_failure: tuple | None = None

    def __bool__(self):
        return self.passed


def koszul_homology_check(K: KoszulComplex, degree_bound: int, values: Mapping | None = None) -> HomologyReport:
    """Exactness of the resolution of the trivial module in degrees 0..bound."""
    if degree_bound < 0:
        raise ValueError("degree_bound must be >= 0")
    if values is None:
        values = default_specialization(K.algebra.theta.parameters())
    top = len(K.terms) - 1
    dims = {}
    failure = None
    for m in range(0, degree_bound + 1):
        ranks = {}
        sizes = {}
        for k in range(0, top + 1):
            sizes[k] = sum(len(K.algebra.graded_basis(m + K.shifts[I])) for I in K.terms[k])
        for k in range(1, top + 1):
            rows, nc, nr = koszul_graded_matrix(K, k, m, values)
            ranks[k] = linalg.rank(rows, nc) if nr and nc else 0
        for k in range(0, top + 1):
            h = sizes[k] - ranks.get(k, 0) - ranks.get(k + 1, 0)
            dims[(k, m)] = h
            expected = 1 if (k == 0 and m == 0) else 0
            if h != expected and failure is None:
                failure = (k, m)
    return HomologyReport(failure is None, dims, failure)


def lambda_action(K: KoszulComplex, j: int, I: Sequence[int]):
    """y_j on the generator e_I: (I - {j}, coefficient) or None when j not in I."""
    I = tuple(I)
    if j not in I:
        return None
    s = I.index(j)
    return I[:s] + I[s + 1:], lambda_coefficient(K.algebra.theta, I, s)


def lambda_bimodule_check(K: KoszulComplex):
    """None if every y_j anticommutes with d (so the action is by chain maps of
    odd degree, the DG-bimodule compatibility); otherwise the offending data."""
    alg = K.algebra
    for j in range(alg.nvars):
        for k in range(1, len(K.terms)):
            for I in K.terms[k]:
                acc: dict = {}

                def add(L, var, c):
                    key = (L, var)
                    acc[key] = acc.get(key, LaurentPoly()) + LaurentPoly.from_unit(c)

                h = lambda_action(K, j, I)
                if h is not None:
                    J, c = h
                    for L, c2, t in K.differentials[len(J)][J]:
                        add(L, t, c * c2)
                for J, c1, s in K.differentials[k][I]:
                    h2 = lambda_action(K, j, J)
                    if h2 is not None:
                        add(h2[0], s, c1 * h2[1])
                for key, v in acc.items():
                    if not v.is_zero():
                        return j, I, key
    return None


def lambda_relations_check(K: KoszulComplex):
    """None if the operators h_j satisfy the defining relations of the skew
    exterior algebra: h_j h_j = 0 and theta_jk h_j h_k + theta_kj h_k h_j = 0."""
    th = K.algebra.theta
    n1 = K.algebra.nvars

    def apply(j, vec):
        out: dict = {}
        for I, c in vec.items():
            h = lambda_action(K, j, I)
            if h is not None:
                out[h[0]] = out.get(h[0], LaurentPoly()) + c * h[1]
        return out

    for k in range(len(K.terms)):
        for I in K.terms[k]:
            base = {I: LaurentPoly.coerce(1)}
            for j in range(n1):
                for i in range(j, n1):
                    if i == j:
                        res = apply(j, apply(j, base))
                    else:
                        a = apply(j, apply(i, base))
                        b = apply(i, apply(j, base))
                        res = {}
                        for key in set(a) | set(b):
                            res[key] = a.get(key, LaurentPoly()) * th[j, i] + b.get(key, LaurentPoly()) * th[i, j]
                    if any(not v.is_zero() for v in res.values()):
                        return I, j, i
    return None


def binomial_ranks(n_plus_1: int) -> tuple:
    return tuple(comb(n_plus_1, k) for k in range(n_plus_1 + 1))
