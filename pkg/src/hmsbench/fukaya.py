"""Directed categories of vanishing cycles.

Plane case (weights a, b, c).  Every vanishing cycle L_i meets the others in
six points, placed around L_i at six positions (0..5, counterclockwise,
at angles 0, 60, ..., 300 degrees in a local picture of L_i):

    0 R   xbar_i (i < a)    or x_{i-a}
    1 UR  y_i (i < a+c)     or ybar_{i-a-c}
    2 UL  zbar_i (i < c)    or z_{i-c}
    3 L   x_i (i < b+c)     or xbar_{i-b-c}
    4 LL  ybar_i (i < b)    or y_{i-b}
    5 LR  z_i (i < a+b)     or zbar_{i-a-b}

A point sits at opposite positions (p and p+3) on its two cycles.  The arc
of L_i between consecutive positions alternately bounds a bounded or an
unbounded region on its two sides; the admissible directed edges are those
that keep a bounded region on the left:

    0->1, 2->1, 2->3, 4->3, 4->5, 0->5

Matching the local charts of two cycles at a crossing sends the quadrant
(r, t) of L_i to (t, -r) of L_j, which forces a left-turning walk to keep its
sense of rotation when it switches cycle.  The walk is therefore a
permutation of the 6n directed edges; its cycles are the immersed polygons.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as iproduct
from math import gcd
from typing import Mapping, Sequence

from .algebra import ONE, LaurentPoly, UnitScalar
from .bside import build_C, realize_q
from .cover import (
    CoveringDatum,
    build_cover,
    closed_form_table,
    intersection_table,
    normalize_weights,
)
from .dgcat import (
    DirectedCategory,
    GaugeTransform,
    Generator,
    check_associativity,
    check_degrees,
    gauge_match,
)

ADMISSIBLE = ((0, 1), (2, 1), (2, 3), (4, 3), (4, 5), (0, 5))
# which side of L_i each portion (p, p+1) bounds, and whether that region is bounded
PORTIONS = {
    0: ("outside", "unbounded"),
    1: ("inside", "bounded"),
    2: ("outside", "unbounded"),
    3: ("inside", "unbounded"),
    4: ("outside", "bounded"),
    5: ("inside", "unbounded"),
}
T_TYPES = {("x", "y"), ("z", "x"), ("y", "z")}
TP_TYPES = {("x", "z"), ("y", "x"), ("z", "y")}


def gen_name(typ: str, barred: bool, i: int) -> str:
    return f"{typ}{'bar' if barred else ''}{i}"


def parse_name(name: str) -> tuple:
    typ = name[0]
    barred = name[1:4] == "bar"
    idx = int(name[4:] if barred else name[1:])
    return typ, barred, idx


def corner_layout(a: int, b: int, c: int) -> dict:
    """(cycle index, position) -> generator name."""
    n = a + b + c
    out = {}
    for i in range(n):
        out[(i, 0)] = gen_name("x", True, i) if i < a else gen_name("x", False, i - a)
        out[(i, 1)] = gen_name("y", False, i) if i < a + c else gen_name("y", True, i - a - c)
        out[(i, 2)] = gen_name("z", True, i) if i < c else gen_name("z", False, i - c)
        out[(i, 3)] = gen_name("x", False, i) if i < b + c else gen_name("x", True, i - b - c)
        out[(i, 4)] = gen_name("y", True, i) if i < b else gen_name("y", False, i - b)
        out[(i, 5)] = gen_name("z", False, i) if i < a + b else gen_name("z", True, i - a - b)
    return out


def check_layout(datum: CoveringDatum) -> list:
    """Cross-check the corner layout against the covering-model table."""
    layout = corner_layout(datum.a, datum.b, datum.c)
    table = intersection_table(datum).by_name()
    problems = []
    where: dict = {}
    for (i, p), g in layout.items():
        where.setdefault(g, []).append((i, p))
    for g, spots in where.items():
        if len(spots) != 2:
            problems.append((g, "not on exactly two cycles"))
            continue
        (i1, p1), (i2, p2) = sorted(spots)
        if (p2 - p1) % 6 != 3:
            problems.append((g, "positions not opposite"))
        pt = table.get(g)
        if pt is None or (pt.i, pt.j) != (i1, i2):
            problems.append((g, "cycles disagree with the intersection table"))
    if set(where) != set(table):
        problems.append(("names", sorted(set(where) ^ set(table))))
    return problems


@dataclass(frozen=True)
class Edge:
    cycle: int
    start: int
    end: int

    @property
    def direction(self) -> int:
        return 1 if (self.end - self.start) % 6 == 1 else -1

    @property
    def portion(self) -> int:
        return self.start if self.direction == 1 else self.end


def all_edges(n: int) -> list:
    return [Edge(i, s, t) for i in range(n) for s, t in ADMISSIBLE]


def left_turn(layout: dict, e: Edge, cycle_of: dict) -> Edge:
    """Successor of e: switch cycles at its end point, keep the sense of rotation."""
    g = layout[(e.cycle, e.end)]
    other = cycle_of[g][0] if cycle_of[g][1] == e.cycle else cycle_of[g][1]
    pos = (e.end + 3) % 6
    nxt = Edge(other, pos, (pos + e.direction) % 6)
    if (nxt.start, nxt.end) not in ADMISSIBLE:
        raise ArithmeticError(f"left turn at {g} leaves along an inadmissible edge")
    return nxt


def _cycles_of(layout: dict) -> dict:
    out: dict = {}
    for (i, _), g in sorted(layout.items()):
        out.setdefault(g, []).append(i)
    return {g: tuple(v) for g, v in out.items()}


@dataclass(frozen=True)
class Polygon:
    edges: tuple
    corners: tuple  # generator names, corner k is the end of edge k

    @property
    def cycles(self) -> tuple:
        return tuple(e.cycle for e in self.edges)


@dataclass(frozen=True)
class Triangle:
    name: str  # T<i> or Tp<i>
    family: str  # "T" or "Tp"
    kind: str  # e.g. "xy"
    p: str
    q: str
    r: str
    cycles: tuple  # (i, j, k) ascending
    edges: tuple


def polygon_enumerate(datum: CoveringDatum, max_corners: int = 8):
    """Closed left-turn walks with at most max_corners corners.

    Returns (triangles, higher): the primitive 3-corner walks classified as
    triangles, and every closed walk with >= 4 corners whose cycle sequence is
    a rotation of a strictly increasing one (those would feed m_k, k >= 3).
    """
    if max_corners < 3:
        raise ValueError("max_corners must be >= 3")
    a, b, c, n = datum.a, datum.b, datum.c, datum.n
    layout = corner_layout(a, b, c)
    cyc = _cycles_of(layout)
    edges = all_edges(n)
    succ = {e: left_turn(layout, e, cyc) for e in edges}
    if len(set(succ.values())) != len(edges):
        raise ArithmeticError("left-turn rule is not a permutation of the edges")

    walks = []
    for e0 in edges:
        # depth-first along the (single-successor) transition graph
        stack = [(e0, (e0,))]
        while stack:
            e, path = stack.pop()
            nxt = succ[e]
            if nxt == e0:
                walks.append(path)
                continue
            if len(path) < max_corners:
                stack.append((nxt, path + (nxt,)))
    prim = {}
    for w in walks:
        k = min(range(len(w)), key=lambda t: (w[t].cycle, w[t].start, w[t].end))
        rot = w[k:] + w[:k]
        prim[rot] = Polygon(rot, tuple(layout[(e.cycle, e.end)] for e in rot))

    def ascending(poly: Polygon) -> bool:
        cs = poly.cycles
        k = cs.index(min(cs))
        rot = cs[k:] + cs[:k]
        return all(u < v for u, v in zip(rot, rot[1:]))

    triangles = []
    higher = []
    for poly in prim.values():
        if len(poly.edges) == 3:
            triangles.append(_classify(poly, datum))
        elif ascending(poly):
            higher.append(poly)
    triangles.sort(key=lambda t: (t.family, int(t.name.lstrip("Tp"))))
    return triangles, higher


def _classify(poly: Polygon, datum: CoveringDatum) -> Triangle:
    a, b, c = datum.a, datum.b, datum.c
    cyc = poly.cycles
    if len(set(cyc)) != 3:
        raise ArithmeticError(f"triangle {poly.corners} repeats a cycle")
    i, j, k = sorted(cyc)
    owners = {}
    for g in poly.corners:
        owners[g] = tuple(sorted(x for x in cyc if _on(datum, g, x)))
    p = next(g for g in poly.corners if owners[g] == (i, j))
    q = next(g for g in poly.corners if owners[g] == (j, k))
    r = next(g for g in poly.corners if owners[g] == (i, k))
    tp, tq, tr = parse_name(p), parse_name(q), parse_name(r)
    if sorted([tp[0], tq[0], tr[0]]) != ["x", "y", "z"]:
        raise ArithmeticError(f"triangle {poly.corners} lacks one of each type")
    if tp[1] or tq[1] or not tr[1]:
        raise ArithmeticError(f"triangle {poly.corners} has the wrong ascending/descending corners")
    kind = (tp[0], tq[0])
    idx = tp[2]
    if kind in T_TYPES:
        family = "T"
        off = {("x", "y"): 0, ("z", "x"): c, ("y", "z"): b + c}[kind]
    elif kind in TP_TYPES:
        family = "Tp"
        off = {("x", "z"): 0, ("y", "x"): b, ("z", "y"): b + c}[kind]
    else:
        raise ArithmeticError(f"unexpected corner types {kind}")
    return Triangle(f"{family}{off + idx}", family, "".join(kind), p, q, r, (i, j, k), poly.edges)


def _on(datum: CoveringDatum, g: str, cycle: int) -> bool:
    typ, bar, idx = parse_name(g)
    off = {
        ("x", False): datum.a,
        ("x", True): datum.b + datum.c,
        ("y", False): datum.b,
        ("y", True): datum.a + datum.c,
        ("z", False): datum.c,
        ("z", True): datum.a + datum.b,
    }[(typ, bar)]
    return cycle in (idx, idx + off)


# gradings

@dataclass(frozen=True)
class PhaseValue:
    """Phase as a rational multiple of pi, with the data used to pick it."""

    over_pi: Fraction
    arg_determination: int = 0
    eps: int = 1

    def degree_against(self, other: "PhaseValue") -> int:
        return maslov_degree(other.over_pi - self.over_pi)


def maslov_degree(diff_over_pi: Fraction) -> int:
    """Smallest integer greater than diff/pi (diff not a multiple of pi)."""
    d = Fraction(diff_over_pi)
    if d.denominator == 1:
        raise ArithmeticError("phase difference is a multiple of pi")
    return int(d.__floor__()) + 1


# (eps on L_i, eps on L_j, determination of arg x on L_j minus that on L_i)
PHASE_DATA = {
    ("y", False): (1, -1, 0),
    ("z", False): (-1, 1, 0),
    ("y", True): (-1, 1, -1),
    ("z", True): (1, -1, -1),
}


def phase_value(datum: CoveringDatum, j: int, eps: int, argx_over_pi: Fraction, det: int = 0) -> PhaseValue:
    """Real-valued phase of the lifted cycle L_j at a point with the given arg x."""
    a, b, c, n = datum.a, datum.b, datum.c, datum.n
    argx = Fraction(argx_over_pi) + 2 * det
    val = (
        Fraction(a - b - c, b + c) * argx
        + eps * (Fraction(1, 2) - Fraction(c, b + c))
        + Fraction(2 * j * a, n * (b + c))
    )
    return PhaseValue(val, det, eps)


def phase_difference(datum: CoveringDatum, typ: str, barred: bool, i: int) -> Fraction:
    """phi(L_j) - phi(L_i) / pi at the intersection point of the given type."""
    a, b, c, n = datum.a, datum.b, datum.c, datum.n
    off = {("y", False): b, ("z", False): c, ("y", True): a + c, ("z", True): a + b}[(typ, barred)]
    j = i + off
    ei, ej, ddet = PHASE_DATA[(typ, barred)]
    # arg x itself cancels; evaluate both at a common reference value
    pi_ = phase_value(datum, i, ei, Fraction(0), 0)
    pj = phase_value(datum, j, ej, Fraction(0), ddet)
    diff = pj.over_pi - pi_.over_pi
    closed = {
        ("y", False): 1 - Fraction(2 * b, n),
        ("z", False): 1 - Fraction(2 * c, n),
        ("y", True): 1 + Fraction(2 * b, n),
        ("z", True): 1 + Fraction(2 * c, n),
    }[(typ, barred)]
    assert diff == closed, (typ, barred, diff, closed)
    return diff


@dataclass
class GradingReport:
    degrees: dict
    phase_differences: dict
    consistent: bool
    conflicts: list = field(default_factory=list)


def grading_assign(datum: CoveringDatum, table=None, triangles=None) -> GradingReport:
    """Degrees of all generators.

    y, z and their barred versions come from exact phase differences; x and
    xbar from additivity along triangles.  Every triangle is then re-checked,
    which doubles as the consistency check between the two eps-portions.
    """
    a, b, c = datum.a, datum.b, datum.c
    if not (b < a + c and c < a + b):
        raise ValueError("grading needs b < a+c and c < a+b (sort the weights)")
    if table is None:
        table = intersection_table(datum)
    if triangles is None:
        triangles, _ = polygon_enumerate(datum, 3)
    deg, diffs = {}, {}
    for pt in table.points:
        if pt.type in ("y", "z"):
            d = phase_difference(datum, pt.type, pt.barred, pt.i)
            diffs[pt.name] = d
            deg[pt.name] = maslov_degree(d)
    for t in triangles:
        known = {g: deg.get(g) for g in (t.p, t.q, t.r)}
        if known[t.p] is None and known[t.q] is not None and known[t.r] is not None:
            deg[t.p] = known[t.r] - known[t.q]
        elif known[t.q] is None and known[t.p] is not None and known[t.r] is not None:
            deg[t.q] = known[t.r] - known[t.p]
        elif known[t.r] is None and known[t.p] is not None and known[t.q] is not None:
            deg[t.r] = known[t.p] + known[t.q]
    conflicts = []
    for t in triangles:
        if any(g not in deg for g in (t.p, t.q, t.r)) or deg[t.p] + deg[t.q] != deg[t.r]:
            conflicts.append(t.name)
    missing = [p.name for p in table.points if p.name not in deg]
    return GradingReport(deg, diffs, not conflicts and not missing, conflicts + missing)


# structure constants

@dataclass
class AreaWeights:
    area: dict  # triangle name -> UnitScalar
    holonomy: dict = field(default_factory=dict)  # cycle index -> UnitScalar
    cut_portion: int = 5

    @classmethod
    def formal(cls, n: int, holonomy: bool = False) -> "AreaWeights":
        area = {f"T{i}": UnitScalar.param(f"A_T{i}") for i in range(n)}
        area.update({f"Tp{i}": UnitScalar.param(f"A_Tp{i}") for i in range(n)})
        hol = {i: UnitScalar.param(f"h{i}") for i in range(n)} if holonomy else {}
        return cls(area, hol)

    @classmethod
    def symmetric(cls, n: int, value=None) -> "AreaWeights":
        v = ONE if value is None else UnitScalar.coerce(value)
        return cls({f"{f}{i}": v for f in ("T", "Tp") for i in range(n)})

    @classmethod
    def numeric(cls, areas: Mapping[str, int], base: str = "Q") -> "AreaWeights":
        return cls({k: UnitScalar.param(base, int(v)) for k, v in areas.items()})

    def hol(self, i: int) -> UnitScalar:
        return self.holonomy.get(i, ONE)


@dataclass
class PlaneFukayaCategory:
    category: DirectedCategory
    provenance: dict  # triangle name -> (p, q, r)
    triangles: list
    grading: GradingReport
    weights: tuple  # (a, b, c) as used (sorted)
    original_weights: tuple
    higher_polygons: list

    @property
    def invariant(self) -> UnitScalar:
        return invariant(self)

    def to_json(self) -> dict:
        d = self.category.to_json()
        d["weights"] = list(self.weights)
        d["original_weights"] = list(self.original_weights)
        d["degrees"] = self.grading.degrees
        d["triangles"] = {t.name: [t.p, t.q, t.r] for t in self.triangles}
        d["invariant"] = invariant(self).to_json()
        return d


def boundary_holonomy(t: Triangle, weights: AreaWeights) -> UnitScalar:
    h = ONE
    for e in t.edges:
        if e.portion == weights.cut_portion:
            h = h * weights.hol(e.cycle) ** e.direction
    return h


def m2_assemble(datum: CoveringDatum, triangles: Sequence[Triangle], weights: AreaWeights, degrees: Mapping[str, int]) -> tuple:
    gens = []
    n = datum.n
    table = intersection_table(datum)
    for pt in sorted(table.points, key=lambda p: (p.i, p.j, p.name)):
        gens.append(Generator(pt.name, pt.i, pt.j, degrees[pt.name]))
    m2, prov = {}, {}
    for t in triangles:
        sign = 1 if t.family == "T" else -1
        alpha = weights.area[t.name] * boundary_holonomy(t, weights)
        if sign < 0:
            alpha = -alpha
        m2.setdefault((t.p, t.q), {})[t.r] = LaurentPoly.from_unit(alpha)
        prov[t.name] = (t.p, t.q, t.r)
    C = DirectedCategory([f"L{i}" for i in range(n)], gens, m2, meta={"kind": "Fukaya"})
    return C, prov


def invariant(F: PlaneFukayaCategory, category: DirectedCategory | None = None) -> UnitScalar:
    """prod over T of alpha / prod over T' of alpha, read from the table."""
    C = category or F.category
    out = ONE
    for name, (p, q, r) in F.provenance.items():
        u = C.unit_constant(p, q, r)
        out = out * (u if name.startswith("T") and not name.startswith("Tp") else u.inverse())
    return out


def plane_build(a: int, b: int, c: int, weights: AreaWeights | None = None, max_corners: int = 6) -> PlaneFukayaCategory:
    orig = (a, b, c)
    if gcd(gcd(a, b), c) != 1:
        raise ValueError("weights must be coprime")
    (a, b, c), _ = normalize_weights(orig)
    datum = build_cover(a, b, c)
    bad = check_layout(datum)
    if bad:
        raise ArithmeticError(f"corner layout disagrees with the cover: {bad[:3]}")
    triangles, higher = polygon_enumerate(datum, max_corners)
    if len(triangles) != 2 * datum.n:
        raise ArithmeticError(f"expected {2 * datum.n} triangles, found {len(triangles)}")
    grading = grading_assign(datum, triangles=triangles)
    if not grading.consistent:
        raise ArithmeticError(f"inconsistent gradings: {grading.conflicts}")
    if weights is None:
        weights = AreaWeights.formal(datum.n)
    C, prov = m2_assemble(datum, triangles, weights, grading.degrees)
    C.higher_mk_zero = not higher
    return PlaneFukayaCategory(C, prov, triangles, grading, (a, b, c), orig, higher)


def antisymmetry_check(F: PlaneFukayaCategory) -> list:
    """Pairs (u_i, v_{i+o_u}) and (v_i, u_{i+o_v}) compose to the same barred
    generator; with symmetric area weights the two constants must be
    opposite.  Returns the offending (u, v, i, lhs, rhs) tuples."""
    a, b, c = F.weights
    n = a + b + c
    off = {"x": a, "y": b, "z": c}
    C = F.category
    bad = []
    for u, v in (("x", "y"), ("y", "z"), ("z", "x")):
        for i in range(n):
            j = i + off[u] + off[v]
            if j >= n:
                continue
            lhs = C.product(gen_name(u, False, i), gen_name(v, False, i + off[u]))
            rhs = C.product(gen_name(v, False, i), gen_name(u, False, i + off[v]))
            if set(lhs) != set(rhs) or len(lhs) != 1 or any(not (lhs[r] + rhs[r]).is_zero() for r in lhs):
                bad.append((u, v, i, {k: str(x) for k, x in lhs.items()}, {k: str(x) for k, x in rhs.items()}))
    return bad


# comparison with the exterior category

C_MONOMIAL_FOR = {
    ("x", False): "y0",
    ("y", False): "y1",
    ("z", False): "y2",
    ("x", True): "y1y2",
    ("y", True): "y0y2",
    ("z", True): "y0y1",
}


def relabel_C_as_fukaya(C: DirectedCategory) -> DirectedCategory:
    """Rename generators L{k}L{m}:<monomial> of the exterior category to the
    Floer names x_k, ..., zbar_k."""
    inverse = {v: k for k, v in C_MONOMIAL_FOR.items()}
    rename = {}
    for g in C.generators:
        mono = g.name.split(":", 1)[1]
        typ, bar = inverse[mono]
        rename[g.name] = gen_name(typ, bar, g.source)
    gens = [Generator(rename[g.name], g.source, g.target, g.degree) for g in C.generators]
    m2 = {(rename[p], rename[q]): {rename[r]: v for r, v in row.items()} for (p, q), row in C.m2.items()}
    return DirectedCategory([f"L{i}" for i in range(len(C.objects))], gens, m2, meta=dict(C.meta))


def _canonical(C: DirectedCategory) -> DirectedCategory:
    gens = sorted(C.generators, key=lambda g: (g.source, g.target, g.name))
    return DirectedCategory(list(C.objects), gens, C.m2, C.m1_zero, C.higher_mk_zero, dict(C.meta))


@dataclass
class HMSReport:
    passed: bool
    weights: tuple
    invariant: UnitScalar
    q_target: UnitScalar
    theta: object
    degrees_agree: bool
    gauge: GaugeTransform | None
    certificate: object = None

    def __bool__(self):
        return self.passed

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "weights": list(self.weights),
            "invariant": str(self.invariant),
            "q_theta": str(self.q_target),
            "degrees_agree": self.degrees_agree,
            "gauge": {k: str(v) for k, v in self.gauge.scale.items()} if self.gauge else None,
            "certificate": self.certificate.describe() if self.certificate is not None else None,
        }


def hms_verify(a: int, b: int, c: int, weights: AreaWeights | None = None, fukaya: PlaneFukayaCategory | None = None, q_override=None) -> HMSReport:
    """Compare the Floer-side category with the exterior category for the
    matching theta.  q(theta) is set to (-1)^n times the Floer invariant,
    unless q_override forces a specific value (used to test failures)."""
    F = fukaya or plane_build(a, b, c, weights)
    aa, bb, cc = F.weights
    n = aa + bb + cc
    inv = invariant(F)
    q = inv if n % 2 == 0 else -inv
    if q_override is not None:
        q = UnitScalar.coerce(q_override)
    theta = realize_q((aa, bb, cc), q)
    Cc = relabel_C_as_fukaya(build_C((aa, bb, cc), theta))
    Fc = _canonical(F.category)
    Cc = _canonical(Cc)
    deg_ok = {g.name: g.degree for g in Fc.generators} == {g.name: g.degree for g in Cc.generators}
    res = gauge_match(Fc, Cc)
    ok = isinstance(res, GaugeTransform) and deg_ok
    return HMSReport(
        ok,
        F.weights,
        inv,
        q,
        theta,
        deg_ok,
        res if isinstance(res, GaugeTransform) else None,
        None if isinstance(res, GaugeTransform) else res,
    )


# weighted projective lines

def cp1_build(a: int, b: int) -> DirectedCategory:
    if gcd(a, b) != 1:
        raise ValueError("weights must be coprime")
    n = a + b
    gens = [Generator(f"x{i}", i, i + a, 1) for i in range(b)]
    gens += [Generator(f"y{i}", i, i + b, 1) for i in range(a)]
    gens.sort(key=lambda g: (g.source, g.target, g.name))
    C = DirectedCategory([f"L{j}" for j in range(n)], gens, {}, meta={"kind": "FukayaLine", "weights": (a, b)})
    return C


def cp1_cycles(a: int, b: int) -> list:
    """L_j = {-j, b-j} as subsets of Z/(a+b)."""
    n = a + b
    return [frozenset({(-j) % n, (b - j) % n}) for j in range(n)]


def cp1_intersections(a: int, b: int) -> list:
    cyc = cp1_cycles(a, b)
    out = []
    for i in range(len(cyc)):
        for j in range(i + 1, len(cyc)):
            for pt in sorted(cyc[i] & cyc[j]):
                out.append((i, j, pt))
    return out


def cp1_degrees(a: int, b: int) -> dict:
    """Degrees from the phases phi(p_{j,-}) = pi (b+2j)/(a+b) and
    phi(p_{j,+}) = pi (a+2j)/(a+b)."""
    n = a + b

    def phi(j, sign):
        return Fraction(b + 2 * j, n) if sign < 0 else Fraction(a + 2 * j, n)

    out = {}
    for i in range(b):  # x_i at b - i: the + point of L_i, the - point of L_{i+a}
        out[f"x{i}"] = phi(i + a, -1) - phi(i, +1)
    for i in range(a):  # y_i at -i: the - point of L_i, the + point of L_{i+b}
        out[f"y{i}"] = phi(i + b, +1) - phi(i, -1)
    return out


def relabel_line_C(C: DirectedCategory, a: int, b: int) -> DirectedCategory:
    rename = {}
    for g in C.generators:
        mono = g.name.split(":", 1)[1]
        rename[g.name] = (f"x{g.source}" if mono == "y0" else f"y{g.source}")
    gens = [Generator(rename[g.name], g.source, g.target, g.degree) for g in C.generators]
    gens.sort(key=lambda g: (g.source, g.target, g.name))
    m2 = {(rename[p], rename[q]): {rename[r]: v for r, v in row.items()} for (p, q), row in C.m2.items()}
    return DirectedCategory([f"L{i}" for i in range(len(C.objects))], gens, m2)


# products of fibrations

def product_build(C1: DirectedCategory, C2: DirectedCategory) -> DirectedCategory:
    if not (C1.m1_zero and C2.m1_zero):
        raise ValueError("factors must have m1 = 0")
    N1, N2 = len(C1.objects), len(C2.objects)

    def idx(i, j):
        return i * N2 + j

    # identities carry their object so that names stay unique
    def basis(C, i, k):
        return [f"id{i}"] if i == k else [g.name for g in C.hom(i, k)]

    def is_id(s):
        return s.startswith("id")

    def deg(C, s):
        return 0 if is_id(s) else C.gen(s).degree

    gens = []
    for i, j in iproduct(range(N1), range(N2)):
        for k, l in iproduct(range(N1), range(N2)):
            if (i, j) == (k, l) or k < i or l < j:
                continue
            for s in basis(C1, i, k):
                for t in basis(C2, j, l):
                    gens.append(Generator(f"{s}|{t}", idx(i, j), idx(k, l), deg(C1, s) + deg(C2, t)))

    def mult(C, s, s2):
        if is_id(s):
            return {s2: LaurentPoly.coerce(1)}
        if is_id(s2):
            return {s: LaurentPoly.coerce(1)}
        return C.product(s, s2)

    out_of: dict = {}
    for g in gens:
        out_of.setdefault(g.source, []).append(g)
    m2 = {}
    for g in gens:
        s1, t1 = g.name.split("|")
        for h in out_of.get(g.target, []):
            s2, t2 = h.name.split("|")
            row = {}
            for s, cs in mult(C1, s1, s2).items():
                for t, ct in mult(C2, t1, t2).items():
                    row[f"{s}|{t}"] = cs * ct
            if row:
                m2[(g.name, h.name)] = row
    objects = [f"L{i}{j}" if max(N1, N2) <= 10 else f"L{i}_{j}" for i, j in iproduct(range(N1), range(N2))]
    return DirectedCategory(objects, gens, m2, meta={"kind": "product"})


# F1 table

def f1_table(alpha=None, alpha_p=None) -> DirectedCategory:
    """Four vanishing cycles of the F1 mirror, all morphisms in degree 0."""
    al = UnitScalar.coerce(alpha if alpha is not None else "alpha")
    ap = UnitScalar.coerce(alpha_p if alpha_p is not None else "alphap")
    gens = [Generator(nm, 0, 1, 0) for nm in ("x0", "y0", "z0")]
    gens += [Generator(nm, 1, 2, 0) for nm in ("x1", "y1", "z1")]
    gens += [Generator(nm, 0, 2, 0) for nm in ("xbar", "ybar", "zbar")]
    gens += [Generator("p0", 0, 3, 0), Generator("q", 1, 3, 0), Generator("qp", 1, 3, 0), Generator("p2", 2, 3, 0)]
    T = al * ap
    m2 = {
        # triangles among L0, L1, L2 (T-type +alpha alpha', T'-type -alpha alpha')
        ("x0", "y1"): {"zbar": T},
        ("z0", "x1"): {"ybar": T},
        ("y0", "z1"): {"xbar": T},
        ("x0", "z1"): {"ybar": -T},
        ("y0", "x1"): {"zbar": -T},
        ("z0", "y1"): {"xbar": -T},
        # discs with a corner on L3
        ("y0", "q"): {"p0": al},
        ("z0", "qp"): {"p0": ap},
        ("y1", "p2"): {"qp": -al},
        ("z1", "p2"): {"q": ap},
        ("xbar", "p2"): {"p0": ONE},
    }
    m2 = {k: {r: LaurentPoly.from_unit(UnitScalar.coerce(v)) for r, v in row.items()} for k, row in m2.items()}
    return DirectedCategory(["L0", "L1", "L2", "L3"], gens, m2, meta={"kind": "F1"})


# higher-dimensional counts

def subset_count(weights: Sequence[int], d: int) -> int:
    if d < 1:
        raise ValueError("d must be >= 1")
    ways = [1] + [0] * d
    for a in weights:
        for s in range(d, a - 1, -1):
            ways[s] += ways[s - a]
    return ways[d]


def total_intersections(weights: Sequence[int]) -> int:
    N = sum(weights)
    return sum(subset_count(weights, j - i) for i in range(N) for j in range(i + 1, N))


def report_json(F: PlaneFukayaCategory, hms: HMSReport | None = None) -> str:
    d = F.to_json()
    if hms is not None:
        d["hms"] = hms.to_json()
    return json.dumps(d, indent=1, default=str)
