"""Combinatorial model of the branched cover x : Sigma_0 -> C and its
vanishing cycles.

The fibre over a point near the origin has b+c sheets, labelled by Z/(b+c).
Angular positions in the base are measured in units of 2*pi/n (n = a+b+c)
on the universal cover of the punctured inner disc, so position s and
position s+n are the same ray one turn apart.  Sheet labels are carried
along the inner circle by continuation; a sheet with label q at position
s+n is the sheet with label q-a at position s (the monodromy around the
origin).  Branch point m sits on the ray of position m (angle
(2m + eps0) pi / n, eps0 = (b+c) mod 2) and, seen from unwrapped position s,
exchanges the sheets s and s+b.

The arc delta_j occupies positions [P_j, P_j + b + c] with
P_j = h - j + a (mod n), h = floor((b+c)/2); its double lift carries the sheet
pair {P_j, P_j + b}.  Intersections come from overlaps of these intervals.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import gcd, pi
from typing import Iterable, Sequence

ROTATE = "rotate"
OUT = "radial_out"
IN = "radial_in"

TYPE_OFFSET = {
    ("x", False): "a",
    ("x", True): "b+c",
    ("y", False): "b",
    ("y", True): "a+c",
    ("z", False): "c",
    ("z", True): "a+b",
}


def normalize_weights(weights: Sequence[int]) -> tuple:
    """Sort to a >= b >= c; returns (sorted, permutation into the original)."""
    order = sorted(range(len(weights)), key=lambda i: -weights[i])
    return tuple(weights[i] for i in order), tuple(order)


@dataclass(frozen=True)
class ArcPath:
    moves: tuple = ()

    @classmethod
    def rotation(cls, k: int) -> "ArcPath":
        step = 1 if k >= 0 else -1
        return cls(tuple((ROTATE, step) for _ in range(abs(k))))

    @classmethod
    def branch_loop(cls, s: int) -> "ArcPath":
        """Rotate to unwrapped position s, go around branch s, come back."""
        return cls.rotation(s) + cls(((OUT, s), (IN, s))) + cls.rotation(-s)

    def __add__(self, other: "ArcPath") -> "ArcPath":
        return ArcPath(self.moves + other.moves)


@dataclass(frozen=True)
class CoveringDatum:
    a: int
    b: int
    c: int
    verified: bool = field(default=False, compare=False)

    @property
    def n(self) -> int:
        return self.a + self.b + self.c

    @property
    def sheets(self) -> int:
        return self.b + self.c

    @property
    def h(self) -> int:
        return (self.b + self.c) // 2

    @property
    def eps0(self) -> int:
        return (self.b + self.c) % 2

    def origin_monodromy(self, q: int) -> int:
        return (q - self.a) % self.sheets

    def branch_angle(self, m: int) -> float:
        return (2 * m + self.eps0) * pi / self.n

    def transposition_at(self, s: int) -> tuple:
        """The pair exchanged by the branch point at unwrapped position s,
        in continuation labels at that position."""
        k = self.sheets
        return s % k, (s + self.b) % k

    def branch(self, m: int) -> tuple:
        """Transposition of branch m seen from the base sector."""
        return self.transposition_at(m % self.n)

    def to_base(self, q: int, s: int) -> int:
        """Continuation label at unwrapped position s -> label in the first turn."""
        return (q - self.a * (s // self.n)) % self.sheets

    def to_json(self) -> dict:
        return {
            "weights": [self.a, self.b, self.c],
            "n": self.n,
            "sheets": self.sheets,
            "origin_monodromy": f"q -> q - {self.a}",
            "branches": {m: list(self.branch(m)) for m in range(self.n)},
            # the cycles are the conjugation-symmetric lifts; the symplectic form is assumed anti-invariant
            "hypothesis": "omega anti-invariant under complex conjugation",
        }


def _swap(pair: tuple, q: int, k: int) -> int:
    u, v = pair
    if q % k == u:
        return v
    if q % k == v:
        return u
    return q % k


def transport(datum: CoveringDatum, path: ArcPath, start_sheet: int) -> int:
    """Sheet label (in the frame of the final sector) reached from start_sheet.

    radial_out(m) leaves the inner circle towards branch m passing it on the
    clockwise side; radial_in(m) returns on the counterclockwise side.  The
    out-and-back pair thus encircles the branch once.
    """
    k = datum.sheets
    s, outer, q = 0, None, start_sheet % k
    for move, arg in path.moves:
        if move == ROTATE:
            if outer is not None:
                raise ValueError("rotation is only allowed on the inner circle")
            if arg not in (1, -1):
                raise ValueError("rotation steps are single sectors")
            s += arg
        elif move == OUT:
            if outer is not None or (arg - s) % datum.n:
                raise ValueError(f"radial_out({arg}) at position {s} is not well formed")
            outer = s
        elif move == IN:
            if outer is None or (arg - s) % datum.n:
                raise ValueError(f"radial_in({arg}) at position {s} is not well formed")
            q = _swap(datum.transposition_at(s), q, k)
            outer = None
        else:
            raise ValueError(f"unknown move {move!r}")
    if outer is not None:
        raise ValueError("path ends away from the inner circle")
    return datum.to_base(q, s)


def monodromy_permutation(datum: CoveringDatum, path: ArcPath) -> tuple:
    return tuple(transport(datum, path, q) for q in range(datum.sheets))


def check_consistency(datum: CoveringDatum) -> list:
    """List of problems (empty when consistent).

    * a full turn acts as q -> q - a;
    * the loop around branch m reached with access angle m + n equals the
      loop with access angle m conjugated by the origin loop (the comparison
      at j=0 and j=n);
    * the branch transpositions together with the origin loop act
      transitively (Sigma_0 is connected).
    """
    k = datum.sheets
    bad = []
    full = monodromy_permutation(datum, ArcPath.rotation(datum.n))
    if full != tuple(datum.origin_monodromy(q) for q in range(k)):
        bad.append(("full turn", full))
    perms = []
    for m in range(datum.n):
        p0 = monodromy_permutation(datum, ArcPath.branch_loop(m))
        p1 = monodromy_permutation(datum, ArcPath.branch_loop(m + datum.n))
        pm = monodromy_permutation(datum, ArcPath.branch_loop(m - datum.n))
        # one extra turn conjugates by the origin loop O: q -> q - a
        conj = tuple((p0[(q - datum.a) % k] + datum.a) % k for q in range(k))
        conj_back = tuple((p0[(q + datum.a) % k] - datum.a) % k for q in range(k))
        if p1 != conj or pm != conj_back:
            bad.append(("branch", m, p0, p1))
        pair = datum.branch(m)
        expect = tuple(_swap(pair, q, k) for q in range(k))
        if p0 != expect:
            bad.append(("transposition", m, p0, expect))
        perms.append(p0)
    perms.append(full)
    seen, todo = {0}, [0]
    while todo:
        q = todo.pop()
        for p in perms:
            if p[q] not in seen:
                seen.add(p[q])
                todo.append(p[q])
    if len(seen) != k:
        bad.append(("not transitive", sorted(seen)))
    return bad


def build_cover(a: int, b: int, c: int) -> CoveringDatum:
    if min(a, b, c) <= 0:
        raise ValueError("weights must be positive")
    if gcd(gcd(a, b), c) != 1:
        raise ValueError("weights must be coprime")
    d = CoveringDatum(a, b, c)
    problems = check_consistency(d)
    if problems:
        raise ArithmeticError(f"inconsistent covering convention: {problems[:3]}")
    return CoveringDatum(a, b, c, verified=True)


@dataclass(frozen=True)
class LiftedCycle:
    index: int
    start: int  # unwrapped start position of delta_j, in [0, n)
    length: int
    strands: tuple  # continuation sheet labels of the two strands
    endpoints: tuple  # branch indices (start, end)

    @property
    def end(self) -> int:
        return self.start + self.length


def lift_cycle(datum: CoveringDatum, j: int) -> LiftedCycle:
    n, k = datum.n, datum.sheets
    j %= n
    start = (datum.h - j + datum.a) % n
    strands = (start % k, (start + datum.b) % k)
    end_branch = (start + k) % n
    lc = LiftedCycle(j, start, k, strands, (start, end_branch))
    # both ends see the same exchanged pair
    assert set(datum.transposition_at(lc.start)) == set(strands)
    assert set(datum.transposition_at(lc.end)) == set(strands)
    return lc


def branch_arcs(datum: CoveringDatum, m: int) -> tuple:
    """The two arcs ending at branch m: (ending there, starting there)."""
    n = datum.n
    return ((datum.h - m) % n, (datum.h - m + datum.a) % n)


@dataclass(frozen=True)
class IntersectionPoint:
    i: int
    j: int
    kind: str  # endpoint | interior
    sheet: int
    type: str  # x | y | z
    barred: bool
    position: int  # unwrapped position of the crossing or branch, in delta_i's frame

    @property
    def name(self) -> str:
        return f"{self.type}{'bar' if self.barred else ''}{self.i}"

    def to_json(self) -> dict:
        return {
            "pair": [self.i, self.j],
            "kind": self.kind,
            "sheet": self.sheet,
            "type": self.type,
            "barred": self.barred,
            "name": self.name,
        }


def intersections(datum: CoveringDatum, i: int, j: int) -> list:
    if not 0 <= i < j < datum.n:
        raise ValueError("need 0 <= i < j < n")
    n, k, b = datum.n, datum.sheets, datum.b
    di, dj = lift_cycle(datum, i), lift_cycle(datum, j)
    d = j - i
    out = []
    for t in (-1, 0, 1):
        sj = dj.start + t * n
        D = sj - di.start
        overlap = k - abs(D)
        if overlap < 0:
            continue
        if D == -d:
            family_long = False
        elif D == n - d:
            family_long = True
        else:
            continue
        if overlap == 0:
            pos = di.start if D < 0 else di.end
            out.append(IntersectionPoint(i, j, "endpoint", di.strands[0], "x", not family_long, pos))
            continue
        ki, kj = di.start % k, sj % k
        pos = max(di.start, sj)
        if ki == (kj + b) % k:
            typ, bar = ("z", True) if family_long else ("y", False)
            out.append(IntersectionPoint(i, j, "interior", ki, typ, bar, pos))
        if kj == (ki + b) % k:
            typ, bar = ("y", True) if family_long else ("z", False)
            out.append(IntersectionPoint(i, j, "interior", kj, typ, bar, pos))
    return out


def expected_offset(datum: CoveringDatum, typ: str, barred: bool) -> int:
    a, b, c = datum.a, datum.b, datum.c
    return eval(TYPE_OFFSET[(typ, barred)], {}, {"a": a, "b": b, "c": c})  # tiny fixed table


@dataclass
class IntersectionTable:
    datum: CoveringDatum
    points: list

    @property
    def total(self) -> int:
        return len(self.points)

    def counts(self) -> dict:
        out: dict = {}
        for p in self.points:
            key = p.type + ("bar" if p.barred else "")
            out[key] = out.get(key, 0) + 1
        return out

    def names(self) -> list:
        return [p.name for p in self.points]

    def by_name(self) -> dict:
        return {p.name: p for p in self.points}

    def to_json(self) -> dict:
        return {"cover": self.datum.to_json(), "total": self.total, "points": [p.to_json() for p in self.points]}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1)


def intersection_table(datum: CoveringDatum) -> IntersectionTable:
    pts = []
    for i in range(datum.n):
        for j in range(i + 1, datum.n):
            pts.extend(intersections(datum, i, j))
    return IntersectionTable(datum, pts)


def closed_form_table(a: int, b: int, c: int) -> list:
    """Generator list (name, i, j) straight from the offset rules."""
    rows = []
    for typ, bar, off, count in (
        ("x", False, a, b + c),
        ("x", True, b + c, a),
        ("y", False, b, a + c),
        ("y", True, a + c, b),
        ("z", False, c, a + b),
        ("z", True, a + b, c),
    ):
        for i in range(count):
            rows.append((f"{typ}{'bar' if bar else ''}{i}", i, i + off))
    return sorted(rows)


def check_offsets(table: IntersectionTable) -> list:
    bad = []
    for p in table.points:
        if p.j - p.i != expected_offset(table.datum, p.type, p.barred):
            bad.append(p)
    return bad


def arc_svg(datum: CoveringDatum, size: int = 400) -> str:
    """Schematic of the arcs delta_j: branch points on a circle, each arc drawn
    as a chord bowed towards the origin."""
    from math import cos, sin

    r0 = size * 0.42
    cx = cy = size / 2
    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}">']
    parts.append(f'<circle cx="{cx}" cy="{cy}" r="3" fill="black"/>')
    pts = []
    for m in range(datum.n):
        ang = datum.branch_angle(m)
        x, y = cx + r0 * cos(ang), cy - r0 * sin(ang)
        pts.append((x, y))
        parts.append(f'<circle cx="{x:.1f}" cy="{y:.1f}" r="4" fill="red"/>')
        parts.append(f'<text x="{x + 6:.1f}" y="{y:.1f}" font-size="10">{m}</text>')
    for j in range(datum.n):
        lc = lift_cycle(datum, j)
        (x0, y0), (x1, y1) = pts[lc.endpoints[0] % datum.n], pts[lc.endpoints[1] % datum.n]
        mid = datum.branch_angle(lc.start) + pi * lc.length / datum.n
        rr = r0 * (0.25 + 0.5 * j / max(datum.n - 1, 1))
        qx, qy = cx + rr * cos(mid), cy - rr * sin(mid)
        parts.append(
            f'<path d="M{x0:.1f},{y0:.1f} Q{qx:.1f},{qy:.1f} {x1:.1f},{y1:.1f}" fill="none" stroke="blue"/>'
        )
    parts.append("</svg>")
    return "\n".join(parts)


def coprime_triples(max_n: int) -> Iterable[tuple]:
    for n in range(3, max_n + 1):
        for a in range(1, n - 1):
            for b in range(1, n - a):
                c = n - a - b
                if gcd(gcd(a, b), c) == 1:
                    yield a, b, c
