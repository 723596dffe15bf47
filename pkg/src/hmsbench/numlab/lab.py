"""Numerical monodromy, critical values and degenerations.

All root following goes through ``kernel.track_path``, which solves
u^p (s - u)^q = K:

* fibre of the cover over x:   y^b (-x - y)^c = x^{-a}   (p=b, q=c, s=-x)
* branch points at level lam:  x^a (lam - x)^{b+c} = K0  (p=a, q=b+c, s=lam)
* points of the line fibre:    x^a (lam - x)^b = 1
"""
from __future__ import annotations

import cmath
import math
from dataclasses import asdict, dataclass, field

import numpy as np

from ..cover import ArcPath, build_cover, monodromy_permutation
from . import kernel


@dataclass(frozen=True)
class RootTrackConfig:
    step: float = 0.02
    newton_tol: float = 1e-12
    collision_threshold: float = 1e-6
    max_refinements: int = 40

    def __post_init__(self):
        if not 0 < self.step <= 0.5:
            raise ValueError("step must lie in (0, 0.5]")
        if not self.newton_tol < self.collision_threshold:
            raise ValueError("newton_tol must be below collision_threshold")


@dataclass
class TrackResult:
    permutation: tuple
    max_residual: float
    min_separation: float
    status: int = 0
    loop: str = ""

    @property
    def ok(self) -> bool:
        return self.status == 0

    def to_json(self) -> dict:
        return asdict(self)


def _check(status: int, what: str):
    if status == 1:
        raise RuntimeError(f"{what}: step refinement exhausted")
    if status == 2:
        raise RuntimeError(f"{what}: roots collided")


def critical_values_plane(a: int, b: int, c: int) -> np.ndarray:
    """lam_j = lam_0 zeta^{-j} with lam_0^n = n^n / (a^a b^b c^c), lam_0 > 0."""
    n = a + b + c
    log0 = (n * math.log(n) - a * math.log(a) - b * math.log(b) - c * math.log(c)) / n
    lam0 = math.exp(log0)
    return np.array([lam0 * cmath.exp(-2j * math.pi * j / n) for j in range(n)])


def critical_values_line(a: int, b: int) -> np.ndarray:
    n = a + b
    lam0 = math.exp((n * math.log(n) - a * math.log(a) - b * math.log(b)) / n)
    return np.array([lam0 * cmath.exp(-2j * math.pi * j / n) for j in range(n)])


def branch_constant(a: int, b: int, c: int) -> float:
    k = b + c
    return math.exp(k * math.log(k) - b * math.log(b) - c * math.log(c))


def _poly_roots(p: int, q: int, lam: complex, K: complex) -> np.ndarray:
    # x^p (lam - x)^q - K, highest degree first
    P = np.polynomial.polynomial
    coeffs = P.polymul([0] * p + [1], P.polypow([lam, -1], q))
    coeffs = np.array(coeffs, dtype=complex)
    coeffs[0] -= K
    return np.roots(coeffs[::-1])


@dataclass
class BranchPoints:
    roots: np.ndarray
    residual: float
    min_separation: float
    double_root: bool


def branch_points(a: int, b: int, c: int, lam: complex = 0.0, config: RootTrackConfig = RootTrackConfig()) -> BranchPoints:
    """The n branch points of Sigma_lam, polished by Newton."""
    K = branch_constant(a, b, c)
    r = np.ascontiguousarray(_poly_roots(a, b + c, complex(lam), K), dtype=complex)
    res = kernel.polish(r, complex(lam), complex(K), a, b + c, config.newton_tol)
    sep = min(abs(r[i] - r[j]) for i in range(len(r)) for j in range(i + 1, len(r)))
    return BranchPoints(r, float(res), float(sep), sep < config.collision_threshold or res > 1e-6)


# -- monodromy of the fibration over x ------------------------------------

def _radius(a: int, b: int, c: int) -> float:
    return branch_constant(a, b, c) ** (1.0 / (a + b + c))


def sheet_approximation(a: int, b: int, c: int, x: complex, q: int) -> complex:
    """y_q ~ r^{-a/(b+c)} exp(i (c pi - a theta + 2 pi q) / (b+c)) for small |x|."""
    k = b + c
    r, th = abs(x), cmath.phase(x)
    return r ** (-a / k) * cmath.exp(1j * (c * math.pi - a * th + 2 * math.pi * q) / k)


def _arc(r: float, t0: float, t1: float, step: float) -> np.ndarray:
    m = max(2, int(math.ceil(abs(t1 - t0) / step)) + 1)
    return r * np.exp(1j * np.linspace(t0, t1, m))


def _ray(r0: float, r1: float, th: float, step: float) -> np.ndarray:
    m = max(2, int(math.ceil(abs(math.log(r1 / r0)) / step)) + 1)
    return np.geomspace(r0, r1, m) * cmath.exp(1j * th)


def _circle(center: complex, rad: float, start: float, step: float) -> np.ndarray:
    m = max(8, int(math.ceil(2 * math.pi / step)) + 1)
    return center + rad * np.exp(1j * (start + np.linspace(0, 2 * math.pi, m)))


def loop_nodes(a: int, b: int, c: int, loop, step: float, base_angle: float = 0.0) -> np.ndarray:
    """Node polyline in the x-plane for "origin", "contractible" or ("branch", m)."""
    n = a + b + c
    R = _radius(a, b, c)
    eps = 1e-3 * R
    eps0 = (b + c) % 2
    if loop == "origin":
        return _arc(eps, base_angle, base_angle + 2 * math.pi, step)
    if loop == "contractible":
        x0 = eps * cmath.exp(1j * base_angle)
        return _circle(x0 * 1.5, 0.5 * eps, math.pi + base_angle, step)
    kind, m = loop
    if kind != "branch":
        raise ValueError(f"unknown loop {loop!r}")
    th = (2 * m + eps0) * math.pi / n
    delta = 0.2 * R * math.sin(math.pi / n)
    center = R * cmath.exp(1j * th)
    pieces = [
        _arc(eps, base_angle, th, step),
        _ray(eps, R - delta, th, step),
        _circle(center, delta, th + math.pi, step),
        _ray(R - delta, eps, th, step),
        _arc(eps, th, base_angle, step),
    ]
    return np.concatenate([pieces[0]] + [p[1:] for p in pieces[1:]])


def fiber_at_base(a: int, b: int, c: int, config: RootTrackConfig = RootTrackConfig(), base_angle: float = 0.0) -> tuple:
    x = 1e-3 * _radius(a, b, c) * cmath.exp(1j * base_angle)
    y = np.array([sheet_approximation(a, b, c, x, q) for q in range(b + c)], dtype=complex)
    res = kernel.polish(y, -x, x ** (-a), b, c, config.newton_tol)
    if res > 1e-9:
        raise RuntimeError("fibre at the base point did not converge")
    return x, y


def track_monodromy(a: int, b: int, c: int, loop, config: RootTrackConfig = RootTrackConfig()) -> TrackResult:
    """Permutation of the numerical sheet labels produced by transport along loop."""
    x0, y0 = fiber_at_base(a, b, c, config)
    xs = loop_nodes(a, b, c, loop, config.step)
    xs[0] = xs[-1] = x0
    s_nodes = np.ascontiguousarray(-xs)
    K_nodes = np.ascontiguousarray(xs ** (-a))
    y = y0.copy()
    res, sep, status = kernel.track_path(y, s_nodes, K_nodes, b, c, config.newton_tol, config.collision_threshold, config.max_refinements)
    _check(status, f"monodromy {loop}")
    perm = []
    for q in range(len(y)):
        d = np.abs(y0 - y[q])
        perm.append(int(np.argmin(d)))
    if sorted(perm) != list(range(len(y))):
        raise RuntimeError("endpoint matching is not a bijection")
    return TrackResult(tuple(perm), float(res), float(sep), status, str(loop))


@dataclass
class MonodromyComparison:
    weights: tuple
    offset: int | None
    numeric: dict
    combinatorial: dict
    mismatches: list = field(default_factory=list)
    max_residual: float = 0.0
    min_separation: float = math.inf
    calibrated: int | None = None

    @property
    def passed(self) -> bool:
        return not self.mismatches

    def to_json(self) -> dict:
        return {
            "weights": list(self.weights),
            "offset": self.offset,
            "calibrated_offset": self.calibrated,
            "passed": self.passed,
            "numeric": {k: list(v) for k, v in self.numeric.items()},
            "combinatorial": {k: list(v) for k, v in self.combinatorial.items()},
            "mismatches": self.mismatches,
            "max_residual": self.max_residual,
            "min_separation": self.min_separation,
        }


def _shifted(perm: tuple, q0: int) -> tuple:
    k = len(perm)
    return tuple((perm[(q - q0) % k] + q0) % k for q in range(k))


def compare_monodromy(a: int, b: int, c: int, config: RootTrackConfig = RootTrackConfig()) -> MonodromyComparison:
    """Numerical loops against the combinatorial cover.

    Numerical labels (from the small-|x| approximation) and continuation
    labels of the model differ by the shift q -> q - h, h = floor((b+c)/2).
    With that shift fixed in advance, every branch loop, the origin loop and
    a contractible loop must agree exactly.  ``calibrated`` records the
    smallest shift that matches branch 0, as a cross-check.
    """
    d = build_cover(a, b, c)
    n, k = d.n, d.sheets
    loops = ["origin", "contractible"] + [("branch", m) for m in range(n)]
    numeric, comb = {}, {}
    worst, sep = 0.0, math.inf
    for lp in loops:
        t = track_monodromy(a, b, c, lp, config)
        key = lp if isinstance(lp, str) else f"branch{lp[1]}"
        numeric[key] = t.permutation
        worst, sep = max(worst, t.max_residual), min(sep, t.min_separation)
        if lp == "origin":
            comb[key] = monodromy_permutation(d, ArcPath.rotation(n))
        elif lp == "contractible":
            comb[key] = tuple(range(k))
        else:
            comb[key] = monodromy_permutation(d, ArcPath.branch_loop(lp[1]))
    offset = (-d.h) % k
    calibrated = next((q0 for q0 in range(k) if _shifted(comb["branch0"], q0) == numeric["branch0"]), None)
    bad = [key for key in numeric if _shifted(comb[key], offset) != numeric[key]]
    return MonodromyComparison((a, b, c), offset, numeric, comb, bad, worst, sep, calibrated)


# -- vanishing cycles ------------------------------------------------------

def cp1_vanishing(a: int, b: int, config: RootTrackConfig = RootTrackConfig(), eta: float = 1e-4) -> tuple:
    """Labels of the two points of x^a (lam - x)^b = 1 that merge at lam_0.

    Point k over lam = 0 is exp(i pi (2k - b) / (a+b)).
    """
    n = a + b
    x = np.array([cmath.exp(1j * math.pi * (2 * k - b) / n) for k in range(n)], dtype=complex)
    kernel.polish(x, 0j, 1 + 0j, a, b, config.newton_tol)
    lam0 = critical_values_line(a, b)[0].real
    m = max(2, int(1 / config.step))
    lam = np.ascontiguousarray(np.linspace(0, lam0 * (1 - eta), m).astype(complex))
    K = np.ones_like(lam)
    res, sep, status = kernel.track_path(x, lam, K, a, b, config.newton_tol, config.collision_threshold, config.max_refinements)
    _check(status, "line vanishing cycle")
    return _closest_pair(x)


def _closest_pair(r: np.ndarray) -> tuple:
    best = None
    for i in range(len(r)):
        for j in range(i + 1, len(r)):
            d = abs(r[i] - r[j])
            if best is None or d < best[0]:
                best = (d, i, j)
    return best[1], best[2]


def merge_pair(a: int, b: int, c: int, j: int = 0, config: RootTrackConfig = RootTrackConfig(), eta: float = 1e-4) -> tuple:
    """Branch indices that collide as lam runs straight from 0 to lam_j."""
    n = a + b + c
    K = branch_constant(a, b, c)
    eps0 = (b + c) % 2
    R = K ** (1.0 / n)
    x = np.array([R * cmath.exp(1j * (2 * m + eps0) * math.pi / n) for m in range(n)], dtype=complex)
    res0 = kernel.polish(x, 0j, complex(K), a, b + c, config.newton_tol)
    if res0 > 1e-9:
        raise RuntimeError("branch points at lam = 0 did not converge")
    lam_j = critical_values_plane(a, b, c)[j % n]
    m = max(2, int(1 / config.step))
    lam = np.ascontiguousarray(np.linspace(0, 1 - eta, m) * lam_j)
    Ks = np.full(m, complex(K))
    res, sep, status = kernel.track_path(x, lam, Ks, a, b + c, config.newton_tol, config.collision_threshold, config.max_refinements)
    _check(status, f"branch merge j={j}")
    i, k = _closest_pair(x)
    return tuple(sorted((i, k)))


# -- Hirzebruch family -----------------------------------------------------

@dataclass
class IsotopyReport:
    n: int
    samples: int
    min_modulus: float
    max_modulus: float
    min_separation: float

    @property
    def passed(self) -> bool:
        tol = 1e-9
        return (
            self.min_modulus >= 1 - tol
            and self.max_modulus <= math.sqrt(self.n + 1) + tol
            and self.min_separation > 1e-6
        )


def hirzebruch_roots(n: int, a: float) -> np.ndarray:
    """Roots of x^{n-2} (x^2 - a)^2 - n^2."""
    P = np.polynomial.polynomial
    coeffs = P.polymul([0] * (n - 2) + [1], P.polypow([-a, 0, 1], 2))
    coeffs = np.array(coeffs, dtype=complex)
    coeffs[0] -= n * n
    return np.roots(coeffs[::-1])


def hirzebruch_isotopy(n: int, samples: int = 101) -> IsotopyReport:
    lo, hi, sep = math.inf, 0.0, math.inf
    for a in np.linspace(0.0, 1.0, samples):
        r = hirzebruch_roots(n, float(a))
        mod = np.abs(r)
        lo, hi = min(lo, mod.min()), max(hi, mod.max())
        d = np.abs(r[:, None] - r[None, :])
        np.fill_diagonal(d, np.inf)
        sep = min(sep, d.min())
    return IsotopyReport(n, samples, float(lo), float(hi), float(sep))


@dataclass
class DegenerationReport:
    n: int
    b_final: complex
    bounded: list
    escaping: list
    deviation: float
    tolerance: float
    escape_threshold: float

    @property
    def shape_ok(self) -> bool:
        near = sorted(1 if w.real > 0 else -1 for w in self.bounded)
        return len(self.escaping) == self.n - 2 and near == [-1, -1, 1, 1]

    @property
    def escaped(self) -> bool:
        return all(abs(w) > self.escape_threshold for w in self.escaping)

    @property
    def within_tolerance(self) -> bool:
        return self.deviation <= self.tolerance

    @property
    def passed(self) -> bool:
        return self.shape_ok and self.escaped and self.within_tolerance

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "b_final": [self.b_final.real, self.b_final.imag],
            "bounded": [[w.real, w.imag] for w in self.bounded],
            "escaping_min_modulus": min(abs(w) for w in self.escaping) if self.escaping else None,
            "deviation": self.deviation,
            "tolerance": self.tolerance,
            "escape_threshold": self.escape_threshold,
            "shape_ok": self.shape_ok,
            "escaped": self.escaped,
            "within_tolerance": self.within_tolerance,
            "passed": self.passed,
        }


def hirzebruch_critical_points(n: int, b: complex) -> np.ndarray:
    """Roots of x^{n-2} (x^2 - 1)^2 = n^2 b."""
    P = np.polynomial.polynomial
    coeffs = P.polymul([0] * (n - 2) + [1], P.polypow([-1, 0, 1], 2)).astype(complex)
    coeffs[0] -= n * n * b
    return np.roots(coeffs[::-1])


def hirzebruch_W(n: int, x):
    return ((n + 2) / n) * x + ((n - 2) / n) / x


def hirzebruch_critical_values(n: int, b: complex) -> np.ndarray:
    return hirzebruch_W(n, hirzebruch_critical_points(n, b))


def hirzebruch_degeneration(
    n: int,
    b_final: float = 1e-8,
    steps: int = 400,
    tolerance: float = 1e-6,
    escape_threshold: float = 1e3,
) -> DegenerationReport:
    """Follow the n+2 critical points as b goes from 1 to b_final with Im b > 0
    on the way.  Points whose x tends to 0 are the escapees; the other four
    tend to x = +-1, where W = +-2."""
    if n < 3:
        raise ValueError("the degeneration is studied for n >= 3")
    t = np.linspace(0.0, 1.0, steps)
    path = np.exp(np.log(b_final) * t + 0.5j * np.sin(np.pi * t))
    path[-1] = b_final
    prev = hirzebruch_critical_points(n, path[0])
    for b in path[1:]:
        cur = hirzebruch_critical_points(n, b)
        # nearest-neighbour matching keeps the labels continuous
        order, free = [], list(range(len(cur)))
        for x in prev:
            k = min(free, key=lambda i: abs(cur[i] - x))
            free.remove(k)
            order.append(k)
        prev = cur[order]
    # the escapees are the n-2 critical points closest to x = 0
    ranked = sorted(prev, key=abs)
    small, large = ranked[: n - 2], ranked[n - 2 :]
    escaping = [complex(hirzebruch_W(n, x)) for x in small]
    bounded = [complex(hirzebruch_W(n, x)) for x in large]
    dev = max(min(abs(w - 2), abs(w + 2)) for w in bounded)
    return DegenerationReport(n, complex(b_final), bounded, escaping, float(dev), tolerance, escape_threshold)


def f0_critical_values(a: float, b: float) -> np.ndarray:
    """Critical values of x + y + a/x + b/y, found numerically."""
    xs = np.roots([1, 0, -a])
    ys = np.roots([1, 0, -b])
    return np.array(sorted((x + a / x + y + b / y for x in xs for y in ys), key=lambda z: (z.real, z.imag)))


def f0_expected(a: float, b: float) -> np.ndarray:
    sa, sb = 2 * math.sqrt(a), 2 * math.sqrt(b)
    return np.array(sorted((complex(s * sa + t * sb) for s in (1, -1) for t in (1, -1)), key=lambda z: (z.real, z.imag)))
