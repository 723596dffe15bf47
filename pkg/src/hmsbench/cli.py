"""Command-line front end.

Every subcommand prints (or writes to --out) a JSON report carrying
``schema: 1`` and exits with 0 when all checks it ran pass, 1 when a check
fails and 2 when the configuration is invalid.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import gcd
from functools import reduce

SCHEMA = 1
OUT_DIR_ENV = "HMSBENCH_OUT_DIR"


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    weights: tuple
    theta: str | None = None
    q_target: str | None = None
    areas: str | None = None
    max_corners: int = 6
    tol_newton: float = 1e-12
    out: str | None = None
    fmt: str = "json"
    extra: dict = field(default_factory=dict)

    def validate(self, lengths=(2, 3)):
        if not self.weights or any(w <= 0 for w in self.weights):
            raise ConfigError("weights must be positive integers")
        if len(self.weights) not in lengths:
            raise ConfigError(f"expected {' or '.join(map(str, lengths))} weights, got {len(self.weights)}")
        if self.theta is not None and self.q_target is not None:
            raise ConfigError("give either --theta or --q-target, not both")
        if not 3 <= self.max_corners <= 12:
            raise ConfigError("--max-corners must lie in [3, 12]")
        if not 0 < self.tol_newton < 1e-6:
            raise ConfigError("--tol-newton must lie in (0, 1e-6)")

    @property
    def coprime(self) -> bool:
        return reduce(gcd, self.weights) == 1


def _weights(text: str) -> tuple:
    try:
        return tuple(int(v) for v in text.split(","))
    except ValueError as exc:
        raise ConfigError(f"bad --weights {text!r}") from exc


def _pair(text: str) -> tuple:
    try:
        a, b = (int(v) for v in text.split(","))
    except ValueError as exc:
        raise ConfigError(f"expected two comma-separated integers, got {text!r}") from exc
    return a, b


def _theta(cfg: RunConfig, size: int):
    from .algebra import ThetaMatrix
    from .bside import realize_q

    if cfg.q_target is not None:
        if size != 3:
            raise ConfigError("--q-target needs three weights")
        return realize_q(cfg.weights, _scalar(cfg.q_target))
    if cfg.theta in (None, "unit"):
        return ThetaMatrix.identity(size)
    if cfg.theta == "generic":
        return ThetaMatrix.generic(size)
    try:
        rows = json.loads(cfg.theta)
        th = ThetaMatrix.build([[_scalar(v) for v in row] for row in rows])
    except (ValueError, TypeError) as exc:
        raise ConfigError(f"bad --theta: {exc}") from exc
    if th.size != size:
        raise ConfigError("--theta has the wrong size")
    return th


def _scalar(v):
    from fractions import Fraction

    from .algebra import UnitScalar

    if isinstance(v, str):
        try:
            v = Fraction(v)
        except ValueError:
            return UnitScalar.param(v)
    try:
        return UnitScalar.coerce(v)
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"bad scalar {v!r}: {exc}") from exc


def _areas(cfg: RunConfig, n: int):
    from .fukaya import AreaWeights

    mode = cfg.areas or "formal"
    if mode == "formal":
        return AreaWeights.formal(n)
    if mode == "holonomy":
        return AreaWeights.formal(n, holonomy=True)
    if mode == "symmetric":
        return AreaWeights.symmetric(n)
    try:
        vals = [int(v) for v in mode.split(",")]
    except ValueError as exc:
        raise ConfigError("--areas takes formal, holonomy, symmetric or 2n integers") from exc
    if len(vals) != 2 * n:
        raise ConfigError(f"--areas needs {2 * n} integers (T0..T{n - 1} then Tp0..Tp{n - 1})")
    names = [f"T{i}" for i in range(n)] + [f"Tp{i}" for i in range(n)]
    return AreaWeights.numeric(dict(zip(names, vals)))


# subcommand pipelines; each returns (report dict, passed)

def run_bside(cfg: RunConfig):
    from .algebra import (
        GradedSkewAlgebra,
        _poly_count,
        cohomology_dim,
        koszul_build,
        koszul_d_squared,
        koszul_homology_check,
        lambda_bimodule_check,
        lambda_relations_check,
    )
    from .bside import build_B, build_C, q_invariant
    from .dgcat import check_associativity

    cfg.validate(lengths=(2, 3, 4))
    if not cfg.coprime:
        raise ConfigError("weights must be coprime")
    th = _theta(cfg, len(cfg.weights))
    rep = {"weights": list(cfg.weights), "theta": th.to_json()}
    ok = True
    B, C = build_B(cfg.weights, th), build_C(cfg.weights, th)
    rep["B"] = {"objects": len(B.objects), "generators": len(B.generators), "associative": bool(check_associativity(B))}
    rep["C"] = {"objects": len(C.objects), "generators": len(C.generators), "associative": bool(check_associativity(C))}
    ok &= rep["B"]["associative"] and rep["C"]["associative"]
    if len(cfg.weights) == 3:
        rep["q"] = str(q_invariant(th, cfg.weights))
    alg = GradedSkewAlgebra(cfg.weights, th)
    kmax = cfg.extra.get("hilbert")
    if kmax is not None:
        dims = [alg.graded_dim(k) for k in range(kmax + 1)]
        oracle = [_poly_count(cfg.weights, k) for k in range(kmax + 1)]
        rep["hilbert"] = {"dims": dims, "matches_enumeration": dims == oracle}
        ok &= dims == oracle
    deg = cfg.extra.get("koszul_degree")
    if deg is not None:
        K = koszul_build(alg)
        d2 = koszul_d_squared(K)
        hom = koszul_homology_check(K, deg)
        bim, rel = lambda_bimodule_check(K), lambda_relations_check(K)
        rep["koszul"] = {
            "d_squared_zero": d2 is None,
            "homology_is_ground_field": hom.passed,
            "first_failure": hom.first_failure,
            "lambda_bimodule": bim is None,
            "lambda_relations": rel is None,
        }
        ok &= d2 is None and hom.passed and bim is None and rel is None
    if cfg.extra.get("cohomology"):
        l = sum(cfg.weights)
        p_top = len(cfg.weights) - 1
        table = {str(k): [cohomology_dim(cfg.weights, th, p, k) for p in range(p_top + 1)] for k in range(-2 * l, 2 * l + 1)}
        rep["cohomology"] = table
    return rep, bool(ok)


def run_aside(cfg: RunConfig):
    from .cover import build_cover, check_offsets, closed_form_table, intersection_table, normalize_weights
    from .fukaya import (
        antisymmetry_check,
        cp1_build,
        cp1_degrees,
        invariant,
        plane_build,
        subset_count,
        total_intersections,
    )

    if len(cfg.weights) >= 4 or cfg.extra.get("subset_degree"):
        cfg.validate(lengths=range(2, 20))
        d = cfg.extra.get("subset_degree") or 1
        counts = {str(k): subset_count(cfg.weights, k) for k in range(1, d + 1)}
        return {"weights": list(cfg.weights), "subset_counts": counts, "total": total_intersections(cfg.weights)}, True
    cfg.validate()
    if not cfg.coprime:
        raise ConfigError("weights must be coprime")
    if len(cfg.weights) == 2:
        a, b = cfg.weights
        C = cp1_build(a, b)
        degs = cp1_degrees(a, b)
        ok = all(v == 1 for v in degs.values()) and len(C.generators) == a + b
        return {"weights": [a, b], "generators": [g.name for g in C.generators], "degrees": {k: str(v) for k, v in degs.items()}}, ok
    (a, b, c), _ = normalize_weights(cfg.weights)
    n = a + b + c
    datum = build_cover(a, b, c)
    table = intersection_table(datum)
    F = plane_build(*cfg.weights, weights=_areas(cfg, n), max_corners=cfg.max_corners)
    degrees = F.grading.degrees
    deg_ok = all(degrees[p.name] == (2 if p.barred else 1) for p in table.points)
    rep = {
        "weights": list(cfg.weights),
        "sorted_weights": [a, b, c],
        "cover": datum.to_json(),
        "intersections": {
            "total": table.total,
            "counts": table.counts(),
            "closed_form": sorted((p.name, p.i, p.j) for p in table.points) == closed_form_table(a, b, c),
        },
        "offsets_ok": not check_offsets(table),
        "degrees": degrees,
        "degrees_ok": deg_ok,
        "triangles": len(F.triangles),
        "higher_polygons": len(F.higher_polygons),
        "max_corners": cfg.max_corners,
        "invariant": str(invariant(F)),
    }
    ok = (
        table.total == 3 * n
        and rep["intersections"]["closed_form"]
        and rep["offsets_ok"]
        and deg_ok
        and len(F.triangles) == 2 * n
        and not F.higher_polygons
    )
    if cfg.areas == "symmetric":
        bad = antisymmetry_check(F)
        rep["antisymmetry_violations"] = bad
        rep["invariant_is_sign"] = str(invariant(F)) == str((-1) ** n)
        ok &= not bad and rep["invariant_is_sign"]
    if cfg.extra.get("sklyanin"):
        rep["sklyanin"] = _sklyanin(cfg.extra["sklyanin"])
        ok &= rep["sklyanin"]["matches"]
    return rep, bool(ok)


def sklyanin_table(a, b, c):
    """The three-object table of the compactified CP2 mirror."""
    from .algebra import LaurentPoly
    from .dgcat import DirectedCategory, Generator

    gens = [Generator(nm, 0, 1, 1) for nm in ("x0", "y0", "z0")]
    gens += [Generator(nm, 1, 2, 1) for nm in ("x1", "y1", "z1")]
    gens += [Generator(nm, 0, 2, 2) for nm in ("xbar", "ybar", "zbar")]
    rows = {
        ("x0", "y1"): ("zbar", a), ("x0", "z1"): ("ybar", b), ("x0", "x1"): ("xbar", c),
        ("y0", "z1"): ("xbar", a), ("y0", "x1"): ("zbar", b), ("y0", "y1"): ("ybar", c),
        ("z0", "x1"): ("ybar", a), ("z0", "y1"): ("xbar", b), ("z0", "z1"): ("zbar", c),
    }
    m2 = {k: {r: LaurentPoly.coerce(v)} for k, (r, v) in rows.items() if v}
    return DirectedCategory(["l0", "l1", "l2"], gens, m2)


def sklyanin_relations(a, b, c) -> list:
    return [
        {("x", "x"): c, ("y", "z"): b, ("z", "y"): a},
        {("x", "z"): a, ("y", "y"): c, ("z", "x"): b},
        {("x", "y"): b, ("y", "x"): a, ("z", "z"): c},
    ]


def _sklyanin(abc):
    from .dgcat import quadratic_dual

    letters = {f"{l}{i}": l for l in "xyz" for i in (0, 1)}
    R = quadratic_dual(sklyanin_table(*abc), letters=letters)
    return {"parameters": list(abc), "relations": R.as_strings(), "matches": R.span_equals(sklyanin_relations(*abc))}


def run_verify_hms(cfg: RunConfig):
    from .algebra import ThetaMatrix
    from .bside import build_C
    from .dgcat import GaugeTransform, gauge_match
    from .fukaya import cp1_build, hms_verify, relabel_line_C

    cfg.validate()
    if not cfg.coprime:
        raise ConfigError("weights must be coprime")
    if len(cfg.weights) == 2:
        a, b = cfg.weights
        trials = cfg.extra.get("trials", 20)
        rng = random.Random(cfg.extra.get("seed", 0))
        results = []
        for _ in range(trials):
            th = _theta(cfg, 2) if cfg.theta else ThetaMatrix.random_constant(2, rng)
            res = gauge_match(cp1_build(a, b), relabel_line_C(build_C((a, b), th), a, b))
            results.append(isinstance(res, GaugeTransform))
        return {"weights": [a, b], "trials": trials, "matched": sum(results)}, all(results)
    n = sum(cfg.weights)
    q = _scalar(cfg.q_target) if cfg.q_target is not None else None
    rep = hms_verify(*cfg.weights, weights=_areas(cfg, n), q_override=q)
    return rep.to_json(), rep.passed


def run_monodromy(cfg: RunConfig):
    from .numlab import (
        RootTrackConfig,
        compare_monodromy,
        cp1_vanishing,
        hirzebruch_degeneration,
        hirzebruch_isotopy,
        merge_pair,
    )
    from .numlab.kernel import BACKEND

    hz = cfg.extra.get("hirzebruch")
    if hz is not None:
        if hz < 3:
            raise ConfigError("--hirzebruch needs n >= 3")
        iso = hirzebruch_isotopy(hz, samples=100)
        deg = hirzebruch_degeneration(hz, b_final=cfg.extra.get("b_final", 1e-8))
        rep = {
            "n": hz,
            "isotopy": {"min_modulus": iso.min_modulus, "max_modulus": iso.max_modulus, "min_separation": iso.min_separation, "passed": iso.passed},
            "degeneration": deg.to_json(),
        }
        return rep, iso.passed and deg.passed
    cfg.validate()
    if not cfg.coprime:
        raise ConfigError("weights must be coprime")
    tc = RootTrackConfig(newton_tol=cfg.tol_newton)
    if len(cfg.weights) == 2:
        a, b = cfg.weights
        pair = cp1_vanishing(a, b, tc)
        return {"weights": [a, b], "backend": BACKEND, "vanishing_pair": list(pair), "expected": [0, b]}, set(pair) == {0, b}
    a, b, c = cfg.weights
    cmp = compare_monodromy(a, b, c, tc)
    from .cover import build_cover, lift_cycle

    d = build_cover(a, b, c)
    merges = {}
    merge_ok = True
    for j in range(d.n):
        got = merge_pair(a, b, c, j, tc)
        want = tuple(sorted(lift_cycle(d, j).endpoints))
        merges[str(j)] = {"numeric": list(got), "cover": list(want)}
        merge_ok &= got == want
    rep = cmp.to_json()
    rep["backend"] = BACKEND
    rep["merges"] = merges
    rep["residual_ok"] = cmp.max_residual < 1e-9
    return rep, cmp.passed and merge_ok and rep["residual_ok"]


def run_mutate(cfg: RunConfig):
    from . import mutation as M

    fn = cfg.extra.get("fn_check")
    if fn is not None:
        n, k = fn
        if not 2 < k < n:
            raise ConfigError("--fn-check needs 2 < k < n")
        rep = M.fn_vanishing_check(n, k)
        return {"n": n, "k": k, "passed": rep.passed, "checks": {f"{i}->{t}": v for (i, t), v in rep.checks.items()}, "first_failure": rep.first_failure}, rep.passed
    cfg.validate(lengths=(2, 3))
    alg = M.b_algebra(cfg.weights)
    P = M.projectives(alg)
    N = len(P)
    rep, ok = {"weights": list(cfg.weights), "objects": N}, True
    dual = {}
    for i in range(N):
        X = M.shift(M.iterated_left(P, i), i) if i else P[0]
        Q = M.koszul_simple(alg, i)
        px, pq = M.profile(X), M.profile(Q)
        same = px == pq
        dual[str(i)] = {"profile": {str(k): v for k, v in px.items()}, "matches_simple": same}
        ok &= same
    rep["dual_collection"] = dual
    if N >= 3:
        E0, E1, E2 = P[0], P[1], P[2]
        lhs = M.left_mutate(E0, M.left_mutate(E1, E2))
        rhs = M.left_mutate(M.left_mutate(E0, E1), M.left_mutate(E0, E2))
        braid = M.profile(lhs) == M.profile(rhs)
        rep["braid"] = braid
        ok &= braid
    rl = all(M.profile(M.right_mutate(M.left_mutate(P[i], P[i + 1]), P[i])) == M.profile(P[i + 1]) for i in range(N - 1))
    rep["right_left_identity"] = rl
    ok &= rl
    return rep, bool(ok)


def run_product(cfg: RunConfig):
    from .dgcat import check_associativity
    from .fukaya import cp1_build, f1_table, product_build

    if cfg.extra.get("f1"):
        F = f1_table()
        dims = {f"{i}{j}": F.hom_dim(i, j) for i in range(4) for j in range(i + 1, 4)}
        assoc = bool(check_associativity(F))
        into3 = [dims["03"], dims["13"], dims["23"]]
        return {"f1": {"dims": dims, "associative": assoc}}, assoc and into3 == [1, 2, 1]
    cfg.validate(lengths=(2,))
    a, b = cfg.weights
    other = cfg.extra.get("second") or (a, b)
    P = product_build(cp1_build(a, b), cp1_build(*other))
    N = len(P.objects)
    dims = {f"{P.objects[i]}->{P.objects[j]}": P.hom_dim(i, j) for i in range(N) for j in range(i + 1, N)}
    assoc = bool(check_associativity(P))
    rep = {"factors": [[a, b], list(other)], "objects": P.objects, "dims": dims, "associative": assoc}
    ok = assoc
    if (a, b) == (1, 1) and tuple(other) == (1, 1):
        pattern = all(
            P.product(f"id0|{u}", f"{s}|id1") == P.product(f"{s}|id0", f"id1|{u}")
            for s in ("x0", "y0") for u in ("x0", "y0")
        )
        rep["relation_pattern"] = pattern
        ok &= pattern and dims["L01->L10"] == 0 and dims["L00->L11"] == 4
    return rep, bool(ok)


def _report_one(w):
    out = {}
    ok = True
    for name, fn in (("aside", run_aside), ("verify-hms", run_verify_hms)):
        rep, passed = fn(RunConfig(w))
        out[name] = {"passed": passed, "report": rep}
        ok &= passed
    return list(w), ok, out


def run_report_all(cfg: RunConfig):
    from .cover import coprime_triples

    max_n = cfg.extra.get("max_n", 8)
    triples = list(coprime_triples(max_n))
    workers = cfg.extra.get("workers") or min(8, os.cpu_count() or 1)
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            results = list(pool.map(_report_one, triples))
    else:
        results = [_report_one(w) for w in triples]
    rep = {"max_n": max_n, "instances": {",".join(map(str, w)): {"passed": ok, **out} for w, ok, out in results}}
    failed = [k for k, v in rep["instances"].items() if not v["passed"]]
    rep["failed"] = failed
    return rep, not failed


COMMANDS = {
    "bside": run_bside,
    "aside": run_aside,
    "mutate": run_mutate,
    "monodromy": run_monodromy,
    "product": run_product,
    "verify-hms": run_verify_hms,
    "report-all": run_report_all,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hmsbench", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--weights", default="1,1,1", help="comma-separated positive integers")
    common.add_argument("--theta", help="unit, generic, or a JSON matrix of scalars")
    common.add_argument("--q-target", help="realize a theta with this q invariant")
    common.add_argument("--areas", help="formal, holonomy, symmetric, or 2n integers")
    common.add_argument("--max-corners", type=int, default=6)
    common.add_argument("--tol-newton", type=float, default=1e-12)
    common.add_argument("--out", help=f"output file (relative paths go under ${OUT_DIR_ENV} when set)")
    common.add_argument("--format", dest="fmt", choices=("json", "csv", "svg"), default="json")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bside", parents=[common], help="B-side categories, Hilbert series, Koszul checks")
    p.add_argument("--hilbert", type=int, metavar="K", help="compare dim (S)_k with enumeration for k <= K")
    p.add_argument("--koszul-degree", type=int, metavar="D", help="Koszul d^2 and homology up to internal degree D")
    p.add_argument("--cohomology", action="store_true", help="table of H^p(O(k)) for |k| <= 2l")

    p = sub.add_parser("aside", parents=[common], help="cover, intersections, discs, gradings")
    p.add_argument("--sklyanin", metavar="A,B,C", help="quadratic dual of the elliptic table with these parameters")
    p.add_argument("--subset-degree", type=int, metavar="D", help="subset counts up to degree D")

    sub.add_parser("verify-hms", parents=[common], help="gauge-match Floer and exterior categories")

    p = sub.add_parser("monodromy", parents=[common], help="numerical monodromy and vanishing cycles")
    p.add_argument("--hirzebruch", type=int, metavar="N", help="isotopy and degeneration of the F(N) mirror")
    p.add_argument("--b-final", type=float, default=1e-8)

    p = sub.add_parser("mutate", parents=[common], help="mutations, dual collection, braid relation")
    p.add_argument("--fn-check", metavar="N,K", help="Hom vanishing after mutating B(1,1,N) at K, K+1")

    p = sub.add_parser("product", parents=[common], help="products of line categories and the F1 table")
    p.add_argument("--second", metavar="A,B", help="weights of the second line factor")
    p.add_argument("--f1", action="store_true", help="check the four-object F1 table")

    p = sub.add_parser("report-all", parents=[common], help="aside and verify-hms over all coprime triples")
    p.add_argument("--max-n", type=int, default=8)
    p.add_argument("--workers", type=int, default=0)
    return ap


def config_from_args(args) -> RunConfig:
    extra = {}
    for key in ("hilbert", "koszul_degree", "cohomology", "subset_degree", "hirzebruch", "b_final", "f1", "max_n", "workers"):
        if getattr(args, key, None) not in (None, False):
            extra[key] = getattr(args, key)
    if getattr(args, "sklyanin", None):
        extra["sklyanin"] = tuple(int(v) for v in args.sklyanin.split(","))
    if getattr(args, "fn_check", None):
        extra["fn_check"] = _pair(args.fn_check)
    if getattr(args, "second", None):
        extra["second"] = _pair(args.second)
    return RunConfig(
        weights=_weights(args.weights),
        theta=args.theta,
        q_target=args.q_target,
        areas=args.areas,
        max_corners=args.max_corners,
        tol_newton=args.tol_newton,
        out=args.out,
        fmt=args.fmt,
        extra=extra,
    )


def _flatten(d, prefix=""):
    for k, v in d.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            yield from _flatten(v, key + ".")
        else:
            yield key, json.dumps(v, default=str, sort_keys=True) if isinstance(v, (list, tuple)) else v


def render(report: dict, fmt: str, cfg: RunConfig, command: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=1, sort_keys=True, default=str) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["key", "value"])
        for k, v in _flatten(report):
            w.writerow([k, v])
        return buf.getvalue()
    if command != "aside" or len(cfg.weights) != 3:
        raise ConfigError("svg output is only available for aside on three weights")
    from .cover import arc_svg, build_cover, normalize_weights

    (a, b, c), _ = normalize_weights(cfg.weights)
    return arc_svg(build_cover(a, b, c))


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        cfg = config_from_args(args)
        report, passed = COMMANDS[args.command](cfg)
        report = {"schema": SCHEMA, "command": args.command, "passed": bool(passed), **report}
        text = render(report, cfg.fmt, cfg, args.command)
    except ConfigError as exc:
        print(f"hmsbench: invalid configuration: {exc}", file=sys.stderr)
        return 2
    if cfg.out:
        path = cfg.out
        base = os.environ.get(OUT_DIR_ENV)
        if base and not os.path.isabs(path):
            os.makedirs(base, exist_ok=True)
            path = os.path.join(base, path)
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if passed else 1


if __name__ == "__main__":
    sys.exit(main())
