"""Compare the compiled root tracker with the pure-Python fallback.

Run:  python3 benchmarks/bench_track.py [--repeat N]
Both backends track the fibre of the cover (default weights 4,2,1) around every branch
point; the permutations must agree and the timings are printed.
"""
import argparse
import time

import numpy as np

from hmsbench.numlab import _track_py, lab

try:
    from hmsbench.numlab import _track as _track_c
except ImportError:
    _track_c = None


def workload(weights=(4, 2, 1), step=0.01):
    a, b, c = weights
    cfg = lab.RootTrackConfig(step=step)
    x0, y0 = lab.fiber_at_base(a, b, c, cfg)
    jobs = []
    for m in range(a + b + c):
        xs = lab.loop_nodes(a, b, c, ("branch", m), cfg.step)
        xs[0] = xs[-1] = x0
        jobs.append((np.ascontiguousarray(-xs), np.ascontiguousarray(xs ** (-a))))
    return (a, b, c), cfg, y0, jobs


def run(impl, data):
    (a, b, c), cfg, y0, jobs = data
    perms = []
    for s_nodes, K_nodes in jobs:
        y = y0.copy()
        impl.track_path(y, s_nodes, K_nodes, b, c, cfg.newton_tol, cfg.collision_threshold, cfg.max_refinements)
        perms.append(tuple(int(np.argmin(np.abs(y0 - v))) for v in y))
    return perms


def best_of(impl, data, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        perms = run(impl, data)
        times.append(time.perf_counter() - t)
    return min(times), perms


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--weights", default="4,2,1", help="a,b,c of the cover (b+c sheets are tracked)")
    args = ap.parse_args()
    data = workload(tuple(int(v) for v in args.weights.split(",")))
    nodes = sum(len(s) for s, _ in data[3])
    t_py, p_py = best_of(_track_py, data, args.repeat)
    print(f"python  {t_py * 1e3:9.2f} ms  ({nodes} nodes)")
    if _track_c is None:
        print("cython  not built")
        return
    t_c, p_c = best_of(_track_c, data, args.repeat)
    print(f"cython  {t_c * 1e3:9.2f} ms")
    print(f"speedup {t_py / t_c:9.1f}x   permutations agree: {p_py == p_c}")


if __name__ == "__main__":
    main()
