"""Pure-Python root tracker; mirrors _track.pyx line for line.

Roots u of  u^p (s - u)^q = K  are followed while (s, K) moves linearly
between consecutive nodes.  Newton runs on F - 1 with F = u^p (s-u)^q / K,
whose step is (1 - 1/F) / (p/u - q/(s-u)).
"""
from math import inf


def _newton(u, s, K, p, q, tol, maxit):
    res = inf
    for _ in range(maxit):
        w = s - u
        F = (u ** p) * (w ** q) / K
        res = abs(F - 1.0)
        if res < tol:
            return u, res, True
        den = p / u - q / w
        if den == 0:
            return u, res, False
        u = u - (1.0 - 1.0 / F) / den
    w = s - u
    res = abs((u ** p) * (w ** q) / K - 1.0)
    return u, res, res < tol


def _min_sep(roots):
    m = len(roots)
    best = inf
    for i in range(m):
        for j in range(i + 1, m):
            d = abs(roots[i] - roots[j])
            if d < best:
                best = d
    return best


def polish(roots, s, K, p, q, tol, maxit=60):
    """Newton-polish in place; returns the worst residual."""
    worst = 0.0
    for i in range(len(roots)):
        u, res, _ = _newton(complex(roots[i]), complex(s), complex(K), p, q, tol, maxit)
        roots[i] = u
        worst = max(worst, res)
    return worst


def track_path(roots, s_nodes, K_nodes, p, q, tol, collision, max_refine):
    """Track roots (modified in place) along the node polyline.

    Returns (max_residual, min_separation, status); status 0 ok,
    1 step underflow, 2 collision.
    """
    m = len(roots)
    cur = [complex(r) for r in roots]
    trial = [0j] * m
    max_res = 0.0
    min_sep = _min_sep(cur)
    status = 0
    hmin = 0.5 ** max_refine
    for k in range(len(s_nodes) - 1):
        s0, s1 = complex(s_nodes[k]), complex(s_nodes[k + 1])
        K0, K1 = complex(K_nodes[k]), complex(K_nodes[k + 1])
        t, h = 0.0, 1.0
        while t < 1.0:
            if t + h > 1.0:
                h = 1.0 - t
            s = s0 + (t + h) * (s1 - s0)
            K = K0 + (t + h) * (K1 - K0)
            sep = _min_sep(cur)
            ok = True
            worst = 0.0
            for i in range(m):
                u, res, conv = _newton(cur[i], s, K, p, q, tol, 30)
                if not conv or abs(u - cur[i]) > 0.3 * sep:
                    ok = False
                    break
                trial[i] = u
                if res > worst:
                    worst = res
            if ok:
                new_sep = _min_sep(trial[:m])
                if new_sep < collision:
                    for i in range(m):
                        roots[i] = trial[i]
                    return max(max_res, worst), new_sep, 2
                cur = trial[:m]
                if worst > max_res:
                    max_res = worst
                if new_sep < min_sep:
                    min_sep = new_sep
                t += h
                h = min(2.0 * h, 1.0)
            else:
                h *= 0.5
                if h < hmin:
                    status = 1
                    for i in range(m):
                        roots[i] = cur[i]
                    return max_res, min_sep, status
    for i in range(m):
        roots[i] = cur[i]
    return max_res, min_sep, status
