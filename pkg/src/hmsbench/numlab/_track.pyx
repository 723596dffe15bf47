# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled root tracker; same algorithm as _track_py."""
from libc.math cimport INFINITY

import numpy as np

cdef extern from "complex.h" nogil:
    double cabs(double complex z)


cdef inline double complex _ipow(double complex z, int k) nogil:
    cdef double complex r = 1.0
    cdef double complex b = z
    while k > 0:
        if k & 1:
            r = r * b
        b = b * b
        k >>= 1
    return r


cdef int _newton(double complex* u, double complex s, double complex K, int p, int q,
                 double tol, int maxit, double* res) nogil:
    cdef int it
    cdef double complex w, F, den
    cdef double complex x = u[0]
    for it in range(maxit):
        w = s - x
        F = _ipow(x, p) * _ipow(w, q) / K
        res[0] = cabs(F - 1.0)
        if res[0] < tol:
            u[0] = x
            return 1
        den = p / x - q / w
        if den == 0:
            u[0] = x
            return 0
        x = x - (1.0 - 1.0 / F) / den
    w = s - x
    res[0] = cabs(_ipow(x, p) * _ipow(w, q) / K - 1.0)
    u[0] = x
    return 1 if res[0] < tol else 0


cdef double _min_sep(double complex[:] r, int m) nogil:
    cdef double best = INFINITY
    cdef double d
    cdef int i, j
    for i in range(m):
        for j in range(i + 1, m):
            d = cabs(r[i] - r[j])
            if d < best:
                best = d
    return best


def polish(double complex[:] roots, double complex s, double complex K, int p, int q,
           double tol, int maxit=60):
    cdef int i
    cdef double worst = 0.0
    cdef double res
    cdef double complex u
    for i in range(roots.shape[0]):
        u = roots[i]
        _newton(&u, s, K, p, q, tol, maxit, &res)
        roots[i] = u
        if res > worst:
            worst = res
    return worst


def track_path(double complex[:] roots, double complex[:] s_nodes, double complex[:] K_nodes,
               int p, int q, double tol, double collision, int max_refine):
    cdef int m = roots.shape[0]
    cdef int nn = s_nodes.shape[0]
    cdef int k, i, conv, ok
    cdef double t, h, sep, new_sep, worst, res
    cdef double max_res = 0.0
    cdef double hmin = 0.5 ** max_refine
    cdef double complex s0, s1, K0, K1, s, K, u
    cdef double complex[:] cur = np.empty(m, dtype=np.complex128)
    cdef double complex[:] trial = np.empty(m, dtype=np.complex128)
    for i in range(m):
        cur[i] = roots[i]
    cdef double min_sep = _min_sep(cur, m)
    with nogil:
        for k in range(nn - 1):
            s0 = s_nodes[k]
            s1 = s_nodes[k + 1]
            K0 = K_nodes[k]
            K1 = K_nodes[k + 1]
            t = 0.0
            h = 1.0
            while t < 1.0:
                if t + h > 1.0:
                    h = 1.0 - t
                s = s0 + (t + h) * (s1 - s0)
                K = K0 + (t + h) * (K1 - K0)
                sep = _min_sep(cur, m)
                ok = 1
                worst = 0.0
                for i in range(m):
                    u = cur[i]
                    conv = _newton(&u, s, K, p, q, tol, 30, &res)
                    if conv == 0 or cabs(u - cur[i]) > 0.3 * sep:
                        ok = 0
                        break
                    trial[i] = u
                    if res > worst:
                        worst = res
                if ok:
                    new_sep = _min_sep(trial, m)
                    if new_sep < collision:
                        for i in range(m):
                            roots[i] = trial[i]
                        if worst > max_res:
                            max_res = worst
                        with gil:
                            return max_res, new_sep, 2
                    for i in range(m):
                        cur[i] = trial[i]
                    if worst > max_res:
                        max_res = worst
                    if new_sep < min_sep:
                        min_sep = new_sep
                    t += h
                    h = 2.0 * h
                    if h > 1.0:
                        h = 1.0
                else:
                    h *= 0.5
                    if h < hmin:
                        for i in range(m):
                            roots[i] = cur[i]
                        with gil:
                            return max_res, min_sep, 1
    for i in range(m):
        roots[i] = cur[i]
    return max_res, min_sep, 0
