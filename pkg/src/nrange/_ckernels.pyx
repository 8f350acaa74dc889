# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: complex Hermitian Jacobi eigenvalues and the greedy
knapsack support sweep for atomic normal operators."""

import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, fabs, hypot, cos, sin

cnp.import_array()


cdef void _jacobi(double[:, ::1] ar, double[:, ::1] ai, double tol,
                  int max_sweeps) noexcept nogil:
    cdef Py_ssize_t n = ar.shape[0]
    cdef Py_ssize_t p, q, k
    cdef int sweep
    cdef double scale = 0.0, off, mag, pr, pi_, app, aqq, theta, t, c, s
    cdef double xr, xi, yr, yi, sr, si
    for p in range(n):
        for q in range(n):
            scale += ar[p, q] * ar[p, q] + ai[p, q] * ai[p, q]
    scale = sqrt(scale)
    if scale == 0.0:
        return
    for sweep in range(max_sweeps):
        off = 0.0
        for p in range(n):
            for q in range(n):
                if p != q:
                    off += ar[p, q] * ar[p, q] + ai[p, q] * ai[p, q]
        if sqrt(off) <= tol * scale:
            return
        for p in range(n - 1):
            for q in range(p + 1, n):
                mag = hypot(ar[p, q], ai[p, q])
                if mag < 1e-300:
                    ar[p, q] = 0.0; ai[p, q] = 0.0
                    ar[q, p] = 0.0; ai[q, p] = 0.0
                    continue
                # phase of the (p, q) entry
                pr = ar[p, q] / mag
                pi_ = ai[p, q] / mag
                app = ar[p, p]
                aqq = ar[q, q]
                theta = (aqq - app) / (2.0 * mag)
                if fabs(theta) > 1e150:
                    t = 0.5 / theta
                elif theta >= 0.0:
                    t = 1.0 / (theta + sqrt(theta * theta + 1.0))
                else:
                    t = -1.0 / (-theta + sqrt(theta * theta + 1.0))
                c = 1.0 / sqrt(t * t + 1.0)
                s = t * c
                # columns: H <- H W, W = [[c, s], [-s e^{-i phi}, c e^{-i phi}]]
                for k in range(n):
                    xr = ar[k, p]; xi = ai[k, p]
                    # y * e^{-i phi}
                    yr = ar[k, q] * pr + ai[k, q] * pi_
                    yi = ai[k, q] * pr - ar[k, q] * pi_
                    ar[k, p] = c * xr - s * yr
                    ai[k, p] = c * xi - s * yi
                    ar[k, q] = s * xr + c * yr
                    ai[k, q] = s * xi + c * yi
                # rows: H <- W* H
                for k in range(n):
                    xr = ar[p, k]; xi = ai[p, k]
                    # y * e^{i phi}
                    yr = ar[q, k] * pr - ai[q, k] * pi_
                    yi = ai[q, k] * pr + ar[q, k] * pi_
                    ar[p, k] = c * xr - s * yr
                    ai[p, k] = c * xi - s * yi
                    ar[q, k] = s * xr + c * yr
                    ai[q, k] = s * xi + c * yi
                ar[p, q] = 0.0; ai[p, q] = 0.0
                ar[q, p] = 0.0; ai[q, p] = 0.0
                ar[p, p] = app - t * mag; ai[p, p] = 0.0
                ar[q, q] = aqq + t * mag; ai[q, q] = 0.0


def jacobi_eigvalsh(h, double tol=1e-12, int max_sweeps=100):
    """Eigenvalues of a complex Hermitian matrix, sorted non-increasing."""
    h = np.asarray(h, dtype=np.complex128)
    cdef double[:, ::1] ar = np.ascontiguousarray(h.real, dtype=np.float64).copy()
    cdef double[:, ::1] ai = np.ascontiguousarray(h.imag, dtype=np.float64).copy()
    with nogil:
        _jacobi(ar, ai, tol, max_sweeps)
    out = np.array(np.diagonal(np.asarray(ar)))
    out[::-1].sort()
    return out


def knapsack_support(atoms, weights, thetas, double alpha):
    """g(theta) = (1/alpha) max sum Re(e^{i theta} l_k) t_k, 0 <= t_k <= w_k,
    sum t_k = alpha, filled greedily in stable descending order."""
    atoms = np.asarray(atoms, dtype=np.complex128)
    cdef const double[::1] lr = np.ascontiguousarray(atoms.real, dtype=np.float64)
    cdef const double[::1] li = np.ascontiguousarray(atoms.imag, dtype=np.float64)
    cdef const double[::1] w = np.ascontiguousarray(weights, dtype=np.float64)
    cdef const double[::1] th = np.ascontiguousarray(thetas, dtype=np.float64)
    cdef Py_ssize_t m = th.shape[0], n = lr.shape[0]
    out_arr = np.empty(m, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef double[::1] vals = np.empty(n, dtype=np.float64)
    cdef Py_ssize_t[::1] order = np.empty(n, dtype=np.intp)
    cdef Py_ssize_t j, a, b, tmp
    cdef double ct, st, rem, take, acc
    with nogil:
        for j in range(m):
            ct = cos(th[j]); st = sin(th[j])
            for a in range(n):
                vals[a] = lr[a] * ct - li[a] * st
                order[a] = a
            # stable insertion sort, descending
            for a in range(1, n):
                tmp = order[a]
                b = a - 1
                while b >= 0 and vals[order[b]] < vals[tmp]:
                    order[b + 1] = order[b]
                    b -= 1
                order[b + 1] = tmp
            rem = alpha
            acc = 0.0
            for a in range(n):
                if rem <= 0.0:
                    break
                take = w[order[a]] if w[order[a]] < rem else rem
                acc += vals[order[a]] * take
                rem -= take
            out[j] = acc / alpha
    return out_arr


def halfplane_violation(points, thetas, g):
    """max over j of Re(e^{i theta_j} z) - g_j, for each point z."""
    points = np.asarray(points, dtype=np.complex128)
    cdef const double[::1] px = np.ascontiguousarray(points.real, dtype=np.float64)
    cdef const double[::1] py = np.ascontiguousarray(points.imag, dtype=np.float64)
    th = np.asarray(thetas, dtype=np.float64)
    cdef const double[::1] ct = np.ascontiguousarray(np.cos(th))
    cdef const double[::1] st = np.ascontiguousarray(np.sin(th))
    cdef const double[::1] gv = np.ascontiguousarray(g, dtype=np.float64)
    cdef Py_ssize_t m = px.shape[0], n = ct.shape[0], i, j
    out_arr = np.empty(m, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef double best, v
    with nogil:
        for i in range(m):
            best = -1e308
            for j in range(n):
                v = px[i] * ct[j] - py[i] * st[j] - gv[j]
                if v > best:
                    best = v
            out[i] = best
    return out_arr


def polygon_distance(points, vertices):
    """Euclidean distance from each point to a convex polygon (CCW vertices;
    2 vertices is a segment, 1 a point)."""
    points = np.asarray(points, dtype=np.complex128)
    vertices = np.asarray(vertices, dtype=np.complex128)
    cdef const double[::1] px = np.ascontiguousarray(points.real, dtype=np.float64)
    cdef const double[::1] py = np.ascontiguousarray(points.imag, dtype=np.float64)
    cdef const double[::1] vx = np.ascontiguousarray(vertices.real, dtype=np.float64)
    cdef const double[::1] vy = np.ascontiguousarray(vertices.imag, dtype=np.float64)
    cdef Py_ssize_t m = px.shape[0], nv = vx.shape[0], i, j, j2, n_edges
    out_arr = np.empty(m, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef double scale = 0.0, ex, ey, ax, ay, den, t, dx, dy, d2, best, cr, eps
    cdef bint inside
    for j in range(nv):
        scale = max(scale, fabs(vx[j]), fabs(vy[j]))
    eps = -1e-15 * scale
    n_edges = nv if nv > 2 else nv - 1
    with nogil:
        for i in range(m):
            if nv == 1:
                dx = px[i] - vx[0]; dy = py[i] - vy[0]
                out[i] = sqrt(dx * dx + dy * dy)
                continue
            best = 1e308
            inside = nv > 2
            for j in range(n_edges):
                j2 = j + 1 if j + 1 < nv else 0
                ex = vx[j2] - vx[j]; ey = vy[j2] - vy[j]
                ax = px[i] - vx[j]; ay = py[i] - vy[j]
                cr = ex * ay - ey * ax
                if cr < eps * sqrt(ex * ex + ey * ey):
                    inside = False
                den = ex * ex + ey * ey
                t = (ax * ex + ay * ey) / den if den > 0 else 0.0
                if t < 0.0:
                    t = 0.0
                elif t > 1.0:
                    t = 1.0
                dx = ax - t * ex; dy = ay - t * ey
                d2 = dx * dx + dy * dy
                if d2 < best:
                    best = d2
            out[i] = 0.0 if inside else sqrt(best)
    return out_arr


def rotated_eigvalsh(t, thetas, double tol=1e-12, int max_sweeps=100):
    """Sorted eigenvalues of Re(e^{i theta} T) for each theta, shape (m, n)."""
    t = np.asarray(t, dtype=np.complex128)
    cdef const double[:, ::1] tr = np.ascontiguousarray(t.real)
    cdef const double[:, ::1] ti = np.ascontiguousarray(t.imag)
    th = np.asarray(thetas, dtype=np.float64)
    cdef const double[::1] ct = np.ascontiguousarray(np.cos(th))
    cdef const double[::1] st = np.ascontiguousarray(np.sin(th))
    cdef Py_ssize_t m = ct.shape[0], n = tr.shape[0], j, p, q
    out_arr = np.empty((m, n), dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    cdef double[:, ::1] ar = np.empty((n, n), dtype=np.float64)
    cdef double[:, ::1] ai = np.empty((n, n), dtype=np.float64)
    cdef double c, s
    with nogil:
        for j in range(m):
            c = ct[j]; s = st[j]
            # Re(e^{i theta} T)_{pq} = (e^{i theta} T_{pq} + e^{-i theta} conj(T_{qp})) / 2
            for p in range(n):
                for q in range(n):
                    ar[p, q] = 0.5 * ((c * tr[p, q] - s * ti[p, q]) + (c * tr[q, p] - s * ti[q, p]))
                    ai[p, q] = 0.5 * ((c * ti[p, q] + s * tr[p, q]) - (c * ti[q, p] + s * tr[q, p]))
            _jacobi(ar, ai, tol, max_sweeps)
            for p in range(n):
                out[j, p] = ar[p, p]
    out_arr[:, ::-1].sort(axis=1)
    return out_arr
