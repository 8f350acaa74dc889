"""Pure-Python (numpy) versions of the compiled kernels in ``_ckernels``."""

import numpy as np


def jacobi_eigvalsh(h, tol=1e-12, max_sweeps=100):
    """Eigenvalues of a complex Hermitian matrix, sorted non-increasing."""
    a = np.array(h, dtype=np.complex128)
    n = a.shape[0]
    scale = np.linalg.norm(a)
    if scale == 0.0:
        return np.zeros(n)
    for _ in range(max_sweeps):
        off = np.sqrt(max(np.linalg.norm(a) ** 2 - np.sum(np.abs(np.diagonal(a)) ** 2), 0.0))
        if off <= tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag < 1e-300:
                    a[p, q] = a[q, p] = 0.0
                    continue
                phase = apq / mag
                app = a[p, p].real
                aqq = a[q, q].real
                theta = (aqq - app) / (2.0 * mag)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                elif theta >= 0.0:
                    t = 1.0 / (theta + np.sqrt(theta * theta + 1.0))
                else:
                    t = -1.0 / (-theta + np.sqrt(theta * theta + 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                x = a[:, p].copy()
                y = a[:, q] * phase.conjugate()
                a[:, p] = c * x - s * y
                a[:, q] = s * x + c * y
                x = a[p, :].copy()
                y = a[q, :] * phase
                a[p, :] = c * x - s * y
                a[q, :] = s * x + c * y
                a[p, q] = a[q, p] = 0.0
                a[p, p] = app - t * mag
                a[q, q] = aqq + t * mag
    out = np.diagonal(a).real.copy()
    out[::-1].sort()
    return out


def knapsack_support(atoms, weights, thetas, alpha):
    """g(theta) = (1/alpha) max sum Re(e^{i theta} l_k) t_k, 0 <= t_k <= w_k,
    sum t_k = alpha, filled greedily in stable descending order."""
    atoms = np.asarray(atoms, dtype=np.complex128)
    weights = np.asarray(weights, dtype=np.float64)
    thetas = np.asarray(thetas, dtype=np.float64)
    vals = np.outer(np.cos(thetas), atoms.real) - np.outer(np.sin(thetas), atoms.imag)
    order = np.argsort(-vals, axis=1, kind="stable")
    v = np.take_along_axis(vals, order, axis=1)
    w = weights[order]
    before = np.cumsum(w, axis=1) - w
    t = np.clip(alpha - before, 0.0, w)
    return np.sum(v * t, axis=1) / alpha


def _chunks(m, width, budget=2_000_000):
    step = max(1, budget // max(width, 1))
    return range(0, m, step), step


def halfplane_violation(points, thetas, g):
    """max over j of Re(e^{i theta_j} z) - g_j, for each point z."""
    points = np.asarray(points, dtype=np.complex128)
    thetas = np.asarray(thetas, dtype=np.float64)
    ct, st = np.cos(thetas), np.sin(thetas)
    g = np.asarray(g, dtype=np.float64)
    out = np.empty(len(points))
    starts, step = _chunks(len(points), len(thetas))
    for s in starts:
        p = points[s : s + step]
        v = np.outer(p.real, ct) - np.outer(p.imag, st) - g[None, :]
        out[s : s + step] = np.max(v, axis=1)
    return out


def polygon_distance(points, vertices):
    """Euclidean distance from each point to a convex polygon (CCW vertices;
    2 vertices is a segment, 1 a point)."""
    points = np.asarray(points, dtype=np.complex128)
    verts = np.asarray(vertices, dtype=np.complex128)
    nv = len(verts)
    if nv == 1:
        return np.abs(points - verts[0])
    a = verts if nv > 2 else verts[:1]
    ab = (np.roll(verts, -1) - verts) if nv > 2 else verts[1:] - verts[:1]
    scale = np.max(np.abs(np.concatenate([verts.real, verts.imag])))
    den = np.abs(ab) ** 2
    out = np.empty(len(points))
    starts, step = _chunks(len(points), len(a))
    for s in starts:
        ap = points[s : s + step, None] - a[None, :]
        t = np.clip((ap * ab.conjugate()).real / np.where(den > 0, den, 1.0), 0.0, 1.0)
        d = np.min(np.abs(ap - t * ab[None, :]), axis=1)
        if nv > 2:
            cross = (ab.conjugate()[None, :] * ap).imag
            inside = np.all(cross >= -1e-15 * scale * np.abs(ab)[None, :], axis=1)
            d = np.where(inside, 0.0, d)
        out[s : s + step] = d
    return out


def rotated_eigvalsh(t, thetas, tol=1e-12, max_sweeps=100):
    """Sorted eigenvalues of Re(e^{i theta} T) for each theta, shape (m, n)."""
    t = np.asarray(t, dtype=np.complex128)
    out = np.empty((len(thetas), t.shape[0]))
    for j, theta in enumerate(thetas):
        r = np.exp(1j * theta) * t
        out[j] = jacobi_eigvalsh((r + r.conj().T) / 2, tol, max_sweeps)
    return out
