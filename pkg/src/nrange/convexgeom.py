"""Compact convex subsets of the plane through their supporting functions.

Points are complex numbers.  The supporting function is
g_K(theta) = sup{Re(e^{i theta} z) : z in K}, so the half-plane attached to
direction theta is {x cos(theta) - y sin(theta) <= g(theta)}.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

import numpy as np

from . import kernels

DEFAULT_DIRECTIONS = 720
REDUNDANCY_TOL = 1e-9
TWO_PI = 2 * math.pi


class InconsistentSupportError(ValueError):
    """The half-planes of a support sample have empty intersection."""


def uniform_thetas(n=DEFAULT_DIRECTIONS):
    return TWO_PI * np.arange(n) / n


def support_of_points(points, thetas):
    """max over points of Re(e^{i theta} z), for each theta."""
    points = np.asarray(points, dtype=np.complex128)
    rot = np.exp(1j * np.asarray(thetas, dtype=np.float64))
    return np.max((rot[:, None] * points[None, :]).real, axis=1)


@dataclass(frozen=True, eq=False)
class SupportSample:
    thetas: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        th = np.array(self.thetas, dtype=np.float64)
        g = np.array(self.values, dtype=np.float64)
        if th.ndim != 1 or th.shape != g.shape:
            raise ValueError("thetas and values must be 1-d of equal length")
        if len(th) < 3:
            raise ValueError("a support sample needs at least 3 directions")
        if np.any(th < 0) or np.any(th >= TWO_PI) or np.any(np.diff(th) <= 0):
            raise ValueError("thetas must be strictly increasing in [0, 2 pi)")
        if not np.all(np.isfinite(g)):
            raise ValueError("support values must be finite")
        th.setflags(write=False)
        g.setflags(write=False)
        object.__setattr__(self, "thetas", th)
        object.__setattr__(self, "values", g)

    def scale(self):
        return float(np.max(np.abs(self.values)))

    def interpolate(self, thetas):
        """Periodic linear interpolation of g onto other directions."""
        th = np.concatenate([self.thetas, [self.thetas[0] + TWO_PI]])
        g = np.concatenate([self.values, [self.values[0]]])
        return _periodic_interp(np.asarray(thetas, dtype=np.float64), th, g)

    def same_grid(self, other):
        return len(self.thetas) == len(other.thetas) and bool(np.all(self.thetas == other.thetas))

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["theta", "g"])
        for t, g in zip(self.thetas, self.values):
            w.writerow([f"{t:.17g}", f"{g:.17g}"])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text):
        rows = list(csv.reader(io.StringIO(text)))
        if not rows or [c.strip() for c in rows[0]] != ["theta", "g"]:
            raise ValueError("support CSV must start with header 'theta,g'")
        data = np.array([[float(a), float(b)] for a, b in rows[1:] if a.strip()])
        return cls(data[:, 0], data[:, 1])


def _periodic_interp(x, th, g):
    # th runs over one period starting at th[0]; shift queries into it
    x = th[0] + np.mod(x - th[0], TWO_PI)
    return np.interp(x, th, g)


@dataclass(frozen=True, eq=False)
class ConvexRegion:
    """Convex polygon with counterclockwise vertices (a segment has 2, a point 1)."""

    vertices: np.ndarray
    support: SupportSample | None = None

    def __post_init__(self):
        v = np.array(self.vertices, dtype=np.complex128).reshape(-1)
        if len(v) == 0:
            raise ValueError("a region needs at least one vertex")
        v.setflags(write=False)
        object.__setattr__(self, "vertices", v)

    @classmethod
    def from_points(cls, points, support=None, tol=0.0):
        return cls(convex_hull(points, tol), support)

    @property
    def is_point(self):
        return len(self.vertices) == 1

    @property
    def is_segment(self):
        return len(self.vertices) == 2

    def support_values(self, thetas):
        return support_of_points(self.vertices, thetas)

    def area(self):
        v = self.vertices
        if len(v) < 3:
            return 0.0
        x, y = v.real, v.imag
        return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))

    def diameter(self):
        v = self.vertices
        return float(np.max(np.abs(v[:, None] - v[None, :])))

    def extent(self):
        """max |z| over the region."""
        return float(np.max(np.abs(self.vertices)))

    def transform(self, z=0j, w=1 + 0j):
        """The region z + w K (support sample dropped unless w is real positive)."""
        support = None
        if self.support is not None and w.imag == 0 and w.real > 0:
            th = self.support.thetas
            support = SupportSample(th, w.real * self.support.values + (np.exp(1j * th) * z).real)
        return ConvexRegion(z + w * self.vertices if len(self.vertices) < 3 else convex_hull(z + w * self.vertices), support)

    def conjugate(self):
        return ConvexRegion(convex_hull(self.vertices.conjugate()))

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["x", "y"])
        for z in self.vertices:
            w.writerow([f"{z.real:.17g}", f"{z.imag:.17g}"])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text):
        rows = list(csv.reader(io.StringIO(text)))
        if not rows or [c.strip() for c in rows[0]] != ["x", "y"]:
            raise ValueError("polygon CSV must start with header 'x,y'")
        pts = [complex(float(a), float(b)) for a, b in rows[1:] if a.strip()]
        return cls(pts)


def _cross(o, a, b):
    return (a.real - o.real) * (b.imag - o.imag) - (a.imag - o.imag) * (b.real - o.real)


def convex_hull(points, tol=0.0):
    """Counterclockwise hull (monotone chain); collinear points are dropped.

    Degenerate inputs return a segment (2 points) or a single point.
    """
    pts = np.asarray(points, dtype=np.complex128).reshape(-1)
    if len(pts) == 0:
        raise ValueError("no points")
    pts = sorted(set(pts.tolist()), key=lambda z: (z.real, z.imag))
    if tol > 0 and len(pts) > 1:
        kept = [pts[0]]
        for p in pts[1:]:
            if abs(p - kept[-1]) > tol:
                kept.append(p)
        if len(kept) > 1 and abs(kept[-1] - kept[0]) <= tol:
            kept = kept[:1]
        pts = kept
    if len(pts) <= 2:
        return np.array(pts)
    scale = max(abs(p) for p in pts)
    eps = max(tol, 1e-15 * scale)

    def flat(o, a, b):
        # a lies within eps of the chord ob (or right of it)
        return _cross(o, a, b) <= eps * abs(b - o)

    lower = []
    for p in pts:
        while len(lower) >= 2 and flat(lower[-2], lower[-1], p):
            lower.pop()
        lower.append(p)
    upper = []
    for p in reversed(pts):
        while len(upper) >= 2 and flat(upper[-2], upper[-1], p):
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    if len(hull) == 2 and abs(hull[0] - hull[1]) <= tol:
        hull = hull[:1]
    return np.array(hull)


def _halfplane_normals(thetas):
    # Re(e^{i theta} z) = x cos theta - y sin theta
    return np.cos(thetas), -np.sin(thetas)


def _line_intersections(thetas, g, i, j):
    ax, ay = _halfplane_normals(thetas[i])
    bx, by = _halfplane_normals(thetas[j])
    det = ax * by - ay * bx
    x = (g[i] * by - ay * g[j]) / det
    y = (ax * g[j] - g[i] * bx) / det
    return x + 1j * y


def _edge_lengths(thetas, cand):
    """Signed length of each edge along its own supporting line.

    Vertices run clockwise as theta increases.  When no edge is negative the
    candidates form a convex polygon whose outward normals are exactly the
    sampled directions, so every candidate satisfies every half-plane; this
    certifies the sample in O(n).
    """
    edges = cand - np.roll(cand, 1)
    tangent = -1j * np.exp(-1j * thetas)
    return (np.conj(tangent) * edges).real


def _violation(points, thetas, g):
    """max over directions of Re(e^{i theta} z) - g(theta), per point."""
    return kernels.halfplane_violation(points, thetas, g)


def _clip(thetas, g, tol):
    """Half-plane intersection by successive clipping of a bounding box."""
    r = 4 * (np.max(np.abs(g)) + 1.0)
    poly = [complex(-r, -r), complex(r, -r), complex(r, r), complex(-r, r)]
    for t, gv in zip(thetas, g):
        nx, ny = math.cos(t), -math.sin(t)
        out = []
        m = len(poly)
        for k in range(m):
            p, q = poly[k], poly[(k + 1) % m]
            dp = nx * p.real + ny * p.imag - gv - tol
            dq = nx * q.real + ny * q.imag - gv - tol
            if dp <= 0:
                out.append(p)
            if (dp < 0 < dq) or (dq < 0 < dp):
                out.append(p + (q - p) * (dp / (dp - dq)))
        poly = out
        if not poly:
            raise InconsistentSupportError("support sample has empty half-plane intersection")
    return np.array(poly)


def region_from_support(s):
    """Intersection of the half-planes {Re(e^{i theta_j} z) <= g_j}.

    Candidate vertices are intersections of consecutive supporting lines;
    those violating another half-plane beyond tolerance are discarded.  If
    any were discarded the sample is not an exact supporting function, and
    the intersection is recomputed by direct clipping.
    """
    th, g = s.thetas, s.values
    tol = REDUNDANCY_TOL * max(s.scale(), 1e-300)
    n = len(th)
    gaps = np.diff(np.concatenate([th, [th[0] + TWO_PI]]))
    if np.max(gaps) >= math.pi:
        # consecutive lines cannot bound a compact region
        raise InconsistentSupportError("directions leave a gap of pi or more; region unbounded")
    i = np.arange(n)
    cand = _line_intersections(th, g, i, (i + 1) % n)
    if np.all(_edge_lengths(th, cand) >= -tol) or np.all(_violation(cand, th, g) <= tol):
        verts = cand
    else:
        verts = _clip(th, g, tol)
        if len(verts) == 0:
            raise InconsistentSupportError("support sample has empty half-plane intersection")
    diam_tol = 10 * tol
    return ConvexRegion(convex_hull(verts, diam_tol), s)


def _point_to_region(points, verts):
    """Euclidean distance from each point to the convex polygon verts."""
    return kernels.polygon_distance(np.atleast_1d(np.asarray(points, dtype=np.complex128)), verts)


def hausdorff(a, b):
    """Exact Hausdorff distance between two convex polygons.

    The distance to a convex set is convex, so each one-sided sup is attained
    at a vertex.
    """
    return float(max(np.max(_point_to_region(a.vertices, b.vertices)), np.max(_point_to_region(b.vertices, a.vertices))))


def _common_grid(*regions):
    grids = [r.support.thetas for r in regions if r.support is not None]
    if not grids:
        return uniform_thetas()
    grid = grids[0]
    for other in grids[1:]:
        if len(other) != len(grid) or np.any(other != grid):
            grid = np.union1d(grid, other)
    return grid


def _support_on(region, grid):
    if region.support is not None:
        if len(region.support.thetas) == len(grid) and np.all(region.support.thetas == grid):
            return np.asarray(region.support.values)
        # mismatched grids: linear interpolation of g
        return region.support.interpolate(grid)
    return region.support_values(grid)


def minkowski_combine(a, s, b, t):
    """The region s A + t B, via g = s g_A + t g_B on the common direction grid."""
    if s < 0 or t < 0:
        raise ValueError("Minkowski weights must be nonnegative")
    grid = _common_grid(a, b)
    g = s * _support_on(a, grid) + t * _support_on(b, grid)
    return region_from_support(SupportSample(grid, g))


def contains(a, b, slack=0.0):
    """g_B <= g_A + slack on the common direction grid."""
    if slack < 0:
        raise ValueError("slack must be nonnegative")
    grid = _common_grid(a, b)
    return bool(np.all(_support_on(b, grid) <= _support_on(a, grid) + slack))


def points_inside(region, points, inflation=0.0):
    """Which points lie in the region inflated by ``inflation`` (Euclidean)."""
    return _point_to_region(points, region.vertices) <= inflation


def disk_region(radius, center=0j, directions=DEFAULT_DIRECTIONS):
    th = uniform_thetas(directions)
    g = radius + (np.exp(1j * th) * center).real
    return region_from_support(SupportSample(th, g))


def ellipse_region(a, b, directions=DEFAULT_DIRECTIONS):
    """{x^2/a^2 + y^2/b^2 <= 1} through g = sqrt(a^2 cos^2 + b^2 sin^2)."""
    th = uniform_thetas(directions)
    g = np.sqrt((a * np.cos(th)) ** 2 + (b * np.sin(th)) ** 2)
    return region_from_support(SupportSample(th, g))
