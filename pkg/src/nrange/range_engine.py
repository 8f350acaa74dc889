"""C-numerical and alpha-numerical ranges.

For positive C the supporting function of V_C(T) in direction theta is the
pairing of the eigenvalue functions of Re(e^{i theta} T) and C.  Sampling it
over a direction grid and intersecting the half-planes gives the region.
Weights with negative values are shifted to be positive first, using
V_{C + bI}(T) = V_C(T) + b tau(T).
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping

import numpy as np

from . import kernels
from .convexgeom import (
    DEFAULT_DIRECTIONS,
    TWO_PI,
    ConvexRegion,
    SupportSample,
    convex_hull,
    region_from_support,
    support_of_points,
    uniform_thetas,
)
from .eigfun import StepFunction, pairing_integral, partial_integral, partial_integrals
from .spectral import DEFAULT_RESOLUTION, SpectralModel, quantile_step, real_part_distribution


class WeightError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class WeightSpec:
    """The self-adjoint C, given by lambda_C.

    ``alpha`` stands for C = P / alpha with tau(P) = alpha, i.e.
    lambda_C = (1/alpha) 1_[0, alpha), so V_C(T) is the alpha-numerical range.
    """

    kind: str
    alpha: float | Fraction | None = None
    lambda_c: StepFunction | None = None

    def __post_init__(self):
        if self.kind == "alpha":
            if self.alpha is None or not 0 < self.alpha <= 1:
                raise WeightError(f"alpha must lie in (0, 1], got {self.alpha}")
            a = self.alpha
            if a == 1:
                lam = StepFunction.constant(Fraction(1) if isinstance(a, Fraction) else 1.0)
            elif isinstance(a, Fraction):
                lam = StepFunction([Fraction(0), a, Fraction(1)], [1 / a, Fraction(0)])
            else:
                lam = StepFunction([0.0, a, 1.0], [1.0 / a, 0.0])
            object.__setattr__(self, "lambda_c", lam)
        elif self.kind == "step":
            if not isinstance(self.lambda_c, StepFunction):
                raise WeightError("step weight needs a StepFunction")
            if not self.lambda_c.sorted:
                raise WeightError("step weight must be sorted non-increasing")
        else:
            raise WeightError(f"unknown weight kind {self.kind!r}")

    @classmethod
    def from_alpha(cls, alpha):
        return cls("alpha", alpha=alpha)

    @classmethod
    def from_step(cls, lam):
        return cls("step", lambda_c=lam)

    @property
    def min_value(self):
        return self.lambda_c.values[-1]

    @property
    def trace(self):
        return self.lambda_c.integral()

    def norm(self):
        return float(max(abs(self.lambda_c.values[0]), abs(self.lambda_c.values[-1])))

    def describe(self):
        if self.kind == "alpha":
            return {"kind": "alpha", "alpha": float(self.alpha)}
        return {"kind": "step", "lambda_c": self.lambda_c.to_dict()}


@dataclass(frozen=True, eq=False)
class RangeReport:
    region: ConvexRegion
    directions: int
    resolution: int
    model_digest: str
    weight: dict
    is_degenerate_interval: bool

    def to_dict(self):
        d = {
            "vertices": [[float(z.real), float(z.imag)] for z in self.region.vertices],
            "directions": self.directions,
            "resolution": self.resolution,
            "input_digest": self.model_digest,
            "weight": self.weight,
            "is_degenerate_interval": self.is_degenerate_interval,
        }
        if self.region.support is not None:
            d["support"] = {
                "thetas": [float(t) for t in self.region.support.thetas],
                "values": [float(g) for g in self.region.support.values],
            }
        return d

    @classmethod
    def region_from_dict(cls, d):
        support = None
        if "support" in d:
            support = SupportSample(d["support"]["thetas"], d["support"]["values"])
        verts = [complex(x, y) for x, y in d["vertices"]]
        return ConvexRegion(verts, support)


def _require_positive(w):
    if w.min_value < 0:
        raise WeightError("weight has negative values; translate C to a positive operator first")


def selfadjoint_range(lambda_t, w):
    """[int lambda_T(s) lambda_C(1-s) ds, int lambda_T(s) lambda_C(s) ds]."""
    _require_positive(w)
    if not lambda_t.sorted:
        raise WeightError("lambda_T must be sorted non-increasing")
    lam_c = w.lambda_c
    return pairing_integral(lambda_t, lam_c, reversed=True), pairing_integral(lambda_t, lam_c, reversed=False)


def support_value(m, w, theta, resolution=DEFAULT_RESOLUTION):
    """g_{V_C(T)}(theta) for positive C."""
    _require_positive(w)
    lam = quantile_step(real_part_distribution(m, theta), resolution)
    return float(pairing_integral(lam, w.lambda_c, reversed=False))


def _thread_count():
    try:
        return max(1, int(os.environ.get("NRANGE_THREADS", "1")))
    except ValueError:
        return 1


def _matrix_sweep(t, lam_c, thetas, threads):
    """Pairing of each lambda_{Re(e^{i theta} T)} (n pieces of width 1/n)
    with lambda_C, as sorted eigenvalues times the cell integrals of lambda_C."""
    n = t.shape[0]
    cells = np.diff(partial_integrals(lam_c, np.arange(n + 1) / n)).astype(np.float64)
    if threads > 1 and len(thetas) >= 2 * threads:
        chunks = np.array_split(np.asarray(thetas), threads)
        with ThreadPoolExecutor(threads) as pool:
            eigs = np.concatenate(list(pool.map(lambda c: kernels.rotated_eigvalsh(t, c), chunks)))
    else:
        eigs = kernels.rotated_eigvalsh(t, thetas)
    return eigs @ cells


def _sweep(m, w, thetas, resolution, threads):
    """Support values over the grid; equal laws are discretized once."""
    if m.kind == "matrix":
        return _matrix_sweep(m.matrix, w.lambda_c, thetas, threads)
    cache = {}

    def one(theta):
        d = real_part_distribution(m, theta)
        key = d if d.kind != "atomic" else None
        if key is not None and key in cache:
            return cache[key]
        g = float(pairing_integral(quantile_step(d, resolution), w.lambda_c))
        if key is not None:
            cache[key] = g
        return g

    return np.array([one(t) for t in thetas])


def bisector_directions(atoms):
    """Directions where Re(e^{i theta} a_j) = Re(e^{i theta} a_k) for some j != k.

    The greedy order of the knapsack, hence the maximizing vertex, can only
    change there, so these are the edge normals of a normal operator's range.
    """
    atoms = np.asarray(atoms, dtype=np.complex128)
    out = []
    for j in range(len(atoms)):
        for k in range(j + 1, len(atoms)):
            d = atoms[j] - atoms[k]
            if abs(d) == 0:
                continue
            base = math.pi / 2 - math.atan2(d.imag, d.real)
            out.extend([base % TWO_PI, (base + math.pi) % TWO_PI])
    return np.array(out)


def _merge_grid(base, extra):
    grid = np.union1d(base, np.mod(extra, TWO_PI))
    grid = grid[grid < TWO_PI]
    # drop near-duplicates so consecutive lines are never parallel
    keep = np.concatenate([[True], np.diff(grid) > 1e-12])
    return grid[keep]


def _interval_region(lo, hi, thetas):
    pts = [complex(lo), complex(hi)]
    support = SupportSample(thetas, support_of_points(pts, thetas))
    return ConvexRegion(convex_hull(pts), support)


def compute_range(m, w, directions=DEFAULT_DIRECTIONS, resolution=DEFAULT_RESOLUTION, threads=None):
    """V_C(T) as a :class:`RangeReport`.

    Self-adjoint models take the exact interval.  Atomic models add the
    bisector directions to the grid, which makes their polygon exact.
    """
    if directions < 3:
        raise ValueError("need at least 3 directions")
    threads = _thread_count() if threads is None else threads
    shift = 0.0
    if w.min_value < 0:
        shift = -w.min_value
        w = WeightSpec.from_step(w.lambda_c.shift(shift))
    thetas = uniform_thetas(directions)
    tau = m.trace()
    selfadjoint = m.is_selfadjoint()
    if selfadjoint:
        lam_t = quantile_step(real_part_distribution(m, 0.0), resolution)
        lo, hi = selfadjoint_range(lam_t, w)
        lo, hi = float(lo) - shift * tau.real, float(hi) - shift * tau.real
        region = _interval_region(lo, hi, thetas)
    else:
        if m.kind == "atomic":
            thetas = _merge_grid(thetas, bisector_directions(m.atoms))
        g = _sweep(m, w, thetas, resolution, threads)
        if shift:
            g = g - shift * (np.exp(1j * thetas) * tau).real
        region = region_from_support(SupportSample(thetas, g))
    return RangeReport(
        region=region,
        directions=len(thetas),
        resolution=resolution,
        model_digest=m.digest(),
        weight=w.describe() if not shift else {**w.describe(), "shift": -shift},
        is_degenerate_interval=selfadjoint,
    )


def normal_range_exact(atoms, alpha, directions=DEFAULT_DIRECTIONS):
    """V_alpha of a normal operator with finite spectrum.

    ``atoms`` is a list of (eigenvalue, weight).  The supporting function is
    the fractional knapsack optimum; sampling it on the uniform grid plus all
    bisector directions captures every edge normal exactly.
    """
    if not 0 < alpha <= 1:
        raise WeightError(f"alpha must lie in (0, 1], got {alpha}")
    lam = np.array([complex(a) for a, _ in atoms])
    wts = np.array([float(x) for _, x in atoms])
    thetas = _merge_grid(uniform_thetas(directions), bisector_directions(lam))
    g = kernels.knapsack_support(lam, wts, thetas, float(alpha))
    return region_from_support(SupportSample(thetas, g))


def knapsack_point(atoms, alpha, theta):
    """The maximizer (1/alpha) sum lambda_k t_k of the knapsack in direction theta."""
    lam = np.array([complex(a) for a, _ in atoms])
    wts = np.array([float(x) for _, x in atoms])
    vals = (np.exp(1j * theta) * lam).real
    order = np.argsort(-vals, kind="stable")
    before = np.cumsum(wts[order]) - wts[order]
    t = np.clip(alpha - before, 0.0, wts[order])
    return complex(np.sum(lam[order] * t) / alpha)


def _lookup(table, x):
    if callable(table):
        return table(x)
    for key, val in table.items():
        if abs(float(key) - float(x)) <= 1e-12:
            return val
    raise KeyError(f"alpha table has no entry for {float(x)}")


def range_from_alpha_family(alpha_table, w):
    """Rebuild V_C(T) for self-adjoint T from its alpha-numerical ranges.

    ``alpha_table`` maps alpha (or is a callable alpha -> (inf, sup)) to the
    interval V_alpha(T).  With lambda_C = sum c_k 1_[x_{k-1}, x_k),
    x sup V_x(T) = int_0^x lambda_T and x inf V_x(T) = int_{1-x}^1 lambda_T,
    which give the integrals of lambda_T over [x_{k-1}, x_k) and over the
    reflected pieces [1 - x_k, 1 - x_{k-1}).
    """
    lam = w.lambda_c if isinstance(w, WeightSpec) else w
    if not lam.sorted or lam.values[-1] < 0:
        raise WeightError("weight must be a positive sorted step function")
    xs = lam.breakpoints
    top = [0.0]
    bottom = [0.0]
    for x in xs[1:]:
        try:
            inf_x, sup_x = _lookup(alpha_table, x)
        except KeyError as exc:
            raise WeightError(str(exc)) from exc
        top.append(x * sup_x)
        bottom.append(x * inf_x)
    hi = sum(c * (top[k + 1] - top[k]) for k, c in enumerate(lam.values))
    lo = sum(c * (bottom[k + 1] - bottom[k]) for k, c in enumerate(lam.values))
    return lo, hi


def alpha_interval(lambda_t, alpha):
    """V_alpha of a self-adjoint operator from its eigenvalue function."""
    lo = (partial_integral(lambda_t, 1) - partial_integral(lambda_t, 1 - alpha)) / alpha
    hi = partial_integral(lambda_t, alpha) / alpha
    return lo, hi
