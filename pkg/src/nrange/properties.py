"""Randomized property suites over computed ranges.

Each suite takes a model and returns a :class:`SuiteResult`.  Tolerances
scale with the model's norm bound; grid-level comparisons allow the
polygonal gap sec(pi / directions).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .convexgeom import contains, hausdorff, minkowski_combine
from .eigfun import StepFunction, majorizes, rearrange
from .range_engine import WeightSpec, compute_range, support_value
from .spectral import SpectralModel

SLACK = 1e-6


@dataclass
class SuiteResult:
    name: str
    trials: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self):
        return not self.failures

    def record(self, ok, detail):
        self.trials += 1
        if not ok:
            self.failures.append(detail)

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name} trials={self.trials} failures={len(self.failures)}"


def _alpha_region(m, alpha, directions, resolution):
    return compute_range(m, WeightSpec.from_alpha(alpha), directions, resolution).region


def nesting(m, trials, rng, directions=720, resolution=1024):
    """V_beta inside V_alpha for alpha < beta."""
    res = SuiteResult("nesting")
    scale = m.norm_bound()
    for _ in range(trials):
        a, b = np.sort(rng.uniform(0.02, 1.0, 2))
        va = _alpha_region(m, a, directions, resolution)
        vb = _alpha_region(m, b, directions, resolution)
        res.record(contains(va, vb, SLACK * scale), f"alpha={a:.6g} beta={b:.6g}")
    return res


def interpolation(m, trials, rng, directions=720, resolution=1024):
    """a V_alpha + c V_gamma inside V_beta for alpha < beta < gamma."""
    res = SuiteResult("interpolation")
    scale = m.norm_bound()
    for _ in range(trials):
        al, be, ga = np.sort(rng.uniform(0.02, 1.0, 3))
        if not al < be < ga:
            continue
        s = al * (ga - be) / (be * (ga - al))
        t = ga * (be - al) / (be * (ga - al))
        combo = minkowski_combine(
            _alpha_region(m, al, directions, resolution), s, _alpha_region(m, ga, directions, resolution), t
        )
        vb = _alpha_region(m, be, directions, resolution)
        res.record(contains(vb, combo, SLACK * scale), f"alpha={al:.6g} beta={be:.6g} gamma={ga:.6g}")
    return res


def _random_sorted_weight(rng, pieces):
    lengths = rng.dirichlet(np.ones(pieces))
    values = np.sort(rng.uniform(0, 2, pieces))[::-1]
    return StepFunction.from_pieces(lengths, values)


def continuity(m, trials, rng, directions=720, resolution=1024):
    """d_H(V_C1, V_C2) <= |T| |C1 - C2| and, for matrices, d_H(V_C(T), V_C(S)) <= |C| |T - S|."""
    res = SuiteResult("continuity")
    gap = 1 / math.cos(math.pi / directions)
    norm_t = m.norm_bound()
    for _ in range(trials):
        pieces = int(rng.integers(1, 6))
        lam1 = _random_sorted_weight(rng, pieces)
        lam2 = StepFunction(lam1.breakpoints, np.sort(lam1.values + rng.uniform(-0.1, 0.1, pieces))[::-1])
        w1, w2 = WeightSpec.from_step(lam1), WeightSpec.from_step(lam2)
        r1 = compute_range(m, w1, directions, resolution).region
        r2 = compute_range(m, w2, directions, resolution).region
        bound = norm_t * lam1.sup_distance(lam2)
        d = hausdorff(r1, r2)
        res.record(d <= bound * gap + 1e-9, f"C-perturbation d={d:.3e} bound={bound:.3e}")
        if m.kind == "matrix":
            n = m.matrix.shape[0]
            e = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
            e *= rng.uniform(1e-3, 1e-1) / np.linalg.norm(e, 2)
            s_model = SpectralModel.from_matrix(m.matrix + e)
            r3 = compute_range(s_model, w1, directions, resolution).region
            bound = w1.norm() * np.linalg.norm(e, 2)
            d = hausdorff(r1, r3)
            res.record(d <= bound * gap + 1e-9, f"T-perturbation d={d:.3e} bound={bound:.3e}")
    return res


def monotonicity(m, trials, rng, directions=720, resolution=1024):
    """V_C1 inside V_C2 whenever lambda_C1 is majorized by lambda_C2."""
    res = SuiteResult("monotonicity")
    scale = m.norm_bound()
    for _ in range(trials):
        pieces = int(rng.integers(2, 7))
        lam2 = StepFunction.equal_pieces(np.sort(rng.uniform(0, 2, pieces))[::-1])
        # averaging over random blocks is a conditional expectation, so it is majorized
        cut = int(rng.integers(1, pieces))
        vals = lam2.values.copy()
        vals[:cut] = vals[:cut].mean()
        vals[cut:] = vals[cut:].mean()
        lam1 = rearrange(StepFunction(lam2.breakpoints, vals))
        if not majorizes(lam2, lam1).majorizes:
            res.record(False, "constructed weights not ordered")
            continue
        r1 = compute_range(m, WeightSpec.from_step(lam1), directions, resolution).region
        r2 = compute_range(m, WeightSpec.from_step(lam2), directions, resolution).region
        res.record(contains(r2, r1, SLACK * scale), f"pieces={pieces} cut={cut}")
    return res


def covariance(m, trials, rng, directions=720, resolution=1024):
    """V_C(zI + wT) = z tau(C) + w V_C(T), through supporting values at arbitrary angles."""
    res = SuiteResult("covariance")
    if m.kind not in ("matrix", "atomic"):
        return res
    for _ in range(trials):
        alpha = rng.uniform(0.05, 1.0)
        w_spec = WeightSpec.from_alpha(alpha)
        z = complex(*rng.normal(size=2))
        w = complex(*rng.normal(size=2))
        moved = m.transform(z, w)
        theta = rng.uniform(0, 2 * math.pi)
        lhs = support_value(moved, w_spec, theta, resolution)
        phi = math.atan2(w.imag, w.real)
        rhs = abs(w) * support_value(m, w_spec, (theta + phi) % (2 * math.pi), resolution)
        rhs += (complex(math.cos(theta), math.sin(theta)) * z * w_spec.trace).real
        scale = abs(w) * m.norm_bound() + abs(z)
        res.record(abs(lhs - rhs) <= 1e-9 * max(scale, 1.0), f"z={z:.3g} w={w:.3g} diff={lhs - rhs:.3e}")
    return res


def conjugation(m, trials, rng, directions=720, resolution=1024):
    """V_C(T^*) is the complex conjugate of V_C(T)."""
    res = SuiteResult("conjugation")
    if m.kind not in ("matrix", "atomic"):
        return res
    for _ in range(trials):
        alpha = rng.uniform(0.05, 1.0)
        r = _alpha_region(m, alpha, directions, resolution)
        rs = _alpha_region(m.adjoint(), alpha, directions, resolution)
        d = hausdorff(rs, r.conjugate())
        res.record(d <= 1e-9 * max(m.norm_bound(), 1.0), f"alpha={alpha:.6g} d={d:.3e}")
    return res


def real_part(m, trials, rng, directions=720, resolution=1024):
    """V_C(Re T) is the projection of V_C(T) onto the real axis."""
    res = SuiteResult("real_part")
    if m.kind not in ("matrix", "atomic"):
        return res
    re_model = m.real_part()
    for _ in range(trials):
        alpha = rng.uniform(0.05, 1.0)
        r = _alpha_region(m, alpha, directions, resolution)
        seg = _alpha_region(re_model, alpha, directions, resolution)
        lo, hi = float(np.min(seg.vertices.real)), float(np.max(seg.vertices.real))
        plo, phi = float(np.min(r.vertices.real)), float(np.max(r.vertices.real))
        err = max(abs(lo - plo), abs(hi - phi))
        res.record(err <= 1e-9 * max(m.norm_bound(), 1.0), f"alpha={alpha:.6g} err={err:.3e}")
    return res


SUITES = {
    "nesting": nesting,
    "interpolation": interpolation,
    "continuity": continuity,
    "monotonicity": monotonicity,
    "covariance": covariance,
    "conjugation": conjugation,
    "real_part": real_part,
}


def run_suites(m, names, trials=100, seed=0, directions=720, resolution=1024):
    rng = np.random.default_rng(seed)
    return [SUITES[name](m, trials, rng, directions, resolution) for name in names]
