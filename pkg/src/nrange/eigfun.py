"""Right-continuous step functions on [0, 1) and the majorization order.

Eigenvalue functions of operators with finite spectrum, and the discretized
quantile functions of continuous laws, are all represented as
:class:`StepFunction`.  Breakpoints and values may be floats or
:class:`fractions.Fraction`; with fractions every operation here is exact.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational

import numpy as np

MAJORIZATION_TOL = 1e-9


class StepFunctionError(ValueError):
    """Malformed breakpoints or values."""


def _as_array(xs):
    if isinstance(xs, np.ndarray) and xs.dtype != object:
        return np.array(xs, dtype=np.float64)
    xs = list(xs)
    if any(isinstance(x, Fraction) for x in xs) and all(isinstance(x, Rational) for x in xs):
        return np.array([Fraction(x) for x in xs], dtype=object)
    return np.array(xs, dtype=np.float64)


def _is_exact(a):
    return a.dtype == object


@dataclass(frozen=True, eq=False)
class StepFunction:
    """f(s) = values[k] for breakpoints[k] <= s < breakpoints[k+1]."""

    breakpoints: np.ndarray
    values: np.ndarray
    sorted: bool = field(default=False)

    def __post_init__(self):
        bp = _as_array(self.breakpoints)
        vals = _as_array(self.values)
        if bp.dtype != vals.dtype:
            # mixed exact/float input degrades to float
            bp = bp.astype(np.float64)
            vals = vals.astype(np.float64)
        if bp.ndim != 1 or vals.ndim != 1:
            raise StepFunctionError("breakpoints and values must be 1-d")
        if len(bp) != len(vals) + 1 or len(vals) == 0:
            raise StepFunctionError("need len(breakpoints) == len(values) + 1 >= 2")
        if bp[0] != 0 or bp[-1] != 1:
            raise StepFunctionError("breakpoints must start at 0 and end at 1")
        if not np.all(bp[:-1] < bp[1:]):
            raise StepFunctionError("breakpoints must be strictly increasing")
        if not _is_exact(vals) and not np.all(np.isfinite(vals)):
            raise StepFunctionError("values must be finite")
        is_sorted = bool(np.all(vals[:-1] >= vals[1:]))
        if self.sorted and not is_sorted:
            raise StepFunctionError("function flagged sorted has increasing values")
        bp.setflags(write=False)
        vals.setflags(write=False)
        object.__setattr__(self, "breakpoints", bp)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "sorted", is_sorted)

    # construction -------------------------------------------------------

    @classmethod
    def from_pieces(cls, lengths, values):
        """Build from piece lengths (summing to 1) and piece values."""
        lengths = _as_array(lengths)
        if np.any(lengths <= 0):
            raise StepFunctionError("piece lengths must be positive")
        start = np.array([Fraction(0)], dtype=object) if _is_exact(lengths) else np.zeros(1)
        bp = np.concatenate([start, np.cumsum(lengths)])
        if _is_exact(lengths):
            if bp[-1] != 1:
                raise StepFunctionError("piece lengths must sum to 1")
        else:
            if abs(bp[-1] - 1.0) > 1e-12:
                raise StepFunctionError("piece lengths must sum to 1")
            bp[-1] = 1.0
        return cls(bp, values)

    @classmethod
    def constant(cls, c):
        return cls([Fraction(0), Fraction(1)] if isinstance(c, Fraction) else [0.0, 1.0], [c])

    @classmethod
    def equal_pieces(cls, values):
        """n pieces of width 1/n; exact when the values are rationals."""
        values = list(values)
        n = len(values)
        if all(isinstance(v, Rational) for v in values):
            return cls([Fraction(k, n) for k in range(n + 1)], [Fraction(v) for v in values])
        return cls(np.arange(n + 1) / n, values)

    # basic queries --------------------------------------------------------

    @property
    def lengths(self):
        return np.diff(self.breakpoints)

    @property
    def n_pieces(self):
        return len(self.values)

    def __call__(self, s):
        s = np.asarray(s)
        if np.any((s < 0) | (s >= 1)):
            raise ValueError("step functions are defined on [0, 1)")
        idx = np.searchsorted(self.breakpoints, s, side="right") - 1
        return self.values[idx]

    def integral(self):
        return np.sum(self.lengths * self.values)

    def sup_distance(self, other):
        """Sup norm of f - g, evaluated on the merged grid."""
        grid = merged_grid(self, other)
        mids = (grid[:-1] + grid[1:]) / 2
        return float(np.max(np.abs(self(mids) - other(mids))))

    def __eq__(self, other):
        if not isinstance(other, StepFunction):
            return NotImplemented
        return (
            len(self.values) == len(other.values)
            and bool(np.all(self.breakpoints == other.breakpoints))
            and bool(np.all(self.values == other.values))
        )

    def __hash__(self):
        return hash((tuple(self.breakpoints), tuple(self.values)))

    def __repr__(self):
        pieces = ", ".join(f"{l}:{v}" for l, v in zip(self.lengths, self.values))
        return f"StepFunction({pieces})"

    # arithmetic -----------------------------------------------------------

    def scale(self, a):
        return StepFunction(self.breakpoints, self.values * a)

    def shift(self, b):
        return StepFunction(self.breakpoints, self.values + b)

    def reflect(self):
        """s -> f(1 - s), up to the values at the breakpoints."""
        # 1 - 1 and 1 - 0 are exact, so the endpoints stay 0 and 1
        bp = 1 - self.breakpoints[::-1]
        return StepFunction(bp, self.values[::-1])

    # JSON -------------------------------------------------------------------

    def to_dict(self):
        return {
            "breakpoints": [float(x) for x in self.breakpoints],
            "values": [float(x) for x in self.values],
        }

    @classmethod
    def from_dict(cls, d):
        try:
            return cls(d["breakpoints"], d["values"])
        except (KeyError, TypeError) as exc:
            raise StepFunctionError(f"bad step function JSON: {exc}") from exc

    def to_json(self):
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class MajorizationVerdict:
    majorizes: bool
    worst_t: float
    worst_gap: float
    total_integral_gap: float

    def to_dict(self):
        return {
            "majorizes": self.majorizes,
            "worst_t": float(self.worst_t),
            "worst_gap": float(self.worst_gap),
            "total_integral_gap": float(self.total_integral_gap),
        }


def merged_grid(*fs):
    grid = fs[0].breakpoints
    for f in fs[1:]:
        grid = np.union1d(grid, f.breakpoints)
    if grid.dtype == object:
        # union1d of mixed Fraction/float can leave numerically equal entries
        grid = np.array(sorted(set(grid)), dtype=object)
    return grid


def _on_grid(f, grid):
    """Values of f on each cell [grid[k], grid[k+1])."""
    idx = np.searchsorted(f.breakpoints, grid[:-1], side="right") - 1
    return f.values[idx]


def rearrange(f):
    """Non-increasing rearrangement with equal values merged into one piece."""
    order = sorted(range(len(f.values)), key=lambda i: -f.values[i])
    vals = f.values[order]
    lens = f.lengths[order]
    out_vals, out_lens = [vals[0]], [lens[0]]
    for v, l in zip(vals[1:], lens[1:]):
        if v == out_vals[-1]:
            out_lens[-1] = out_lens[-1] + l
        else:
            out_vals.append(v)
            out_lens.append(l)
    if _is_exact(f.breakpoints):
        bp = [Fraction(0)]
        for l in out_lens:
            bp.append(bp[-1] + l)
    else:
        bp = np.concatenate([[0.0], np.cumsum(out_lens)])
        bp[-1] = 1.0
    return StepFunction(bp, out_vals, sorted=True)


def partial_integral(f, t):
    """Exact integral of f over [0, t]."""
    if not 0 <= t <= 1:
        raise StepFunctionError(f"t={t} outside [0, 1]")
    bp = f.breakpoints
    k = int(np.searchsorted(bp, t, side="right")) - 1
    total = np.sum(f.lengths[:k] * f.values[:k]) if k > 0 else 0 * f.values[0]
    if k < len(f.values):
        total = total + (t - bp[k]) * f.values[k]
    return total


def partial_integrals(f, ts):
    """Vectorized :func:`partial_integral` over an increasing array of t."""
    cum = np.concatenate([[0 * f.values[0]], np.cumsum(f.lengths * f.values)])
    k = np.clip(np.searchsorted(f.breakpoints, ts, side="right") - 1, 0, len(f.values) - 1)
    return cum[k] + (ts - f.breakpoints[k]) * f.values[k]


def majorizes(f, g, tol=MAJORIZATION_TOL):
    """Does f majorize g (g < f)?  Both are sorted first.

    Partial integrals are piecewise linear, so checking them at the merged
    breakpoints is exact.
    """
    fs, gs = rearrange(f), rearrange(g)
    grid = merged_grid(fs, gs)
    gap = partial_integrals(gs, grid) - partial_integrals(fs, grid)
    k = int(np.argmax(gap))
    worst = gap[k]
    total = fs.integral() - gs.integral()
    ok = bool(worst <= tol and abs(total) <= tol)
    return MajorizationVerdict(ok, grid[k], worst, total)


def pairing_integral(f, g, reversed=False):
    """Integral of f(s) g(s) ds, or f(s) g(1 - s) ds when reversed."""
    if reversed:
        g = g.reflect()
    grid = merged_grid(f, g)
    return np.sum(np.diff(grid) * _on_grid(f, grid) * _on_grid(g, grid))


def combine(f, a, g, b):
    """Pointwise a f + b g on the union of the breakpoint sets."""
    grid = merged_grid(f, g)
    return StepFunction(grid, a * _on_grid(f, grid) + b * _on_grid(g, grid))
