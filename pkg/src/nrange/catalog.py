"""Closed-form alpha-numerical ranges of the named free-probability operators."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .convexgeom import DEFAULT_DIRECTIONS, ConvexRegion, SupportSample, region_from_support, uniform_thetas
from .spectral import SQRT2, semicircle_tail_inverse

import numpy as np

CATALOG = ("haar_unitary", "tucci", "circular", "dt_quasinilpotent", "elliptic", "semicircular")


class CatalogError(ValueError):
    pass


def _check_alpha(alpha):
    if not 0 < alpha <= 1:
        raise CatalogError(f"alpha must lie in (0, 1], got {alpha}")


def haar_radius(alpha, limit=False):
    """sin(pi alpha) / (pi alpha); ``limit=True`` allows alpha = 0 (value 1)."""
    if limit and alpha == 0:
        return 1.0
    _check_alpha(alpha)
    if alpha == 1:
        return 0.0
    return math.sin(math.pi * alpha) / (math.pi * alpha)


def tucci_radius(alpha):
    _check_alpha(alpha)
    return 0.5 * (1 - alpha)


def circular_radius(alpha, limit=False):
    """r_alpha(Z) = (2 - h(alpha)^2)^{3/2} / (3 pi alpha) for the circular Z."""
    if limit and alpha == 0:
        return SQRT2
    _check_alpha(alpha)
    if alpha == 1:
        return 0.0
    h = semicircle_tail_inverse(alpha)
    return (2 - h * h) ** 1.5 / (3 * math.pi * alpha)


def circular_radius_asymptotic(alpha):
    """Two-term small-alpha expansion of :func:`circular_radius`."""
    c = 3 ** (5 / 3) * math.pi ** (2 / 3) / (5 * 2 ** (7 / 6))
    return SQRT2 - c * alpha ** (2 / 3)


def dt_radius(alpha):
    return circular_radius(alpha) / SQRT2


@dataclass(frozen=True)
class ClosedFormRange:
    """kind is disk (radius), ellipse (semi_axes), interval (endpoints) or point (center)."""

    kind: str
    radius: float = 0.0
    semi_axes: tuple = (0.0, 0.0)
    endpoints: tuple = (0.0, 0.0)
    center: complex = 0j

    def to_region(self, directions=DEFAULT_DIRECTIONS):
        th = uniform_thetas(directions)
        if self.kind == "point":
            return ConvexRegion([self.center])
        if self.kind == "interval":
            return ConvexRegion(list(self.endpoints))
        if self.kind == "disk":
            g = np.full(directions, self.radius)
        else:
            a, b = self.semi_axes
            g = np.sqrt((a * np.cos(th)) ** 2 + (b * np.sin(th)) ** 2)
        g = g + (np.exp(1j * th) * self.center).real
        return region_from_support(SupportSample(th, g))

    def to_dict(self):
        d = {"kind": self.kind, "center": [self.center.real, self.center.imag]}
        if self.kind == "disk":
            d["radius"] = self.radius
        elif self.kind == "ellipse":
            d["semi_axes"] = list(self.semi_axes)
        elif self.kind == "interval":
            d["endpoints"] = list(self.endpoints)
        return d


def _disk(r):
    return ClosedFormRange("point") if r == 0 else ClosedFormRange("disk", radius=r)


def closed_form(name, params=None, alpha=0.5):
    """Closed-form V_alpha for a catalog operator."""
    params = params or {}
    _check_alpha(alpha)
    if name == "haar_unitary":
        return _disk(haar_radius(alpha))
    if name == "tucci":
        return _disk(tucci_radius(alpha))
    if name == "circular":
        return _disk(circular_radius(alpha))
    if name == "dt_quasinilpotent":
        return _disk(dt_radius(alpha))
    if name == "elliptic":
        psi = params.get("psi")
        if psi is None or not 0 < psi < math.pi / 2:
            raise CatalogError("elliptic requires psi in (0, pi/2)")
        r = circular_radius(alpha)
        if r == 0:
            return ClosedFormRange("point")
        return ClosedFormRange("ellipse", semi_axes=(SQRT2 * r * math.cos(psi), SQRT2 * r * math.sin(psi)))
    if name == "semicircular":
        mean = params.get("mean", 0.0)
        half = math.sqrt(2 * params.get("variance", 1.0)) * circular_radius(alpha)
        if half == 0:
            return ClosedFormRange("point", center=complex(mean))
        return ClosedFormRange("interval", endpoints=(mean - half, mean + half), center=complex(mean))
    raise CatalogError(f"unknown catalog operator {name!r}")
