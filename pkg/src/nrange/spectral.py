"""Spectral models and eigenvalue functions of their real parts.

Conventions: a (0, 1)-semicircular X has variance 1 and support [-2, 2].
The circular operator Z = (X + iY)/sqrt(2) then has Re(Z) = X/sqrt(2),
a semicircle of variance 1/2 on [-sqrt(2), sqrt(2)].  Every semicircle law
used here is a mean plus a multiple of that one, so all semicircle
quantiles reduce to inverting :func:`semicircle_tail`.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import matrixops
from .eigfun import StepFunction, rearrange

SQRT2 = math.sqrt(2.0)
BISECTION_TOL = 1e-12
DEFAULT_RESOLUTION = 4096
WEIGHT_TOL = 1e-12
NAMED_MODELS = ("haar_unitary", "semicircular", "circular", "tucci", "dt_quasinilpotent", "elliptic")
ROTATION_INVARIANT = ("haar_unitary", "circular", "tucci", "dt_quasinilpotent")


class ModelError(ValueError):
    """Invalid operator specification."""


# semicircle of variance 1/2 ---------------------------------------------------


def semicircle_tail(y):
    """f(y) = mass of the law sqrt(2 - x^2)/pi on [y, sqrt(2)]."""
    y = np.clip(np.asarray(y, dtype=np.float64), -SQRT2, SQRT2)
    return 0.5 - y * np.sqrt(np.maximum(2.0 - y * y, 0.0)) / (2 * np.pi) - np.arcsin(y / SQRT2) / np.pi


def semicircle_tail_inverse(alpha, tol=BISECTION_TOL):
    """h(alpha): the y in [-sqrt(2), sqrt(2)] with f(y) = alpha, by bisection.

    f is strictly decreasing with f(-sqrt 2) = 1 and f(sqrt 2) = 0.  Newton is
    avoided because f' vanishes at both ends.  Vectorized over alpha.
    """
    alpha = np.asarray(alpha, dtype=np.float64)
    if np.any((alpha < 0) | (alpha > 1)):
        raise ValueError("alpha must lie in [0, 1]")
    lo = np.full(alpha.shape, -SQRT2)
    hi = np.full(alpha.shape, SQRT2)
    while np.max(hi - lo, initial=0.0) > tol:
        mid = (lo + hi) / 2
        above = semicircle_tail(mid) > alpha
        lo = np.where(above, mid, lo)
        hi = np.where(above, hi, mid)
    out = (lo + hi) / 2
    out = np.where(alpha == 1, -SQRT2, np.where(alpha == 0, SQRT2, out))
    return out if out.ndim else float(out)


@lru_cache(maxsize=16)
def _semicircle_midpoints(resolution):
    mids = (np.arange(resolution) + 0.5) / resolution
    vals = semicircle_tail_inverse(mids)
    vals.setflags(write=False)
    return vals


# real distributions ------------------------------------------------------------


@dataclass(frozen=True)
class RealDistribution:
    """Compactly supported probability law on the real line.

    kind is ``atomic`` (atoms/weights), ``semicircle`` (mean, variance),
    ``cosine_pushforward`` (law of cos(s), s uniform on [-pi, pi]) or
    ``linear_tucci`` (uniform on [-1/2, 1/2]).
    """

    kind: str
    atoms: tuple = ()
    weights: tuple = ()
    mean: float = 0.0
    variance: float = 0.0

    def __post_init__(self):
        if self.kind == "atomic":
            if len(self.atoms) != len(self.weights) or not self.atoms:
                raise ModelError("atomic law needs matching non-empty atoms and weights")
            if any(w <= 0 for w in self.weights) or abs(sum(self.weights) - 1) > WEIGHT_TOL:
                raise ModelError("atomic weights must be positive and sum to 1")
        elif self.kind == "semicircle":
            if self.variance < 0:
                raise ModelError("semicircle variance must be nonnegative")
        elif self.kind not in ("cosine_pushforward", "linear_tucci"):
            raise ModelError(f"unknown distribution {self.kind!r}")

    @classmethod
    def atomic(cls, atoms, weights):
        return cls("atomic", tuple(float(a) for a in atoms), tuple(float(w) for w in weights))

    def mean_value(self):
        if self.kind == "atomic":
            return float(np.dot(self.atoms, self.weights))
        if self.kind == "semicircle":
            return self.mean
        return 0.0

    def quantile(self, s):
        """lambda(s) = inf{t : P(X > t) <= s} for the continuous kinds."""
        s = np.asarray(s, dtype=np.float64)
        if self.kind == "cosine_pushforward":
            return np.cos(np.pi * s)
        if self.kind == "linear_tucci":
            return 0.5 * (1 - 2 * s)
        if self.kind == "semicircle":
            return self.mean + math.sqrt(2 * self.variance) * semicircle_tail_inverse(s)
        raise ModelError("quantile() is for continuous laws; use quantile_step")


def quantile_step(d, resolution=DEFAULT_RESOLUTION):
    """Eigenvalue function of a real law as a sorted StepFunction.

    Atomic laws are exact (one piece per distinct atom).  Continuous laws use
    the quantile at the midpoints of ``resolution`` equal cells.
    """
    if resolution < 1:
        raise ValueError("resolution must be >= 1")
    if d.kind == "atomic":
        w = np.asarray(d.weights, dtype=np.float64)
        w = w / w.sum()
        return rearrange(StepFunction.from_pieces(w, d.atoms))
    if d.kind == "semicircle" and d.variance == 0:
        return StepFunction.constant(d.mean)
    bp = np.arange(resolution + 1) / resolution
    if d.kind == "semicircle":
        vals = d.mean + math.sqrt(2 * d.variance) * _semicircle_midpoints(resolution)
    else:
        vals = d.quantile((np.arange(resolution) + 0.5) / resolution)
    return StepFunction(bp, vals)


# operator models ------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class SpectralModel:
    """An operator given by a matrix, a finite normal spectrum, or a name."""

    kind: str
    matrix: np.ndarray | None = None
    atoms: tuple = ()
    weights: tuple = ()
    name: str = ""
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind == "matrix":
            m = matrixops.as_matrix(self.matrix)
            m.setflags(write=False)
            object.__setattr__(self, "matrix", m)
        elif self.kind == "atomic":
            if len(self.atoms) != len(self.weights) or not self.atoms:
                raise ModelError("atomic model needs matching non-empty atoms and weights")
            if any(w <= 0 for w in self.weights):
                raise ModelError("atomic weights must be positive")
            if abs(sum(self.weights) - 1) > WEIGHT_TOL:
                raise ModelError("atomic weights must sum to 1")
            object.__setattr__(self, "atoms", tuple(complex(a) for a in self.atoms))
            object.__setattr__(self, "weights", tuple(float(w) for w in self.weights))
        elif self.kind == "named":
            if self.name not in NAMED_MODELS:
                raise ModelError(f"unknown named model {self.name!r}")
            if self.name == "elliptic":
                psi = self.params.get("psi")
                if psi is None or not 0 < psi < math.pi / 2:
                    raise ModelError("elliptic model requires psi in (0, pi/2)")
            if self.name == "semicircular" and self.params.get("variance", 1.0) < 0:
                raise ModelError("semicircular variance must be nonnegative")
        else:
            raise ModelError(f"unknown model kind {self.kind!r}")

    @classmethod
    def from_matrix(cls, t):
        return cls("matrix", matrix=t)

    @classmethod
    def from_atoms(cls, atoms, weights):
        return cls("atomic", atoms=tuple(atoms), weights=tuple(weights))

    @classmethod
    def named_model(cls, name, **params):
        return cls("named", name=name, params=dict(params))

    def trace(self):
        """tau(T)."""
        if self.kind == "matrix":
            return complex(matrixops.normalized_trace(self.matrix))
        if self.kind == "atomic":
            return complex(np.dot(self.atoms, self.weights))
        if self.name == "semicircular":
            return complex(self.params.get("mean", 0.0))
        return 0j

    def is_selfadjoint(self):
        if self.kind == "matrix":
            return matrixops.is_hermitian(self.matrix)
        if self.kind == "atomic":
            return all(abs(a.imag) < 1e-12 for a in self.atoms)
        return self.name == "semicircular"

    def is_rotation_invariant(self):
        return self.kind == "named" and self.name in ROTATION_INVARIANT

    def norm_bound(self):
        """An upper bound for the operator norm."""
        if self.kind == "matrix":
            return matrixops.op_norm(self.matrix)
        if self.kind == "atomic":
            return max(abs(a) for a in self.atoms)
        if self.name == "semicircular":
            return abs(self.params.get("mean", 0.0)) + 2 * math.sqrt(self.params.get("variance", 1.0))
        return {"haar_unitary": 1.0, "circular": 2.0, "tucci": 1.0, "dt_quasinilpotent": math.sqrt(math.e), "elliptic": 2.0}[self.name]

    def real_part(self):
        """The model of Re(T)."""
        if self.kind == "matrix":
            return SpectralModel.from_matrix(matrixops.hermitian_part(self.matrix, 0.0))
        if self.kind == "atomic":
            return _merge_atoms(SpectralModel.from_atoms([a.real for a in self.atoms], self.weights))
        raise ModelError("real_part is only available for matrix and atomic models")

    def transform(self, z=0j, w=1 + 0j):
        """The model of z I + w T."""
        if self.kind == "matrix":
            n = self.matrix.shape[0]
            return SpectralModel.from_matrix(z * np.eye(n) + w * self.matrix)
        if self.kind == "atomic":
            return SpectralModel.from_atoms([z + w * a for a in self.atoms], self.weights)
        raise ModelError("transform is only available for matrix and atomic models")

    def adjoint(self):
        if self.kind == "matrix":
            return SpectralModel.from_matrix(self.matrix.conj().T)
        if self.kind == "atomic":
            return SpectralModel.from_atoms([a.conjugate() for a in self.atoms], self.weights)
        raise ModelError("adjoint is only available for matrix and atomic models")

    # JSON -------------------------------------------------------------------

    def to_dict(self):
        if self.kind == "matrix":
            return {"kind": "matrix", "entries": matrixops.matrix_to_json(self.matrix)}
        if self.kind == "atomic":
            return {
                "kind": "atomic",
                "atoms": [{"re": a.real, "im": a.imag, "w": w} for a, w in zip(self.atoms, self.weights)],
            }
        return {"kind": "named", "name": self.name, "params": dict(self.params)}

    @classmethod
    def from_dict(cls, d):
        if not isinstance(d, dict) or "kind" not in d:
            raise ModelError("operator JSON needs a 'kind' field")
        kind = d["kind"]
        try:
            if kind == "matrix":
                return cls.from_matrix(matrixops.matrix_from_json(d["entries"]))
            if kind == "atomic":
                atoms = [complex(a.get("re", 0.0), a.get("im", 0.0)) for a in d["atoms"]]
                return cls.from_atoms(atoms, [a["w"] for a in d["atoms"]])
            if kind == "named":
                return cls.named_model(d["name"], **{k: float(v) for k, v in d.get("params", {}).items()})
        except (KeyError, TypeError, AttributeError) as exc:
            raise ModelError(f"bad operator JSON: {exc}") from exc
        except matrixops.MatrixError as exc:
            raise ModelError(str(exc)) from exc
        raise ModelError(f"unknown model kind {kind!r}")

    def digest(self):
        text = json.dumps(self.to_dict(), sort_keys=True)
        return hashlib.sha256(text.encode()).hexdigest()


def _merge_atoms(model):
    merged = {}
    for a, w in zip(model.atoms, model.weights):
        merged[a] = merged.get(a, 0.0) + w
    return SpectralModel.from_atoms(list(merged), list(merged.values()))


def elliptic_scale(psi, theta):
    """b(theta) = sqrt(cos^2 psi cos^2 theta + sin^2 psi sin^2 theta)."""
    return math.sqrt((math.cos(psi) * math.cos(theta)) ** 2 + (math.sin(psi) * math.sin(theta)) ** 2)


def real_part_distribution(m, theta):
    """Law of Re(e^{i theta} T)."""
    if m.kind == "matrix":
        h = matrixops.hermitian_part(m.matrix, theta)
        ev = matrixops.hermitian_eigenvalues(h)
        n = len(ev)
        return RealDistribution.atomic(ev, [1.0 / n] * n)
    rot = complex(math.cos(theta), math.sin(theta))
    if m.kind == "atomic":
        return RealDistribution.atomic([(rot * a).real for a in m.atoms], m.weights)
    name = m.name
    if name == "haar_unitary":
        return RealDistribution("cosine_pushforward")
    if name == "tucci":
        return RealDistribution("linear_tucci")
    if name == "circular":
        return RealDistribution("semicircle", mean=0.0, variance=0.5)
    if name == "dt_quasinilpotent":
        # Re(S) = X/2
        return RealDistribution("semicircle", mean=0.0, variance=0.25)
    if name == "elliptic":
        b = elliptic_scale(m.params["psi"], theta)
        return RealDistribution("semicircle", mean=0.0, variance=b * b)
    if name == "semicircular":
        c = math.cos(theta)
        mean = m.params.get("mean", 0.0)
        var = m.params.get("variance", 1.0)
        return RealDistribution("semicircle", mean=c * mean, variance=c * c * var)
    raise ModelError(f"unknown named model {name!r}")
