"""Monte-Carlo and brute-force ground truth at matrix scale."""

from __future__ import annotations

import csv
import io
import itertools
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

import numpy as np

from . import matrixops

SHARD_SIZE = 10_000
MAX_PERMUTATION_LENGTH = 8


class OracleError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class OracleCloud:
    points: np.ndarray
    kind: str
    n: int
    k: int
    sample_count: int
    seed: int | None

    def directional_max(self, thetas):
        """max over samples of Re(e^{i theta} z), per theta."""
        rot = np.exp(1j * np.asarray(thetas))
        best = np.full(len(rot), -np.inf)
        for start in range(0, len(self.points), SHARD_SIZE):
            chunk = self.points[start : start + SHARD_SIZE]
            best = np.maximum(best, np.max((rot[:, None] * chunk[None, :]).real, axis=1))
        return best

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["x", "y"])
        for z in self.points:
            w.writerow([f"{z.real:.17g}", f"{z.imag:.17g}"])
        return buf.getvalue()


def _shards(count, seed):
    """Per-shard generators spawned deterministically from the root seed."""
    sizes = [min(SHARD_SIZE, count - s) for s in range(0, count, SHARD_SIZE)]
    children = np.random.SeedSequence(seed).spawn(len(sizes))
    return [(size, np.random.default_rng(child)) for size, child in zip(sizes, children)]


def sample_projection_cloud(t, k, count, seed=0):
    """Samples of (1/alpha) tau(TP) = Tr(TP)/k over Haar rank-k projections P."""
    t = matrixops.as_matrix(t)
    n = t.shape[0]
    if not 1 <= k <= n:
        raise OracleError(f"rank {k} outside [1, {n}]")
    if count < 1:
        raise OracleError("sample count must be >= 1")
    # The range of a complex Gaussian n x r matrix Z is Haar distributed, so
    # P = Z (Z^* Z)^{-1} Z^* is a Haar rank-r projection and
    # Tr(TP) = Tr((Z^* Z)^{-1} Z^* T Z).  For k > n/2 the complement is cheaper.
    r = min(k, n - k)
    total = np.trace(t)
    out = []
    for size, rng in _shards(count, seed):
        if r == 0:
            out.append(np.full(size, total / k))
            continue
        z = rng.standard_normal((size, n, r)) + 1j * rng.standard_normal((size, n, r))
        zh = np.conj(np.swapaxes(z, 1, 2))
        tr = np.trace(np.linalg.solve(zh @ z, zh @ (t @ z)), axis1=1, axis2=2)
        out.append((tr if r == k else total - tr) / k)
    return OracleCloud(np.concatenate(out), "projection", n, k, count, seed)


def sample_orbit_cloud(t, c, count, seed=0):
    """Samples of tau(T U^* C U) over Haar unitaries U."""
    t = matrixops.as_matrix(t)
    c = matrixops.as_matrix(c)
    if c.shape != t.shape:
        raise OracleError("T and C must have the same size")
    if not matrixops.is_hermitian(c):
        raise OracleError("C must be Hermitian")
    n = t.shape[0]
    if count < 1:
        raise OracleError("sample count must be >= 1")
    out = []
    for size, rng in _shards(count, seed):
        u = matrixops.haar_unitaries(n, size, rng)
        x = np.einsum("sji,jk,skl->sil", u.conj(), c, u)
        out.append(np.einsum("ij,sji->s", t, x) / n)
    return OracleCloud(np.concatenate(out), "unitary_orbit", n, n, count, seed)


def permutation_pairing_oracle(f_pieces, g_pieces):
    """(max, min) over permutations of sum f_i g_sigma(i) / n, by enumeration."""
    f, g = list(f_pieces), list(g_pieces)
    n = len(f)
    if len(g) != n or n == 0:
        raise OracleError("piece lists must be non-empty and of equal length")
    if n > MAX_PERMUTATION_LENGTH:
        raise OracleError(f"at most {MAX_PERMUTATION_LENGTH} pieces")
    sums = [sum(a * b for a, b in zip(f, perm)) for perm in itertools.permutations(g)]
    exact = all(isinstance(x, Rational) for x in f + g)
    denom = Fraction(n) if exact else float(n)
    return max(sums) / denom, min(sums) / denom


def grid_sweep_supports(t, thetas, points_per_axis=60):
    """Directional maxima of v^* T v over a grid of unit vectors (n <= 3, k = 1).

    Unit vectors are parametrized by hyperspherical angles and phases, so the
    sweep is deterministic.
    """
    t = matrixops.as_matrix(t)
    n = t.shape[0]
    if n > 3:
        raise OracleError("deterministic sweep only for n <= 3")
    a = np.linspace(0, np.pi / 2, points_per_axis)
    ph = np.linspace(0, 2 * np.pi, points_per_axis, endpoint=False)
    if n == 1:
        vecs = np.ones((1, 1), dtype=complex)
    elif n == 2:
        A, P = np.meshgrid(a, ph, indexing="ij")
        vecs = np.stack([np.cos(A), np.sin(A) * np.exp(1j * P)], axis=-1).reshape(-1, 2)
    else:
        A, B, P, Q = np.meshgrid(a, a, ph, ph, indexing="ij")
        vecs = np.stack(
            [np.cos(A), np.sin(A) * np.cos(B) * np.exp(1j * P), np.sin(A) * np.sin(B) * np.exp(1j * Q)], axis=-1
        ).reshape(-1, 3)
    pts = np.einsum("si,ij,sj->s", vecs.conj(), t, vecs)
    rot = np.exp(1j * np.asarray(thetas))
    best = np.full(len(rot), -np.inf)
    for start in range(0, len(pts), SHARD_SIZE):
        chunk = pts[start : start + SHARD_SIZE]
        best = np.maximum(best, np.max((rot[:, None] * chunk[None, :]).real, axis=1))
    return best
