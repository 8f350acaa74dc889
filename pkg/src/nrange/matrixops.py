"""Dense complex matrices with the normalized trace Tr/n.

Eigenvalues come from the Jacobi kernel in :mod:`nrange.kernels`; random
unitaries and projections feed the Monte-Carlo oracle.
"""

import numpy as np

from . import kernels
from .eigfun import StepFunction

HERMITIAN_TOL = 1e-12


class MatrixError(ValueError):
    pass


def as_matrix(t):
    t = np.array(t, dtype=np.complex128)
    if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
        raise MatrixError(f"expected a non-empty square matrix, got shape {t.shape}")
    if not np.all(np.isfinite(t)):
        raise MatrixError("matrix entries must be finite")
    return t


def normalized_trace(t):
    return np.trace(t) / t.shape[0]


def op_norm(t):
    return float(np.linalg.norm(t, 2))


def is_hermitian(t, tol=HERMITIAN_TOL):
    scale = max(1.0, float(np.max(np.abs(t))))
    return bool(np.max(np.abs(t - t.conj().T)) <= tol * scale)


def hermitian_part(t, theta=0.0):
    """Re(e^{i theta} T) = (e^{i theta} T + (e^{i theta} T)^*) / 2."""
    rotated = np.exp(1j * theta) * np.asarray(t, dtype=np.complex128)
    h = (rotated + rotated.conj().T) / 2
    return (h + h.conj().T) / 2


def hermitian_eigenvalues(h):
    """Eigenvalues of a Hermitian matrix, sorted non-increasing (cyclic Jacobi)."""
    h = as_matrix(h)
    if not is_hermitian(h):
        raise MatrixError("matrix is not Hermitian")
    return kernels.jacobi_eigvalsh(h)


def eigenvalue_function(h):
    """lambda_H for the normalized trace: n pieces of width 1/n."""
    vals = hermitian_eigenvalues(h)
    n = len(vals)
    return StepFunction(np.arange(n + 1) / n, vals)


def eigenvalue_function_of_matrix(t, theta=0.0):
    return eigenvalue_function(hermitian_part(t, theta))


def _rng(seed):
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def haar_unitaries(n, count, rng):
    """count independent Haar unitaries, shape (count, n, n).

    QR of a complex Ginibre matrix with R's diagonal made positive.
    """
    z = (rng.standard_normal((count, n, n)) + 1j * rng.standard_normal((count, n, n))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r, axis1=1, axis2=2)
    ph = d / np.abs(d)
    return q * ph[:, None, :]


def haar_frames(n, k, count, rng):
    """count Haar-random n x k isometries (first k columns of a Haar unitary)."""
    z = (rng.standard_normal((count, n, k)) + 1j * rng.standard_normal((count, n, k))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r, axis1=1, axis2=2)
    return q * (d / np.abs(d))[:, None, :]


def random_unitary(n, seed=None):
    if n < 1:
        raise MatrixError("dimension must be >= 1")
    return haar_unitaries(n, 1, _rng(seed))[0]


def random_projection(n, k, seed=None):
    """U diag(1 x k, 0 x (n-k)) U^* for a Haar unitary U."""
    if not 1 <= k <= n:
        raise MatrixError(f"rank {k} outside [1, {n}]")
    u = random_unitary(n, seed)
    v = u[:, :k]
    p = v @ v.conj().T
    return (p + p.conj().T) / 2


def random_hermitian(n, rng):
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return (z + z.conj().T) / 2


def random_matrix(n, rng):
    return (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2 * n)


def pinching(x, blocks):
    """Block-diagonal compression of x onto a partition of the indices."""
    out = np.zeros_like(x)
    for idx in blocks:
        idx = np.asarray(idx)
        out[np.ix_(idx, idx)] = x[np.ix_(idx, idx)]
    return out


def matrix_from_json(entries):
    """Rows of [re, im] pairs (or plain reals) to a complex matrix."""
    try:
        rows = [[complex(e[0], e[1]) if isinstance(e, (list, tuple)) else complex(e) for e in row] for row in entries]
    except (TypeError, IndexError, ValueError) as exc:
        raise MatrixError(f"bad matrix entries: {exc}") from exc
    return as_matrix(rows)


def matrix_to_json(t):
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(t)]
