"""Dense complex linear algebra shared by every other module.

Matrices are plain ``numpy`` arrays of dtype ``complex128``. Subsystems are
described by a dimension list whose product equals the matrix size, ordered
as in the tensor product (computational basis, row-major).
"""

from math import prod
from typing import Callable, NamedTuple, Sequence

import numpy as np

from . import kernels
from .errors import DimensionError, NotHermitianError

HERMITIAN_TOL = 1e-9
CLIP_TOL = 1e-10

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
PAULIS = (SIGMA_X, SIGMA_Y, SIGMA_Z)


class HermitianEig(NamedTuple):
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def as_matrix(m) -> np.ndarray:
    """Return ``m`` as a 2-D complex array, rejecting NaN/Inf entries."""
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2:
        raise DimensionError(f"expected a 2-D matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    return a


def check_dims(m: np.ndarray, dims: Sequence[int]) -> tuple:
    dims = tuple(int(d) for d in dims)
    if not dims or any(d < 1 for d in dims):
        raise DimensionError(f"invalid dimension list {dims}")
    n = prod(dims)
    if m.shape != (n, n):
        raise DimensionError(f"dims {dims} (product {n}) do not match matrix shape {m.shape}")
    return dims


def kron(*ops) -> np.ndarray:
    out = np.ones((1, 1), dtype=np.complex128)
    for op in ops:
        out = np.kron(out, as_matrix(op))
    return out


def partial_trace(m, dims: Sequence[int], keep: Sequence[int]) -> np.ndarray:
    """Trace out every subsystem not listed in ``keep``.

    The kept subsystems stay in their original order.
    """
    m = as_matrix(m)
    dims = check_dims(m, dims)
    keep = sorted(set(int(k) for k in keep))
    if not keep:
        raise DimensionError("keep must name at least one subsystem")
    if keep[0] < 0 or keep[-1] >= len(dims):
        raise DimensionError(f"subsystem index out of range for dims {dims}")
    n = len(dims)
    t = m.reshape(dims + dims)
    row = list(range(n))
    col = [i + n if i in keep else i for i in range(n)]
    out = [i for i in keep] + [i + n for i in keep]
    t = np.einsum(t, row + col, out)
    d = prod(dims[i] for i in keep)
    return t.reshape(d, d)


def permute(m, dims: Sequence[int], order: Sequence[int]) -> np.ndarray:
    """Reorder tensor factors so that new factor ``k`` is old factor ``order[k]``."""
    m = as_matrix(m)
    dims = check_dims(m, dims)
    order = [int(o) for o in order]
    if sorted(order) != list(range(len(dims))):
        raise DimensionError(f"{order} is not a permutation of the subsystems")
    n = len(dims)
    t = m.reshape(dims + dims).transpose(order + [o + n for o in order])
    return t.reshape(m.shape)


def partial_transpose(m, dims: Sequence[int], subsystem: int) -> np.ndarray:
    m = as_matrix(m)
    dims = check_dims(m, dims)
    if not 0 <= subsystem < len(dims):
        raise DimensionError(f"subsystem {subsystem} out of range for dims {dims}")
    n = len(dims)
    axes = list(range(2 * n))
    axes[subsystem], axes[subsystem + n] = axes[subsystem + n], axes[subsystem]
    return m.reshape(dims + dims).transpose(axes).reshape(m.shape)


def hermitize(m, tol: float = HERMITIAN_TOL) -> np.ndarray:
    """Return ``(M + M^dagger)/2`` after checking ``M`` is Hermitian within ``tol``."""
    m = as_matrix(m)
    if m.shape[0] != m.shape[1]:
        raise DimensionError(f"matrix is not square: {m.shape}")
    dev = np.max(np.abs(m - m.conj().T)) if m.size else 0.0
    if dev > tol * max(1.0, np.max(np.abs(m))):
        raise NotHermitianError(f"matrix is not Hermitian (max deviation {dev:.3e})")
    return 0.5 * (m + m.conj().T)


def herm_eig(m) -> HermitianEig:
    """Eigendecomposition of a Hermitian matrix, eigenvalues descending."""
    w, v = kernels.eigh(hermitize(m))
    return HermitianEig(w, v)


def eigvalsh(m) -> np.ndarray:
    return herm_eig(m).eigenvalues


def clip_spectrum(w: np.ndarray, tol: float = CLIP_TOL) -> np.ndarray:
    """Zero out eigenvalues in ``[-tol, 0)``; raise on anything more negative."""
    if w.size and w.min() < -tol:
        raise ValueError(f"negative eigenvalue {w.min():.3e} below -{tol:g}")
    return np.where(w < 0.0, 0.0, w)


_NAMED = {
    "sqrt": (np.sqrt, True),
    "log2": (np.log2, True),
    "log": (np.log, True),
}


def spectral_fn(m, fn: str | Callable = "sqrt", skip_zero: bool | None = None) -> np.ndarray:
    """Apply a scalar function to a Hermitian matrix through its spectrum.

    ``fn`` is ``"sqrt"``, ``"log2"``, ``"log"`` or any vectorized callable.
    With ``skip_zero`` (default on for the logarithms) eigenvalues that are
    exactly zero after clipping contribute nothing, following ``0 log 0 = 0``.
    """
    if isinstance(fn, str):
        f, psd = _NAMED[fn]
        if skip_zero is None:
            skip_zero = fn != "sqrt"
    else:
        f, psd = fn, False
        skip_zero = bool(skip_zero)
    w, v = herm_eig(m)
    if psd:
        w = clip_spectrum(w)
    fw = np.zeros_like(w)
    mask = w != 0.0 if skip_zero else np.ones(w.shape, dtype=bool)
    fw[mask] = f(w[mask])
    return (v * fw) @ v.conj().T


def trace_norm(m) -> float:
    return float(np.sum(np.linalg.svd(as_matrix(m), compute_uv=False)))


def hs_inner(a, b) -> complex:
    a, b = as_matrix(a), as_matrix(b)
    if a.shape != b.shape:
        raise DimensionError(f"shape mismatch {a.shape} vs {b.shape}")
    return complex(np.vdot(a, b))


def hs_norm(m) -> float:
    m = as_matrix(m)
    return float(np.sqrt(np.vdot(m, m).real))


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unitary via QR with phase correction."""
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    ph = np.diag(r) / np.abs(np.diag(r))
    return q * ph
