"""Entropies, mutual information, relative entropy and state distances.

All logarithms are base 2. ``relative_entropy`` returns ``math.inf`` when the
support condition fails; callers test ``math.isinf`` before doing arithmetic
with the result.
"""

import math
from typing import Sequence

import numpy as np

from . import linop
from .states import DensityMatrix, as_state, reduced

PMF_NEG_TOL = 1e-12
PMF_SUM_TOL = 1e-9
SUPPORT_EPS = 1e-10


def as_pmf(p) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    if p.size and p.min() < -PMF_NEG_TOL:
        raise ValueError(f"negative probability {p.min():.3e}")
    if abs(p.sum() - 1.0) > PMF_SUM_TOL:
        raise ValueError(f"probabilities sum to {p.sum():.12g}, not 1")
    return np.clip(p, 0.0, None)


def entropy_bits(p) -> float:
    """``-sum p log2 p`` over the strictly positive entries (no normalization check)."""
    p = np.asarray(p, dtype=float).ravel()
    p = p[p > 0.0]
    return float(-np.sum(p * np.log2(p)))


def shannon(p) -> float:
    return entropy_bits(as_pmf(p))


def binary_entropy(x: float) -> float:
    return entropy_bits([x, 1.0 - x])


def shannon_conditional(joint) -> float:
    """``H(X|Y) = sum_y p_y H(X|y)`` for a joint table ``joint[x, y]``."""
    joint = as_pmf(joint)
    if joint.ndim != 2:
        raise ValueError("joint distribution must be a 2-D table indexed [x, y]")
    py = joint.sum(axis=0)
    total = 0.0
    for y, w in enumerate(py):
        if w > 0.0:
            total += w * entropy_bits(joint[:, y] / w)
    return total


def spectrum(state) -> np.ndarray:
    m = state.mat if isinstance(state, DensityMatrix) else state
    return linop.clip_spectrum(linop.eigvalsh(m))


def von_neumann(state) -> float:
    return entropy_bits(spectrum(state))


def _cut(state: DensityMatrix, cut) -> tuple:
    if cut is None:
        if state.n_parties != 2:
            raise ValueError(f"state has {state.n_parties} parties; give an explicit cut")
        return (0,), (1,)
    left, right = (tuple(sorted(set(int(i) for i in part))) for part in cut)
    if not left or not right or set(left) & set(right):
        raise ValueError(f"cut {cut} must be two disjoint nonempty groups")
    if max(left + right) >= state.n_parties or min(left + right) < 0:
        raise ValueError(f"cut {cut} names a subsystem outside dims {state.dims}")
    return left, right


def mutual_information(state: DensityMatrix, cut: Sequence[Sequence[int]] | None = None) -> float:
    """``S(A) + S(B) - S(AB)`` across ``cut = (A_indices, B_indices)``."""
    state = as_state(state)
    left, right = _cut(state, cut)
    both = sorted(left + right)
    s_ab = von_neumann(reduced(state, both)) if len(both) < state.n_parties else von_neumann(state)
    return von_neumann(reduced(state, left)) + von_neumann(reduced(state, right)) - s_ab


def relative_entropy(rho, sigma) -> float:
    """``Tr[rho log2 rho] - Tr[rho log2 sigma]``, or ``math.inf`` off-support.

    Eigenvalues of ``sigma`` at or below ``1e-10`` count as outside its
    support; if ``rho`` puts more than ``1e-10`` weight there the result is
    infinite.
    """
    r = rho.mat if isinstance(rho, DensityMatrix) else linop.as_matrix(rho)
    s = sigma.mat if isinstance(sigma, DensityMatrix) else linop.as_matrix(sigma)
    if r.shape != s.shape:
        raise ValueError(f"shape mismatch {r.shape} vs {s.shape}")
    w, v = linop.herm_eig(s)
    inside = w > SUPPORT_EPS
    rv = v.conj().T @ r @ v
    diag = np.real(np.diag(rv))
    if np.sum(diag[~inside]) > SUPPORT_EPS:
        return math.inf
    cross = float(np.sum(diag[inside] * np.log2(w[inside])))
    return max(-von_neumann(r) - cross, 0.0)


def trace_distance(rho, sigma) -> float:
    return 0.5 * linop.trace_norm(_m(rho) - _m(sigma))


RANK_EPS = 64 * np.finfo(float).eps


def _sqrt_psd(m: np.ndarray) -> np.ndarray:
    """Square root with eigenvalues below the eigensolver's resolution set to zero.

    ``sqrt`` turns rounding noise of size 1e-17 into 3e-9, so eigenvalues
    under ``64 eps * max(lambda)`` are treated as exact zeros.
    """
    w, v = linop.herm_eig(m)
    w = linop.clip_spectrum(w)
    w = np.where(w > RANK_EPS * max(w[0], 0.0), w, 0.0)
    return (v * np.sqrt(w)) @ v.conj().T


def fidelity(rho, sigma) -> float:
    """``(Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2`` computed as ``||sqrt(rho) sqrt(sigma)||_1^2``."""
    a = _sqrt_psd(_m(rho))
    b = _sqrt_psd(_m(sigma))
    return float(min(max(linop.trace_norm(a @ b) ** 2, 0.0), 1.0))


def bures_distance(rho, sigma) -> float:
    """``2 (1 - sqrt(F))``."""
    return max(2.0 * (1.0 - math.sqrt(fidelity(rho, sigma))), 0.0)


def hs_distance(rho, sigma) -> float:
    return linop.hs_norm(_m(rho) - _m(sigma))


_DISTANCES = {
    "trace": trace_distance,
    "bures": bures_distance,
    "hilbert-schmidt": hs_distance,
    "hs": hs_distance,
}


def distance(kind: str, rho, sigma) -> float:
    try:
        f = _DISTANCES[kind]
    except KeyError:
        raise ValueError(f"unknown distance {kind!r}; choose from trace, bures, hilbert-schmidt") from None
    r, s = _m(rho), _m(sigma)
    if r.shape != s.shape:
        raise ValueError(f"shape mismatch {r.shape} vs {s.shape}")
    return f(r, s)


def _m(x) -> np.ndarray:
    return x.mat if isinstance(x, DensityMatrix) else linop.as_matrix(x)
