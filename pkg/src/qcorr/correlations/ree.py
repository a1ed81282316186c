"""Upper bound on the relative entropy of entanglement.

The separable set is the convex hull of product pure states, and
``sigma -> S(rho || sigma)`` is convex, so the bound is computed with a
pairwise Frank-Wolfe method over product-state atoms:

* the linear minimization step finds a product vector ``|a>|b>`` minimizing
  ``<ab|G|ab>`` for the current gradient ``G`` (alternating minimal
  eigenvectors, several starts);
* mass moves from the worst active atom to the new one with an exact line
  search.

Every iterate is an explicit separable state, so the returned value is a
genuine upper bound. The Frank-Wolfe gap bounds the distance to the true
minimum when the linear step is solved exactly. The largest
``f(sigma) - gap(sigma)`` over the iterates is ``info["lower_estimate"]``,
and ``info["gap"] = value - lower_estimate``.
"""

import math
from math import prod

import numpy as np
from scipy.optimize import minimize, minimize_scalar

from .. import kernels, linop
from ..errors import UnsupportedDimensionError
from ..infotheory import von_neumann
from ..states import as_state
from .entanglement import _bipartition
from .optimizer import MeasureResult, OptimizerConfig

MAX_TOTAL_DIM = 16
LN2 = math.log(2.0)
_EIG_FLOOR = 1e-300


def _min_eigvec(h):
    w, v = kernels.eigh(0.5 * (h + h.conj().T))
    return v[:, -1], w[-1]


def _product_lmo(g4, starts, iters=60):
    """Minimize ``<a b|G|a b>`` over unit product vectors by alternating eigen-steps."""
    best_val, best = np.inf, None
    for b in starts:
        prev = np.inf
        for _ in range(iters):
            ga = np.einsum("iajb,a,b->ij", g4, b.conj(), b)
            a, _ = _min_eigvec(ga)
            gb = np.einsum("iajb,i,j->ab", g4, a.conj(), a)
            b, val = _min_eigvec(gb)
            if prev - val < 1e-13:
                break
            prev = val
        if val < best_val:
            best_val, best = val, np.kron(a, b)
    return best, best_val


class _Objective:
    def __init__(self, rho, s_rho):
        self.rho = rho
        self.s_rho = s_rho

    def __call__(self, sigma):
        w, v = kernels.eigh(sigma)
        diag = np.real(np.einsum("ki,kl,li->i", v.conj(), self.rho, v))
        inside = w > 1e-14
        if np.sum(diag[~inside]) > 1e-12:
            return math.inf
        return float(-self.s_rho - np.sum(diag[inside] * np.log2(w[inside])))

    def gradient(self, sigma):
        w, v = kernels.eigh(sigma)
        w = np.clip(w, _EIG_FLOOR, None)
        lw = np.log(w)
        dw = w[:, None] - w[None, :]
        same = np.abs(dw) <= 1e-14 * np.maximum(w[:, None], w[None, :])
        gamma = np.where(same, 1.0 / np.maximum(w[:, None], w[None, :]), (lw[:, None] - lw[None, :]) / np.where(same, 1.0, dw))
        rt = v.conj().T @ self.rho @ v
        return -(v @ (gamma * rt) @ v.conj().T) / LN2


def _polish(f, atoms_l, atoms_r, weights, d_l, d_r, maxiter):
    """L-BFGS over unnormalized factors ``x_k, y_k`` of ``sigma ~ sum x x^+ (x) y y^+``."""
    k = len(weights)
    sw = np.sqrt(weights)
    x0 = np.array(atoms_l) * sw[:, None]
    y0 = np.array(atoms_r)
    nx, ny = k * d_l, k * d_r

    def unpack(v):
        c = v[: nx + ny] + 1j * v[nx + ny :]
        return c[:nx].reshape(k, d_l), c[nx:].reshape(k, d_r)

    def fun(v):
        x, y = unpack(v)
        vecs = (x[:, :, None] * y[:, None, :]).reshape(k, -1)
        m = vecs.T @ vecs.conj()
        t = float(np.trace(m).real)
        sigma = m / t
        val = f(sigma)
        if not math.isfinite(val):
            return 1e10, np.zeros_like(v)
        g = f.gradient(sigma)
        gm = (g - np.trace(g @ sigma).real * np.eye(len(g))) / t
        g4 = gm.reshape(d_l, d_r, d_l, d_r)
        gx = 2.0 * np.einsum("iajb,kj,ka,kb->ki", g4, x, y.conj(), y)
        gy = 2.0 * np.einsum("iajb,ki,kj,kb->ka", g4, x.conj(), x, y)
        c = np.concatenate([gx.ravel(), gy.ravel()])
        return val, np.concatenate([c.real, c.imag])

    c0 = np.concatenate([x0.ravel(), y0.ravel()])
    res = minimize(fun, np.concatenate([c0.real, c0.imag]), jac=True, method="L-BFGS-B", options=dict(maxiter=maxiter, ftol=1e-15, gtol=1e-10))
    x, y = unpack(res.x)
    nxk = np.linalg.norm(x, axis=1)
    nyk = np.linalg.norm(y, axis=1)
    w = (nxk * nyk) ** 2
    ok = w > 1e-15 * np.sum(w)
    w = w[ok] / np.sum(w[ok])
    return list(x[ok] / nxk[ok, None]), list(y[ok] / nyk[ok, None]), w, res.nfev


def _build(ws, al, ar):
    vecs = np.array([np.kron(a, b) for a, b in zip(al, ar)])
    return (vecs.T * ws) @ vecs.conj()


def _random_unit(rng, d):
    z = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return z / np.linalg.norm(z)


def ree_upper(
    state,
    cut=None,
    cfg: OptimizerConfig | None = None,
    rounds: int = 4,
    fw_iters: int = 20,
    gap_tol: float = 1e-6,
    lmo_starts: int = 4,
) -> MeasureResult:
    """Upper bound on ``min_{sigma separable} S(rho || sigma)`` across ``cut``.

    ``cut`` is ``(left_indices, right_indices)``; for two parties it defaults
    to ``((0,), (1,))``. The search starts from ``rho`` dephased in the
    product of its local eigenbases, which is separable and already optimal
    for pure states. Each round runs up to ``fw_iters`` pairwise Frank-Wolfe
    steps and then polishes all atoms jointly with L-BFGS, keeping at most
    ``(d_left d_right)^2`` atoms. ``cfg.refine_iters`` caps each polish and
    ``cfg.seed`` drives the random starts.

    ``argmin`` is ``{"weights": (K,), "left": (K, dL), "right": (K, dR)}``
    in the grouped (left, right) ordering ``argmin["order"]``.
    """
    cfg = cfg or OptimizerConfig()
    state = as_state(state)
    left, right = _bipartition(state, cut)
    if state.dim > MAX_TOTAL_DIM:
        raise UnsupportedDimensionError(f"REE bound supports total dimension <= {MAX_TOTAL_DIM}, got {state.dim}")
    d_l = prod(state.dims[i] for i in left)
    d_r = prod(state.dims[i] for i in right)
    rho = linop.permute(state.mat, state.dims, left + right)
    rho = 0.5 * (rho + rho.conj().T)
    n = d_l * d_r
    k_max = n * n
    f = _Objective(rho, von_neumann(rho))
    rng = np.random.default_rng([cfg.seed, 7])

    r4 = rho.reshape(d_l, d_r, d_l, d_r)
    _, ua = kernels.eigh(np.einsum("iaja->ij", r4))
    _, ub = kernels.eigh(np.einsum("iaib->ab", r4))
    atoms_l, atoms_r, weights = [], [], []
    for i in range(d_l):
        for j in range(d_r):
            vec = np.kron(ua[:, i], ub[:, j])
            wgt = float(np.real(vec.conj() @ rho @ vec))
            if wgt > 1e-15:
                atoms_l.append(ua[:, i])
                atoms_r.append(ub[:, j])
                weights.append(wgt)
    weights = np.array(weights) / np.sum(weights)

    sigma = _build(weights, atoms_l, atoms_r)
    value = f(sigma)
    best = (value, weights.copy(), list(atoms_l), list(atoms_r))
    gap = math.inf
    lower = 0.0
    evals = 1
    last_lmo = None
    steps = 0

    def lmo(g):
        nonlocal last_lmo
        starts = [] if last_lmo is None else [last_lmo]
        wmin, _ = _min_eigvec(g)
        _, _, vh = np.linalg.svd(wmin.reshape(d_l, d_r))
        starts.append(vh[0])
        starts.extend(_random_unit(rng, d_r) for _ in range(lmo_starts))
        s_vec, s_val = _product_lmo(g.reshape(d_l, d_r, d_l, d_r), starts)
        u, sv, vh = np.linalg.svd(s_vec.reshape(d_l, d_r))
        last_lmo = vh[0]
        return s_vec, s_val, u[:, 0] * sv[0], vh[0]

    for rnd in range(rounds):
        for _ in range(fw_iters):
            g = f.gradient(sigma)
            vecs = np.array([np.kron(a, b) for a, b in zip(atoms_l, atoms_r)])
            scores = np.real(np.einsum("ki,ij,kj->k", vecs.conj(), g, vecs))
            s_vec, s_val, s_l, s_r = lmo(g)
            gap = float(weights @ scores - s_val)
            lower = max(lower, value - gap)
            if gap < gap_tol or len(weights) >= k_max:
                break
            away = int(np.argmax(scores))
            direction = np.outer(s_vec, s_vec.conj()) - np.outer(vecs[away], vecs[away].conj())
            gmax = weights[away]

            def along(gamma):
                val = f(sigma + gamma * direction)
                return val if math.isfinite(val) else 1e10

            ls = minimize_scalar(along, bounds=(0.0, gmax), method="bounded", options=dict(xatol=1e-12 * max(gmax, 1e-3)))
            evals += ls.nfev + 2
            gamma, cand = float(ls.x), float(ls.fun)
            if along(gmax) <= cand:
                gamma, cand = gmax, along(gmax)
            if not cand < value:
                break
            steps += 1
            weights[away] -= gamma
            atoms_l.append(s_l)
            atoms_r.append(s_r)
            weights = np.append(weights, gamma)
            keep = weights > 1e-15
            atoms_l = [a for a, k in zip(atoms_l, keep) if k]
            atoms_r = [b for b, k in zip(atoms_r, keep) if k]
            weights = weights[keep] / np.sum(weights[keep])
            sigma = _build(weights, atoms_l, atoms_r)
            value = f(sigma)
        if gap < gap_tol:
            break
        # Pad to k_max atoms with light random product vectors, then polish.
        while len(weights) < k_max:
            atoms_l.append(_random_unit(rng, d_l))
            atoms_r.append(_random_unit(rng, d_r))
            weights = np.append(weights, 1e-4 / k_max)
        weights = weights / np.sum(weights)
        atoms_l, atoms_r, weights, nfev = _polish(f, atoms_l, atoms_r, weights, d_l, d_r, cfg.refine_iters)
        evals += nfev
        sigma = _build(weights, atoms_l, atoms_r)
        value = f(sigma)
        if value < best[0]:
            best = (value, weights.copy(), list(atoms_l), list(atoms_r))
        g = f.gradient(sigma)
        vecs = np.array([np.kron(a, b) for a, b in zip(atoms_l, atoms_r)])
        scores = np.real(np.einsum("ki,ij,kj->k", vecs.conj(), g, vecs))
        gap = float(weights @ scores - lmo(g)[1])
        lower = max(lower, value - gap)
        if gap < gap_tol:
            break
        # Drop negligible atoms so the next Frank-Wolfe round has room.
        order = np.argsort(weights)[::-1][: max(n, k_max // 2)]
        atoms_l = [atoms_l[i] for i in order]
        atoms_r = [atoms_r[i] for i in order]
        weights = weights[order] / np.sum(weights[order])
        sigma = _build(weights, atoms_l, atoms_r)
        value = f(sigma)

    if value > best[0]:
        value, weights, atoms_l, atoms_r = best
    value = max(value, 0.0)
    argmin = {"weights": weights, "left": np.array(atoms_l), "right": np.array(atoms_r), "order": left + right}
    # Convexity: f(sigma) - gap(sigma) lower-bounds the minimum at every iterate.
    lower = min(max(lower, 0.0), value)
    gap = value - lower
    info = {"gap": gap, "lower_estimate": lower, "rounds": rnd + 1, "fw_steps": steps, "cut": (tuple(left), tuple(right))}
    return MeasureResult(value, argmin, evals, bool(gap < gap_tol or value <= gap_tol), info)


def separable_state(res: MeasureResult) -> np.ndarray:
    """Rebuild the separable state from a :func:`ree_upper` certificate.

    The matrix is in the grouped (left, right) ordering used by the optimizer.
    """
    arg = res.argmin
    vecs = np.array([np.kron(a, b) for a, b in zip(arg["left"], arg["right"])])
    return (vecs.T * arg["weights"]) @ vecs.conj()
