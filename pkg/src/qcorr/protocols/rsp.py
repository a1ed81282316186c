"""Deterministic remote state preparation on a shared two-qubit state.

Alice measures her qubit along a unit vector ``alpha`` and announces the
outcome. On the ``-alpha`` outcome Bob rotates by ``pi`` about an axis
``beta``. The target ``s`` lies on the great circle orthogonal to ``beta``,
and the payoff is ``(r . s)^2`` with ``r`` Bob's final Bloch vector.

In terms of the Pauli form ``(a, b, E)`` of the state the payoff is
``(alpha . E s)^2``.
"""

from typing import NamedTuple

import numpy as np

from .. import linop
from ..errors import DimensionError
from ..states import DensityMatrix, TwoQubitForm, as_state, two_qubit_form
from ..correlations.discord import geometric_discord_2q
from .reports import RspReport

UNIT_TOL = 1e-9
CONDITION_TOL = 1e-6
BOUND_TOL = 1e-9
DEGENERATE_TOL = 1e-12


class OptimalPayoff(NamedTuple):
    payoff_max: float
    alpha_opt: np.ndarray | None
    degenerate: bool


class WorstCase(NamedTuple):
    value: float
    beta_star: np.ndarray


class BoundCheck(NamedTuple):
    holds: bool | None
    lhs: float
    rhs: float
    condition_met: bool
    status: str


def _unit(v, name: str) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    if v.shape != (3,):
        raise ValueError(f"{name} must be a 3-vector, got shape {v.shape}")
    n = np.linalg.norm(v)
    if abs(n - 1.0) > UNIT_TOL:
        raise ValueError(f"{name} must be a unit vector (norm {n:.12g})")
    return v


def _form(x) -> TwoQubitForm:
    if isinstance(x, TwoQubitForm):
        return x
    return two_qubit_form(as_state(x))


def rotate(x, axis, angle: float) -> np.ndarray:
    """Rodrigues rotation of ``x`` by ``angle`` about ``axis``."""
    k = np.asarray(axis, dtype=float)
    n = np.linalg.norm(k)
    if n == 0.0:
        raise ValueError("rotation axis must be nonzero")
    k = k / n
    x = np.asarray(x, dtype=float)
    c, s = np.cos(angle), np.sin(angle)
    return x * c + np.cross(k, x) * s + k * (k @ x) * (1.0 - c)


def rotate_pi(x, axis) -> np.ndarray:
    return rotate(x, axis, np.pi)


def rotation_unitary(axis, angle: float = np.pi) -> np.ndarray:
    """``exp(-i angle n.sigma / 2)``, the qubit unitary of :func:`rotate`."""
    k = np.asarray(axis, dtype=float)
    n = np.linalg.norm(k)
    if n == 0.0:
        raise ValueError("rotation axis must be nonzero")
    k = k / n
    ns = sum(ki * p for ki, p in zip(k, linop.PAULIS))
    return np.cos(angle / 2) * np.eye(2) - 1j * np.sin(angle / 2) * ns


def rsp_payoff(form, alpha, s, beta=None) -> float:
    """``(alpha . E s)^2``; with ``beta`` given, ``s`` must be orthogonal to it."""
    form = _form(form)
    alpha = _unit(alpha, "alpha")
    s = _unit(s, "s")
    if beta is not None:
        beta = _unit(beta, "beta")
        if abs(s @ beta) > UNIT_TOL:
            raise ValueError(f"s is not orthogonal to beta (s.beta = {s @ beta:.3e})")
    return float((alpha @ form.corr @ s) ** 2)


def rsp_optimal_payoff(form, s) -> OptimalPayoff:
    """Best payoff ``|E s|^2`` over Alice's direction, reached at ``alpha = Es/|Es|``.

    When ``E s`` vanishes every direction gives zero; the result is then
    flagged ``degenerate`` and ``alpha_opt`` is ``None``.
    """
    form = _form(form)
    es = form.corr @ _unit(s, "s")
    n2 = float(es @ es)
    if n2 <= DEGENERATE_TOL:
        return OptimalPayoff(0.0, None, True)
    return OptimalPayoff(n2, es / np.sqrt(n2), False)


def rsp_average_payoff(form, beta) -> float:
    """Mean of ``|E s|^2`` over unit ``s`` orthogonal to ``beta``, in closed form."""
    form = _form(form)
    beta = _unit(beta, "beta")
    e = form.corr
    eb = e @ beta
    return float(0.5 * np.trace(e.T @ e) - 0.5 * eb @ eb)


def equator(beta, n: int) -> np.ndarray:
    """``n`` equally spaced unit vectors orthogonal to ``beta``."""
    beta = _unit(beta, "beta")
    helper = np.eye(3)[int(np.argmin(np.abs(beta)))]
    u = np.cross(beta, helper)
    u /= np.linalg.norm(u)
    v = np.cross(beta, u)
    ang = 2.0 * np.pi * np.arange(n) / n
    return np.cos(ang)[:, None] * u + np.sin(ang)[:, None] * v


def rsp_average_payoff_quadrature(form, beta, n: int = 256) -> float:
    """Equally weighted average of :func:`rsp_optimal_payoff` around the equator."""
    form = _form(form)
    return float(np.mean([rsp_optimal_payoff(form, s).payoff_max for s in equator(beta, n)]))


def rsp_worst_case(form) -> WorstCase:
    """Minimum of the average payoff over the axis ``beta``.

    Equals half the sum of the two smallest eigenvalues of ``E^T E``; the
    minimizing axis is the top eigenvector.
    """
    form = _form(form)
    w, v = np.linalg.eigh(form.corr.T @ form.corr)
    return WorstCase(float(0.5 * (w[0] + w[1])), v[:, 2])


def bound_condition(form) -> bool:
    """Whether Alice's Bloch vector lies in the top eigenspace of ``E E^T``.

    This covers ``a = 0`` and ``E`` proportional to the identity.
    """
    form = _form(form)
    a = form.a
    if np.linalg.norm(a) <= CONDITION_TOL:
        return True
    w, v = np.linalg.eigh(form.corr @ form.corr.T)
    top = v[:, np.abs(w - w[-1]) <= CONDITION_TOL * max(1.0, abs(w[-1]))]
    resid = a - top @ (top.T @ a)
    return bool(np.linalg.norm(resid) <= CONDITION_TOL)


def rsp_discord_bound_check(state) -> BoundCheck:
    """Compare the worst-case average payoff with twice the geometric discord.

    The bound is asserted only when :func:`bound_condition` holds; otherwise
    ``holds`` is ``None`` and ``status`` reads ``"condition not met"``.
    """
    state = as_state(state)
    if tuple(state.dims) != (2, 2):
        raise DimensionError(f"needs dims (2, 2), got {state.dims}")
    form = two_qubit_form(state)
    lhs = rsp_worst_case(form).value
    rhs = 2.0 * geometric_discord_2q(state, "A")
    if not bound_condition(form):
        return BoundCheck(None, lhs, rhs, False, "condition not met")
    holds = bool(lhs >= rhs - BOUND_TOL)
    return BoundCheck(holds, lhs, rhs, True, "holds" if holds else "violated")


def _bloch(m: np.ndarray) -> np.ndarray:
    return np.array([np.trace(p @ m).real for p in linop.PAULIS])


def bob_branches(state: DensityMatrix, alpha, beta):
    """Outcome probabilities and Bob's corrected Bloch vectors for both outcomes.

    Works on the density matrix directly: Alice's projector ``(1 + alpha.sigma)/2``
    leaves Bob's unnormalized state, and the ``-alpha`` branch is conjugated by
    the ``pi`` rotation about ``beta``.
    """
    u = rotation_unitary(beta)
    blocks = state.mat.reshape(2, 2, 2, 2)
    probs, vecs = [], []
    for sign in (1.0, -1.0):
        proj = 0.5 * (np.eye(2) + sign * sum(ai * p for ai, p in zip(alpha, linop.PAULIS)))
        m = np.einsum("ji,iajb->ab", proj, blocks)
        if sign < 0:
            m = u @ m @ u.conj().T
        p = float(np.trace(m).real)
        probs.append(p)
        vecs.append(_bloch(m) / p if p > 0 else np.zeros(3))
    return np.array(probs), np.array(vecs)


def rsp_simulate(
    state,
    s,
    beta,
    trials: int = 100_000,
    seed=None,
    sampled: bool = False,
    alpha=None,
) -> RspReport:
    """Run the protocol on ``state`` and score Bob's final Bloch vector.

    Alice measures along ``alpha`` (default: the optimal direction). The
    analytic path mixes Bob's two corrected branches exactly. With
    ``sampled=True`` the protocol is also run ``trials`` times: Alice's
    outcome is drawn, Bob measures along ``s``, and the mean of his ``+-1``
    outcomes estimates ``r . s``. The estimate and its standard error are in
    ``details``.
    """
    state = as_state(state)
    if tuple(state.dims) != (2, 2):
        raise DimensionError(f"needs dims (2, 2), got {state.dims}")
    s = _unit(s, "s")
    beta = _unit(beta, "beta")
    if abs(s @ beta) > UNIT_TOL:
        raise ValueError(f"s is not orthogonal to beta (s.beta = {s @ beta:.3e})")
    form = two_qubit_form(state)
    opt = rsp_optimal_payoff(form, s)
    if alpha is None:
        alpha = opt.alpha_opt if not opt.degenerate else np.cross(beta, s)
    alpha = _unit(alpha, "alpha")
    probs, vecs = bob_branches(state, alpha, beta)
    r = probs @ vecs
    payoff = float((r @ s) ** 2)
    details = {"bob_bloch": r, "branch_probs": probs, "degenerate": opt.degenerate}
    if sampled:
        rng = np.random.default_rng(seed)
        branch = rng.choice(2, size=trials, p=np.clip(probs, 0.0, None) / probs.sum())
        p_up = 0.5 * (1.0 + vecs[branch] @ s)
        spins = np.where(rng.random(trials) < p_up, 1.0, -1.0)
        mean = float(spins.mean())
        se_mean = float(spins.std(ddof=1) / np.sqrt(trials))
        details.update(
            sampled_overlap=mean,
            sampled_payoff=mean**2,
            sampled_stderr=2.0 * abs(mean) * se_mean + se_mean**2,
            trials=trials,
        )
    return RspReport(
        target_s=s,
        axis_beta=beta,
        alpha_opt=alpha,
        payoff=payoff,
        payoff_max=opt.payoff_max,
        avg_payoff=rsp_average_payoff(form, beta),
        worst_case_avg=rsp_worst_case(form).value,
        geom_discord=geometric_discord_2q(state, "A"),
        details=details,
    )
