"""Entanglement measures: pure-state entropy, Wootters concurrence and EoF,
log-negativity / PPT, and the Koashi-Winter consistency check."""

import numpy as np

from .. import linop
from ..errors import DimensionError, InvalidStateError
from ..infotheory import binary_entropy, von_neumann
from ..states import DensityMatrix, as_state, reduced
from .discord import discord_hv
from .optimizer import OptimizerConfig

PURE_TOL = 1e-9
PPT_TOL = 1e-9

_YY = np.kron(linop.SIGMA_Y, linop.SIGMA_Y)


def _bipartition(state: DensityMatrix, cut):
    if cut is None:
        if state.n_parties != 2:
            raise ValueError(f"state has {state.n_parties} parties; give an explicit cut")
        return [0], [1]
    left = sorted(set(int(i) for i in cut[0]))
    right = sorted(set(range(state.n_parties)) - set(left)) if len(cut) < 2 else sorted(set(int(i) for i in cut[1]))
    if not left or not right or set(left) & set(right) or set(left) | set(right) != set(range(state.n_parties)):
        raise ValueError(f"cut {cut} must split all {state.n_parties} subsystems into two nonempty groups")
    return left, right


def entanglement_entropy(state, cut=None) -> float:
    """Entropy of one side of a pure bipartite state."""
    state = as_state(state)
    if state.purity() < 1.0 - PURE_TOL:
        raise InvalidStateError(f"entanglement entropy needs a pure state (purity {state.purity():.12g})")
    left, _ = _bipartition(state, cut)
    return von_neumann(reduced(state, left))


def _require_two_qubits(state: DensityMatrix):
    if tuple(state.dims) != (2, 2):
        raise DimensionError(f"needs a two-qubit state, got dims {state.dims}")


def spin_flip(state) -> np.ndarray:
    """``(sigma_y x sigma_y) rho* (sigma_y x sigma_y)``."""
    state = as_state(state)
    return _YY @ state.mat.conj() @ _YY


def concurrence_2q(state) -> float:
    """``max(0, l1 - l2 - l3 - l4)`` with ``l_i`` the square roots of the
    eigenvalues of ``rho rho~`` in decreasing order.

    Those eigenvalues coincide with the spectrum of the Hermitian matrix
    ``sqrt(rho) rho~ sqrt(rho)``, which is what gets diagonalized.
    """
    state = as_state(state)
    _require_two_qubits(state)
    r = linop.spectral_fn(state.mat, "sqrt")
    w = linop.eigvalsh(r @ spin_flip(state) @ r)
    lam = np.sqrt(np.clip(w, 0.0, None))
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


def eof_from_concurrence(c: float) -> float:
    c = min(max(c, 0.0), 1.0)
    return binary_entropy(0.5 + 0.5 * np.sqrt(1.0 - c * c))


def eof_2q(state) -> float:
    return eof_from_concurrence(concurrence_2q(state))


def negativity_ppt(state, cut=None) -> tuple:
    """``(log2 ||rho^T_right||_1, is_ppt)`` for a bipartite cut.

    The partial transpose is taken on every subsystem of the second group.
    """
    state = as_state(state)
    _, right = _bipartition(state, cut)
    pt = state.mat
    for k in right:
        pt = linop.partial_transpose(pt, state.dims, k)
    w = linop.eigvalsh(pt)
    ppt = bool(w[-1] >= -PPT_TOL)
    log_neg = float(np.log2(np.sum(np.abs(w))))
    if ppt:
        log_neg = 0.0
    return log_neg, ppt


def koashi_winter_terms(pure_abc, cfg: OptimizerConfig | None = None) -> dict:
    """Both sides of ``D^{B|A}(rho_AB) = E_f(rho_AC) - S(rho_AB) + S(rho_B)``."""
    state = as_state(pure_abc)
    if tuple(state.dims) != (2, 2, 2):
        raise DimensionError(f"needs three qubits, got dims {state.dims}")
    if state.purity() < 1.0 - PURE_TOL:
        raise InvalidStateError("Koashi-Winter check needs a pure three-qubit state")
    rho_ab = reduced(state, [0, 1])
    rho_ac = reduced(state, [0, 2])
    d = discord_hv(rho_ab, "B", cfg)
    rhs = eof_2q(rho_ac) - von_neumann(rho_ab) + von_neumann(reduced(state, [1]))
    return {"discord": d.value, "rhs": rhs, "residual": abs(d.value - rhs), "result": d}


def koashi_winter_check(pure_abc, cfg: OptimizerConfig | None = None) -> float:
    return koashi_winter_terms(pure_abc, cfg)["residual"]
