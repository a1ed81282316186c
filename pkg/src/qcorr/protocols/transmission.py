"""Transmission of correlations from ``AB`` to ``AC`` by local operations.

Bob measures his part and forwards the outcome to Charlie, who stores it in
orthogonal states. The correlations that survive are the classical
correlation ``I - D^{B|A}``; the construction of the stored state is the
explicit protocol that attains it for the chosen measurement.
"""

from itertools import combinations
from typing import NamedTuple

import numpy as np

from .. import linop
from ..errors import DimensionError
from ..infotheory import mutual_information, von_neumann
from ..measure import Povm, VonNeumannBasis, local_embed
from ..states import DensityMatrix, as_state, reduced
from ..correlations.discord import basis_from_result, discord_hv, j_value, side_index
from ..correlations.optimizer import OptimizerConfig
from .reports import TransmissionReport

LEMMA_TOL = 1e-9


class TransmissionBounds(NamedTuple):
    avg_mi: float
    bound: float
    holds: bool
    lemma_worst_slack: float


def _elements(povm) -> tuple:
    return povm.projectors if isinstance(povm, VonNeumannBasis) else povm.elems


def tau_state(state, povm, measured="B", d_c: int | None = None) -> DensityMatrix:
    """``sum_i Tr_X[M_i rho] (x) |i><i|`` on ``(rest, C~)`` with ``X`` the measured side.

    Charlie's register has dimension ``max(number of outcomes, d_c)``.
    """
    state = as_state(state)
    if state.n_parties != 2:
        raise DimensionError(f"needs a bipartite state, got dims {state.dims}")
    m = side_index(measured, 2)
    keep = 1 - m
    elems = _elements(povm)
    d_tilde = max(len(elems), d_c or 0)
    d_keep = state.dims[keep]
    out = np.zeros((d_keep * d_tilde, d_keep * d_tilde), dtype=np.complex128)
    for i, e in enumerate(local_embed(elems, m, state.dims)):
        branch = linop.partial_trace(e @ state.mat, state.dims, [keep])
        flag = np.zeros((d_tilde, d_tilde))
        flag[i, i] = 1.0
        out += np.kron(branch, flag)
    return DensityMatrix((d_keep, d_tilde), 0.5 * (out + out.conj().T))


def transmission_ic(state, measured="B", cfg: OptimizerConfig | None = None, povm=None) -> TransmissionReport:
    """Classical transmission capacity ``I - D`` and the protocol that reaches it.

    ``povm`` defaults to the optimal projective measurement found for the
    discord; any :class:`Povm` or :class:`VonNeumannBasis` on the measured
    side can be supplied instead to run the protocol with it.
    """
    state = as_state(state)
    if state.n_parties != 2:
        raise DimensionError(f"needs a bipartite state, got dims {state.dims}")
    d = discord_hv(state, measured, cfg)
    mi = d.info["mutual_information"]
    i_c = mi - d.value
    if povm is None:
        povm = basis_from_result(d)
    tau = tau_state(state, povm, measured)
    i_tau = mutual_information(tau)
    j = j_value(state, povm, measured)
    details = {"discord_result": d, "j_value": j, "tau_dims": tau.dims}
    return TransmissionReport(mi, d.value, i_c, i_tau, abs(i_tau - j), details)


def ssa_lemma_slack(state, x: int, y: int, z: int) -> float:
    """``2 S(X) - I(X:Y) - I(X:Z)``, nonnegative by strong subadditivity."""
    state = as_state(state)
    s_x = von_neumann(reduced(state, [x]))
    i_xy = mutual_information(reduced(state, sorted([x, y])))
    i_xz = mutual_information(reduced(state, sorted([x, z])))
    return 2.0 * s_x - i_xy - i_xz


def quantum_transmission_bounds(state_f) -> TransmissionBounds:
    """Average ``I(A:C_i)`` over the receivers and its ceiling ``S(A)``.

    Subsystem 0 is ``A``; subsystems ``1..n`` are the receivers, ``n >= 2``.
    The pairwise lemma is evaluated for every pair of receivers and the
    smallest slack is reported.
    """
    state = as_state(state_f)
    n = state.n_parties - 1
    if n < 2:
        raise DimensionError(f"needs A and at least two receivers, got {state.n_parties} subsystems")
    mis = [mutual_information(reduced(state, [0, i])) for i in range(1, n + 1)]
    avg = float(np.mean(mis))
    bound = von_neumann(reduced(state, [0]))
    worst = min(ssa_lemma_slack(state, 0, i, j) for i, j in combinations(range(1, n + 1), 2))
    holds = avg <= bound + LEMMA_TOL and worst >= -LEMMA_TOL
    return TransmissionBounds(avg, bound, bool(holds), float(worst))
