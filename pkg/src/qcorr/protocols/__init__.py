"""Remote state preparation, entanglement distribution and transmission of correlations."""

from .distribution import ChainIdentity, dist_chain_identity, dist_inequality_check
from .reports import DistributionReport, RspReport, TransmissionReport, format_float
from .rsp import (
    BoundCheck,
    OptimalPayoff,
    WorstCase,
    bound_condition,
    rotate,
    rotate_pi,
    rsp_average_payoff,
    rsp_average_payoff_quadrature,
    rsp_discord_bound_check,
    rsp_optimal_payoff,
    rsp_payoff,
    rsp_simulate,
    rsp_worst_case,
)
from .transmission import (
    TransmissionBounds,
    quantum_transmission_bounds,
    ssa_lemma_slack,
    tau_state,
    transmission_ic,
)

__all__ = [
    "BoundCheck",
    "ChainIdentity",
    "DistributionReport",
    "OptimalPayoff",
    "RspReport",
    "TransmissionBounds",
    "TransmissionReport",
    "WorstCase",
    "bound_condition",
    "dist_chain_identity",
    "dist_inequality_check",
    "format_float",
    "quantum_transmission_bounds",
    "rotate",
    "rotate_pi",
    "rsp_average_payoff",
    "rsp_average_payoff_quadrature",
    "rsp_discord_bound_check",
    "rsp_optimal_payoff",
    "rsp_payoff",
    "rsp_simulate",
    "rsp_worst_case",
    "ssa_lemma_slack",
    "tau_state",
    "transmission_ic",
]
