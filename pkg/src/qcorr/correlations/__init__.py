"""Entanglement and discord-type correlation measures."""

from .discord import (
    basis_from_result,
    classical_corr,
    discord_hv,
    discord_oz,
    geometric_discord_2q,
    geometric_discord_numeric,
    j_value,
    one_way_deficit,
    rel_entropy_quantumness,
)
from .entanglement import (
    concurrence_2q,
    entanglement_entropy,
    eof_2q,
    eof_from_concurrence,
    koashi_winter_check,
    koashi_winter_terms,
    negativity_ppt,
    spin_flip,
)
from .optimizer import MeasureResult, OptimizerConfig, minimize_angles
from .ree import ree_upper, separable_state

__all__ = [
    "MeasureResult",
    "OptimizerConfig",
    "basis_from_result",
    "classical_corr",
    "concurrence_2q",
    "discord_hv",
    "discord_oz",
    "entanglement_entropy",
    "eof_2q",
    "eof_from_concurrence",
    "geometric_discord_2q",
    "geometric_discord_numeric",
    "j_value",
    "koashi_winter_check",
    "koashi_winter_terms",
    "minimize_angles",
    "negativity_ppt",
    "one_way_deficit",
    "ree_upper",
    "rel_entropy_quantumness",
    "separable_state",
    "spin_flip",
]
