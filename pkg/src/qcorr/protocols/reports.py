"""Value objects returned by the protocol runs, with JSON and CSV output."""

import csv
import io
import json
import math
from dataclasses import dataclass, field, fields

import numpy as np

CSV_DIGITS = 12
TABLE_DIGITS = 6


def format_float(x: float, digits: int = CSV_DIGITS) -> str:
    """``digits`` significant digits; infinities become ``inf``/``-inf``."""
    x = float(x)
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if math.isnan(x):
        return "nan"
    return f"{x:.{digits}g}"


def _plain(v):
    if isinstance(v, np.ndarray):
        return [_plain(x) for x in v.tolist()]
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    if isinstance(v, (np.floating, float)):
        v = float(v)
        return "inf" if math.isinf(v) and v > 0 else v
    if isinstance(v, np.bool_):
        return bool(v)
    if isinstance(v, np.integer):
        return int(v)
    return v


def _cell(v, digits):
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, float, np.floating, np.integer)):
        return format_float(v, digits)
    if isinstance(v, (np.ndarray, list, tuple)):
        return " ".join(format_float(x, digits) for x in np.ravel(v))
    return str(v)


class _Record:
    """Serialization shared by the report dataclasses.

    Only the declared fields are written; the ``details`` mapping carries
    diagnostics and is left out of JSON and CSV.
    """

    def record(self) -> dict:
        return {f.name: _plain(getattr(self, f.name)) for f in fields(self) if f.name != "details"}

    def to_json(self) -> str:
        return json.dumps(self.record())

    @classmethod
    def csv_header(cls) -> list:
        return [f.name for f in fields(cls) if f.name != "details"]

    def csv_row(self, digits: int = CSV_DIGITS) -> list:
        return [_cell(getattr(self, name), digits) for name in self.csv_header()]

    def to_csv(self, digits: int = CSV_DIGITS) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.csv_header())
        w.writerow(self.csv_row(digits))
        return buf.getvalue()


@dataclass
class RspReport(_Record):
    target_s: np.ndarray
    axis_beta: np.ndarray
    alpha_opt: np.ndarray
    payoff: float
    payoff_max: float
    avg_payoff: float
    worst_case_avg: float
    geom_discord: float
    details: dict = field(default_factory=dict, repr=False)


@dataclass
class DistributionReport(_Record):
    e_initial: float
    e_final: float
    deficit: float
    chain_residual: float
    details: dict = field(default_factory=dict, repr=False)


@dataclass
class TransmissionReport(_Record):
    mutual_initial: float
    discord: float
    i_c: float
    protocol_i_ac: float
    tau_identity_residual: float
    details: dict = field(default_factory=dict, repr=False)
