"""Command-line front end.

Subcommands::

    qcorr measure    --in STATE --measure NAME [--measure NAME ...] [--measured A|B]
    qcorr rsp        --state STATE|werner|sigma [--p P | --k K --t T] [--worst-case]
    qcorr distribute --in STATE
    qcorr transmit   --in STATE [--measured B] [--bounds]
    qcorr sweep      --family werner|sigma --grid 0,0.1,... [--t T]
    qcorr random     --dims 2,2 [--pure] [--ancilla N] --seed S --out PATH

A table always goes to standard output; ``--out`` also writes CSV or JSON.
Exit statuses: 0 success, 1 failed protocol check, 2 usage error,
3 invalid input, 4 unsupported dimensions.
"""

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .correlations import (
    OptimizerConfig,
    classical_corr,
    concurrence_2q,
    discord_hv,
    discord_oz,
    entanglement_entropy,
    eof_2q,
    geometric_discord_2q,
    geometric_discord_numeric,
    negativity_ppt,
    one_way_deficit,
    ree_upper,
    rel_entropy_quantumness,
)
from .errors import QcorrError, UnsupportedDimensionError
from .infotheory import mutual_information, von_neumann
from .protocols import (
    dist_inequality_check,
    format_float,
    quantum_transmission_bounds,
    rsp_discord_bound_check,
    rsp_simulate,
    rsp_worst_case,
    transmission_ic,
)
from .protocols.reports import CSV_DIGITS, TABLE_DIGITS
from .states import (
    DensityMatrix,
    random_mixed,
    random_pure,
    read_state,
    sigma_family,
    two_qubit_form,
    werner,
    write_state,
)

EXIT_OK = 0
EXIT_CHECK = 1
EXIT_USAGE = 2
EXIT_INVALID = 3
EXIT_UNSUPPORTED = 4


class CheckFailed(Exception):
    """A protocol self-check did not hold."""


def _value(x):
    return float(x.value) if hasattr(x, "value") else x


def _geometric(state, measured, cfg):
    if tuple(state.dims) == (2, 2):
        return geometric_discord_2q(state, measured)
    return geometric_discord_numeric(state, measured, cfg).value


# name -> (callable(state, measured, cfg), default side)
MEASURES = {
    "entropy": (lambda s, m, c: von_neumann(s), None),
    "mutual-information": (lambda s, m, c: mutual_information(s), None),
    "entanglement-entropy": (lambda s, m, c: entanglement_entropy(s), None),
    "concurrence": (lambda s, m, c: concurrence_2q(s), None),
    "eof": (lambda s, m, c: eof_2q(s), None),
    "log-negativity": (lambda s, m, c: negativity_ppt(s)[0], None),
    "ppt": (lambda s, m, c: negativity_ppt(s)[1], None),
    "ree": (lambda s, m, c: ree_upper(s, None, c).value, None),
    "classical-correlation": (lambda s, m, c: classical_corr(s, m, c).value, "B"),
    "discord": (lambda s, m, c: discord_hv(s, m, c).value, "B"),
    "discord-oz": (lambda s, m, c: discord_oz(s, m, c).value, "B"),
    "one-way-deficit": (lambda s, m, c: one_way_deficit(s, m, c).value, "A"),
    "geometric-discord": (_geometric, "A"),
    "geometric-discord-numeric": (lambda s, m, c: geometric_discord_numeric(s, m, c).value, "A"),
    "quantumness": (lambda s, m, c: rel_entropy_quantumness(s, c).value, None),
}
DEFAULT_MEASURES = ("entropy", "mutual-information", "concurrence", "geometric-discord", "discord")


# ---------------------------------------------------------------- output


def _cell(v, digits):
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, float, np.floating, np.integer)):
        return format_float(v, digits)
    if isinstance(v, (list, tuple, np.ndarray)):
        return " ".join(format_float(x, digits) for x in np.ravel(v))
    return str(v)


def _json_value(v):
    if isinstance(v, (bool, np.bool_)):
        return bool(v)
    if isinstance(v, (int, np.integer)):
        return int(v)
    if isinstance(v, (float, np.floating)):
        v = float(v)
        return "inf" if math.isinf(v) else v
    if isinstance(v, (list, tuple, np.ndarray)):
        return [_json_value(x) for x in np.ravel(v)]
    return v


def render_table(header, rows) -> str:
    cells = [list(header)] + [[_cell(v, TABLE_DIGITS) for v in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    return "\n".join("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells) + "\n"


def render_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([_cell(v, CSV_DIGITS) for v in r])
    return buf.getvalue()


def render_json(header, rows) -> str:
    return json.dumps([{h: _json_value(v) for h, v in zip(header, r)} for r in rows], indent=2) + "\n"


def emit(args, header, rows) -> None:
    sys.stdout.write(render_table(header, rows))
    if args.out:
        fmt = args.format or ("json" if str(args.out).endswith(".json") else "csv")
        text = {"csv": render_csv, "json": render_json, "table": render_table}[fmt](header, rows)
        Path(args.out).write_text(text)
    elif args.format in ("csv", "json"):
        sys.stdout.write({"csv": render_csv, "json": render_json}[args.format](header, rows))


# --------------------------------------------------------------- parsing


def _floats(text: str) -> list:
    try:
        vals = [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None
    return vals


def _ints(text: str) -> list:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _vector(text: str) -> np.ndarray:
    v = _floats(text)
    if len(v) != 3:
        raise argparse.ArgumentTypeError(f"expected three comma-separated numbers, got {text!r}")
    return np.array(v)


def _config(args) -> OptimizerConfig:
    base = OptimizerConfig()
    return OptimizerConfig(
        base.grid_resolution,
        base.refine_iters,
        args.restarts if args.restarts is not None else base.restarts,
        args.tol if args.tol is not None else base.tol,
        args.seed,
    )


def _load(path) -> DensityMatrix:
    if not Path(path).exists():
        raise FileNotFoundError(f"state file not found: {path}")
    return read_state(path)


# -------------------------------------------------------------- commands


def cmd_measure(args) -> int:
    state = _load(args.input)
    cfg = _config(args)
    names = args.measure or list(DEFAULT_MEASURES)
    rows = []
    for name in names:
        fn, default_side = MEASURES[name]
        side = args.measured or default_side
        rows.append([name, side or "-", _value(fn(state, side, cfg))])
    emit(args, ["measure", "measured", "value"], rows)
    return EXIT_OK


def _family_state(args) -> DensityMatrix:
    if args.p is not None:
        return werner(args.p)
    if args.k is not None or args.t is not None:
        if args.k is None or args.t is None:
            raise ValueError("the sigma family needs both --k and --t")
        return sigma_family(args.k, args.t)
    return None


def _rsp_state(args) -> DensityMatrix:
    family = _family_state(args)
    spec = args.state
    if spec in (None, "werner", "sigma"):
        if family is None:
            raise ValueError("give a state file with --state, or family parameters --p / --k --t")
        return family
    state = _load(spec)
    if family is not None:
        dev = float(np.max(np.abs(state.mat - family.mat)))
        if dev > 1e-9:
            raise ValueError(f"state file {spec} differs from the requested family state (max deviation {dev:.3e})")
    return state


def cmd_rsp(args) -> int:
    state = _rsp_state(args)
    form = two_qubit_form(state)
    if args.worst_case:
        wc = rsp_worst_case(form)
        chk = rsp_discord_bound_check(state)
        rows = [
            ["worst_case_avg", wc.value],
            ["two_dg", chk.rhs],
            ["beta_star", wc.beta_star],
            ["bound_status", chk.status],
        ]
        emit(args, ["quantity", "value"], rows)
        return EXIT_CHECK if chk.holds is False else EXIT_OK
    rep = rsp_simulate(state, args.s, args.beta, trials=args.trials, seed=args.seed, sampled=args.sampled)
    rec = rep.record()
    rows = [[k, getattr(rep, k)] for k in rec]
    if args.sampled:
        rows += [["sampled_payoff", rep.details["sampled_payoff"]], ["sampled_stderr", rep.details["sampled_stderr"]]]
    emit(args, ["quantity", "value"], rows)
    if abs(rep.payoff - rep.payoff_max) > 1e-9:
        raise CheckFailed(f"simulated payoff {rep.payoff:.12g} differs from closed form {rep.payoff_max:.12g}")
    return EXIT_OK


def cmd_distribute(args) -> int:
    state = _load(args.input)
    rep = dist_inequality_check(state, _config(args))
    checks = rep.details["checks"]
    rows = [[k, getattr(rep, k)] for k in rep.csv_header()]
    rows += [[f"check_{k}", v] for k, v in checks.items()]
    emit(args, ["quantity", "value"], rows)
    hard = [k for k in ("chain", "certified", "zero_deficit") if checks.get(k) is False]
    if hard:
        raise CheckFailed(f"distribution checks failed: {', '.join(hard)}")
    return EXIT_OK


def cmd_transmit(args) -> int:
    state = _load(args.input)
    if args.bounds:
        b = quantum_transmission_bounds(state)
        emit(args, ["quantity", "value"], [["avg_mi", b.avg_mi], ["bound", b.bound], ["lemma_worst_slack", b.lemma_worst_slack], ["holds", b.holds]])
        if not b.holds:
            raise CheckFailed("average mutual information exceeds S(A)")
        return EXIT_OK
    rep = transmission_ic(state, args.measured or "B", _config(args))
    emit(args, ["quantity", "value"], [[k, getattr(rep, k)] for k in rep.csv_header()])
    if rep.tau_identity_residual > 1e-9:
        raise CheckFailed(f"I(tau) differs from J by {rep.tau_identity_residual:.3e}")
    if rep.protocol_i_ac > rep.i_c + 1e-6:
        raise CheckFailed("protocol exceeds the classical transmission value")
    return EXIT_OK


def sweep_rows(family: str, grid, t: float, measures, measured, cfg):
    """Rows of the parameter sweep, in grid order."""
    if not grid:
        raise ValueError("the sweep grid is empty")
    if family not in ("werner", "sigma"):
        raise ValueError(f"unknown family {family!r}")
    header = ["family", "param", "t"] + list(measures) + ["worst_case_avg", "two_dg", "ppt"]
    rows = []
    for x in grid:
        state = werner(x) if family == "werner" else sigma_family(x, t)
        row = [family, x, t if family == "sigma" else 0.0]
        for name in measures:
            fn, default_side = MEASURES[name]
            row.append(_value(fn(state, measured or default_side, cfg)))
        row += [
            rsp_worst_case(two_qubit_form(state)).value,
            2.0 * geometric_discord_2q(state, "A"),
            negativity_ppt(state)[1],
        ]
        rows.append(row)
    return header, rows


def cmd_sweep(args) -> int:
    measures = args.measure or ["geometric-discord", "concurrence"]
    header, rows = sweep_rows(args.family, args.grid, args.t, measures, args.measured, _config(args))
    emit(args, header, rows)
    return EXIT_OK


def cmd_random(args) -> int:
    if not args.dims or min(args.dims) < 1:
        raise ValueError("--dims needs positive integers")
    if args.pure:
        state = random_pure(args.dims, args.seed)
    else:
        state = random_mixed(args.dims, args.ancilla, args.seed)
    if args.out:
        write_state(state, args.out)
    rows = [["dims", ",".join(map(str, state.dims))], ["purity", state.purity()], ["entropy", von_neumann(state)]]
    sys.stdout.write(render_table(["quantity", "value"], rows))
    return EXIT_OK


# ----------------------------------------------------------------- main


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write results (CSV, JSON or a state file) to this path")
    common.add_argument("--format", choices=("csv", "json", "table"), help="format for --out")
    common.add_argument("--seed", type=int, default=0, help="seed for optimizer restarts and sampling")
    common.add_argument("--restarts", type=int, help="optimizer restarts")
    common.add_argument("--tol", type=float, help="optimizer tolerance on the objective")
    common.add_argument("--measured", choices=("A", "B"), help="measured subsystem")

    p = argparse.ArgumentParser(prog="qcorr", description="Quantum correlation measures and protocol checks.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    m = sub.add_parser("measure", parents=[common], help="evaluate measures on a state file")
    m.add_argument("--in", dest="input", required=True, help="state file (JSON)")
    m.add_argument("--measure", action="append", choices=sorted(MEASURES), help="measure name (repeatable)")
    m.set_defaults(func=cmd_measure)

    r = sub.add_parser("rsp", parents=[common], help="remote state preparation")
    r.add_argument("--state", help="state file, or a family name: werner, sigma")
    r.add_argument("--p", type=float, help="Werner parameter")
    r.add_argument("--k", type=float, help="sigma-family k")
    r.add_argument("--t", type=float, help="sigma-family t")
    r.add_argument("--s", type=_vector, default=np.array([1.0, 0.0, 0.0]), help="target Bloch vector")
    r.add_argument("--beta", type=_vector, default=np.array([0.0, 0.0, 1.0]), help="rotation axis")
    r.add_argument("--worst-case", action="store_true", help="report the worst-case average payoff and 2 D_G")
    r.add_argument("--sampled", action="store_true", help="also run the Monte-Carlo protocol")
    r.add_argument("--trials", type=int, default=100_000)
    r.set_defaults(func=cmd_rsp)

    d = sub.add_parser("distribute", parents=[common], help="entanglement distribution check (three qubits)")
    d.add_argument("--in", dest="input", required=True)
    d.set_defaults(func=cmd_distribute)

    t = sub.add_parser("transmit", parents=[common], help="transmission of correlations")
    t.add_argument("--in", dest="input", required=True)
    t.add_argument("--bounds", action="store_true", help="treat the state as A, C1..Cn and check the averaging bound")
    t.set_defaults(func=cmd_transmit)

    s = sub.add_parser("sweep", parents=[common], help="parameter sweep over a state family")
    s.add_argument("--family", required=True, choices=("werner", "sigma"))
    s.add_argument("--grid", type=_floats, required=True, help="comma-separated parameter values")
    s.add_argument("--t", type=float, default=0.0, help="fixed t for the sigma family")
    s.add_argument("--measure", action="append", choices=sorted(MEASURES))
    s.set_defaults(func=cmd_sweep)

    g = sub.add_parser("random", parents=[common], help="write a seeded random state")
    g.add_argument("--dims", type=_ints, required=True)
    g.add_argument("--pure", action="store_true")
    g.add_argument("--ancilla", type=int, help="ancilla dimension for the induced measure")
    g.set_defaults(func=cmd_random)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UnsupportedDimensionError as exc:
        print(f"qcorr: unsupported dimensions: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except CheckFailed as exc:
        print(f"qcorr: check failed: {exc}", file=sys.stderr)
        return EXIT_CHECK
    except (QcorrError, ValueError, OSError) as exc:
        print(f"qcorr: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
