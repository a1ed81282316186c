"""Time the numba kernels against their numpy counterparts.

Kernel timings call both implementations directly in one process. The
end-to-end timing runs one discord evaluation in two subprocesses, with and
without ``QCORR_DISABLE_NUMBA=1``, so the dispatch switch itself is exercised.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--grid 1152]
"""

import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from qcorr import kernels, states
from qcorr._accel import HAVE_NUMBA
from qcorr.measure import qubit_amplitudes
from qcorr.correlations.discord import qubit_blocks

E2E = (
    "import time; from qcorr import states, kernels; from qcorr.correlations import discord_oz;"
    "rho = states.random_mixed({dims}, seed=1); discord_oz(rho, 'A');"
    "t = time.perf_counter(); discord_oz(rho, 'A'); print(kernels.BACKEND, time.perf_counter() - t)"
)


def best_of(fn, repeat: int) -> float:
    fn()  # warm-up, includes jit compilation
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def kernel_cases(n_grid: int, rng):
    herm = rng.standard_normal((8, 8)) + 1j * rng.standard_normal((8, 8))
    herm = herm + herm.conj().T
    batch = rng.standard_normal((n_grid, 4, 4)) + 1j * rng.standard_normal((n_grid, 4, 4))
    batch = batch + np.conj(np.swapaxes(batch, 1, 2))
    blocks = qubit_blocks(states.random_mixed((2, 4), seed=2), 0)
    blocks2 = qubit_blocks(states.random_mixed((2, 2), seed=3), 0)
    theta = rng.uniform(0, np.pi, n_grid)
    phi = rng.uniform(0, 2 * np.pi, n_grid)
    amps = qubit_amplitudes(theta, phi)
    return [
        ("eigh 8x8", lambda: kernels.jacobi_eigh(herm), lambda: kernels.eigh_numpy(herm)),
        (f"eigvalsh batch {n_grid}x4x4", lambda: kernels.eigvalsh_batch_numba(batch), lambda: kernels.eigvalsh_batch_numpy(batch)),
        (f"branch spectra {n_grid} pts, d=2", lambda: kernels.branch_spectra_numba(blocks2, amps), lambda: kernels.branch_spectra_numpy(blocks2, amps)),
        (f"branch spectra {n_grid} pts, d=4", lambda: kernels.branch_spectra_numba(blocks, amps), lambda: kernels.branch_spectra_numpy(blocks, amps)),
    ]


def end_to_end(dims) -> list:
    rows = []
    for disable in ("0", "1"):
        env = dict(os.environ, QCORR_DISABLE_NUMBA=disable)
        code = E2E.format(dims=tuple(dims))
        out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
        backend, secs = out.stdout.split()
        rows.append((backend, float(secs)))
    return rows


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--grid", type=int, default=24 * 48)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    if not HAVE_NUMBA:
        print("numba is not installed; the 'numba' column runs the same loops in plain Python")
    rng = np.random.default_rng(args.seed)
    print(f"{'kernel':<34}{'numba [ms]':>12}{'numpy [ms]':>12}{'ratio':>8}")
    for name, fast, ref in kernel_cases(args.grid, rng):
        t_fast, t_ref = best_of(fast, args.repeat), best_of(ref, args.repeat)
        print(f"{name:<34}{1e3 * t_fast:>12.3f}{1e3 * t_ref:>12.3f}{t_ref / t_fast:>8.2f}")
    print()
    for dims in ((2, 2), (2, 4)):
        print(f"end to end: discord_oz on a random {dims[0]}x{dims[1]} state")
        for backend, secs in end_to_end(dims):
            print(f"  backend={backend:<6} {1e3 * secs:9.1f} ms")
    return 0


if __name__ == "__main__":
    sys.exit(main())
