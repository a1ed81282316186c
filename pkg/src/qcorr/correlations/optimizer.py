"""Grid-seeded multistart Nelder-Mead over measurement angles."""

import math
from dataclasses import dataclass, field
from typing import Any, Callable, Sequence

import numpy as np
from scipy.optimize import minimize


@dataclass(frozen=True)
class OptimizerConfig:
    """Settings for the angle optimizers.

    ``grid_resolution`` is (polar, azimuthal) points per measured qubit;
    the best ``restarts`` grid points seed Nelder-Mead runs of at most
    ``refine_iters`` iterations, stopped once the objective changes by less
    than ``tol``.
    """

    grid_resolution: tuple = (24, 48)
    refine_iters: int = 200
    restarts: int = 8
    tol: float = 1e-7
    seed: int = 0

    def __post_init__(self):
        n_theta, n_phi = self.grid_resolution
        if min(n_theta, n_phi, self.refine_iters, self.restarts) < 1:
            raise ValueError("optimizer counts must all be >= 1")
        if not self.tol > 0:
            raise ValueError("tol must be positive")

    def coarser(self, factor: int = 2) -> "OptimizerConfig":
        n_theta, n_phi = self.grid_resolution
        return OptimizerConfig(
            (max(2, n_theta // factor), max(2, n_phi // factor)),
            self.refine_iters,
            self.restarts,
            self.tol,
            self.seed,
        )

    def finer(self, factor: int = 2) -> "OptimizerConfig":
        n_theta, n_phi = self.grid_resolution
        return OptimizerConfig((n_theta * factor, n_phi * factor), self.refine_iters, self.restarts, self.tol, self.seed)


@dataclass
class MeasureResult:
    """Value of a correlation measure with the optimizer's certificate.

    ``argmin`` describes where the optimum was found (measurement angles,
    Bloch directions, or a separable decomposition). ``value`` may be
    ``math.inf`` for relative-entropy quantities off-support.
    """

    value: float
    argmin: Any = None
    evaluations: int = 0
    converged: bool = True
    info: dict = field(default_factory=dict)

    @property
    def infinite(self) -> bool:
        return math.isinf(self.value)

    def __float__(self):
        return float(self.value)


def angle_grid(cfg: OptimizerConfig, n_qubits: int = 1) -> np.ndarray:
    """Cartesian grid of (theta, phi) pairs, one pair per measured qubit.

    Polar points sit at cell centres so the poles (where phi is degenerate)
    are never sampled twice.
    """
    n_theta, n_phi = cfg.grid_resolution
    theta = (np.arange(n_theta) + 0.5) * np.pi / n_theta
    phi = np.arange(n_phi) * 2.0 * np.pi / n_phi
    axes = [theta, phi] * n_qubits
    mesh = np.meshgrid(*axes, indexing="ij")
    return np.stack([m.ravel() for m in mesh], axis=-1)


def minimize_angles(
    objective: Callable[[np.ndarray], np.ndarray],
    cfg: OptimizerConfig,
    n_qubits: int = 1,
    extra_seeds: Sequence[np.ndarray] = (),
) -> MeasureResult:
    """Minimize a batched objective over measurement angles.

    ``objective`` maps an ``(N, 2 * n_qubits)`` array of angles to ``N``
    values. Restart ``r`` perturbs its initial simplex with an RNG keyed on
    ``(cfg.seed, r)``, so results do not depend on evaluation order.
    """
    grid = angle_grid(cfg, n_qubits)
    values = np.asarray(objective(grid), dtype=float)
    evals = len(grid)
    order = np.argsort(values, kind="stable")
    seeds = [grid[i] for i in order[: cfg.restarts]]
    seeds.extend(np.asarray(s, dtype=float) for s in extra_seeds)
    n_theta, n_phi = cfg.grid_resolution
    step = np.tile([np.pi / n_theta, 2.0 * np.pi / n_phi], n_qubits)

    best_x = grid[order[0]]
    best_f = float(values[order[0]])
    all_converged = True
    for r, x0 in enumerate(seeds):
        rng = np.random.default_rng([cfg.seed, r])
        dim = x0.size
        simplex = np.empty((dim + 1, dim))
        simplex[0] = x0
        for k in range(dim):
            simplex[k + 1] = x0
            simplex[k + 1, k] += step[k] * rng.uniform(0.5, 1.0)

        def f(x):
            return float(objective(x[None, :])[0])

        res = minimize(
            f,
            x0,
            method="Nelder-Mead",
            options=dict(
                initial_simplex=simplex,
                maxiter=cfg.refine_iters,
                xatol=1e-7,
                fatol=cfg.tol,
            ),
        )
        evals += res.nfev
        all_converged &= bool(res.success)
        if res.fun < best_f:
            best_f, best_x = float(res.fun), res.x
    return MeasureResult(best_f, np.asarray(best_x, dtype=float), evals, all_converged)
