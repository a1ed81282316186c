"""Measurements and channels: POVMs, von Neumann bases, Kraus maps."""

from dataclasses import dataclass
from math import prod
from typing import Sequence

import numpy as np

from . import linop
from .errors import DimensionError
from .states import DensityMatrix, as_state

COMPLETENESS_TOL = 1e-9
NULL_PROB = 1e-12


@dataclass(frozen=True)
class KrausChannel:
    ops: tuple
    in_dim: int
    out_dim: int

    def __post_init__(self):
        ops = tuple(linop.as_matrix(k) for k in self.ops)
        if not ops:
            raise ValueError("a channel needs at least one Kraus operator")
        for k in ops:
            if k.shape != (self.out_dim, self.in_dim):
                raise DimensionError(f"Kraus operator shape {k.shape} != ({self.out_dim}, {self.in_dim})")
        s = sum(k.conj().T @ k for k in ops)
        dev = np.max(np.abs(s - np.eye(self.in_dim)))
        if dev > COMPLETENESS_TOL:
            raise ValueError(f"Kraus operators are not complete (deviation {dev:.3e})")
        object.__setattr__(self, "ops", ops)

    @classmethod
    def from_ops(cls, ops: Sequence[np.ndarray]) -> "KrausChannel":
        out_dim, in_dim = np.asarray(ops[0]).shape
        return cls(tuple(ops), in_dim, out_dim)


@dataclass(frozen=True)
class Povm:
    elems: tuple

    def __post_init__(self):
        elems = tuple(linop.hermitize(e) for e in self.elems)
        n = elems[0].shape[0]
        for e in elems:
            linop.clip_spectrum(linop.eigvalsh(e))
        dev = np.max(np.abs(sum(elems) - np.eye(n)))
        if dev > COMPLETENESS_TOL:
            raise ValueError(f"POVM elements do not sum to identity (deviation {dev:.3e})")
        object.__setattr__(self, "elems", elems)

    @property
    def dim(self) -> int:
        return self.elems[0].shape[0]


@dataclass(frozen=True)
class VonNeumannBasis:
    """Rank-one orthogonal projectors summing to the identity."""

    projectors: tuple

    def __post_init__(self):
        projs = tuple(linop.as_matrix(p) for p in self.projectors)
        n = projs[0].shape[0]
        if len(projs) != n:
            raise ValueError(f"need {n} projectors for dimension {n}, got {len(projs)}")
        for i, p in enumerate(projs):
            for j, q in enumerate(projs):
                target = p if i == j else 0.0
                if np.max(np.abs(p @ q - target)) > COMPLETENESS_TOL:
                    raise ValueError("projectors are not orthogonal and idempotent")
            if abs(np.trace(p).real - 1.0) > COMPLETENESS_TOL:
                raise ValueError("projectors must have rank one")
        object.__setattr__(self, "projectors", projs)

    @classmethod
    def from_unitary(cls, u) -> "VonNeumannBasis":
        """Basis given by the columns of a unitary matrix."""
        u = linop.as_matrix(u)
        return cls(tuple(np.outer(u[:, i], u[:, i].conj()) for i in range(u.shape[1])))

    @classmethod
    def computational(cls, d: int) -> "VonNeumannBasis":
        return cls.from_unitary(np.eye(d))

    @property
    def dim(self) -> int:
        return self.projectors[0].shape[0]

    def as_povm(self) -> Povm:
        return Povm(self.projectors)


@dataclass(frozen=True)
class MeasurementRecord:
    probs: np.ndarray
    post_states: tuple  # DensityMatrix, or None where the outcome has p < 1e-12


def bloch_direction(theta: float, phi: float) -> np.ndarray:
    return np.array([np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi), np.cos(theta)])


def qubit_amplitudes(theta, phi) -> np.ndarray:
    """Amplitudes of ``|alpha>`` with Bloch vector at polar ``theta``, azimuth ``phi``.

    Broadcasts over array inputs; the last axis holds the two amplitudes.
    """
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    return np.stack([np.cos(theta / 2) + 0j, np.exp(1j * phi) * np.sin(theta / 2)], axis=-1)


def angles_of(direction) -> tuple:
    x, y, z = np.asarray(direction, dtype=float) / np.linalg.norm(direction)
    return float(np.arccos(np.clip(z, -1.0, 1.0))), float(np.arctan2(y, x))


def qubit_basis(theta: float, phi: float) -> VonNeumannBasis:
    """Projectors onto ``+alpha`` and ``-alpha``, ``alpha = (sin t cos p, sin t sin p, cos t)``."""
    a = qubit_amplitudes(theta, phi)
    perp = np.array([-np.conj(a[1]), np.conj(a[0])])
    return VonNeumannBasis((np.outer(a, a.conj()), np.outer(perp, perp.conj())))


def qubit_basis_along(direction) -> VonNeumannBasis:
    return qubit_basis(*angles_of(direction))


def _full_dims(dims, subsystem, d_new):
    dims = list(dims)
    dims[subsystem] = d_new
    return tuple(dims)


def local_embed(ops: Sequence[np.ndarray], subsystem: int, dims: Sequence[int]) -> list:
    """Tensor each operator with identities on every other subsystem."""
    dims = tuple(dims)
    if not 0 <= subsystem < len(dims):
        raise DimensionError(f"subsystem {subsystem} out of range for dims {dims}")
    out = []
    for op in ops:
        op = linop.as_matrix(op)
        if op.shape[1] != dims[subsystem]:
            raise DimensionError(f"operator acts on dimension {op.shape[1]}, subsystem has {dims[subsystem]}")
        left = np.eye(prod(dims[:subsystem]))
        right = np.eye(prod(dims[subsystem + 1 :]))
        out.append(linop.kron(left, op, right))
    return out


def embed_channel(ch: KrausChannel, subsystem: int, dims: Sequence[int]) -> KrausChannel:
    ops = local_embed(ch.ops, subsystem, dims)
    return KrausChannel.from_ops(ops)


def apply_channel(ch: KrausChannel, state, dims_out: Sequence[int] | None = None) -> DensityMatrix:
    state = as_state(state)
    if ch.in_dim != state.dim:
        raise DimensionError(f"channel input dimension {ch.in_dim} != state dimension {state.dim}")
    m = sum(k @ state.mat @ k.conj().T for k in ch.ops)
    if dims_out is None:
        dims_out = state.dims if ch.out_dim == ch.in_dim else (ch.out_dim,)
    return DensityMatrix(tuple(dims_out), 0.5 * (m + m.conj().T))


def apply_local(ch: KrausChannel, state, subsystem: int) -> DensityMatrix:
    state = as_state(state)
    full = embed_channel(ch, subsystem, state.dims)
    return apply_channel(full, state, _full_dims(state.dims, subsystem, ch.out_dim))


def measure_povm(povm, state) -> MeasurementRecord:
    """Outcome probabilities and post-measurement states.

    ``povm`` may be a :class:`Povm`, a :class:`VonNeumannBasis` or a
    :class:`KrausChannel`. Post states follow the Kraus operators when they
    are given, and the ``sqrt(M_i)`` rule for a bare POVM.
    """
    state = as_state(state)
    if isinstance(povm, VonNeumannBasis):
        povm = povm.as_povm()
    if isinstance(povm, KrausChannel):
        kraus = povm.ops
        effects = [k.conj().T @ k for k in kraus]
    else:
        effects = list(povm.elems)
        kraus = [linop.spectral_fn(e, "sqrt") for e in effects]
    if effects[0].shape[0] != state.dim:
        raise DimensionError(f"measurement dimension {effects[0].shape[0]} != state dimension {state.dim}")
    probs = np.array([max(np.trace(e @ state.mat).real, 0.0) for e in effects])
    posts = []
    for p, k in zip(probs, kraus):
        if p < NULL_PROB:
            posts.append(None)
            continue
        m = k @ state.mat @ k.conj().T / p
        dims = state.dims if k.shape[0] == state.dim else (k.shape[0],)
        posts.append(DensityMatrix(dims, 0.5 * (m + m.conj().T)))
    return MeasurementRecord(probs, tuple(posts))


def dephase(basis: VonNeumannBasis, state, subsystem: int = 0) -> DensityMatrix:
    """``sum_i (Pi_i x 1) rho (Pi_i x 1)`` with the basis acting on ``subsystem``."""
    state = as_state(state)
    if basis.dim != state.dims[subsystem]:
        raise DimensionError(f"basis dimension {basis.dim} != subsystem dimension {state.dims[subsystem]}")
    projs = local_embed(basis.projectors, subsystem, state.dims)
    m = sum(p @ state.mat @ p for p in projs)
    return DensityMatrix(state.dims, 0.5 * (m + m.conj().T))


def random_channel(d_in: int, d_out: int | None = None, n_ops: int = 4, seed=None) -> KrausChannel:
    """Random CPTP map from a Haar isometry ``d_in -> d_out * n_ops``."""
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    d_out = d_in if d_out is None else d_out
    if d_out * n_ops < d_in:
        raise ValueError(f"need d_out * n_ops >= d_in for an isometry, got {d_out} * {n_ops} < {d_in}")
    g = rng.standard_normal((d_out * n_ops, d_in)) + 1j * rng.standard_normal((d_out * n_ops, d_in))
    q, r = np.linalg.qr(g)
    q = q * (np.diag(r) / np.abs(np.diag(r)))
    ops = [q[i * d_out : (i + 1) * d_out, :] for i in range(n_ops)]
    return KrausChannel(tuple(ops), d_in, d_out)


def identity_channel(d: int) -> KrausChannel:
    return KrausChannel((np.eye(d),), d, d)


def depolarizing_qubit() -> KrausChannel:
    """Completely depolarizing qubit channel from the four Paulis scaled by 1/2."""
    return KrausChannel(tuple(0.5 * p for p in (np.eye(2),) + linop.PAULIS), 2, 2)
