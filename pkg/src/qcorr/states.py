"""Density operators: validation, named families, two-qubit Pauli form, I/O."""

import json
from dataclasses import dataclass, field
from math import prod
from pathlib import Path
from typing import Sequence

import numpy as np

from . import linop
from .errors import DimensionError, InvalidStateError, NotHermitianError

TRACE_TOL = 1e-9
NEG_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """A validated density operator together with its subsystem dimensions.

    Build instances through :func:`validate` or one of the constructors; the
    matrix is stored read-only.
    """

    dims: tuple
    mat: np.ndarray = field(repr=False)

    def __post_init__(self):
        self.mat.flags.writeable = False

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    @property
    def n_parties(self) -> int:
        return len(self.dims)

    def purity(self) -> float:
        return float(np.vdot(self.mat, self.mat).real)

    def __repr__(self):
        return f"DensityMatrix(dims={self.dims}, purity={self.purity():.6g})"


@dataclass(frozen=True)
class TwoQubitForm:
    """Local Bloch vectors ``a`` (first qubit), ``b`` (second) and correlation
    tensor ``corr[k, l] = Tr[(sigma_k x sigma_l) rho]``."""

    a: np.ndarray
    b: np.ndarray
    corr: np.ndarray


def validate(m, dims: Sequence[int] | None = None) -> DensityMatrix:
    """Check trace and positivity and wrap ``m`` as a :class:`DensityMatrix`.

    Eigenvalues in ``[-1e-10, 0)`` are clipped to zero; anything below that,
    or a trace off by more than ``1e-9``, raises :class:`InvalidStateError`.
    """
    m = linop.as_matrix(m)
    if dims is None:
        dims = (m.shape[0],)
    dims = linop.check_dims(m, dims)
    try:
        h = linop.hermitize(m)
    except NotHermitianError as exc:
        raise InvalidStateError(str(exc)) from None
    tr = float(np.trace(h).real)
    if abs(tr - 1.0) > TRACE_TOL:
        raise InvalidStateError(f"trace is {tr:.12g}, expected 1 (tolerance {TRACE_TOL:g})")
    w, v = linop.herm_eig(h)
    if w[-1] < -NEG_TOL:
        raise InvalidStateError(f"not positive: minimum eigenvalue {w[-1]:.6g}")
    if w[-1] < 0.0:
        h = (v * np.clip(w, 0.0, None)) @ v.conj().T
    elif np.array_equal(h, m):
        h = m.copy()
    return DensityMatrix(dims, h)


def as_state(x, dims: Sequence[int] | None = None) -> DensityMatrix:
    if isinstance(x, DensityMatrix):
        return x
    return validate(x, dims)


def from_pure(amplitudes, dims: Sequence[int] | None = None) -> DensityMatrix:
    psi = np.asarray(amplitudes, dtype=np.complex128).ravel()
    nrm = np.linalg.norm(psi)
    if nrm == 0.0:
        raise InvalidStateError("state vector is zero")
    psi = psi / nrm
    dims = (psi.size,) if dims is None else tuple(int(d) for d in dims)
    if prod(dims) != psi.size:
        raise DimensionError(f"dims {dims} do not match vector length {psi.size}")
    return DensityMatrix(dims, np.outer(psi, psi.conj()))


def reduced(state: DensityMatrix, keep: Sequence[int]) -> DensityMatrix:
    keep = sorted(set(keep))
    m = linop.partial_trace(state.mat, state.dims, keep)
    return DensityMatrix(tuple(state.dims[k] for k in keep), 0.5 * (m + m.conj().T))


def tensor(*states: DensityMatrix) -> DensityMatrix:
    dims = tuple(d for s in states for d in s.dims)
    return DensityMatrix(dims, linop.kron(*(s.mat for s in states)))


def maximally_mixed(dims: Sequence[int]) -> DensityMatrix:
    n = prod(dims)
    return DensityMatrix(tuple(dims), np.eye(n, dtype=np.complex128) / n)


def basis_state(index: Sequence[int], dims: Sequence[int]) -> DensityMatrix:
    psi = np.zeros(prod(dims), dtype=np.complex128)
    psi[np.ravel_multi_index(tuple(index), tuple(dims))] = 1.0
    return from_pure(psi, dims)


_S2 = 1.0 / np.sqrt(2.0)
PSI_MINUS = np.array([0, _S2, -_S2, 0], dtype=np.complex128)
PSI_PLUS = np.array([0, _S2, _S2, 0], dtype=np.complex128)
PHI_PLUS = np.array([_S2, 0, 0, _S2], dtype=np.complex128)


def singlet() -> DensityMatrix:
    return from_pure(PSI_MINUS, (2, 2))


def ghz(n: int = 3) -> DensityMatrix:
    psi = np.zeros(2**n, dtype=np.complex128)
    psi[0] = psi[-1] = _S2
    return from_pure(psi, (2,) * n)


def werner(p: float) -> DensityMatrix:
    """``p |psi-><psi-| + (1 - p) 1/4``; separable exactly for ``p <= 1/3``."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"Werner parameter must lie in [0, 1], got {p}")
    m = p * np.outer(PSI_MINUS, PSI_MINUS.conj()) + (1.0 - p) * np.eye(4) / 4.0
    return DensityMatrix((2, 2), m.astype(np.complex128))


def sigma_family_weights(k: float, t: float) -> np.ndarray:
    return np.array([(1 - k) / 4, (1 + 3 * k) / 4, (1 - 2 * t - k) / 4, (1 + 2 * t - k) / 4])


def sigma_family(k: float, t: float) -> DensityMatrix:
    """Mixture of ``|psi+>, |psi->, |00>, |11>`` with correlation tensor ``-k 1``.

    The weights are ``(1-k)/4, (1+3k)/4, (1-2t-k)/4, (1+2t-k)/4``; both
    parameters are admissible exactly when all four are nonnegative, i.e.
    ``-1/3 <= k <= 1`` and ``|t| <= (1 - k)/2``.
    """
    w = sigma_family_weights(k, t)
    if np.any(w < -1e-15):
        raise ValueError(
            f"(k, t) = ({k}, {t}) gives negative mixture weights {w.tolist()}; "
            "need -1/3 <= k <= 1 and |t| <= (1 - k)/2"
        )
    w = np.clip(w, 0.0, None)
    m = (
        w[0] * np.outer(PSI_PLUS, PSI_PLUS)
        + w[1] * np.outer(PSI_MINUS, PSI_MINUS)
        + np.diag([w[2], 0.0, 0.0, w[3]])
    )
    return DensityMatrix((2, 2), m.astype(np.complex128))


def two_qubit_form(state: DensityMatrix) -> TwoQubitForm:
    if tuple(state.dims) != (2, 2):
        raise DimensionError(f"two-qubit form needs dims (2, 2), got {state.dims}")
    one = np.eye(2)
    rho = state.mat
    a = np.array([np.trace(np.kron(s, one) @ rho).real for s in linop.PAULIS])
    b = np.array([np.trace(np.kron(one, s) @ rho).real for s in linop.PAULIS])
    corr = np.array([[np.trace(np.kron(s, u) @ rho).real for u in linop.PAULIS] for s in linop.PAULIS])
    return TwoQubitForm(a, b, corr)


def from_two_qubit_form(form: TwoQubitForm) -> DensityMatrix:
    one = np.eye(2)
    m = np.eye(4, dtype=np.complex128)
    for i, s in enumerate(linop.PAULIS):
        m += form.a[i] * np.kron(s, one) + form.b[i] * np.kron(one, s)
        for j, u in enumerate(linop.PAULIS):
            m += form.corr[i, j] * np.kron(s, u)
    try:
        return validate(m / 4.0, (2, 2))
    except InvalidStateError as exc:
        raise InvalidStateError(f"not a physical state: {exc}") from None


def qubit_from_bloch(r) -> DensityMatrix:
    r = np.asarray(r, dtype=float)
    m = 0.5 * (np.eye(2) + sum(ri * s for ri, s in zip(r, linop.PAULIS)))
    return validate(m, (2,))


def bloch_of(state: DensityMatrix) -> np.ndarray:
    if state.dim != 2:
        raise DimensionError("Bloch vector needs a single qubit")
    return np.array([np.trace(s @ state.mat).real for s in linop.PAULIS])


def _rng(seed) -> np.random.Generator:
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def random_pure(dims: Sequence[int], seed=None) -> DensityMatrix:
    """Haar-random pure state: normalized complex standard-normal vector."""
    rng = _rng(seed)
    n = prod(dims)
    psi = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return from_pure(psi, dims)


def random_mixed(dims: Sequence[int], ancilla_dim: int | None = None, seed=None) -> DensityMatrix:
    """Induced-measure mixed state: trace out an ancilla from a Haar pure state."""
    rng = _rng(seed)
    n = prod(dims)
    if ancilla_dim is None:
        ancilla_dim = n
    if ancilla_dim < 1:
        raise ValueError("ancilla_dim must be >= 1")
    g = rng.standard_normal((n, ancilla_dim)) + 1j * rng.standard_normal((n, ancilla_dim))
    m = g @ g.conj().T
    m = m / np.trace(m).real
    return DensityMatrix(tuple(dims), 0.5 * (m + m.conj().T))


def local_unitary(state: DensityMatrix, unitaries: Sequence[np.ndarray]) -> DensityMatrix:
    u = linop.kron(*unitaries)
    m = u @ state.mat @ u.conj().T
    return DensityMatrix(state.dims, 0.5 * (m + m.conj().T))


def write_state(state: DensityMatrix, path) -> None:
    """Write ``{"dims": [...], "matrix": [[[re, im], ...], ...]}`` with 17 significant digits."""
    rows = []
    for row in state.mat:
        rows.append("[" + ", ".join(f"[{z.real:.17g}, {z.imag:.17g}]" for z in row) + "]")
    text = '{"dims": ' + json.dumps(list(state.dims)) + ', "matrix": [\n  ' + ",\n  ".join(rows) + "\n]}\n"
    Path(path).write_text(text)


def parse_state(obj) -> DensityMatrix:
    try:
        dims = [int(d) for d in obj["dims"]]
        raw = obj["matrix"]
        m = np.array([[complex(float(e[0]), float(e[1])) for e in row] for row in raw], dtype=np.complex128)
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise InvalidStateError(f"malformed state record: {exc}") from None
    if m.ndim != 2 or len(raw) != m.shape[0]:
        raise InvalidStateError("matrix must be a list of equal-length rows")
    try:
        return validate(m, dims)
    except DimensionError as exc:
        raise InvalidStateError(f"malformed dims: {exc}") from None


def read_state(path) -> DensityMatrix:
    try:
        obj = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise InvalidStateError(f"{path}: not valid JSON ({exc})") from None
    return parse_state(obj)
