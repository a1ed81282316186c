"""Discord-type measures with a projective measurement on one qubit.

Side convention: a measure written ``X|Y`` measures subsystem ``X``. The
``measured`` argument names that subsystem, either by index or by letter
(``"A"`` is subsystem 0, ``"B"`` is 1, ``"C"`` is 2). So the discord
``D^{B|A}`` is ``discord_hv(rho, measured="B")`` and the one-way deficit
``Delta^{A|B}`` is ``one_way_deficit(rho, measured="A")``.

Every optimizer here searches rank-one projective measurements on a qubit.
For the classical correlation that is a restriction of the supremum over
all POVMs; results carry ``info["measurement_class"] = "projective"``.
"""

import numpy as np

from .. import kernels, linop
from ..errors import DimensionError, UnsupportedDimensionError
from ..infotheory import mutual_information, von_neumann
from ..measure import VonNeumannBasis, bloch_direction, local_embed, qubit_amplitudes, qubit_basis
from ..states import DensityMatrix, as_state, reduced, two_qubit_form
from .optimizer import MeasureResult, OptimizerConfig, minimize_angles

NEG_CLIP = 1e-9
PROJECTIVE = "projective"


def side_index(measured, n_parties: int) -> int:
    if isinstance(measured, str):
        idx = ord(measured.strip().upper()) - ord("A")
    else:
        idx = int(measured)
    if not 0 <= idx < n_parties:
        raise ValueError(f"measured side {measured!r} is not one of the {n_parties} subsystems")
    return idx


def _others(state: DensityMatrix, m: int) -> list:
    return [i for i in range(state.n_parties) if i != m]


def qubit_blocks(state: DensityMatrix, measured) -> np.ndarray:
    """``blocks[i, j] = <i|_X rho |j>_X`` for the measured qubit ``X``.

    The remaining subsystems keep their relative order.
    """
    m = side_index(measured, state.n_parties)
    if state.dims[m] != 2:
        raise UnsupportedDimensionError(
            f"measured subsystem has dimension {state.dims[m]}; only qubits are supported"
        )
    if state.n_parties < 2:
        raise DimensionError("need at least two subsystems")
    order = [m] + _others(state, m)
    dims = tuple(state.dims)
    d = state.dim // 2
    mat = linop.permute(state.mat, dims, order)
    return mat.reshape(2, d, 2, d).transpose(0, 2, 1, 3)


def _plogp(spec: np.ndarray) -> np.ndarray:
    """``-sum lambda log2 lambda`` over the last axis, ignoring nonpositive entries."""
    pos = np.where(spec > 0.0, spec, 1.0)
    return -np.sum(np.where(spec > 0.0, spec * np.log2(pos), 0.0), axis=-1)


def _branches(blocks: np.ndarray, angles: np.ndarray):
    amps = qubit_amplitudes(angles[:, 0], angles[:, 1])
    return kernels.branch_spectra(blocks, amps)


def conditional_entropy_from_branches(probs, spectra) -> np.ndarray:
    """``sum_k p_k S(rho_k)`` from unnormalized branch spectra."""
    p = np.clip(probs, 0.0, None)
    plog = np.where(p > 0.0, p * np.log2(np.where(p > 0.0, p, 1.0)), 0.0)
    return np.sum(_plogp(np.clip(spectra, 0.0, None)) + plog, axis=-1)


def dephased_entropy_from_branches(spectra) -> np.ndarray:
    return np.sum(_plogp(np.clip(spectra, 0.0, None)), axis=-1)


class _QubitProblem:
    """Precomputed pieces for optimizing over measurements on one qubit."""

    def __init__(self, state, measured):
        self.state = as_state(state)
        self.m = side_index(measured, self.state.n_parties)
        self.blocks = qubit_blocks(self.state, self.m)
        rest = _others(self.state, self.m)
        self.s_rest = von_neumann(reduced(self.state, rest))
        self.s_total = von_neumann(self.state)
        self.purity = self.state.purity()

    def j_values(self, angles):
        probs, spectra = _branches(self.blocks, angles)
        return self.s_rest - conditional_entropy_from_branches(probs, spectra)

    def deficit_values(self, angles):
        _, spectra = _branches(self.blocks, angles)
        return dephased_entropy_from_branches(spectra) - self.s_total

    def hs_values(self, angles):
        _, spectra = _branches(self.blocks, angles)
        return self.purity - np.sum(spectra**2, axis=(-2, -1))


def _finish(res: MeasureResult, value: float, **info) -> MeasureResult:
    theta, phi = res.argmin[:2]
    res.info.update(info)
    res.info.setdefault("direction", bloch_direction(theta, phi))
    if -NEG_CLIP <= value < 0.0:
        value = 0.0
    res.value = value
    return res


def _mutual(state: DensityMatrix, m: int) -> float:
    return mutual_information(state, ((m,), tuple(_others(state, m))))


def classical_corr(state, measured="B", cfg: OptimizerConfig | None = None) -> MeasureResult:
    """Maximal ``J = S(rest) - sum_i p_i S(rest | i)`` over projective measurements on ``measured``."""
    cfg = cfg or OptimizerConfig()
    prob = _QubitProblem(state, measured)
    res = minimize_angles(lambda a: -prob.j_values(a), cfg)
    return _finish(res, -res.value, measurement_class=PROJECTIVE)


def discord_oz(state, measured="B", cfg: OptimizerConfig | None = None) -> MeasureResult:
    """``min [I - J]`` over von Neumann measurements on ``measured``."""
    cfg = cfg or OptimizerConfig()
    prob = _QubitProblem(state, measured)
    mi = _mutual(prob.state, prob.m)
    res = minimize_angles(lambda a: mi - prob.j_values(a), cfg)
    return _finish(res, res.value, mutual_information=mi, measurement_class=PROJECTIVE)


def discord_hv(state, measured="B", cfg: OptimizerConfig | None = None) -> MeasureResult:
    """``I - C`` with ``C`` from :func:`classical_corr`."""
    state = as_state(state)
    c = classical_corr(state, measured, cfg)
    mi = _mutual(state, side_index(measured, state.n_parties))
    value = mi - c.value
    if -1e-6 <= value < 0.0:
        value = 0.0
    info = dict(c.info, mutual_information=mi, classical_correlation=c.value)
    return MeasureResult(value, c.argmin, c.evaluations, c.converged, info)


def one_way_deficit(state, measured="A", cfg: OptimizerConfig | None = None) -> MeasureResult:
    """``min S(rho || sum_i Pi_i rho Pi_i)`` over qubit bases on ``measured``."""
    cfg = cfg or OptimizerConfig()
    prob = _QubitProblem(state, measured)
    res = minimize_angles(prob.deficit_values, cfg)
    return _finish(res, res.value, measurement_class=PROJECTIVE)


def geometric_discord_numeric(state, measured="A", cfg: OptimizerConfig | None = None) -> MeasureResult:
    """``min ||rho - sigma||^2`` over states classical on ``measured``.

    For a fixed basis the closest such state in Hilbert-Schmidt norm is the
    dephased ``rho`` (orthogonal projection), so the search runs over bases
    only and the distance is ``Tr rho^2 - sum_k Tr M_k^2``.
    """
    cfg = cfg or OptimizerConfig()
    prob = _QubitProblem(state, measured)
    res = minimize_angles(prob.hs_values, cfg)
    return _finish(res, res.value, measurement_class=PROJECTIVE)


def geometric_discord_2q(state, measured="A") -> float:
    """Closed form ``(|a|^2 + Tr[E^T E] - k_max) / 4`` for two qubits."""
    state = as_state(state)
    if tuple(state.dims) != (2, 2):
        raise DimensionError(f"closed form needs dims (2, 2), got {state.dims}")
    form = two_qubit_form(state)
    m = side_index(measured, 2)
    a, corr = (form.a, form.corr) if m == 0 else (form.b, form.corr.T)
    k = np.outer(a, a) + corr @ corr.T
    k_max = float(np.linalg.eigvalsh(k)[-1])
    return float(max(0.25 * (a @ a + np.trace(corr.T @ corr) - k_max), 0.0))


def _two_sided_probs(rho4: np.ndarray, angles: np.ndarray) -> np.ndarray:
    a = qubit_amplitudes(angles[:, 0], angles[:, 1])
    b = qubit_amplitudes(angles[:, 2], angles[:, 3])
    a_perp = np.stack([-np.conj(a[:, 1]), np.conj(a[:, 0])], axis=-1)
    b_perp = np.stack([-np.conj(b[:, 1]), np.conj(b[:, 0])], axis=-1)
    out = np.empty((len(angles), 4))
    k = 0
    for u in (a, a_perp):
        for v in (b, b_perp):
            psi = (u[:, :, None] * v[:, None, :]).reshape(-1, 4)
            out[:, k] = np.real(np.einsum("ni,ij,nj->n", psi.conj(), rho4, psi))
            k += 1
    return out


def rel_entropy_quantumness(state, cfg: OptimizerConfig | None = None) -> MeasureResult:
    """``min S(rho || dephase_A dephase_B rho)`` over local qubit bases.

    The doubly dephased state is diagonal in the product basis, so the
    objective is ``H(p_ij) - S(rho)``. The four-angle grid uses half the
    configured resolution per qubit.
    """
    cfg = cfg or OptimizerConfig()
    state = as_state(state)
    if tuple(state.dims) != (2, 2):
        raise UnsupportedDimensionError(f"relative entropy of quantumness needs two qubits, got {state.dims}")
    s = von_neumann(state)
    rho4 = np.asarray(state.mat)

    def obj(angles):
        p = np.clip(_two_sided_probs(rho4, angles), 0.0, None)
        return _plogp(p) - s

    res = minimize_angles(obj, cfg.coarser(2), n_qubits=2)
    if -NEG_CLIP <= res.value < 0.0:
        res.value = 0.0
    res.info.update(
        measurement_class=PROJECTIVE,
        direction_a=bloch_direction(*res.argmin[:2]),
        direction_b=bloch_direction(*res.argmin[2:]),
    )
    return res


def j_value(state, povm, measured="B") -> float:
    """``S(rest) - sum_i p_i S(rest_i)`` for an explicit measurement on ``measured``.

    Works for any subsystem dimension and any :class:`Povm` or
    :class:`VonNeumannBasis`; the branch states are formed by partial traces.
    """
    state = as_state(state)
    m = side_index(measured, state.n_parties)
    rest = _others(state, m)
    elems = povm.projectors if isinstance(povm, VonNeumannBasis) else povm.elems
    total = 0.0
    for e in local_embed(elems, m, state.dims):
        unnorm = linop.partial_trace(e @ state.mat, state.dims, rest)
        p = float(np.trace(unnorm).real)
        if p > 1e-14:
            total += p * von_neumann(0.5 * (unnorm + unnorm.conj().T) / p)
    return von_neumann(reduced(state, rest)) - total


def basis_from_result(res: MeasureResult) -> VonNeumannBasis:
    theta, phi = res.argmin[:2]
    return qubit_basis(theta, phi)


__all__ = [
    "classical_corr",
    "discord_hv",
    "discord_oz",
    "geometric_discord_2q",
    "geometric_discord_numeric",
    "j_value",
    "one_way_deficit",
    "rel_entropy_quantumness",
]
