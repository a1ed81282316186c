import numpy as np
import pytest
from hypothesis import given, strategies as st

from qcorr import linop, states
from qcorr.correlations import (
    concurrence_2q,
    entanglement_entropy,
    eof_2q,
    eof_from_concurrence,
    koashi_winter_check,
    koashi_winter_terms,
    negativity_ppt,
)
from qcorr.errors import DimensionError, InvalidStateError
from qcorr.infotheory import binary_entropy, von_neumann

seeds = st.integers(0, 2**32 - 1)


def _product_pure(seed):
    return states.tensor(states.random_pure((2,), seed=seed), states.random_pure((2,), seed=seed + 1))


def test_entanglement_entropy_examples():
    assert entanglement_entropy(_product_pure(1)) == pytest.approx(0.0, abs=1e-9)
    assert entanglement_entropy(states.singlet()) == pytest.approx(1.0, abs=1e-12)
    with pytest.raises(InvalidStateError):
        entanglement_entropy(states.werner(0.5))


@given(seeds)
def test_schmidt_symmetry_two_qutrits(seed):
    psi = states.random_pure((3, 3), seed=seed)
    # Schmidt coefficients from the SVD of the amplitude matrix
    amps = np.linalg.eigh(psi.mat)[1][:, -1].reshape(3, 3)
    sv = np.linalg.svd(amps, compute_uv=False) ** 2
    sv = sv[sv > 0]
    oracle = float(-np.sum(sv * np.log2(sv)))
    assert entanglement_entropy(psi, ((0,), (1,))) == pytest.approx(oracle, abs=1e-9)
    assert entanglement_entropy(psi, ((1,), (0,))) == pytest.approx(oracle, abs=1e-9)


def test_concurrence_examples():
    assert concurrence_2q(_product_pure(3)) == pytest.approx(0.0, abs=1e-7)
    assert concurrence_2q(states.sigma_family(0.2, 0.4)) == pytest.approx(0.2, abs=1e-9)
    assert concurrence_2q(states.singlet()) == pytest.approx(1.0, abs=1e-9)
    with pytest.raises(DimensionError):
        concurrence_2q(states.random_mixed((2, 3), seed=1))


@pytest.mark.parametrize("p", [0.2, 0.5, 1.0])
def test_concurrence_werner_closed_form(p):
    assert concurrence_2q(states.werner(p)) == pytest.approx(max(0.0, (3 * p - 1) / 2), abs=1e-9)


def _concurrence_pure_oracle(psi):
    # |<psi| sigma_y x sigma_y |psi*>| for pure states
    v = np.linalg.eigh(psi.mat)[1][:, -1]
    yy = np.kron(linop.SIGMA_Y, linop.SIGMA_Y)
    return abs(v @ yy @ v)


@given(seeds)
def test_concurrence_pure_state_oracle(seed):
    psi = states.random_pure((2, 2), seed=seed)
    assert concurrence_2q(psi) == pytest.approx(_concurrence_pure_oracle(psi), abs=1e-7)


@given(seeds)
def test_eof_pure_equals_entropy(seed):
    psi = states.random_pure((2, 2), seed=seed)
    assert eof_2q(psi) == pytest.approx(entanglement_entropy(psi), abs=1e-6)


def test_eof_examples():
    assert eof_2q(states.werner(0.2)) == 0.0
    assert eof_2q(states.singlet()) == pytest.approx(1.0, abs=1e-9)
    expected = binary_entropy(0.5 + 0.5 * np.sqrt(1 - 0.49))
    assert eof_2q(states.werner(0.8)) == pytest.approx(expected, abs=1e-9)


def test_eof_monotone_in_concurrence():
    cs = np.linspace(0, 1, 101)
    e = np.array([eof_from_concurrence(c) for c in cs])
    assert e[0] == 0.0 and e[-1] == pytest.approx(1.0)
    assert np.all(np.diff(e) > 0)


def test_negativity_examples():
    assert negativity_ppt(_product_pure(7)) == (0.0, True)
    ln, ppt = negativity_ppt(states.singlet())
    assert ln == pytest.approx(1.0, abs=1e-12) and not ppt
    assert negativity_ppt(states.werner(1 / 3))[1]
    assert not negativity_ppt(states.werner(0.34))[1]
    with pytest.raises(ValueError):
        negativity_ppt(states.ghz(3), ((0,), (0,)))


@given(seeds)
def test_ppt_iff_zero_log_negativity(seed):
    rho = states.random_mixed((2, 2), seed=seed)
    ln, ppt = negativity_ppt(rho)
    assert ppt == (ln == 0.0)
    # two qubits: PPT iff separable iff zero concurrence
    assert ppt == (concurrence_2q(rho) < 1e-7)


def test_negativity_tripartite_cut():
    ln, ppt = negativity_ppt(states.ghz(3), ((0,), (1, 2)))
    assert ln == pytest.approx(1.0, abs=1e-12) and not ppt


def test_koashi_winter_examples():
    zero = states.basis_state((0, 0, 0), (2, 2, 2))
    terms = koashi_winter_terms(zero)
    assert terms["discord"] == pytest.approx(0.0, abs=1e-9)
    assert terms["rhs"] == pytest.approx(0.0, abs=1e-9)
    assert koashi_winter_check(states.ghz(3)) < 1e-4
    with pytest.raises(InvalidStateError):
        koashi_winter_check(states.random_mixed((2, 2, 2), seed=1))
    with pytest.raises(DimensionError):
        koashi_winter_check(states.singlet())


@pytest.mark.slow
def test_koashi_winter_random_sweep():
    res = [koashi_winter_check(states.random_pure((2, 2, 2), seed=500 + i)) for i in range(25)]
    assert max(res) < 1e-4


def test_koashi_winter_terms_are_consistent():
    psi = states.random_pure((2, 2, 2), seed=3)
    t = koashi_winter_terms(psi)
    s_b = von_neumann(states.reduced(psi, [1]))
    assert t["rhs"] == pytest.approx(eof_2q(states.reduced(psi, [0, 2])) - von_neumann(states.reduced(psi, [0, 1])) + s_b)
