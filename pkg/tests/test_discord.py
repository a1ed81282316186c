import numpy as np
import pytest

from conftest import classical_on, classically_correlated, random_local_unitary
from qcorr import states
from qcorr.correlations import (
    OptimizerConfig,
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
from qcorr.errors import DimensionError, UnsupportedDimensionError
from qcorr.infotheory import mutual_information, relative_entropy, von_neumann
from qcorr.measure import dephase, qubit_basis, qubit_basis_along

CFG = OptimizerConfig()


def _grid(n_theta=20, n_phi=40):
    for t in (np.arange(n_theta) + 0.5) * np.pi / n_theta:
        for f in np.arange(n_phi) * 2 * np.pi / n_phi:
            yield t, f


def _deficit_direct(rho, basis, side):
    return relative_entropy(rho, dephase(basis, rho, side))


def _product(seed):
    return states.tensor(states.random_mixed((2,), seed=seed), states.random_mixed((2,), seed=seed + 1))


def _measures(rho):
    return {
        "discord_oz_B": discord_oz(rho, "B").value,
        "discord_hv_B": discord_hv(rho, "B").value,
        "discord_hv_A": discord_hv(rho, "A").value,
        "deficit_A": one_way_deficit(rho, "A").value,
        "deficit_B": one_way_deficit(rho, "B").value,
        "geometric_A": geometric_discord_2q(rho, "A"),
        "geometric_numeric_A": geometric_discord_numeric(rho, "A").value,
    }


# examples


def test_product_state_is_uncorrelated():
    rho = _product(5)
    assert discord_oz(rho).value == pytest.approx(0.0, abs=1e-9)
    assert classical_corr(rho).value == pytest.approx(0.0, abs=1e-9)
    assert geometric_discord_numeric(rho).value == pytest.approx(0.0, abs=1e-9)


def test_classically_correlated_diagonal():
    rho = states.validate(np.diag([0.5, 0, 0, 0.5]), (2, 2))
    direct = j_value(rho, qubit_basis(0.0, 0.0), "B")
    assert direct == pytest.approx(1.0, abs=1e-12)
    assert classical_corr(rho, "B").value == pytest.approx(1.0, abs=1e-7)
    assert discord_hv(rho, "B").value == pytest.approx(0.0, abs=1e-7)


@pytest.mark.parametrize("seed", range(5))
def test_pure_state_discord_equals_entropy(seed):
    psi = states.random_pure((2, 2), seed=seed)
    s_a = von_neumann(states.reduced(psi, [0]))
    assert discord_oz(psi, "B").value == pytest.approx(s_a, abs=1e-6)
    assert discord_hv(psi, "B").value == pytest.approx(s_a, abs=1e-6)
    assert classical_corr(psi, "B").value == pytest.approx(s_a, abs=1e-6)


def test_singlet_deficit_against_grid():
    rho = states.singlet()
    oracle = min(_deficit_direct(rho, qubit_basis(t, f), 0) for t, f in _grid(8, 16))
    assert oracle == pytest.approx(1.0, abs=1e-9)
    assert one_way_deficit(rho, "A").value == pytest.approx(1.0, abs=1e-7)


def test_singlet_quantumness_against_two_sided_grid():
    rho = states.singlet()
    vals = []
    for ta, fa in _grid(4, 8):
        for tb, fb in _grid(4, 8):
            cc = dephase(qubit_basis(tb, fb), dephase(qubit_basis(ta, fa), rho, 0), 1)
            vals.append(relative_entropy(rho, cc))
    assert min(vals) >= 1.0 - 1e-9
    assert rel_entropy_quantumness(rho).value >= 1.0 - 1e-6


@pytest.mark.parametrize("p", [0.0, 0.2, 1 / 3, 0.6, 1.0])
def test_geometric_discord_werner(p):
    assert geometric_discord_2q(states.werner(p)) == pytest.approx(p * p / 2, abs=1e-12)


@pytest.mark.parametrize("k,t", [(0.2, 0.4), (0.1, 0.1), (0.5, 0.2), (-0.2, 0.3), (0.0, 0.0), (1.0, 0.0)])
def test_geometric_discord_sigma_family(k, t):
    assert geometric_discord_2q(states.sigma_family(k, t)) == pytest.approx(k * k / 2, abs=1e-12)


def test_geometric_discord_numeric_werner():
    assert geometric_discord_numeric(states.werner(0.6)).value == pytest.approx(0.18, abs=1e-5)


def test_geometric_discord_numeric_matches_closed_form_and_converges():
    rng = np.random.default_rng(3)
    for _ in range(10):
        rho = states.random_mixed((2, 2), seed=int(rng.integers(2**31)))
        side = "A" if rng.random() < 0.5 else "B"
        exact = geometric_discord_2q(rho, side)
        coarse = geometric_discord_numeric(rho, side, CFG).value
        fine = geometric_discord_numeric(rho, side, CFG.finer()).value
        assert coarse == pytest.approx(exact, abs=1e-5)
        assert fine == pytest.approx(exact, abs=1e-5)


def test_dimension_errors():
    rho = states.random_mixed((3, 2), seed=1)
    with pytest.raises(UnsupportedDimensionError):
        discord_oz(rho, "A")
    assert discord_oz(rho, "B").value >= 0.0
    with pytest.raises(DimensionError):
        geometric_discord_2q(rho)
    with pytest.raises(UnsupportedDimensionError):
        rel_entropy_quantumness(rho)
    with pytest.raises(ValueError):
        discord_oz(states.singlet(), "C")


# measured-side hierarchy


def test_quantum_classical_fixtures():
    rng = np.random.default_rng(11)
    for _ in range(5):
        qc = classical_on(1, rng)
        assert discord_oz(qc, "B").value == pytest.approx(0.0, abs=1e-7)
        assert discord_hv(qc, "B").value == pytest.approx(0.0, abs=1e-6)
        assert one_way_deficit(qc, "B").value == pytest.approx(0.0, abs=1e-7)
        assert geometric_discord_2q(qc, "B") == pytest.approx(0.0, abs=1e-12)


def test_classical_quantum_fixtures():
    rng = np.random.default_rng(12)
    for _ in range(5):
        cq = classical_on(0, rng)
        assert one_way_deficit(cq, "A").value == pytest.approx(0.0, abs=1e-7)
        assert geometric_discord_2q(cq, "A") == pytest.approx(0.0, abs=1e-12)
        assert geometric_discord_numeric(cq, "A").value == pytest.approx(0.0, abs=1e-7)
        assert discord_oz(cq, "A").value == pytest.approx(0.0, abs=1e-7)


def test_qutrit_partner_classical_fixture():
    cq = classical_on(0, np.random.default_rng(13), d_other=3)
    assert one_way_deficit(cq, "A").value == pytest.approx(0.0, abs=1e-7)
    assert discord_oz(cq, "A").value == pytest.approx(0.0, abs=1e-7)


# postulates


def test_classically_correlated_fixtures_vanish_everywhere():
    rng = np.random.default_rng(14)
    for _ in range(4):
        cc = classically_correlated(rng)
        for name, v in _measures(cc).items():
            assert v == pytest.approx(0.0, abs=1e-6), name
        assert rel_entropy_quantumness(cc).value == pytest.approx(0.0, abs=1e-6)


@pytest.mark.slow
def test_local_unitary_invariance():
    rng = np.random.default_rng(15)
    for seed in (1, 2):
        rho = states.random_mixed((2, 2), seed=seed)
        base = _measures(rho)
        assert all(v >= 0.0 for v in base.values())
        for _ in range(20):
            moved = states.local_unitary(rho, random_local_unitary(rng))
            for name, v in _measures(moved).items():
                assert abs(v - base[name]) < 1e-6, name


@pytest.mark.slow
def test_quantumness_local_unitary_invariance():
    rng = np.random.default_rng(16)
    rho = states.random_mixed((2, 2), seed=7)
    base = rel_entropy_quantumness(rho).value
    for _ in range(20):
        moved = states.local_unitary(rho, random_local_unitary(rng))
        assert abs(rel_entropy_quantumness(moved).value - base) < 1e-6


# orderings and reproducibility


@pytest.mark.slow
def test_discord_variants_agree_against_shared_grid():
    for seed in range(50):
        rho = states.random_mixed((2, 2), seed=100 + seed)
        oz = discord_oz(rho, "B")
        hv = discord_hv(rho, "B")
        assert oz.value >= hv.value - 1e-6
        assert abs(oz.value - hv.value) < 1e-6
        mi = mutual_information(rho)
        oracle = min(mi - j_value(rho, qubit_basis(t, f), "B") for t, f in _grid(6, 12))
        assert oz.value <= oracle + 1e-9


@pytest.mark.slow
def test_quantumness_dominates_deficits():
    for seed in range(50):
        rho = states.random_mixed((2, 2), seed=200 + seed)
        q = rel_entropy_quantumness(rho).value
        assert q >= one_way_deficit(rho, "A").value - 1e-6
        assert q >= one_way_deficit(rho, "B").value - 1e-6


def test_argmin_reproduces_value():
    rho = states.random_mixed((2, 2), seed=42)
    mi = mutual_information(rho)
    oz = discord_oz(rho, "B", CFG)
    assert mi - j_value(rho, basis_from_result(oz), "B") == pytest.approx(oz.value, abs=CFG.tol)
    cb = classical_corr(rho, "A", CFG)
    assert j_value(rho, basis_from_result(cb), "A") == pytest.approx(cb.value, abs=CFG.tol)
    dA = one_way_deficit(rho, "A", CFG)
    assert _deficit_direct(rho, basis_from_result(dA), 0) == pytest.approx(dA.value, abs=CFG.tol)
    g = geometric_discord_numeric(rho, "A", CFG)
    proj = dephase(basis_from_result(g), rho, 0)
    assert np.sum(np.abs(rho.mat - proj.mat) ** 2) == pytest.approx(g.value, abs=CFG.tol)
    q = rel_entropy_quantumness(rho, CFG)
    cc = dephase(qubit_basis_along(q.info["direction_b"]), dephase(qubit_basis_along(q.info["direction_a"]), rho, 0), 1)
    assert relative_entropy(rho, cc) == pytest.approx(q.value, abs=CFG.tol)


def test_results_are_deterministic():
    rho = states.random_mixed((2, 2), seed=43)
    a = discord_oz(rho, "B", OptimizerConfig(seed=9))
    b = discord_oz(rho, "B", OptimizerConfig(seed=9))
    assert a.value == b.value
    assert np.array_equal(a.argmin, b.argmin)
    assert a.info["measurement_class"] == "projective"


def test_optimizer_config_validation():
    with pytest.raises(ValueError):
        OptimizerConfig(restarts=0)
    with pytest.raises(ValueError):
        OptimizerConfig(tol=0.0)
    assert OptimizerConfig().coarser().grid_resolution == (12, 24)
