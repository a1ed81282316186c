import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.linalg import expm

from qcorr import linop, states
from qcorr.errors import InvalidStateError
from qcorr.correlations import concurrence_2q, geometric_discord_2q
from qcorr.protocols import (
    RspReport,
    bound_condition,
    rotate_pi,
    rsp_average_payoff,
    rsp_average_payoff_quadrature,
    rsp_discord_bound_check,
    rsp_optimal_payoff,
    rsp_payoff,
    rsp_simulate,
    rsp_worst_case,
)
from qcorr.states import TwoQubitForm, two_qubit_form

seeds = st.integers(0, 2**32 - 1)


def _unit(rng):
    v = rng.standard_normal(3)
    return v / np.linalg.norm(v)


def _geometry(rng):
    beta = _unit(rng)
    s = np.cross(beta, _unit(rng))
    return s / np.linalg.norm(s), beta


def _form(corr, a=(0, 0, 0), b=(0, 0, 0)):
    return TwoQubitForm(np.asarray(a, float), np.asarray(b, float), np.asarray(corr, float))


def _bob_bloch_oracle(rho, alpha, beta):
    """Bob's corrected Bloch vector from explicit 4x4 projectors and a matrix exponential."""
    na = sum(x * p for x, p in zip(alpha, linop.PAULIS))
    nb = sum(x * p for x, p in zip(beta, linop.PAULIS))
    u = expm(-1j * np.pi / 2 * nb)
    out = np.zeros((2, 2), complex)
    for sign in (1, -1):
        proj = np.kron((np.eye(2) + sign * na) / 2, np.eye(2))
        bob = linop.partial_trace(proj @ rho.mat @ proj, (2, 2), [1])
        out += bob if sign > 0 else u @ bob @ u.conj().T
    return np.array([np.trace(p @ out).real for p in linop.PAULIS])


# payoff


def test_payoff_examples():
    s = np.array([1.0, 0, 0])
    assert rsp_payoff(states.singlet(), -s, s) == pytest.approx(1.0, abs=1e-12)
    zero = _form(np.zeros((3, 3)))
    assert rsp_payoff(zero, s, s) == 0.0
    rng = np.random.default_rng(1)
    for p in (0.1, 0.5, 0.9):
        for _ in range(5):
            v = _unit(rng)
            assert rsp_payoff(states.werner(p), v, v) == pytest.approx(p * p, abs=1e-12)
            assert rsp_payoff(states.werner(p), -v, v) == pytest.approx(p * p, abs=1e-12)


def test_payoff_rejects_bad_geometry():
    s = np.array([1.0, 0, 0])
    with pytest.raises(ValueError, match="unit"):
        rsp_payoff(states.singlet(), 2 * s, s)
    with pytest.raises(ValueError, match="orthogonal"):
        rsp_payoff(states.singlet(), s, s, beta=s)
    with pytest.raises(ValueError):
        rotate_pi(s, np.zeros(3))


# optimal payoff


def test_optimal_payoff_werner():
    rng = np.random.default_rng(2)
    for _ in range(10):
        s = _unit(rng)
        opt = rsp_optimal_payoff(states.werner(0.7), s)
        assert opt.payoff_max == pytest.approx(0.49, abs=1e-12)
        assert np.allclose(opt.alpha_opt, -s)


def test_optimal_payoff_degenerate():
    form = _form(np.diag([0.5, 0.3, 0.0]))
    opt = rsp_optimal_payoff(form, np.array([0, 0, 1.0]))
    assert opt.degenerate and opt.alpha_opt is None and opt.payoff_max == 0.0


def _fibonacci_cap(center, radius, n):
    """``n`` near-uniform unit vectors within angle ``radius`` of ``center``."""
    i = np.arange(n) + 0.5
    z = 1 - (1 - np.cos(radius)) * i / n
    r = np.sqrt(1 - z * z)
    ang = np.pi * (1 + 5**0.5) * i
    pts = np.stack([r * np.cos(ang), r * np.sin(ang), z], axis=1)
    # rotate the north pole onto center
    k = np.cross([0, 0, 1.0], center)
    if np.linalg.norm(k) < 1e-12:
        return pts if center[2] > 0 else -pts
    angle = np.arccos(np.clip(center[2], -1, 1))
    return np.array([rotate_pi_free(p, k, angle) for p in pts])


def rotate_pi_free(x, axis, angle):
    k = axis / np.linalg.norm(axis)
    return x * np.cos(angle) + np.cross(k, x) * np.sin(angle) + k * (k @ x) * (1 - np.cos(angle))


def test_optimal_payoff_matches_alpha_grid():
    # 10^4 samples spent as four zoom levels of 2500 around the running best
    rng = np.random.default_rng(3)
    for k in range(5):
        form = two_qubit_form(states.random_mixed((2, 2), seed=3 + k))
        s = _unit(rng)
        best, best_val, radius = np.array([0, 0, 1.0]), -1.0, np.pi
        for _ in range(4):
            for a in _fibonacci_cap(best, radius, 2500):
                v = rsp_payoff(form, a / np.linalg.norm(a), s)
                if v > best_val:
                    best_val, cand = v, a / np.linalg.norm(a)
            best, radius = cand, radius / 12
        opt = rsp_optimal_payoff(form, s)
        assert best_val <= opt.payoff_max + 1e-12
        assert best_val == pytest.approx(opt.payoff_max, abs=1e-6)
        assert rsp_payoff(form, opt.alpha_opt, s) == pytest.approx(opt.payoff_max, abs=1e-12)


# average and worst case


def test_average_payoff_examples():
    rng = np.random.default_rng(4)
    for p in (0.2, 0.6):
        assert rsp_average_payoff(states.werner(p), _unit(rng)) == pytest.approx(p * p, abs=1e-12)
    assert rsp_average_payoff(_form(np.zeros((3, 3))), _unit(rng)) == 0.0


def test_average_payoff_quadrature_random_states():
    rng = np.random.default_rng(5)
    for k in range(50):
        form = two_qubit_form(states.random_mixed((2, 2), seed=k))
        beta = _unit(rng)
        assert rsp_average_payoff_quadrature(form, beta) == pytest.approx(rsp_average_payoff(form, beta), abs=1e-6)


def test_worst_case_checkpoints():
    w = rsp_worst_case(states.werner(1 / 3))
    assert w.value == pytest.approx(1 / 9, abs=1e-9)
    assert 2 * geometric_discord_2q(states.werner(1 / 3)) == pytest.approx(1 / 9, abs=1e-9)
    sig = states.sigma_family(0.2, 0.4)
    assert rsp_worst_case(sig).value == pytest.approx(1 / 25, abs=1e-9)
    assert 2 * geometric_discord_2q(sig) == pytest.approx(1 / 25, abs=1e-9)
    assert concurrence_2q(sig) == pytest.approx(0.2, abs=1e-9)


def test_worst_case_diagonal():
    form = _form(np.diag([-0.9, 0.5, 0.2]))
    w = rsp_worst_case(form)
    assert w.value == pytest.approx(0.5 * (0.25 + 0.04), abs=1e-12)
    assert abs(w.beta_star @ np.array([1, 0, 0])) == pytest.approx(1.0)


@given(seeds)
def test_worst_case_is_minimum_over_axes(seed):
    rng = np.random.default_rng(seed)
    form = two_qubit_form(states.random_mixed((2, 2), seed=seed))
    w = rsp_worst_case(form)
    assert rsp_average_payoff(form, w.beta_star) == pytest.approx(w.value, abs=1e-12)
    for _ in range(20):
        assert rsp_average_payoff(form, _unit(rng)) >= w.value - 1e-12
    lam = np.sort(np.linalg.svd(form.corr, compute_uv=False) ** 2)
    assert w.value == pytest.approx(0.5 * (lam[0] + lam[1]), abs=1e-9)


# bound check


@pytest.mark.parametrize("p", [0.0, 0.2, 1 / 3, 0.6, 1.0])
def test_bound_check_werner(p):
    chk = rsp_discord_bound_check(states.werner(p))
    assert chk.status == "holds" and chk.holds and chk.condition_met
    assert chk.lhs == pytest.approx(p * p, abs=1e-12)
    assert chk.rhs == pytest.approx(p * p, abs=1e-12)


def test_bound_check_sigma_family():
    chk = rsp_discord_bound_check(states.sigma_family(0.2, 0.4))
    assert chk.holds
    assert chk.lhs == pytest.approx(1 / 25, abs=1e-9) and chk.rhs == pytest.approx(1 / 25, abs=1e-9)


def test_bound_check_detector_path():
    rho = states.random_mixed((2, 2), seed=6)
    assert not bound_condition(two_qubit_form(rho))
    chk = rsp_discord_bound_check(rho)
    assert chk.status == "condition not met" and chk.holds is None and not chk.condition_met


def test_bound_holds_whenever_condition_met():
    # a along the top eigenvector of E E^T: a = c * e1 with E diagonal
    rng = np.random.default_rng(7)
    hits = 0
    for _ in range(200):
        e = rng.uniform(-0.4, 0.4, 3)
        e = e[np.argsort(-np.abs(e))]
        a = np.array([rng.uniform(-0.3, 0.3), 0, 0])
        b = rng.uniform(-0.2, 0.2, 3)
        try:
            rho = states.from_two_qubit_form(_form(np.diag(e), a, b))
        except InvalidStateError:
            continue
        hits += 1
        chk = rsp_discord_bound_check(rho)
        assert chk.condition_met and chk.holds, (e, a)
    assert hits > 20


# simulation


def test_rotation_lemma():
    rng = np.random.default_rng(8)
    for _ in range(100):
        s, beta = _geometry(rng)
        x = rng.standard_normal(3)
        assert rotate_pi(x, beta) @ s == pytest.approx(-(x @ s), abs=1e-12)


def test_simulate_singlet():
    rng = np.random.default_rng(9)
    for _ in range(5):
        s, beta = _geometry(rng)
        rep = rsp_simulate(states.singlet(), s, beta)
        assert np.allclose(rep.details["bob_bloch"], s, atol=1e-12)
        assert rep.payoff == pytest.approx(1.0, abs=1e-12)


def test_simulate_werner_half():
    rep = rsp_simulate(states.werner(0.5), np.array([1.0, 0, 0]), np.array([0, 0, 1.0]))
    assert rep.payoff == pytest.approx(0.25, abs=1e-12)
    assert isinstance(rep, RspReport)
    assert 0 <= rep.payoff <= rep.payoff_max <= 1
    assert rep.worst_case_avg <= rep.avg_payoff + 1e-12


def test_simulate_matches_closed_form_and_oracle():
    rng = np.random.default_rng(10)
    for k in range(100):
        rho = states.random_mixed((2, 2), seed=k)
        s, beta = _geometry(rng)
        rep = rsp_simulate(rho, s, beta)
        form = two_qubit_form(rho)
        assert rep.payoff == pytest.approx(rsp_payoff(form, rep.alpha_opt, s), abs=1e-9)
        assert rep.payoff == pytest.approx(rep.payoff_max, abs=1e-9)
        r = _bob_bloch_oracle(rho, rep.alpha_opt, beta)
        assert np.allclose(rep.details["bob_bloch"], r, atol=1e-12)
        # a non-optimal Alice direction still obeys the closed form
        alpha = _unit(rng)
        rep2 = rsp_simulate(rho, s, beta, alpha=alpha)
        assert rep2.payoff == pytest.approx(rsp_payoff(form, alpha, s), abs=1e-9)


def test_simulate_sampled_within_three_sigma():
    rng = np.random.default_rng(11)
    for k in range(3):
        rho = states.random_mixed((2, 2), seed=40 + k)
        s, beta = _geometry(rng)
        rep = rsp_simulate(rho, s, beta, trials=100_000, seed=k, sampled=True)
        d = rep.details
        assert abs(d["sampled_payoff"] - rep.payoff) <= 3 * d["sampled_stderr"] + 1e-12
        assert d["trials"] == 100_000


def test_simulate_degenerate_direction():
    rho = states.from_two_qubit_form(_form(np.diag([0.5, 0.3, 0.0])))
    rep = rsp_simulate(rho, np.array([0, 0, 1.0]), np.array([1.0, 0, 0]))
    assert rep.details["degenerate"] and rep.payoff == pytest.approx(0.0, abs=1e-12)


def test_simulate_rejects_non_orthogonal_target():
    with pytest.raises(ValueError, match="orthogonal"):
        rsp_simulate(states.singlet(), np.array([1.0, 0, 0]), np.array([1.0, 0, 0]))


def test_report_serialization():
    rep = rsp_simulate(states.werner(0.5), np.array([1.0, 0, 0]), np.array([0, 0, 1.0]))
    rec = rep.record()
    assert list(rec) == ["target_s", "axis_beta", "alpha_opt", "payoff", "payoff_max", "avg_payoff", "worst_case_avg", "geom_discord"]
    assert "details" not in rep.to_json()
    header, row = rep.to_csv().strip().split("\n")
    assert header.split(",")[3] == "payoff" and row.split(",")[3] == "0.25"
