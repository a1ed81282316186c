import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    max_examples=25,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def random_hermitian(rng, n):
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return 0.5 * (g + g.conj().T)


def random_local_unitary(rng, dims=(2, 2)):
    from qcorr import linop

    return [linop.random_unitary(d, rng) for d in dims]


def classical_on(side, rng, d_other=2):
    """Random state block diagonal in a random qubit basis on ``side`` (0 or 1)."""
    from qcorr import linop, states

    u = linop.random_unitary(2, rng)
    p = rng.dirichlet([1.0, 1.0])
    mat = 0
    for k in range(2):
        proj = np.outer(u[:, k], u[:, k].conj())
        other = states.random_mixed((d_other,), seed=int(rng.integers(2**31))).mat
        term = np.kron(proj, other) if side == 0 else np.kron(other, proj)
        mat = mat + p[k] * term
    dims = (2, d_other) if side == 0 else (d_other, 2)
    return states.validate(mat, dims)


def classically_correlated(rng):
    """Random state diagonal in a random product basis."""
    from qcorr import linop, states

    ua, ub = linop.random_unitary(2, rng), linop.random_unitary(2, rng)
    p = rng.dirichlet(np.ones(4))
    u = np.kron(ua, ub)
    return states.validate(u @ np.diag(p) @ u.conj().T, (2, 2))


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
