import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, strategies as st

from qcorr import kernels
from qcorr._accel import HAVE_NUMBA

from conftest import random_hermitian


@given(st.integers(1, 12), st.integers(0, 2**32 - 1))
def test_jacobi_reconstructs(n, seed):
    a = random_hermitian(np.random.default_rng(seed), n)
    w, v = kernels.jacobi_eigh(a)
    assert np.all(np.diff(w) <= 1e-12)
    assert np.max(np.abs(v.conj().T @ v - np.eye(n))) < 1e-10
    assert np.max(np.abs((v * w) @ v.conj().T - a)) < 1e-10


@given(st.integers(1, 10), st.integers(0, 2**32 - 1))
def test_jacobi_matches_lapack(n, seed):
    a = random_hermitian(np.random.default_rng(seed), n)
    w_j, _ = kernels.jacobi_eigh(a)
    w_l, _ = kernels.eigh_numpy(a)
    assert np.allclose(w_j, w_l, atol=1e-10)


def test_jacobi_size_64(rng):
    a = random_hermitian(rng, 64)
    w, v = kernels.jacobi_eigh(a)
    assert np.max(np.abs((v * w) @ v.conj().T - a)) < 1e-10


def test_jacobi_degenerate_and_diagonal():
    w, v = kernels.jacobi_eigh(np.diag([0.3, 0.7, 0.3]).astype(complex))
    assert np.allclose(w, [0.7, 0.3, 0.3])
    w, _ = kernels.jacobi_eigh(np.eye(4, dtype=complex))
    assert np.allclose(w, 1.0)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_batch_backends_agree(rng, n):
    mats = np.stack([random_hermitian(rng, n) for _ in range(20)])
    assert np.allclose(kernels.eigvalsh_batch_numba(mats), kernels.eigvalsh_batch_numpy(mats), atol=1e-10)


@pytest.mark.parametrize("d", [2, 3, 4])
def test_branch_spectra_backends_agree(rng, d):
    g = rng.standard_normal((2 * d, 2 * d)) + 1j * rng.standard_normal((2 * d, 2 * d))
    rho = g @ g.conj().T
    rho /= np.trace(rho).real
    blocks = rho.reshape(2, d, 2, d).transpose(0, 2, 1, 3)
    theta = rng.uniform(0, np.pi, 30)
    phi = rng.uniform(0, 2 * np.pi, 30)
    amps = np.stack([np.cos(theta / 2) + 0j, np.exp(1j * phi) * np.sin(theta / 2)], axis=-1)
    p1, s1 = kernels.branch_spectra_numba(blocks, amps)
    p2, s2 = kernels.branch_spectra_numpy(blocks, amps)
    assert np.allclose(p1, p2, atol=1e-12)
    assert np.allclose(s1, s2, atol=1e-10)
    assert np.allclose(p1.sum(axis=1), 1.0)
    assert np.allclose(s1.sum(axis=2), p1, atol=1e-12)


@pytest.mark.parametrize("flag, expected", [("1", "numpy"), ("0", "numba" if HAVE_NUMBA else "numpy")])
def test_env_flag_selects_backend(flag, expected):
    env = dict(os.environ, QCORR_DISABLE_NUMBA=flag)
    out = subprocess.run(
        [sys.executable, "-c", "from qcorr import kernels; print(kernels.BACKEND)"],
        env=env,
        capture_output=True,
        text=True,
        check=True,
    )
    assert out.stdout.strip() == expected
