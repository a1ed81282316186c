"""Hot numerical kernels with a numba path and a pure-numpy path.

Two kernels dominate runtime: the Hermitian eigensolver behind every
entropy, and the per-grid-point spectra of the branch states produced by a
projective measurement on one qubit, which every measurement optimizer
sweeps thousands of times. Each kernel has a jitted implementation (cyclic
Jacobi, explicit loops) and a vectorized numpy implementation (LAPACK
``eigh``/``eigvalsh`` on stacked arrays). ``USE_NUMBA`` picks which one the
public names bind to; both stay importable for cross-checking.
"""

import numpy as np

from ._accel import JIT_OPTS, USE_NUMBA, njit

MAX_SWEEPS = 100
OFF_TOL = 1e-12


@njit(**JIT_OPTS)
def _jacobi_sweeps(a, v, want_vectors):
    """Diagonalize Hermitian ``a`` in place; accumulate rotations into ``v``."""
    n = a.shape[0]
    scale = 0.0
    for i in range(n):
        for j in range(n):
            scale += a[i, j].real ** 2 + a[i, j].imag ** 2
    tol = OFF_TOL * max(1.0, np.sqrt(scale))
    for _ in range(MAX_SWEEPS):
        off = 0.0
        for i in range(n):
            for j in range(n):
                if i != j:
                    off += a[i, j].real ** 2 + a[i, j].imag ** 2
        if np.sqrt(off) < tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = abs(apq)
                if r < 1e-300:
                    continue
                e = apq / r
                ec = np.conj(e)
                theta = (a[q, q].real - a[p, p].real) / (2.0 * r)
                if theta >= 0.0:
                    t = 1.0 / (theta + np.sqrt(theta * theta + 1.0))
                else:
                    t = -1.0 / (-theta + np.sqrt(theta * theta + 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                se = s * e
                sec = s * ec
                # A <- A U with U = [[c, s e], [-s conj(e), c]] on (p, q)
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = c * akp - sec * akq
                    a[k, q] = se * akp + c * akq
                # A <- U^dagger A
                for k in range(n):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = c * apk - se * aqk
                    a[q, k] = sec * apk + c * aqk
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                if want_vectors:
                    for k in range(n):
                        vkp = v[k, p]
                        vkq = v[k, q]
                        v[k, p] = c * vkp - sec * vkq
                        v[k, q] = se * vkp + c * vkq


@njit(**JIT_OPTS)
def _sorted_diag(a, w):
    """Real diagonal of ``a`` into ``w``, descending (insertion sort; n is small)."""
    n = a.shape[0]
    for i in range(n):
        x = a[i, i].real
        k = i
        while k > 0 and w[k - 1] < x:
            w[k] = w[k - 1]
            k -= 1
        w[k] = x


@njit(**JIT_OPTS)
def _eig2(x, y, z, w):
    """Descending eigenvalues of ``[[x, z], [conj(z), y]]`` with real ``x, y``."""
    mean = 0.5 * (x + y)
    half = 0.5 * (x - y)
    r = np.sqrt(half * half + z.real * z.real + z.imag * z.imag)
    w[0] = mean + r
    w[1] = mean - r


@njit(**JIT_OPTS)
def _jacobi_core(a_in, want_vectors):
    n = a_in.shape[0]
    a = a_in.astype(np.complex128).copy()
    v = np.eye(n, dtype=np.complex128)
    _jacobi_sweeps(a, v, want_vectors)
    w = np.empty(n)
    for i in range(n):
        w[i] = a[i, i].real
    order = np.argsort(-w)
    return w[order], v[:, order]


@njit(**JIT_OPTS)
def _eigvalsh_batch_numba(mats):
    m, n = mats.shape[0], mats.shape[1]
    out = np.empty((m, n))
    buf = np.empty((n, n), dtype=np.complex128)
    dummy = np.empty((1, 1), dtype=np.complex128)
    for i in range(m):
        if n == 2:
            _eig2(mats[i, 0, 0].real, mats[i, 1, 1].real, mats[i, 0, 1], out[i])
            continue
        for r in range(n):
            for c in range(n):
                buf[r, c] = mats[i, r, c]
        _jacobi_sweeps(buf, dummy, False)
        _sorted_diag(buf, out[i])
    return out


@njit(**JIT_OPTS)
def _branch_spectra_numba(blocks, amps):
    d = blocks.shape[2]
    npts = amps.shape[0]
    probs = np.empty((npts, 2))
    spectra = np.empty((npts, 2, d))
    m = np.empty((d, d), dtype=np.complex128)
    rest = np.empty((d, d), dtype=np.complex128)
    dummy = np.empty((1, 1), dtype=np.complex128)
    for t in range(npts):
        w00 = np.conj(amps[t, 0]) * amps[t, 0]
        w01 = np.conj(amps[t, 0]) * amps[t, 1]
        w10 = np.conj(amps[t, 1]) * amps[t, 0]
        w11 = np.conj(amps[t, 1]) * amps[t, 1]
        for r in range(d):
            for c in range(r, d):
                x = w00 * blocks[0, 0, r, c] + w01 * blocks[0, 1, r, c] + w10 * blocks[1, 0, r, c] + w11 * blocks[1, 1, r, c]
                y = blocks[0, 0, r, c] + blocks[1, 1, r, c] - x
                # Hermitize against roundoff before the eigensolve
                x2 = w00 * blocks[0, 0, c, r] + w01 * blocks[0, 1, c, r] + w10 * blocks[1, 0, c, r] + w11 * blocks[1, 1, c, r]
                y2 = blocks[0, 0, c, r] + blocks[1, 1, c, r] - x2
                x = 0.5 * (x + np.conj(x2))
                y = 0.5 * (y + np.conj(y2))
                m[r, c] = x
                m[c, r] = np.conj(x)
                rest[r, c] = y
                rest[c, r] = np.conj(y)
        p0 = 0.0
        p1 = 0.0
        for k in range(d):
            p0 += m[k, k].real
            p1 += rest[k, k].real
        probs[t, 0] = p0
        probs[t, 1] = p1
        if d == 2:
            _eig2(m[0, 0].real, m[1, 1].real, m[0, 1], spectra[t, 0])
            _eig2(rest[0, 0].real, rest[1, 1].real, rest[0, 1], spectra[t, 1])
        else:
            _jacobi_sweeps(m, dummy, False)
            _sorted_diag(m, spectra[t, 0])
            _jacobi_sweeps(rest, dummy, False)
            _sorted_diag(rest, spectra[t, 1])
    return probs, spectra


def jacobi_eigh(a):
    """Cyclic complex Jacobi eigensolver; eigenvalues sorted descending."""
    return _jacobi_core(np.ascontiguousarray(a, dtype=np.complex128), True)


def eigh_numpy(a):
    """LAPACK eigensolver with the same (descending) output convention."""
    w, v = np.linalg.eigh(a)
    return w[::-1].copy(), v[:, ::-1].copy()


def eigvalsh_batch_numba(mats):
    return _eigvalsh_batch_numba(np.ascontiguousarray(mats, dtype=np.complex128))


def eigvalsh_batch_numpy(mats):
    return np.linalg.eigvalsh(mats)[:, ::-1]


def branch_spectra_numba(blocks, amps):
    """Probabilities and branch spectra for qubit projectors ``|amp><amp|``.

    Parameters
    ----------
    blocks : (2, 2, d, d) complex array
        ``blocks[i, j] = <i|_X rho |j>_X`` for the measured qubit ``X``.
    amps : (N, 2) complex array
        Unit vectors ``|alpha>``; the second outcome is the orthogonal complement.

    Returns
    -------
    probs : (N, 2) array
    spectra : (N, 2, d) array
        Eigenvalues (descending) of the unnormalized conditional states.
    """
    return _branch_spectra_numba(
        np.ascontiguousarray(blocks, dtype=np.complex128),
        np.ascontiguousarray(amps, dtype=np.complex128),
    )


def branch_spectra_numpy(blocks, amps):
    amps = np.asarray(amps, dtype=np.complex128)
    weights = np.conj(amps)[:, :, None] * amps[:, None, :]
    m = np.einsum("nij,ijab->nab", weights, blocks)
    total = blocks[0, 0] + blocks[1, 1]
    rest = total[None] - m
    stack = np.stack([m, rest], axis=1)
    stack = 0.5 * (stack + np.conj(np.swapaxes(stack, -1, -2)))
    probs = np.real(np.trace(stack, axis1=-2, axis2=-1))
    spectra = np.linalg.eigvalsh(stack)[..., ::-1]
    return probs, spectra


if USE_NUMBA:
    eigh = jacobi_eigh
    eigvalsh_batch = eigvalsh_batch_numba
    branch_spectra = branch_spectra_numba
else:
    eigh = eigh_numpy
    eigvalsh_batch = eigvalsh_batch_numpy
    branch_spectra = branch_spectra_numpy

BACKEND = "numba" if USE_NUMBA else "numpy"
