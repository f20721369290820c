"""Shared random-instance constructors for the test suite."""

import numpy as np
import scipy.linalg

from ferro import clifford, gaussian


def random_state(rng, n):
    d = 1 << n
    a = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    rho = a @ a.conj().T
    return rho / np.trace(rho)


def random_even_state(rng, n):
    rho = random_state(rng, n)
    z = clifford.parity_operator(n)
    rho = (rho + z @ rho @ z) / 2
    return rho / np.trace(rho)


def random_pure_even_state(rng, n, parity=0):
    """Pure state supported on one computational parity sector."""
    d = 1 << n
    v = rng.normal(size=d) + 1j * rng.normal(size=d)
    par = clifford._parity_table(n)
    v[par != parity] = 0.0
    v /= np.linalg.norm(v)
    return np.outer(v, v.conj())


def random_antisymmetric(rng, m, scale=1.0):
    h = rng.normal(size=(m, m)) * scale
    return (h - h.T) / 2


def random_gaussian_unitary(rng, n, scale=0.5):
    h = random_antisymmetric(rng, 2 * n, scale)
    return gaussian.gaussian_unitary(h)


def random_gaussian_state(rng, n, pure=False):
    if pure:
        lams = rng.choice([-1.0, 1.0], size=n)
    else:
        lams = rng.uniform(-1.0, 1.0, size=n)
    rho = np.array([[1.0 + 0.0j]])
    for lam in lams:
        rho = np.kron(rho, np.diag([(1 + lam) / 2, (1 - lam) / 2]).astype(complex))
    u, _ = random_gaussian_unitary(rng, n)
    return u @ rho @ u.conj().T


def parity_block_unitary(rng, n=2):
    """Random even unitary: independent unitaries on the two parity sectors.

    Generic instances are not Gaussian (not matchgate-structured).
    """
    d = 1 << n
    par = clifford._parity_table(n)
    u = np.zeros((d, d), dtype=complex)
    for p in (0, 1):
        idx = np.nonzero(par == p)[0]
        block = scipy.linalg.qr(
            rng.normal(size=(len(idx), len(idx))) + 1j * rng.normal(size=(len(idx), len(idx)))
        )[0]
        u[np.ix_(idx, idx)] = block
    return u
