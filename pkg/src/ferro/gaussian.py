"""Covariance matrices, Pfaffians, Wick synthesis of Gaussian states, Gaussification.

Gaussian states are synthesized through Wick moment sums rather than
exp(i/2 gamma^T h gamma): the quadratic-Hamiltonian parameterization
degenerates for pure states (nu -> inf) while the Wick route is exact at
|lambda| = 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from . import clifford
from .grassmann import popcounts

EPS_ANTISYM = 1e-10
EPS_CONTRACT = 1e-9


def _check_antisymmetric(m: np.ndarray, eps: float = EPS_ANTISYM) -> None:
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("expected a square matrix")
    if m.size and np.abs(m + m.T).max() > eps:
        raise ValueError("matrix is not antisymmetric within tolerance")


def covariance(rho: np.ndarray, check: bool = True) -> np.ndarray:
    """Covariance matrix Sigma_jk = (i/2) Tr(rho [gamma_j, gamma_k])."""
    n = clifford.num_qubits(rho)
    if check:
        clifford.assert_state(rho)
    sigma = np.zeros((2 * n, 2 * n))
    for j in range(2 * n):
        for k in range(j + 1, 2 * n):
            # for j != k: Sigma_jk = -i Tr((gamma_j gamma_k)^dag rho)
            val = -1j * clifford.single_moment(rho, (1 << j) | (1 << k))
            sigma[j, k] = val.real
            sigma[k, j] = -val.real
    return sigma


@dataclass(frozen=True)
class CanonicalForm:
    """Block-diagonalization Sigma = R blockdiag(0, l; -l, 0) R^T with R in SO(2n)."""

    rotation: np.ndarray
    lambdas: np.ndarray

    def reconstruct(self) -> np.ndarray:
        n = len(self.lambdas)
        blocks = np.zeros((2 * n, 2 * n))
        for j, lam in enumerate(self.lambdas):
            blocks[2 * j, 2 * j + 1] = lam
            blocks[2 * j + 1, 2 * j] = -lam
        return self.rotation @ blocks @ self.rotation.T


def canonicalize(sigma: np.ndarray) -> CanonicalForm:
    """Real-Schur block diagonalization with lambda >= 0 (except a possible
    det-fix sign on the smallest block), sorted descending by |lambda|."""
    _check_antisymmetric(sigma)
    n = sigma.shape[0] // 2
    t, q = scipy.linalg.schur(sigma, output="real")

    lams = []
    cols = []
    i = 0
    while i < 2 * n:
        if i + 1 < 2 * n and abs(t[i, i + 1]) > 1e-12:
            lams.append(0.5 * (t[i, i + 1] - t[i + 1, i]))
            cols.append((i, i + 1))
            i += 2
        else:
            lams.append(0.0)
            cols.append((i, None))
            i += 1

    # pair leftover zero columns
    pairs = []
    lone = []
    for lam, (a, b) in zip(lams, cols):
        if b is None:
            lone.append(a)
        else:
            pairs.append((lam, a, b))
    for a, b in zip(lone[::2], lone[1::2]):
        pairs.append((0.0, a, b))

    # force lambda >= 0 by an in-block reflection (sign absorbed into R)
    fixed = []
    for lam, a, b in pairs:
        if lam < 0:
            fixed.append((-lam, b, a))
        else:
            fixed.append((lam, a, b))
    fixed.sort(key=lambda p: -abs(p[0]))

    r = np.empty_like(q)
    lambdas = np.empty(n)
    for j, (lam, a, b) in enumerate(fixed):
        lambdas[j] = lam
        r[:, 2 * j] = q[:, a]
        r[:, 2 * j + 1] = q[:, b]

    if np.linalg.det(r) < 0:
        # reflect the last (smallest |lambda|) block into SO(2n)
        r[:, [2 * n - 2, 2 * n - 1]] = r[:, [2 * n - 1, 2 * n - 2]]
        lambdas[n - 1] = -lambdas[n - 1]
    return CanonicalForm(rotation=r, lambdas=lambdas)


def _pfaffian_matching(m: np.ndarray) -> float:
    """Sum over perfect matchings; exponential, used as the small-size oracle."""
    idx = list(range(m.shape[0]))

    def rec(active):
        if not active:
            return 1.0
        i0 = active[0]
        total = 0.0
        for pos in range(1, len(active)):
            j = active[pos]
            rest = active[1:pos] + active[pos + 1 :]
            sign = -1.0 if (pos - 1) & 1 else 1.0
            total += sign * m[i0, j] * rec(rest)
        return total

    return float(rec(idx))


def _pfaffian_parlett_reid(m: np.ndarray) -> float:
    a = np.array(m, dtype=float)
    d = a.shape[0]
    pf = 1.0
    for k in range(0, d - 1, 2):
        pivot = k + 1 + int(np.argmax(np.abs(a[k + 1 :, k])))
        if pivot != k + 1:
            a[[k + 1, pivot], :] = a[[pivot, k + 1], :]
            a[:, [k + 1, pivot]] = a[:, [pivot, k + 1]]
            pf = -pf
        if a[k + 1, k] == 0.0:
            return 0.0
        pf *= a[k, k + 1]
        if k + 2 < d:
            tau = a[k, k + 2 :] / a[k, k + 1]
            col = a[k + 2 :, k + 1]
            a[k + 2 :, k + 2 :] += np.outer(tau, col) - np.outer(col, tau)
    return float(pf)


def pfaffian(m: np.ndarray) -> float:
    """Pfaffian of a real antisymmetric matrix of even dimension."""
    _check_antisymmetric(m, eps=1e-8)
    d = m.shape[0]
    if d % 2:
        raise ValueError("Pfaffian needs an even dimension")
    if d == 0:
        return 1.0
    if d <= 6:
        return _pfaffian_matching(np.asarray(m, dtype=float))
    return _pfaffian_parlett_reid(m)


def gaussian_from_covariance(sigma: np.ndarray) -> np.ndarray:
    """Gaussian state with the given covariance via the Wick moment sum.

    Moments are rho_J = i^{|J|/2} Pf(Sigma_|J) for even J; without the
    i^{|J|/2} phase the sum is not a Hermitian operator in this convention.
    """
    _check_antisymmetric(sigma)
    n = sigma.shape[0] // 2
    ev = np.linalg.eigvalsh(sigma.T @ sigma)
    if ev.max() > 1.0 + EPS_CONTRACT:
        raise ValueError("covariance violates Sigma^T Sigma <= I")
    pc = popcounts(2 * n)
    coeffs = np.zeros(1 << (2 * n), dtype=complex)
    for mask in range(1 << (2 * n)):
        k = pc[mask]
        if k & 1:
            continue
        rows = [i for i in range(2 * n) if mask >> i & 1]
        coeffs[mask] = (1j) ** (k // 2) * pfaffian(sigma[np.ix_(rows, rows)])
    return clifford.from_moments(coeffs, n)


def gaussification(rho: np.ndarray, check: bool = True) -> np.ndarray:
    """Gaussian state with the same covariance as rho."""
    if check and not clifford.is_even(rho):
        raise ValueError("Gaussification is defined for even states only")
    sigma = covariance(rho, check=check)
    # rounding can push Sigma^T Sigma marginally past I; renormalize if so
    ev = np.linalg.eigvalsh(sigma.T @ sigma)
    if ev.max() > 1.0:
        sigma = sigma / math.sqrt(min(ev.max(), 1.0 + EPS_CONTRACT))
    return gaussian_from_covariance(sigma)


def quadratic_hamiltonian(h: np.ndarray, n: int) -> np.ndarray:
    """Dense (1/2) gamma^T h gamma for a real antisymmetric h."""
    _check_antisymmetric(h, eps=1e-12)
    if h.shape[0] != 2 * n:
        raise ValueError("h dimension must be 2n")
    d = 1 << n
    acc = np.zeros((d, d), dtype=complex)
    for j in range(2 * n):
        for k in range(2 * n):
            if h[j, k] != 0.0:
                acc += 0.5 * h[j, k] * (clifford.majorana(j + 1, n) @ clifford.majorana(k + 1, n))
    return acc


def gaussian_unitary(h: np.ndarray, n: int | None = None):
    """U = exp((1/2) gamma^T h gamma) and the rotation R with U gamma_j U^dag = sum_k R_jk gamma_k.

    With this sign convention R = exp(-2h) = exp(2h)^T; det R = +1.
    """
    if n is None:
        n = h.shape[0] // 2
    a = quadratic_hamiltonian(h, n)
    # a is anti-Hermitian: exponentiate via the Hermitian generator -i*a
    w, v = np.linalg.eigh(-1j * a)
    u = (v * np.exp(1j * w)) @ v.conj().T
    hw, hv = np.linalg.eigh(1j * (-2.0) * h)
    r = np.real((hv * np.exp(-1j * hw)) @ hv.conj().T)
    return u, r


def gaussian_spectrum_entropy(lambdas) -> float:
    """sum_j h2((1 + lambda_j)/2) with the binary entropy h2, in nats."""
    total = 0.0
    for lam in np.asarray(lambdas, dtype=float):
        if abs(lam) > 1.0 + EPS_CONTRACT:
            raise ValueError("canonical eigenvalue outside [-1, 1]")
        x = min(max((1.0 + lam) / 2.0, 0.0), 1.0)
        for p in (x, 1.0 - x):
            if p > 0.0:
                total -= p * math.log(p)
    return total
