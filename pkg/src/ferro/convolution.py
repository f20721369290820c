"""The fermionic beam splitter W_theta and the convolution channel.

Two engines: the dense channel Tr_2[W (rho ox sigma) W^dag] on 2n qubits,
and the cumulant-domain route through the contraction duality
Psi_out = xi_cos Psi_rho + xi_sin Psi_sigma.  The dense route is the oracle
for the fast one and is limited to small n by the 4^n x 4^n beam splitter.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

from . import clifford, gaussian, grassmann
from .grassmann import GrassmannPoly

DEFAULT_THETA = math.pi / 4


@lru_cache(maxsize=8)
def _conv_unitary_cached(theta: float, n: int):
    h = np.zeros((4 * n, 4 * n))
    for j in range(2 * n):
        h[j, 2 * n + j] = theta / 2.0
        h[2 * n + j, j] = -theta / 2.0
    u, r = gaussian.gaussian_unitary(h, 2 * n)
    u.setflags(write=False)
    return u


def conv_unitary(theta: float, n: int) -> np.ndarray:
    """W_theta = exp((theta/2) sum_j gamma_j gamma_{2n+j}) on 2n qubits.

    Satisfies W gamma_j W^dag = cos(theta) gamma_j - sin(theta) gamma_{2n+j}
    and W gamma_{2n+j} W^dag = sin(theta) gamma_j + cos(theta) gamma_{2n+j}.
    """
    return _conv_unitary_cached(float(theta), n)


def _check_even_state(rho: np.ndarray, check: bool) -> None:
    if check:
        clifford.assert_state(rho)
        if not clifford.is_even(rho):
            raise ValueError("convolution is defined for even states only")


def convolve(rho: np.ndarray, sigma: np.ndarray, theta: float = DEFAULT_THETA,
             check: bool = True) -> np.ndarray:
    """rho boxtimes_theta sigma = Tr_2[W_theta (rho ox sigma) W_theta^dag]."""
    if rho.shape != sigma.shape:
        raise ValueError("states live on different mode counts")
    _check_even_state(rho, check)
    _check_even_state(sigma, check)
    n = clifford.num_qubits(rho)
    w = conv_unitary(theta, n)
    joint = w @ np.kron(rho, sigma) @ w.conj().T
    return clifford.partial_trace_second(joint)


def complementary_convolve(rho: np.ndarray, sigma: np.ndarray,
                           theta: float = DEFAULT_THETA, check: bool = True) -> np.ndarray:
    """The complementary channel Tr_1[W_theta (rho ox sigma) W_theta^dag]."""
    if rho.shape != sigma.shape:
        raise ValueError("states live on different mode counts")
    _check_even_state(rho, check)
    _check_even_state(sigma, check)
    n = clifford.num_qubits(rho)
    w = conv_unitary(theta, n)
    joint = w @ np.kron(rho, sigma) @ w.conj().T
    return clifford.partial_trace_first(joint)


def convolve_cumulant(psi_rho: GrassmannPoly, psi_sigma: GrassmannPoly,
                      theta: float = DEFAULT_THETA) -> GrassmannPoly:
    """Cumulant-domain convolution: kappa_J -> cos^|J| kappa^rho_J + sin^|J| kappa^sigma_J."""
    psi_rho._check(psi_sigma)
    return grassmann.contract(psi_rho, math.cos(theta)) + grassmann.contract(
        psi_sigma, math.sin(theta)
    )


def iterate_conv(rho: np.ndarray, k: int, mode: str = "dense", check: bool = True):
    """k-fold doubling self-convolution at theta = pi/4.

    mode="dense" returns a state; mode="cumulant" returns the cumulant
    polynomial with kappa_J scaled by 2^{k(1 - |J|/2)}.
    """
    if k < 0:
        raise ValueError("iteration order must be nonnegative")
    if mode == "dense":
        out = rho
        for _ in range(k):
            out = convolve(out, out, DEFAULT_THETA, check=check)
            check = False  # outputs of the channel stay even
        return out
    if mode == "cumulant":
        psi = grassmann.cumulants(rho, check=check)
        pc = grassmann.popcounts(psi.generators)
        scale = np.power(2.0, k * (1.0 - pc / 2.0))
        return GrassmannPoly(psi.generators, psi.coeffs * scale)
    raise ValueError(f"unknown mode {mode!r}")


def iterate_conv_linear(rho: np.ndarray, m: int, check: bool = True) -> np.ndarray:
    """Linear-copy iterated convolution over m copies of rho.

    The step angle satisfies cos^2(theta_m) = m/(m+1), so every copy enters
    with equal weight; m = 1 returns rho itself.
    """
    if m < 1:
        raise ValueError("copy count must be positive")
    _check_even_state(rho, check)
    out = rho
    for j in range(1, m):
        theta = math.acos(math.sqrt(j / (j + 1)))
        out = convolve(out, rho, theta, check=False)
    return out
