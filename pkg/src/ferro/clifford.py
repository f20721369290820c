"""Dense Jordan-Wigner representation of the Majorana/Clifford algebra.

Operators are plain complex numpy matrices of dimension 2**q.  Majorana
generators and their ordered products are manipulated symbolically as
phased Pauli strings (X^x Z^z masks) and only materialized on demand, so
moment tables cost O(4^n * 2^n) instead of repeated dense matmuls.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

EPS_PSD = 1e-9
EPS_EVEN = 1e-9
EPS_UNITARY = 1e-9
EPS_RANK = 1e-10


def num_qubits(a: np.ndarray) -> int:
    """Qubit count of a square operator; raises on non-power-of-two dims."""
    d = a.shape[0]
    if a.ndim != 2 or a.shape[1] != d or d & (d - 1) or d == 0:
        raise ValueError(f"expected a square matrix of power-of-two dimension, got {a.shape}")
    return d.bit_length() - 1


def assert_state(rho: np.ndarray, eps: float = EPS_PSD) -> None:
    """Check Hermiticity, unit trace and positivity up to tolerance."""
    num_qubits(rho)
    if np.linalg.norm(rho - rho.conj().T) > 1e-8:
        raise ValueError("state is not Hermitian")
    if abs(np.trace(rho) - 1.0) > 1e-8:
        raise ValueError("state trace differs from 1")
    if np.linalg.eigvalsh(rho).min() < -eps:
        raise ValueError("state has a negative eigenvalue beyond tolerance")


def assert_unitary(u: np.ndarray, eps: float = EPS_UNITARY) -> None:
    n = num_qubits(u)
    d = 1 << n
    res = np.linalg.norm(u.conj().T @ u - np.eye(d)) / math.sqrt(d)
    if res > eps:
        raise ValueError("matrix is not unitary within tolerance")


# ---------------------------------------------------------------------------
# Phased Pauli strings: (phase, x_mask, z_mask) represents phase * X^x Z^z,
# qubit 0 is the most significant bit so masks align with basis indices.

def _pauli_mul(a, b):
    pa, xa, za = a
    pb, xb, zb = b
    sign = -1.0 if bin(za & xb).count("1") & 1 else 1.0
    return (pa * pb * sign, xa ^ xb, za ^ zb)


def _majorana_pauli(j: int, n: int):
    """Pauli-string form of the j-th Majorana generator, 1 <= j <= 2n."""
    if not 1 <= j <= 2 * n:
        raise ValueError(f"Majorana index {j} out of range for {n} modes")
    mode = (j + 1) // 2  # 1-based mode
    q = mode - 1  # 0-based qubit, qubit 0 most significant
    site = 1 << (n - 1 - q)
    prefix = 0
    for p in range(q):
        prefix |= 1 << (n - 1 - p)
    if j % 2:  # X with Z-string
        return (1.0 + 0.0j, site, prefix)
    return (1j, site, prefix | site)  # Y = i X Z, with Z-string


@lru_cache(maxsize=None)
def _basis_pauli_table(n: int):
    """(phase, x, z) of gamma_J for every mask J over 2n bits, ascending order."""
    table = [(1.0 + 0.0j, 0, 0)] * (1 << (2 * n))
    for mask in range(1, 1 << (2 * n)):
        high = mask.bit_length()  # highest Majorana index in J
        table[mask] = _pauli_mul(table[mask ^ (1 << (high - 1))], _majorana_pauli(high, n))
    return table


@lru_cache(maxsize=None)
def _parity_table(n: int) -> np.ndarray:
    c = np.arange(1 << n, dtype=np.int64)
    par = np.zeros(1 << n, dtype=np.int8)
    while c.any():
        par ^= (c & 1).astype(np.int8)
        c >>= 1
    return par


def _pauli_matrix(phase: complex, x: int, z: int, n: int) -> np.ndarray:
    d = 1 << n
    idx = np.arange(d)
    signs = 1.0 - 2.0 * _parity_table(n)[idx & z]
    m = np.zeros((d, d), dtype=complex)
    m[idx ^ x, idx] = phase * signs
    return m


@lru_cache(maxsize=None)
def _majorana_cached(j: int, n: int) -> np.ndarray:
    m = _pauli_matrix(*_majorana_pauli(j, n), n)
    m.setflags(write=False)
    return m


def majorana(j: int, n: int) -> np.ndarray:
    """Jordan-Wigner matrix of the j-th Majorana generator on n qubits."""
    return _majorana_cached(j, n)


def majorana_product(mask: int, n: int) -> np.ndarray:
    """gamma_J for the bitmask J (bit j-1 set means gamma_j participates)."""
    if mask >> (2 * n):
        raise ValueError(f"index mask {mask:#x} exceeds 2n = {2 * n} bits")
    return _pauli_matrix(*_basis_pauli_table(n)[mask], n)


def parity_operator(n: int) -> np.ndarray:
    """Z^{(x)n}, proportional to the full Majorana product."""
    d = 1 << n
    return np.diag(1.0 - 2.0 * _parity_table(n)[np.arange(d)]).astype(complex)


def moments(rho: np.ndarray, check: bool = True) -> np.ndarray:
    """All 4^n Majorana moments Tr(gamma_J^dag rho), indexed by mask."""
    n = num_qubits(rho)
    if check:
        assert_state(rho)
    d = 1 << n
    idx = np.arange(d)
    par = _parity_table(n)
    out = np.empty(1 << (2 * n), dtype=complex)
    for mask, (phase, x, z) in enumerate(_basis_pauli_table(n)):
        # gamma_J^dag = conj(phase) * (-1)^{x.z} X^x Z^z
        c = np.conj(phase) * (-1.0 if par[x & z] else 1.0)
        signs = 1.0 - 2.0 * par[idx & z]
        out[mask] = c * np.dot(signs, rho[idx, idx ^ x])
    return out


def single_moment(rho: np.ndarray, mask: int) -> complex:
    """Tr(gamma_J^dag rho) for one index mask."""
    n = num_qubits(rho)
    phase, x, z = _basis_pauli_table(n)[mask]
    par = _parity_table(n)
    idx = np.arange(1 << n)
    c = np.conj(phase) * (-1.0 if par[x & z] else 1.0)
    signs = 1.0 - 2.0 * par[idx & z]
    return complex(c * np.dot(signs, rho[idx, idx ^ x]))


def from_moments(coeffs: np.ndarray, n: int) -> np.ndarray:
    """Reconstruct 2^-n sum_J c_J gamma_J from a moment table."""
    d = 1 << n
    idx = np.arange(d)
    par = _parity_table(n)
    rho = np.zeros((d, d), dtype=complex)
    scale = 1.0 / d
    for mask, (phase, x, z) in enumerate(_basis_pauli_table(n)):
        c = coeffs[mask]
        if c == 0:
            continue
        signs = 1.0 - 2.0 * par[idx & z]
        rho[idx ^ x, idx] += scale * c * phase * signs
    return rho


def hs_inner(a: np.ndarray, b: np.ndarray) -> complex:
    """Normalized Hilbert-Schmidt inner product 2^-n Tr(A^dag B)."""
    if a.shape != b.shape:
        raise ValueError("operator dimensions differ")
    n = num_qubits(a)
    return complex(np.trace(a.conj().T @ b) / (1 << n))


def l2_norm(a: np.ndarray) -> float:
    """Normalized L2 norm sqrt(2^-n Tr A^dag A)."""
    n = num_qubits(a)
    return float(np.linalg.norm(a)) / math.sqrt(1 << n)


def partial_trace_second(a: np.ndarray) -> np.ndarray:
    """Trace out the last n of 2n qubits."""
    q = num_qubits(a)
    if q % 2:
        raise ValueError("partial trace over the second half needs an even qubit count")
    d = 1 << (q // 2)
    return np.einsum("ikjk->ij", a.reshape(d, d, d, d))


def partial_trace_first(a: np.ndarray) -> np.ndarray:
    q = num_qubits(a)
    if q % 2:
        raise ValueError("partial trace over the first half needs an even qubit count")
    d = 1 << (q // 2)
    return np.einsum("kikj->ij", a.reshape(d, d, d, d))


def _clamped_spectrum(rho: np.ndarray) -> np.ndarray:
    w = np.linalg.eigvalsh(rho)
    if w.min() < -EPS_PSD:
        raise ValueError(f"eigenvalue {w.min():.3e} below -{EPS_PSD:g}: not a state")
    return np.clip(w, 0.0, 1.0)


def entropy(rho: np.ndarray, alpha: float = 1.0) -> float:
    """Renyi entropy S_alpha in nats; alpha=1 is von Neumann, 0 log-rank, inf min-entropy."""
    if alpha < 0:
        raise ValueError("Renyi order must be nonnegative")
    w = _clamped_spectrum(rho)
    if alpha == 1.0:
        wz = w[w > 0]
        return float(-np.dot(wz, np.log(wz)))
    if alpha == 0.0:
        return float(math.log(int(np.count_nonzero(w > EPS_RANK))))
    if math.isinf(alpha):
        return float(-math.log(w.max()))
    return float(math.log(np.sum(w**alpha)) / (1.0 - alpha))


def is_even(a: np.ndarray, eps: float = EPS_EVEN) -> bool:
    """Whether A commutes with the parity operator Z^{(x)n}."""
    n = num_qubits(a)
    p = parity_operator(n)
    return l2_norm(a @ p - p @ a) <= eps


def relative_entropy(rho: np.ndarray, sigma: np.ndarray, support_eps: float = 1e-9) -> float:
    """D(rho||sigma) = Tr rho log rho - Tr rho log sigma, in nats.

    Returns +inf when the support of rho leaks outside the support of sigma.
    """
    if rho.shape != sigma.shape:
        raise ValueError("operator dimensions differ")
    wr, vr = np.linalg.eigh(rho)
    ws, vs = np.linalg.eigh(sigma)
    wr = np.clip(wr, 0.0, None)
    ws = np.clip(ws, 0.0, None)
    kernel = ws <= support_eps
    if kernel.any():
        pk = vs[:, kernel]
        leak = float(np.real(np.trace(pk.conj().T @ rho @ pk)))
        if leak > support_eps:
            return math.inf
    wz = wr[wr > 0]
    tr_rho_log_rho = float(np.dot(wz, np.log(wz)))
    log_sigma = (vs[:, ~kernel] * np.log(ws[~kernel])) @ vs[:, ~kernel].conj().T
    tr_rho_log_sigma = float(np.real(np.trace(rho @ log_sigma)))
    return max(tr_rho_log_rho - tr_rho_log_sigma, 0.0)
