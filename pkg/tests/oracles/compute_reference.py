"""Standalone brute-force reference computation; intentionally does NOT import
the package.  Everything here is built from first principles with dense
matrices, scipy.linalg.expm, and a dict-based Grassmann log so the frozen
values in reference_values.json are an independent cross-check.

Run from the repository root:  python3 tests/oracles/compute_reference.py
"""

import json
import math
import os
from itertools import combinations

import numpy as np
import scipy.linalg

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)


def kron_all(mats):
    out = np.array([[1.0 + 0.0j]])
    for m in mats:
        out = np.kron(out, m)
    return out


def majorana(j, n):
    """Jordan-Wigner gamma_j on n qubits, built by explicit kron products."""
    mode = (j + 1) // 2  # 1-based
    mats = [Z] * (mode - 1) + [X if j % 2 else Y] + [I2] * (n - mode)
    return kron_all(mats)


def gamma_prod(indices, n):
    out = np.eye(1 << n, dtype=complex)
    for j in indices:
        out = out @ majorana(j, n)
    return out


def conv_unitary(theta, n):
    """exp(theta/2 sum_j gamma_j gamma_{2n+j}) on 2n qubits via expm."""
    d = 1 << (2 * n)
    gen = np.zeros((d, d), dtype=complex)
    for j in range(1, 2 * n + 1):
        gen += 0.5 * theta * majorana(j, 2 * n) @ majorana(2 * n + j, 2 * n)
    return scipy.linalg.expm(gen)


def ptrace2(a, n):
    d = 1 << n
    return np.einsum("ikjk->ij", a.reshape(d, d, d, d))


def convolve(rho, sigma, theta, n):
    w = conv_unitary(theta, n)
    return ptrace2(w @ np.kron(rho, sigma) @ w.conj().T, n)


def entropy(rho):
    w = np.linalg.eigvalsh(rho)
    w = w[w > 1e-14]
    return float(-np.dot(w, np.log(w)))


def l2_norm(a, n):
    return float(np.linalg.norm(a)) / math.sqrt(1 << n)


# dict-based Grassmann arithmetic: keys are sorted index tuples
def g_mul_dict(p, q):
    out = {}
    for jk, a in p.items():
        for kk, b in q.items():
            if set(jk) & set(kk):
                continue
            merged = jk + kk
            # inversion-count sign of sorting the concatenation
            inv = sum(1 for i in range(len(merged)) for l in range(i + 1, len(merged))
                      if merged[i] > merged[l])
            key = tuple(sorted(merged))
            out[key] = out.get(key, 0.0) + ((-1) ** inv) * a * b
    return {k: v for k, v in out.items() if abs(v) > 1e-16}


def g_log_dict(p, nilpotency):
    x = dict(p)
    x.pop((), None)
    out = {}
    power = {(): 1.0}
    for k in range(1, nilpotency + 1):
        power = g_mul_dict(power, x)
        if not power:
            break
        c = (-1.0) ** (k + 1) / k
        for key, v in power.items():
            out[key] = out.get(key, 0.0) + c * v
    return out


def moments_dict(rho, n):
    out = {}
    for r in range(0, 2 * n + 1):
        for idx in combinations(range(1, 2 * n + 1), r):
            g = gamma_prod(idx, n)
            val = complex(np.trace(g.conj().T @ rho))
            if abs(val) > 1e-14:
                out[idx] = val
    return out


def main():
    n = 4
    phi = math.pi
    v = np.zeros(16, dtype=complex)
    v[0b0000] = v[0b0011] = v[0b1100] = 0.5
    v[0b1111] = 0.5 * np.exp(1j * phi)
    psi = np.outer(v, v.conj())

    theta = math.pi / 4

    # Gaussification as the convolution limit: 40 doublings are far past
    # convergence (the distance decays like 2^-k)
    g = psi
    for _ in range(40):
        g = convolve(g, g, theta, n)
        g = (g + g.conj().T) / 2

    ng_r = entropy(g) - entropy(psi)

    conv1 = convolve(psi, psi, theta, n)
    p_accept = 0.5 * (1.0 + float(np.real(np.trace(psi @ conv1))))

    cum = g_log_dict(moments_dict(psi, n), 2 * n)
    k_m = sum(abs(val) ** 2 for key, val in cum.items() if len(key) >= 4)

    distances = []
    cur = psi
    for k in range(6):
        distances.append(l2_norm(cur - g, n))
        cur = convolve(cur, cur, theta, n)

    out = {
        "phi": phi,
        "ng_relative_entropy": ng_r,
        "p_accept": p_accept,
        "k_m": k_m,
        "distances_k0_to_k5": distances,
    }
    path = os.path.join(os.path.dirname(__file__), "reference_values.json")
    with open(path, "w") as f:
        json.dump(out, f, indent=2)
    print(json.dumps(out, indent=2))


if __name__ == "__main__":
    main()
