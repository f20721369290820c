import math

import numpy as np
import pytest

from ferro import clifford, convolution, gaussian, states, testing

from helpers import (
    parity_block_unitary,
    random_gaussian_state,
    random_gaussian_unitary,
    random_pure_even_state,
)

CZ = np.diag([1, 1, 1, -1]).astype(complex)
SWAP = np.array(
    [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex
)


def test_state_test_accepts_computational_basis():
    res = testing.gaussian_state_test(states.computational_state("000"))
    assert res.is_gaussian and abs(res.p_accept - 1.0) < 1e-12


def test_state_test_accepts_rotated_gaussians(rng):
    for _ in range(5):
        psi = random_gaussian_state(rng, 2, pure=True)
        res = testing.gaussian_state_test(psi)
        assert abs(res.p_accept - 1.0) < 1e-9
        assert res.is_gaussian


def test_state_test_rejects_magic_state():
    res = testing.gaussian_state_test(states.magic_state(math.pi))
    assert not res.is_gaussian
    assert res.p_accept < 1.0 - 1e-3


def test_state_test_rejects_mixed_input():
    with pytest.raises(ValueError):
        testing.gaussian_state_test(np.eye(4, dtype=complex) / 4)


def test_even_state_test():
    assert testing.even_state_test(states.computational_state("1"))
    plus = np.full((2, 2), 0.5, dtype=complex)
    assert not testing.even_state_test(plus)


def test_even_unitary_test_corpus():
    assert testing.even_unitary_test(np.diag([1.0, -1.0]).astype(complex))  # Z
    assert testing.even_unitary_test(np.diag([1.0, 1j]).astype(complex))  # phase
    assert not testing.even_unitary_test(clifford.majorana(1, 2))  # gamma_1
    for theta in (0.3, math.pi / 4, 1.2):
        assert testing.even_unitary_test(convolution.conv_unitary(theta, 1))


def test_even_unitary_test_ignores_global_phase():
    u = np.exp(0.321j) * CZ
    assert testing.even_unitary_test(u)


def test_max_entangled_state(rng):
    for n in (1, 2):
        rho = testing.max_entangled_fermionic(n)
        assert abs(np.trace(rho) - 1.0) < 1e-12
        assert abs(np.real(np.trace(rho @ rho)) - 1.0) < 1e-12
        d = 1 << n
        assert np.abs(clifford.partial_trace_second(rho) - np.eye(d) / d).max() < 1e-12
        assert np.abs(clifford.partial_trace_first(rho) - np.eye(d) / d).max() < 1e-12
        sig = gaussian.covariance(rho)
        eye = np.eye(2 * n)
        assert np.abs(sig[: 2 * n, 2 * n :] - eye).max() < 1e-9
        assert np.abs(sig[2 * n :, : 2 * n] + eye).max() < 1e-9
        assert np.abs(sig[: 2 * n, : 2 * n]).max() < 1e-9


def test_choi_state_of_identity():
    n = 2
    choi = testing.choi_state(np.eye(1 << n, dtype=complex))
    assert np.abs(choi - testing.max_entangled_fermionic(n)).max() < 1e-12


def test_choi_state_of_gaussian_unitary_is_gaussian(rng):
    u, r = random_gaussian_unitary(rng, 2)
    choi = testing.choi_state(u)
    res = testing.gaussian_state_test(choi)
    assert res.is_gaussian
    # covariance block structure [[0, O^T], [-O, 0]]
    sig = gaussian.covariance(choi, check=False)
    assert np.abs(sig[:4, 4:] - r.T).max() < 1e-9
    assert np.abs(sig[4:, :4] + r).max() < 1e-9
    assert np.abs(sig[:4, :4]).max() < 1e-9
    assert np.abs(sig[4:, 4:]).max() < 1e-9


def test_unitary_test_gaussian_corpus(rng):
    for _ in range(5):
        u, _ = random_gaussian_unitary(rng, 2)
        res = testing.gaussian_unitary_test(u)
        assert res.is_gaussian, res
    w = convolution.conv_unitary(math.pi / 4, 1)
    assert testing.gaussian_unitary_test(w).is_gaussian


def test_unitary_test_non_gaussian_corpus(rng):
    res = testing.gaussian_unitary_test(CZ)
    assert not res.is_gaussian and res.reason == "choi-not-gaussian"
    res = testing.gaussian_unitary_test(SWAP)
    assert not res.is_gaussian and res.reason == "choi-not-gaussian"
    res = testing.gaussian_unitary_test(clifford.majorana(1, 2))
    assert not res.is_gaussian and res.reason == "not-even"
    for _ in range(3):
        res = testing.gaussian_unitary_test(parity_block_unitary(rng))
        assert not res.is_gaussian and res.reason == "choi-not-gaussian"


def test_unitary_test_cumulant_engine(rng):
    u, _ = random_gaussian_unitary(rng, 2)
    res = testing.gaussian_unitary_test(u, engine="cumulant")
    assert res.is_gaussian and res.engine == "cumulant"
    assert not testing.gaussian_unitary_test(CZ, engine="cumulant").is_gaussian
    # Toffoli flips parity on |110>, so it fails the even test; its 3-qubit
    # Choi state is out of dense reach and goes through the cumulant route
    toffoli = np.eye(8, dtype=complex)
    toffoli[[6, 7], [6, 7]] = 0.0
    toffoli[6, 7] = toffoli[7, 6] = 1.0
    res = testing.gaussian_unitary_test(toffoli)
    assert res.engine == "cumulant"
    assert not res.is_gaussian and res.reason == "not-even"


def test_dense_engine_mode_limit():
    with pytest.raises(ValueError):
        testing.gaussian_unitary_test(np.eye(8, dtype=complex), engine="dense")


def test_rejection_probability_identity(rng):
    psi = random_pure_even_state(rng, 2)
    res = testing.gaussian_state_test(psi)
    conv = convolution.convolve(psi, psi, check=False)
    overlap = float(np.real(np.trace(psi @ conv)))
    assert res.p_accept <= 1.0 + 1e-12
    assert abs((1.0 - res.p_accept) - 0.5 * (1.0 - overlap)) < 1e-12
