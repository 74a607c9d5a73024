import math

import numpy as np
import pytest

from cayleypop.exceptions import CapacityError, DomainError
from cayleypop.experiments import hamiltonian_h1, hamiltonian_h2
from cayleypop.groups import direct_product, make_cyclic
from cayleypop.oracle import (
    dense_eigensystem,
    dft_eigensystem,
    exact_exponential,
    fourier_mode,
    relative_l2,
    to_dense,
    truncated_product,
)
from cayleypop.semiring import AlgebraElement


def bessel_j(n, x, terms=40):
    n = abs(n)
    return sum((-1) ** s * (x / 2) ** (2 * s + n) / (math.factorial(s) * math.factorial(s + n)) for s in range(terms))


def test_to_dense_examples():
    G3 = make_cyclic(3)
    np.testing.assert_array_equal(to_dense(AlgebraElement.basis(G3, 1)), [[0, 0, 1], [1, 0, 0], [0, 1, 0]])
    A = to_dense(hamiltonian_h1(make_cyclic(4)))
    expected = 0.5 * np.array([[0, 1, 0, 1], [1, 0, 1, 0], [0, 1, 0, 1], [1, 0, 1, 0]])
    np.testing.assert_array_equal(A, expected)
    assert (A == A.T).all()


def test_to_dense_capacity():
    with pytest.raises(CapacityError):
        to_dense(AlgebraElement.basis(make_cyclic(5000), 1))


def test_h2_dense_matches_dft():
    H = hamiltonian_h2(make_cyclic(8))
    A = to_dense(H)
    assert np.abs(A.imag).max() > 0
    assert not np.allclose(A, A.T)
    np.testing.assert_array_equal(A, A.conj().T)
    for pair in dft_eigensystem(H):
        np.testing.assert_allclose(A @ pair.eigenvector, pair.eigenvalue * pair.eigenvector, atol=1e-14)


def test_dft_examples():
    pairs = dft_eigensystem(hamiltonian_h1(make_cyclic(20)))
    assert abs(pairs[1].eigenvalue - math.cos(math.pi / 10)) < 1e-15
    assert abs(pairs[1].eigenvalue - 0.9510565) < 1e-7
    np.testing.assert_allclose(pairs[0].eigenvector, np.full(20, 1 / math.sqrt(20)))
    assert abs(pairs[0].eigenvalue - 1) < 1e-15


@pytest.mark.parametrize("N", [5, 12, 20])
def test_dft_h2_eigenvalues(N):
    for k, pair in enumerate(dft_eigensystem(hamiltonian_h2(make_cyclic(N)))):
        theta = 2 * math.pi * k / N
        assert abs(pair.eigenvalue - 0.5 * (math.cos(theta) + math.sin(theta))) < 1e-14


def test_fourier_sign_convention():
    # pi_L(S) psi_k = exp(-2 pi i k / N) psi_k
    N = 9
    S = to_dense(AlgebraElement.basis(make_cyclic(N), 1))
    for k in range(N):
        psi = fourier_mode(N, k)
        np.testing.assert_allclose(S @ psi, np.exp(-2j * np.pi * k / N) * psi, atol=1e-15)
        assert abs(np.vdot(psi, psi) - 1) < 1e-14


def test_dft_needs_cyclic_group():
    K = direct_product(make_cyclic(2), make_cyclic(3))
    with pytest.raises(DomainError):
        dft_eigensystem(AlgebraElement.basis(K, 1))


def test_dense_examples():
    assert all(abs(p.eigenvalue - 1) < 1e-14 for p in dense_eigensystem(np.eye(6)))
    vals = [p.eigenvalue for p in dense_eigensystem(to_dense(AlgebraElement.basis(make_cyclic(4), 1)))]
    for root in (1, 1j, -1, -1j):
        assert min(abs(v - root) for v in vals) < 1e-12


@pytest.mark.parametrize("N", [3, 8, 16, 32])
def test_dense_agrees_with_dft(N):
    rng = np.random.default_rng(N)
    H = AlgebraElement(make_cyclic(N), dict(enumerate(rng.normal(size=N) + 1j * rng.normal(size=N))))
    A = to_dense(H)
    dense = dense_eigensystem(A)
    for p in dense:
        assert p.residual(A) <= 1e-10 * np.linalg.norm(A, 2)
    dft = sorted((p.eigenvalue for p in dft_eigensystem(H)), key=lambda z: (round(z.real, 6), round(z.imag, 6)))
    den = sorted((p.eigenvalue for p in dense), key=lambda z: (round(z.real, 6), round(z.imag, 6)))
    np.testing.assert_allclose(den, dft, atol=1e-9)


def test_exact_exponential_t0_and_unitarity():
    G = make_cyclic(12)
    rng = np.random.default_rng(3)
    psi = rng.normal(size=12) + 1j * rng.normal(size=12)
    for H in (hamiltonian_h1(G), hamiltonian_h2(G)):
        np.testing.assert_allclose(exact_exponential(H, 0.0, psi).values, psi, atol=1e-14)
        for t in (0.3, 1.0, 7.5):
            assert abs(exact_exponential(H, t, psi).norm() - np.linalg.norm(psi)) < 1e-10


def test_exact_exponential_circulant_non_normal_branch():
    G = make_cyclic(6)
    H = AlgebraElement(G, {1: 1.0})
    psi = np.eye(6)[0]
    out = exact_exponential(H, 0.7, psi).values
    # exp(i t S) delta_0 = sum_j (i t)^j / j! delta_j, folded mod 6
    expected = np.zeros(6, dtype=complex)
    for j in range(60):
        expected[j % 6] += (0.7j) ** j / math.factorial(j)
    np.testing.assert_allclose(out, expected, atol=1e-12)


def test_exact_exponential_rejects_general_operator():
    K = direct_product(make_cyclic(2), make_cyclic(3))
    with pytest.raises(DomainError):
        exact_exponential(AlgebraElement.basis(K, 1), 1.0, np.ones(6))


def test_exact_exponential_bessel_fronts():
    N, t = 20, 1.0
    psi = np.zeros(N, dtype=complex)
    psi[N // 2] = 1
    out = exact_exponential(hamiltonian_h1(make_cyclic(N)), t, psi).values
    for n in range(N):
        d = n - N // 2
        assert abs(out[n] - 1j ** abs(d) * bessel_j(d, t)) < 1e-9
    np.testing.assert_allclose(np.abs(out[N // 2 + 1:]), np.abs(out[N // 2 - 1:0:-1]), atol=1e-14)


def test_truncated_product_examples():
    G = make_cyclic(20)
    H = hamiltonian_h1(G)
    psi = np.zeros(20, dtype=complex)
    psi[10] = 1
    one = truncated_product(H, 0.5, 1, psi).values
    np.testing.assert_allclose(one, psi + 0.5j * (to_dense(H) @ psi))

    exact = exact_exponential(H, 1.0, psi).values
    assert relative_l2(truncated_product(H, 1.0, 100, psi).values, exact) < 0.01

    e50 = relative_l2(truncated_product(H, 1.0, 50, psi).values, exact, normalize=False)
    e200 = relative_l2(truncated_product(H, 1.0, 200, psi).values, exact, normalize=False)
    assert e200 < e50
    assert 3 < e50 / e200 < 5


def test_truncated_product_on_eigenvector():
    N, k, t, m = 20, 3, 2.0, 17
    H = hamiltonian_h2(make_cyclic(N))
    eps = 0.5 * (math.cos(2 * math.pi * k / N) + math.sin(2 * math.pi * k / N))
    psi = fourier_mode(N, k)
    out = truncated_product(H, t, m, psi).values
    np.testing.assert_allclose(out, (1 + 1j * t * eps / m) ** m * psi, atol=1e-13)
