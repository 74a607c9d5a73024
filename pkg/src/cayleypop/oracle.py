"""Brute-force quantum reference computations on dense matrices.

Fourier convention: ``psi_k[n] = exp(2 pi i k n / N) / sqrt(N)``. Since
``pi_L(S) psi_k = exp(-2 pi i k / N) psi_k``, a circulant ``H = sum_h c_h S^h``
has eigenvalue ``sum_h c_h exp(-2 pi i k h / N)`` on ``psi_k``; with this choice
``(S + S*) / 2`` has eigenvalue ``cos(2 pi k / N)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dynamics import ComplexState
from .exceptions import CapacityError, DomainError, NumericalError
from .groups import CyclicGroup
from .semiring import AlgebraElement

__all__ = [
    "EigenPair",
    "DENSE_LIMIT",
    "EIG_LIMIT",
    "to_dense",
    "fourier_mode",
    "dft_eigensystem",
    "dense_eigensystem",
    "exact_exponential",
    "truncated_product",
    "relative_l2",
]

DENSE_LIMIT = 4096
EIG_LIMIT = 512
RESIDUAL_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class EigenPair:
    eigenvalue: complex
    eigenvector: np.ndarray

    def residual(self, A: np.ndarray) -> float:
        return float(np.linalg.norm(A @ self.eigenvector - self.eigenvalue * self.eigenvector))


def to_dense(q: AlgebraElement) -> np.ndarray:
    """Matrix of ``pi_L(q)``: entry ``(g', g)`` is the coefficient of ``g' g^-1``."""
    G = q.group
    n = G.order
    if n > DENSE_LIMIT:
        raise CapacityError(f"dense operator of order {n} exceeds {DENSE_LIMIT}")
    A = np.zeros((n, n), dtype=complex)
    for row in range(n):
        for col in range(n):
            A[row, col] = q.coeff(G.multiply(row, G.inverse(col)))
    return A


def fourier_mode(N: int, k: int) -> np.ndarray:
    n = np.arange(N)
    return np.exp(2j * np.pi * k * n / N) / np.sqrt(N)


def dft_eigensystem(H: AlgebraElement) -> list[EigenPair]:
    """Eigenpairs of a circulant operator over Z_N, one per Fourier mode ``k = 0..N-1``."""
    G = H.group
    if not isinstance(G, CyclicGroup):
        raise DomainError(f"DFT diagonalization needs a cyclic group, got {G!r}")
    N = G.order
    pairs = []
    for k in range(N):
        eps = sum((c * np.exp(-2j * np.pi * k * h / N) for h, c in H.terms()), 0j)
        pairs.append(EigenPair(complex(eps), fourier_mode(N, k)))
    return pairs


def dense_eigensystem(A: np.ndarray) -> list[EigenPair]:
    """Full spectrum of a dense matrix via LAPACK, with every residual checked."""
    A = np.asarray(A, dtype=complex)
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError(f"expected a square matrix, got shape {A.shape}")
    if n > EIG_LIMIT:
        raise CapacityError(f"dense eigensolver limited to dimension {EIG_LIMIT}")
    try:
        if np.allclose(A, A.conj().T, atol=0, rtol=0):
            vals, vecs = np.linalg.eigh(A)
        else:
            vals, vecs = np.linalg.eig(A)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"eigensolver failed on {n}x{n} matrix: {exc}") from exc
    scale = float(np.linalg.norm(A, 2)) or 1.0
    pairs = []
    for i in range(n):
        v = vecs[:, i] / np.linalg.norm(vecs[:, i])
        pair = EigenPair(complex(vals[i]), v)
        r = pair.residual(A)
        if r > RESIDUAL_TOL * scale:
            raise NumericalError(f"eigenpair {i} (lambda={vals[i]!r}) has residual {r:.3e} > {RESIDUAL_TOL * scale:.3e}")
        pairs.append(pair)
    return pairs


def _values(psi, H: AlgebraElement) -> np.ndarray:
    values = psi.values if isinstance(psi, ComplexState) else np.asarray(psi)
    values = np.asarray(values, dtype=complex)
    if values.shape != (H.group.order,):
        raise ValueError(f"state of shape {values.shape} does not match group order {H.group.order}")
    return values


def exact_exponential(H: AlgebraElement, t: float, psi) -> ComplexState:
    """``exp(i t H) psi`` by spectral evaluation."""
    values = _values(psi, H)
    if H.is_self_adjoint(tol=1e-14):
        A = to_dense(H)
        A = (A + A.conj().T) / 2
        eps, V = np.linalg.eigh(A)
        out = V @ (np.exp(1j * t * eps) * (V.conj().T @ values))
    elif isinstance(H.group, CyclicGroup):
        out = np.zeros_like(values)
        for pair in dft_eigensystem(H):
            v = pair.eigenvector
            out += np.exp(1j * t * pair.eigenvalue) * np.vdot(v, values) * v
    else:
        raise DomainError("exact exponential needs a self-adjoint or circulant operator")
    return ComplexState(H.group, out)


def truncated_product(H: AlgebraElement, t: float, m: int, psi) -> ComplexState:
    """``(1 + i t H / m)^m psi`` by ``m`` dense matrix-vector products."""
    if m < 1:
        raise ValueError("m must be at least 1")
    values = _values(psi, H)
    step = np.eye(H.group.order) + (1j * t / m) * to_dense(H)
    for _ in range(m):
        values = step @ values
    return ComplexState(H.group, values)


def relative_l2(approx: np.ndarray, reference: np.ndarray, normalize: bool = True) -> float:
    """``||a - b|| / ||b||``; with ``normalize`` both vectors are first scaled to unit norm."""
    a = np.asarray(approx, dtype=complex)
    b = np.asarray(reference, dtype=complex)
    if normalize:
        a = a / np.linalg.norm(a)
        b = b / np.linalg.norm(b)
    return float(np.linalg.norm(a - b) / np.linalg.norm(b))
