"""Random and named test instances.

All random constructors take a ``numpy.random.Generator``; they build
frequency slices first and transform back, so the spectral data of every
instance is known by construction.
"""
from __future__ import annotations

import numpy as np

from .core import ifft_tubal
from .einstein import phi_inv
from .hermitian import p_sym
from .matricization import cubically_balanced_inv


def random_unitary(N: int, rng) -> np.ndarray:
    """Haar-distributed unitary via QR with the phase correction."""
    Z = rng.standard_normal((N, N)) + 1j * rng.standard_normal((N, N))
    Q, R = np.linalg.qr(Z)
    d = np.diag(R)
    return Q * (d / np.abs(d))


def random_hermitian(N: int, rng) -> np.ndarray:
    X = rng.standard_normal((N, N)) + 1j * rng.standard_normal((N, N))
    return 0.5 * (X + X.conj().T)


def symmetric_basis(n: int, k: int):
    """Orthonormal bases of the range of ``P_sym`` and of its complement."""
    w, V = np.linalg.eigh(p_sym(n, k).matrix)
    sym = w > 0.5
    return V[:, sym].astype(np.complex128), V[:, ~sym].astype(np.complex128)


def random_hps_coeffs(n: int, k: int, rng) -> np.ndarray:
    """Random Hermitian partially symmetric order-2k coefficient tensor."""
    B, _ = symmetric_basis(n, k)
    H = random_hermitian(B.shape[1], rng)
    return cubically_balanced_inv(B @ H @ B.conj().T, n, k)


def random_t_hps(n: int, k: int, p: int, rng) -> np.ndarray:
    return ifft_tubal(np.stack([random_hps_coeffs(n, k, rng) for _ in range(p)], axis=-1))


def random_t_hermitian(n: int, k: int, p: int, rng) -> np.ndarray:
    """Hermitian frequency slices with no partial symmetry imposed."""
    N = n ** k
    return phi_inv(np.stack([random_hermitian(N, rng) for _ in range(p)]), n, k)


def random_lambdas(r: int, p: int, rng, kind: str = "positive") -> np.ndarray:
    """Eigenvalue tubes, shape ``(r, p)``.

    ``positive`` draws from ``[0.5, 2]``. ``indefinite`` then flips one entry
    to a negative value of magnitude at least ``0.1`` of the largest.
    """
    lam = rng.uniform(0.5, 2.0, size=(r, p))
    if kind == "positive":
        return lam
    if kind != "indefinite":
        raise ValueError(f"unknown kind {kind!r}")
    i, l = rng.integers(r), rng.integers(p)
    lam[i, l] = -rng.uniform(0.1, 1.0) * lam.max()
    return lam


def random_commutant(n: int, k: int, p: int, rng, lambdas=None, hps: bool = False):
    """Joint MTU diagonalizable tensor ``M_l = Q diag(lambdas[:, l]) Q^H``.

    With ``hps=True`` the eigenvectors carrying ``lambdas`` span the
    symmetric subspace and the complement gets eigenvalue zero, so every
    slice is Hermitian partially symmetric. Returns ``(A, Q, full_lambdas)``.
    """
    N = n ** k
    if hps:
        B, C = symmetric_basis(n, k)
        r = B.shape[1]
        Q = np.concatenate([B @ random_unitary(r, rng), C], axis=1)
    else:
        r = N
        Q = random_unitary(N, rng)
    lam = random_lambdas(r, p, rng) if lambdas is None else np.asarray(lambdas, dtype=float)
    if lam.shape != (r, p):
        raise ValueError(f"lambdas must have shape {(r, p)}, got {lam.shape}")
    full = np.zeros((N, p))
    full[:r] = lam
    Ms = np.einsum("ij,jl,kj->lik", Q, full, Q.conj())
    return phi_inv(Ms, n, k), Q, full


def counterexample_slice(c: float = -0.25) -> np.ndarray:
    """The 2x2x2x2 coefficient tensor of ``|z|^4 + |w|^4 + 4c|z|^2|w|^2``."""
    S = np.zeros((2, 2, 2, 2), dtype=np.complex128)
    S[0, 0, 0, 0] = S[1, 1, 1, 1] = 1.0
    for idx in [(0, 1, 0, 1), (0, 1, 1, 0), (1, 0, 0, 1), (1, 0, 1, 0)]:
        S[idx] = c
    return S


def hierarchy_example(c: float = -0.25) -> np.ndarray:
    """Order-5 tensor with both frequency slices equal to :func:`counterexample_slice`."""
    S = counterexample_slice(c)
    return ifft_tubal(np.stack([S, S], axis=-1))


def noncommuting_hpd() -> np.ndarray:
    """2x2x2 tensor with positive definite, non-commuting frequency slices."""
    X = np.array([[0, 1], [1, 0]])
    Z = np.array([[1, 0], [0, -1]])
    Ms = np.stack([np.eye(2) + 0.5 * X, np.eye(2) + 0.5 * Z]).astype(np.complex128)
    return phi_inv(Ms, 2, 1)
