"""Einstein and t-Einstein products on order-(2k+1) tensors.

Every tensor in the algebra has shape ``(n,)*2k + (p,)``. Frequency slices are
handled through their cubically balanced matricizations, so the t-Einstein
product is a batch of ``n^k x n^k`` matrix products.
"""
from __future__ import annotations

import numpy as np

from .core import DimensionError, as_hypermatrix, ifft_tubal, tubal_dims
from .matricization import dematricize, frequency_slice_matrices, matricize


def einstein_product(A, B, K: int) -> np.ndarray:
    """Contract the trailing ``K`` modes of ``A`` with the leading ``K`` modes of ``B``."""
    A = as_hypermatrix(A)
    B = as_hypermatrix(B)
    if K < 0 or K > A.ndim or K > B.ndim:
        raise DimensionError(f"cannot contract {K} modes of {A.shape} and {B.shape}")
    if A.shape[A.ndim - K:] != B.shape[:K]:
        raise DimensionError(f"contracted modes differ: {A.shape} vs {B.shape}")
    m = A.shape[: A.ndim - K]
    n = B.shape[K:]
    C = matricize(A, A.ndim - K) @ matricize(B, K)
    return dematricize(C, m, n)


def _same_algebra(A, B):
    A = as_hypermatrix(A)
    B = as_hypermatrix(B)
    dims = tubal_dims(A)
    if B.shape != A.shape:
        raise DimensionError(f"operands differ in shape: {A.shape} vs {B.shape}")
    return A, B, dims


def _from_slice_matrices(Ms, n: int, k: int) -> np.ndarray:
    """Inverse of ``frequency_slice_matrices`` followed by the inverse transform."""
    Ms = np.asarray(Ms, dtype=np.complex128)
    p = Ms.shape[0]
    Ahat = np.moveaxis(Ms, 0, -1).reshape((n,) * (2 * k) + (p,), order="F")
    return ifft_tubal(Ahat)


def t_einstein(A, B) -> np.ndarray:
    """t-Einstein product: slicewise Einstein products after the tubal transform."""
    A, B, (k, n, p) = _same_algebra(A, B)
    C = np.matmul(frequency_slice_matrices(A), frequency_slice_matrices(B))
    return _from_slice_matrices(C, n, k)


def t_einstein_naive(A, B) -> np.ndarray:
    """Tubewise circular convolution of Einstein products, evaluated literally."""
    A, B, (k, n, p) = _same_algebra(A, B)
    C = np.zeros_like(A)
    for l in range(p):
        for m in range(p):
            C[..., l] += einstein_product(A[..., m], B[..., (l - m) % p], k)
    return C


def gen_t_conj_transpose(A) -> np.ndarray:
    """Generalized t-conjugate transpose.

    In the frequency domain this swaps the two index groups of each slice and
    conjugates. Spatially that is the same swap and conjugation followed by the
    slice reversal ``l -> -l mod p``, which is how it is computed here.
    """
    A = as_hypermatrix(A)
    k, n, p = tubal_dims(A)
    axes = tuple(range(k, 2 * k)) + tuple(range(k)) + (2 * k,)
    swapped = np.conj(A.transpose(axes))
    return swapped[..., (-np.arange(p)) % p]


def identity_nk(n: int, k: int) -> np.ndarray:
    """Order-2k hypermatrix with entries ``prod_l delta(i_l, j_l)``."""
    return dematricize(np.eye(n ** k), (n,) * k, (n,) * k)


def t_identity_k(n: int, p: int, k: int) -> np.ndarray:
    if min(n, p, k) < 1:
        raise ValueError("n, p and k must be positive")
    I = np.zeros((n,) * (2 * k) + (p,), dtype=np.complex128)
    I[..., 0] = identity_nk(n, k)
    return I


def phi(A) -> np.ndarray:
    """Slice matrices ``M_l`` (cubically balanced frequency slices), shape ``(p, n^k, n^k)``."""
    tubal_dims(A)
    return frequency_slice_matrices(A)


def phi_inv(Ms, n: int, k: int) -> np.ndarray:
    Ms = np.asarray(Ms, dtype=np.complex128)
    N = n ** k
    if Ms.ndim != 3 or Ms.shape[1:] != (N, N):
        raise DimensionError(f"expected a stack of {N}x{N} matrices, got {Ms.shape}")
    return _from_slice_matrices(Ms, n, k)


def t_power_integer(A, e: int) -> np.ndarray:
    """``A`` multiplied by itself ``e`` times under the t-Einstein product."""
    if e < 1 or int(e) != e:
        raise ValueError(f"exponent must be a positive integer, got {e}")
    k, n, p = tubal_dims(A)
    Ms = phi(A)
    return _from_slice_matrices(np.stack([np.linalg.matrix_power(M, int(e)) for M in Ms]), n, k)

