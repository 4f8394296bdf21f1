"""The order-3 t-product algebra.

Two product paths are provided: :func:`tprod_naive` materializes the
block-circulant matrix (cost ``m n p^2 q``), :func:`tprod_fft` multiplies
frequency slices (cost ``(mn + nq + mq) p log p + m n p q``).
"""
from __future__ import annotations

import numpy as np

from .core import (
    DimensionError,
    SingularityError,
    as_hypermatrix,
    fft_tubal,
    ifft_tubal,
    rel_err,
)
from .matricization import bcirc, fold3, unfold3

HERMITIAN_TOL = 1e-10
SINGULAR_RCOND = 1e-12


def _conformable(A, B):
    A = as_hypermatrix(A)
    B = as_hypermatrix(B)
    if A.ndim != 3 or B.ndim != 3:
        raise DimensionError(f"t-product needs order-3 operands, got {A.shape} and {B.shape}")
    if A.shape[1] != B.shape[0] or A.shape[2] != B.shape[2]:
        raise DimensionError(f"cannot t-multiply {A.shape} by {B.shape}")
    return A, B


def _square(A):
    A = as_hypermatrix(A)
    if A.ndim != 3 or A.shape[0] != A.shape[1]:
        raise ValueError(f"expected n x n x p, got {A.shape}")
    return A


def tprod_naive(A, B) -> np.ndarray:
    """``fold(bcirc(A) @ unfold(B))``, evaluated literally."""
    A, B = _conformable(A, B)
    m, _, p = A.shape
    q = B.shape[1]
    return fold3(bcirc(A) @ unfold3(B), m, q, p)


def tprod_fft(A, B) -> np.ndarray:
    """t-product through frequency-slice matrix products."""
    A, B = _conformable(A, B)
    Chat = np.einsum("ikl,kjl->ijl", fft_tubal(A), fft_tubal(B))
    return ifft_tubal(Chat)


tprod = tprod_fft


def t_conj_transpose(A) -> np.ndarray:
    """Conjugate-transpose every slice, then reverse slices 2..p."""
    A = as_hypermatrix(A)
    if A.ndim != 3:
        raise DimensionError(f"expected order 3, got {A.shape}")
    p = A.shape[2]
    rev = (-np.arange(p)) % p
    return np.conj(A.transpose(1, 0, 2))[:, :, rev]


def fourier_conjugation(A) -> np.ndarray:
    """``J(A)[..., l] = conj(A[..., -l mod p])``; works for any order.

    Its tubal transform is the entrywise conjugate of the tubal transform of A.
    """
    A = as_hypermatrix(A)
    p = A.shape[-1]
    return np.conj(A[..., (-np.arange(p)) % p])


def t_identity(n: int, p: int) -> np.ndarray:
    if n < 1 or p < 1:
        raise ValueError("n and p must be positive")
    I = np.zeros((n, n, p), dtype=np.complex128)
    I[:, :, 0] = np.eye(n)
    return I


def is_t_hermitian(A, tol: float = HERMITIAN_TOL) -> bool:
    A = _square(A)
    return rel_err(t_conj_transpose(A), A) <= tol


def phi_k1(A) -> np.ndarray:
    """Frequency slices of an n x n x p tensor, stacked as ``(p, n, n)``."""
    A = _square(A)
    return np.moveaxis(fft_tubal(A), -1, 0)


def t_det(A) -> complex:
    """Product of the determinants of the frequency slices."""
    return complex(np.prod(np.linalg.det(phi_k1(A))))


def t_inverse(A) -> np.ndarray:
    """Slicewise inverse in the frequency domain.

    Raises :class:`SingularityError` naming the first slice whose smallest
    singular value is at most ``1e-12`` times its largest.
    """
    slices = phi_k1(A)
    for l, M in enumerate(slices):
        s = np.linalg.svd(M, compute_uv=False)
        if s[0] == 0 or s[-1] <= SINGULAR_RCOND * s[0]:
            raise SingularityError(f"frequency slice {l} is singular", slice_index=l)
    inv = np.linalg.inv(slices)
    return ifft_tubal(np.moveaxis(inv, 0, -1))
