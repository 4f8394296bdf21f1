"""Dense complex hypermatrices and the tubal Fourier transform.

Hypermatrices are plain ``numpy`` arrays of dtype ``complex128``. Linear
indices follow generalized column-major order (first index fastest), so every
reshape in this package is done with ``order="F"``.

The tubal transform acts on the last mode. The forward transform uses the
kernel ``exp(+2*pi*i*m*l/p)`` and is unnormalized; the inverse carries ``1/p``.
That is the complex conjugate of numpy's convention, so the backend is wrapped
rather than called directly.
"""
from __future__ import annotations

import numpy as np


class DimensionError(ValueError):
    """Operand shapes do not conform."""


class SingularityError(ArithmeticError):
    """A frequency slice is numerically singular."""

    def __init__(self, message, slice_index=None):
        super().__init__(message)
        self.slice_index = slice_index


def as_hypermatrix(A) -> np.ndarray:
    """Return ``A`` as a complex128 array (no copy when already one)."""
    return np.asarray(A, dtype=np.complex128)


def tubal_dims(A) -> tuple[int, int, int]:
    """Return ``(k, n, p)`` for an order ``2k+1`` tensor cubical in its first 2k modes."""
    shape = np.shape(A)
    if len(shape) < 3 or len(shape) % 2 == 0:
        raise DimensionError(f"expected odd order >= 3, got shape {shape}")
    head = shape[:-1]
    if len(set(head)) != 1:
        raise DimensionError(f"first {len(head)} modes must share a side length, got {shape}")
    return len(head) // 2, head[0], shape[-1]


def frontal_slice(A, l: int) -> np.ndarray:
    """Frontal slice ``A[..., l]`` (0-based ``l``)."""
    A = as_hypermatrix(A)
    p = A.shape[-1]
    if not 0 <= l < p:
        raise IndexError(f"slice index {l} out of range for tubal length {p}")
    return A[..., l]


def tube(A, idx) -> np.ndarray:
    """The tube ``A[idx, :]`` along the last mode (0-based ``idx``)."""
    A = as_hypermatrix(A)
    idx = tuple(idx)
    if len(idx) != A.ndim - 1:
        raise IndexError(f"tube index needs {A.ndim - 1} entries, got {len(idx)}")
    for i, d in zip(idx, A.shape):
        if not 0 <= i < d:
            raise IndexError(f"tube index {idx} out of range for shape {A.shape}")
    return A[idx]


def fft_tubal(A) -> np.ndarray:
    """Forward tubal transform along the last mode."""
    A = as_hypermatrix(A)
    p = A.shape[-1]
    if p == 1:
        return A.copy()
    # numpy's ifft uses the +i kernel with a 1/p factor
    return np.fft.ifft(A, axis=-1) * p


def ifft_tubal(A) -> np.ndarray:
    """Inverse of :func:`fft_tubal`."""
    A = as_hypermatrix(A)
    p = A.shape[-1]
    if p == 1:
        return A.copy()
    return np.fft.fft(A, axis=-1) / p


def frobenius_inner(A, B) -> complex:
    """``<A, B>_F = sum(A * conj(B))``; conjugate-linear in the second argument."""
    A = as_hypermatrix(A)
    B = as_hypermatrix(B)
    if A.shape != B.shape:
        raise DimensionError(f"shape mismatch {A.shape} vs {B.shape}")
    return complex(np.vdot(B, A))


def conj_elementwise(A) -> np.ndarray:
    return np.conj(as_hypermatrix(A))


def rel_err(A, B) -> float:
    """``||A - B||_F / ||B||_F`` (absolute when ``B`` is zero)."""
    A = np.asarray(A)
    B = np.asarray(B)
    denom = np.linalg.norm(B)
    num = np.linalg.norm(A - B)
    return float(num / denom) if denom > 0 else float(num)
