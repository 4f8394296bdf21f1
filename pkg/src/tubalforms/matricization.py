"""Index maps and reshapes between hypermatrices, matrices and vectors.

``psi``/``psi_inv`` are the 1-based mixed-radix maps of the definitions. All
array-level operations are ``order="F"`` reshapes, which realize exactly the
same linearization.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import prod

import numpy as np

from .core import DimensionError, as_hypermatrix, fft_tubal

SVD_RANK_CUTOFF = 1e-12


def psi(i, m) -> int:
    """1-based linear index ``i_1 + sum_k (i_k - 1) * m_1 * ... * m_{k-1}``."""
    i = tuple(int(x) for x in i)
    m = tuple(int(x) for x in m)
    if len(i) != len(m):
        raise DimensionError(f"index {i} and shape {m} differ in length")
    out, stride = 1, 1
    for ik, mk in zip(i, m):
        if not 1 <= ik <= mk:
            raise IndexError(f"index {i} out of range for shape {m}")
        out += (ik - 1) * stride
        stride *= mk
    return out


def psi_inv(idx: int, m) -> tuple[int, ...]:
    m = tuple(int(x) for x in m)
    if not 1 <= idx <= prod(m):
        raise IndexError(f"linear index {idx} out of range [1, {prod(m)}]")
    rem = idx - 1
    out = []
    for mk in m:
        rem, r = divmod(rem, mk)
        out.append(r + 1)
    return tuple(out)


def matricize(A, n_row_modes: int) -> np.ndarray:
    """(m, n)-matricization: the first ``n_row_modes`` modes index rows.

    Entry ``(psi(i, m), psi(j, n))`` of the result is ``A[i, j]``.
    """
    A = as_hypermatrix(A)
    if not 0 <= n_row_modes <= A.ndim:
        raise ValueError(f"invalid split {n_row_modes} for order {A.ndim}")
    rows = prod(A.shape[:n_row_modes])
    cols = prod(A.shape[n_row_modes:])
    return A.reshape(rows, cols, order="F")


def dematricize(M, m, n) -> np.ndarray:
    """Inverse (m, n)-matricization."""
    M = as_hypermatrix(M)
    m, n = tuple(m), tuple(n)
    if M.shape != (prod(m), prod(n)):
        raise DimensionError(f"matrix {M.shape} does not match {prod(m)}x{prod(n)}")
    return M.reshape(m + n, order="F")


def hvec(A) -> np.ndarray:
    A = as_hypermatrix(A)
    return A.reshape(-1, order="F")


def hvec_inv(v, shape) -> np.ndarray:
    v = as_hypermatrix(v)
    shape = tuple(shape)
    if v.ndim != 1 or v.size != prod(shape):
        raise DimensionError(f"vector of length {v.size} cannot fill shape {shape}")
    return v.reshape(shape, order="F")


def cubically_balanced(A) -> np.ndarray:
    """n^k x n^k matricization of an order-2k cubical hypermatrix."""
    A = as_hypermatrix(A)
    if A.ndim == 0 or A.ndim % 2 or len(set(A.shape)) != 1:
        raise ValueError(f"expected an even-order cubical hypermatrix, got shape {A.shape}")
    return matricize(A, A.ndim // 2)


def cubically_balanced_inv(M, n: int, k: int) -> np.ndarray:
    return dematricize(M, (n,) * k, (n,) * k)


@dataclass
class TensorSVD:
    """``A = sum_a sigmas[a] * left[a] o conj(right[a])``."""

    sigmas: np.ndarray
    left: list = field(default_factory=list)
    right: list = field(default_factory=list)

    @property
    def rank(self) -> int:
        return len(self.sigmas)

    def reconstruct(self, shape) -> np.ndarray:
        out = np.zeros(shape, dtype=np.complex128)
        for s, U, V in zip(self.sigmas, self.left, self.right):
            out += s * np.multiply.outer(U, np.conj(V))
        return out


def tensor_svd(A, n_row_modes: int) -> TensorSVD:
    """Tensor form of the SVD of ``matricize(A, n_row_modes)``.

    Singular values at or below ``1e-12 * sigma_1`` are dropped.
    """
    A = as_hypermatrix(A)
    M = matricize(A, n_row_modes)
    U, s, Vh = np.linalg.svd(M, full_matrices=False)
    if s.size == 0 or s[0] == 0:
        return TensorSVD(np.zeros(0))
    keep = s > SVD_RANK_CUTOFF * s[0]
    row_shape = A.shape[:n_row_modes]
    col_shape = A.shape[n_row_modes:]
    left = [hvec_inv(U[:, a], row_shape) for a in np.flatnonzero(keep)]
    right = [hvec_inv(np.conj(Vh[a]), col_shape) for a in np.flatnonzero(keep)]
    return TensorSVD(s[keep], left, right)


def _check_order3(A):
    A = as_hypermatrix(A)
    if A.ndim != 3:
        raise DimensionError(f"expected an order-3 hypermatrix, got shape {A.shape}")
    return A


def unfold3(A) -> np.ndarray:
    """Stack the frontal slices of an m x n x p tensor into an mp x n matrix."""
    A = _check_order3(A)
    m, n, p = A.shape
    return np.concatenate([A[:, :, l] for l in range(p)], axis=0)


def fold3(M, m: int, n: int, p: int) -> np.ndarray:
    M = as_hypermatrix(M)
    if M.shape != (m * p, n):
        raise DimensionError(f"matrix {M.shape} cannot fold to {m}x{n}x{p}")
    return np.stack([M[l * m:(l + 1) * m] for l in range(p)], axis=2)


def bcirc(A) -> np.ndarray:
    """Block-circulant matrix: block (r, c) is frontal slice ``(r - c) mod p``."""
    A = _check_order3(A)
    m, n, p = A.shape
    r, c = np.indices((p, p))
    blocks = A[:, :, (r - c) % p]  # (m, n, p, p) indexed [i, j, r, c]
    return blocks.transpose(2, 0, 3, 1).reshape(m * p, n * p)


def frequency_slice_matrices(A) -> np.ndarray:
    """Cubically balanced matricizations of every frequency slice, shape ``(p, N, N)``."""
    A = as_hypermatrix(A)
    d = A.ndim - 1
    N = prod(A.shape[: d // 2])
    Ahat = fft_tubal(A)
    return np.moveaxis(Ahat.reshape(N, N, A.shape[-1], order="F"), -1, 0)
